#include <gtest/gtest.h>

#include <algorithm>
#include <nlohmann/json.hpp>

#include "eigrpvv/align.hpp"
#include "scenarios.hpp"

using namespace eigrpvv;
using vv::Verdict;

namespace {

std::vector<vv::MessageSummary> transcript(const std::string& body) {
  return vv::parse_transcript(std::string(vv::kTranscriptHeader) + "\n" + body);
}

std::vector<std::size_t> idx(std::initializer_list<std::size_t> l) { return l; }

const vv::AlignmentRow* row_with_ref(const std::vector<vv::AlignmentRow>& rows, std::size_t ref) {
  for (const auto& r : rows)
    if (std::count(r.reference_indices.begin(), r.reference_indices.end(), ref)) return &r;
  return nullptr;
}

std::vector<vv::AlignmentRow> align_builtin(const std::string& name) {
  auto res = testsupport::run_builtin(name);
  auto ref = vv::parse_transcript(testsupport::fixture_text(name + "/reference.trace"));
  return vv::align_traces(ref, testsupport::messages(res));
}

}  // namespace

TEST(Align, DiffMessagesComparesProtocolFieldsOnly) {
  auto m = transcript(
      "1 t=0 src=10.0.0.1 dst=224.0.0.10 op=UPDATE flags=EOT seq=3 ack=0 routes=1.0.0.0/24:281600,2.0.0.0/24:U\n"
      "2 t=9 src=10.0.0.2 dst=10.0.0.1 op=UPDATE flags=- seq=8 ack=4 routes=1.0.0.0/24:307200,3.0.0.0/24\n"
      "3 t=9 src=10.0.0.2 dst=10.0.0.1 op=QUERY flags=- seq=8 ack=4 routes=1.0.0.0/24:U\n");
  EXPECT_TRUE(vv::diff_messages(m[0], m[0]).empty());
  auto d = vv::diff_messages(m[0], m[1]);
  std::vector<std::string> fields;
  for (const auto& f : d) fields.push_back(f.field);
  EXPECT_EQ(fields, (std::vector<std::string>{"flags", "cast", "route 1.0.0.0/24", "route 2.0.0.0/24",
                                               "route 3.0.0.0/24"}));
  EXPECT_EQ(d[3].simulated, "absent");
  EXPECT_EQ(d[4].reference, "absent");
  EXPECT_THROW(vv::diff_messages(m[0], m[2]), vv::OpcodeMismatch);
}

TEST(Align, UnstatedMetricIsNotADifference) {
  auto m = transcript(
      "1 t=0 src=10.0.0.1 dst=224.0.0.10 op=UPDATE flags=- seq=3 ack=0 routes=1.0.0.0/24\n"
      "2 t=0 src=10.0.0.1 dst=224.0.0.10 op=UPDATE flags=- seq=3 ack=0 routes=1.0.0.0/24:281600\n");
  EXPECT_TRUE(vv::diff_messages(m[0], m[1]).empty());
}

TEST(Align, DiffPacketsSeesParameterValues) {
  codec::EigrpPacket a, b;
  a.header.opcode = b.header.opcode = codec::Opcode::Hello;
  a.tlvs.push_back(codec::ParametersTlv{});
  codec::ParametersTlv p;
  p.hold_time = 180;
  b.tlvs.push_back(p);
  auto d = vv::diff_packets(a, true, b, true);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].field, "parameters.hold_time");
  EXPECT_EQ(d[0].reference, "15");
  EXPECT_EQ(d[0].simulated, "180");
}

TEST(Align, TraceAgainstItselfMatchesEveryMessageOnce) {
  auto res = testsupport::run_builtin("scenario2");
  auto msgs = testsupport::messages(res);
  auto rows = vv::align_traces(msgs, msgs);
  std::vector<std::size_t> seen;
  for (const auto& r : rows) {
    EXPECT_EQ(r.verdict, Verdict::Match);
    seen.insert(seen.end(), r.simulated_indices.begin(), r.simulated_indices.end());
  }
  std::sort(seen.begin(), seen.end());
  ASSERT_EQ(seen.size(), msgs.size());
  for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(seen[i], i + 1);
}

TEST(Align, EmptyTracesPass) {
  vv::DiffReport r;
  r.rows = vv::align_traces({}, {});
  r.has_messages = true;
  EXPECT_TRUE(r.rows.empty());
  EXPECT_TRUE(r.pass());
}

TEST(Align, RetransmissionsShareTheirOriginalsRow) {
  auto ref = transcript(
      "1 t=0 src=10.0.0.2 dst=10.0.0.1 op=UPDATE flags=INIT seq=20 ack=0\n"
      "2 t=1 src=10.0.0.2 dst=10.0.0.1 op=UPDATE flags=INIT seq=20 ack=0\n"
      "3 t=1 src=10.0.0.1 dst=10.0.0.2 op=HELLO flags=- seq=0 ack=20\n");
  auto sim = transcript(
      "1 t=0 src=10.0.0.2 dst=10.0.0.1 op=UPDATE flags=INIT seq=5 ack=0\n"
      "2 t=0 src=10.0.0.1 dst=10.0.0.2 op=HELLO flags=- seq=0 ack=5\n");
  auto rows = vv::align_traces(ref, sim);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].reference_indices, idx({1, 2}));
  EXPECT_EQ(rows[0].simulated_indices, idx({1}));
  EXPECT_EQ(rows[0].verdict, Verdict::Match);
  EXPECT_EQ(rows[1].reference_indices, idx({3}));
  EXPECT_EQ(rows[1].simulated_indices, idx({2}));
}

TEST(Align, ExtraPrefixInQueryIsPartial) {
  auto ref = transcript("1 t=0 src=10.0.13.1 dst=224.0.0.10 op=QUERY flags=- seq=1 ack=0 routes=2.0.0.0/24:U,10.0.12.0/30:U\n");
  auto sim = transcript(
      "1 t=0 src=10.0.13.1 dst=224.0.0.10 op=QUERY flags=- seq=1 ack=0 "
      "routes=2.0.0.0/24:U,10.0.12.0/30:U,10.0.23.0/30:U\n");
  auto rows = vv::align_traces(ref, sim);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].verdict, Verdict::Partial);
  bool names_prefix = std::any_of(rows[0].notes.begin(), rows[0].notes.end(), [](const std::string& n) {
    return n.find("route 10.0.23.0/30") != std::string::npos && n.find("absent") != std::string::npos;
  });
  EXPECT_TRUE(names_prefix);
}

TEST(Align, UnmatchedMessagesBecomeOneSidedRows) {
  auto ref = transcript(
      "1 t=0 src=10.0.0.1 dst=224.0.0.10 op=HELLO flags=- seq=0 ack=0\n"
      "2 t=0 src=10.0.0.1 dst=224.0.0.10 op=REPLY flags=- seq=4 ack=0 routes=9.0.0.0/24:U\n");
  auto sim = transcript(
      "1 t=0 src=10.0.0.1 dst=224.0.0.10 op=HELLO flags=- seq=0 ack=0\n"
      "2 t=0 src=10.0.0.1 dst=224.0.0.10 op=QUERY flags=- seq=4 ack=0 routes=9.0.0.0/24:U\n");
  auto rows = vv::align_traces(ref, sim);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].verdict, Verdict::Match);
  // A simulated-only row goes right after the row holding the previous simulated message.
  EXPECT_EQ(rows[1].verdict, Verdict::SimulatedOnly);
  EXPECT_EQ(rows[1].simulated_indices, idx({2}));
  EXPECT_EQ(rows[2].verdict, Verdict::ReferenceOnly);
  EXPECT_EQ(rows[2].reference_indices, idx({2}));
}

TEST(Align, ScenarioOneMatchesTheHardwareTranscript) {
  auto rows = align_builtin("scenario1");
  std::vector<std::size_t> sim_seen;
  for (const auto& r : rows) {
    EXPECT_EQ(r.verdict, Verdict::Match) << r.description;
    sim_seen.insert(sim_seen.end(), r.simulated_indices.begin(), r.simulated_indices.end());
  }
  std::sort(sim_seen.begin(), sim_seen.end());
  EXPECT_EQ(sim_seen.size(), 14u);
  EXPECT_EQ(std::adjacent_find(sim_seen.begin(), sim_seen.end()), sim_seen.end());

  // The INIT exchange and its retransmission pair up.
  auto init = row_with_ref(rows, 3);
  ASSERT_TRUE(init);
  EXPECT_EQ(init->reference_indices, idx({3, 4, 5}));
  // The hardware's multicast EOT and unicast resend sit in one row.
  auto eot = row_with_ref(rows, 8);
  ASSERT_TRUE(eot);
  EXPECT_EQ(eot->reference_indices, idx({6, 8}));
  // Poison reverse updates in both directions.
  ASSERT_TRUE(row_with_ref(rows, 12));
  ASSERT_TRUE(row_with_ref(rows, 13));
  EXPECT_EQ(row_with_ref(rows, 12)->verdict, Verdict::Match);
  EXPECT_EQ(row_with_ref(rows, 13)->verdict, Verdict::Match);
}

TEST(Align, ScenarioTwoShowsTheKnownDivergence) {
  auto rows = align_builtin("scenario2");
  // Hardware sends a separate Update withdrawing 10.0.23.0/30 that the simulator folds
  // elsewhere, and the simulator's R3 sends one more withdrawal than the hardware.
  auto third = row_with_ref(rows, 3);
  ASSERT_TRUE(third);
  EXPECT_EQ(third->verdict, Verdict::ReferenceOnly);
  auto q = row_with_ref(rows, 1);
  ASSERT_TRUE(q);
  EXPECT_EQ(q->verdict, Verdict::Match);
  auto sim_only = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.verdict == Verdict::SimulatedOnly; });
  EXPECT_GE(sim_only, 1);
  vv::DiffReport rep;
  rep.rows = rows;
  EXPECT_FALSE(rep.pass());
}

TEST(Align, JsonReportShape) {
  vv::DiffReport rep;
  rep.title = "t";
  rep.has_messages = rep.has_tables = true;
  rep.rows = vv::align_traces(transcript("1 t=0 src=10.0.0.1 dst=224.0.0.10 op=HELLO flags=- seq=0 ack=0\n"), {});
  tables::TableDiff d;
  d.kind = tables::TableDiffKind::Extra;
  d.destination = *Ipv4Prefix::parse("4.0.0.0/24");
  rep.table_diffs.push_back(d);
  auto j = nlohmann::json::parse(vv::render_report(rep, vv::ReportFormat::Json));
  EXPECT_EQ(j["title"], "t");
  EXPECT_EQ(j["verdict"], "fail");
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_EQ(j["rows"][0]["verdict"], "reference-only");
  EXPECT_EQ(j["rows"][0]["reference"], nlohmann::json::array({1}));
  EXPECT_EQ(j["table_diffs"][0]["kind"], "extra");

  auto text = vv::render_report(rep, vv::ReportFormat::Text);
  EXPECT_NE(text.find("verdict: FAIL"), std::string::npos);
  EXPECT_NE(text.find("routing table differences: 1"), std::string::npos);
}
