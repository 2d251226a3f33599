#include "eigrpvv/align.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace eigrpvv::vv {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Match: return "match";
    case Verdict::Partial: return "partial";
    case Verdict::ReferenceOnly: return "reference-only";
    case Verdict::SimulatedOnly: return "simulated-only";
  }
  return "?";
}

namespace {

std::string cast_mode(bool multicast) { return multicast ? "multicast" : "unicast"; }

std::string tlv_set(const std::vector<std::uint16_t>& types) {
  std::set<std::uint16_t> unique(types.begin(), types.end());
  std::string out;
  for (auto t : unique) out += (out.empty() ? "" : ",") + codec::tlv_name(t);
  return out.empty() ? "-" : out;
}

std::string route_state(const RouteSummary& r) {
  if (!r.reachable) return "unreachable";
  return r.metric ? std::to_string(*r.metric) : "reachable";
}

void diff_routes(const std::vector<RouteSummary>& ref, const std::vector<RouteSummary>& sim,
                 std::vector<FieldDiff>& out) {
  std::map<Ipv4Prefix, const RouteSummary*> a, b;
  for (const auto& r : ref) a.emplace(r.destination, &r);
  for (const auto& r : sim) b.emplace(r.destination, &r);
  std::set<Ipv4Prefix> all;
  for (const auto& [p, _] : a) all.insert(p);
  for (const auto& [p, _] : b) all.insert(p);
  for (const auto& p : all) {
    auto ia = a.find(p), ib = b.find(p);
    std::string field = "route " + p.to_string();
    if (ia == a.end()) {
      out.push_back({field, "absent", route_state(*ib->second)});
    } else if (ib == b.end()) {
      out.push_back({field, route_state(*ia->second), "absent"});
    } else {
      const auto& x = *ia->second;
      const auto& y = *ib->second;
      bool differ = x.reachable != y.reachable || (x.reachable && x.metric && y.metric && *x.metric != *y.metric);
      if (differ) out.push_back({field, route_state(x), route_state(y)});
    }
  }
}

}  // namespace

std::vector<FieldDiff> diff_messages(const MessageSummary& reference, const MessageSummary& simulated) {
  if (reference.kind() != simulated.kind())
    throw OpcodeMismatch("cannot compare " + reference.kind() + " with " + simulated.kind());
  std::vector<FieldDiff> out;
  if (reference.flags != simulated.flags)
    out.push_back({"flags", codec::flags_to_string(reference.flags), codec::flags_to_string(simulated.flags)});
  if (reference.multicast() != simulated.multicast())
    out.push_back({"cast", cast_mode(reference.multicast()), cast_mode(simulated.multicast())});
  if (reference.tlv_types && simulated.tlv_types) {
    auto a = tlv_set(*reference.tlv_types), b = tlv_set(*simulated.tlv_types);
    if (a != b) out.push_back({"tlvs", a, b});
  }
  diff_routes(reference.routes, simulated.routes, out);
  if (reference.bad_checksum != simulated.bad_checksum)
    out.push_back({"checksum", reference.bad_checksum ? "bad" : "ok", simulated.bad_checksum ? "bad" : "ok"});
  return out;
}

namespace {

template <class T>
const T* find_tlv(const codec::EigrpPacket& p) {
  for (const auto& t : p.tlvs)
    if (auto v = std::get_if<T>(&t)) return v;
  return nullptr;
}

std::string k_values(const codec::ParametersTlv& p) {
  std::string s;
  for (auto k : p.k) s += std::to_string(k) + " ";
  return s + std::to_string(p.k6);
}

std::string version(std::uint8_t major, std::uint8_t minor) {
  return std::to_string(major) + "." + std::to_string(minor);
}

void compare(std::vector<FieldDiff>& out, const std::string& field, const std::string& a, const std::string& b) {
  if (a != b) out.push_back({field, a, b});
}

}  // namespace

std::vector<FieldDiff> diff_packets(const codec::EigrpPacket& reference, bool reference_multicast,
                                    const codec::EigrpPacket& simulated, bool simulated_multicast) {
  MessageSummary a = summarize(reference, {}, {}, {});
  MessageSummary b = summarize(simulated, {}, {}, {});
  if (reference_multicast) a.dst = kAllEigrpRouters;
  if (simulated_multicast) b.dst = kAllEigrpRouters;
  auto out = diff_messages(a, b);

  if (auto x = find_tlv<codec::ParametersTlv>(reference), y = find_tlv<codec::ParametersTlv>(simulated); x && y) {
    compare(out, "parameters.k", k_values(*x), k_values(*y));
    compare(out, "parameters.hold_time", std::to_string(x->hold_time), std::to_string(y->hold_time));
  }
  if (auto x = find_tlv<codec::SoftwareVersionTlv>(reference), y = find_tlv<codec::SoftwareVersionTlv>(simulated);
      x && y) {
    compare(out, "software_version.os", version(x->os_major, x->os_minor), version(y->os_major, y->os_minor));
    compare(out, "software_version.eigrp", version(x->eigrp_major, x->eigrp_minor),
            version(y->eigrp_major, y->eigrp_minor));
  }
  if (auto x = find_tlv<codec::StubTlv>(reference), y = find_tlv<codec::StubTlv>(simulated); x && y)
    compare(out, "stub.flags", std::to_string(x->stub_flags), std::to_string(y->stub_flags));
  if (auto x = find_tlv<codec::AuthenticationTlv>(reference), y = find_tlv<codec::AuthenticationTlv>(simulated);
      x && y)
    compare(out, "authentication", x->magic, y->magic);

  std::map<Ipv4Prefix, codec::InternalRouteTlv> ra, rb;
  for (const auto& r : reference.routes()) ra.emplace(r.destination, r);
  for (const auto& r : simulated.routes()) rb.emplace(r.destination, r);
  for (const auto& [p, x] : ra) {
    auto it = rb.find(p);
    if (it == rb.end()) continue;
    const auto& y = it->second;
    std::string f = "route " + p.to_string() + ".";
    compare(out, f + "next_hop", x.next_hop.to_string(), y.next_hop.to_string());
    compare(out, f + "delay", std::to_string(x.scaled_delay), std::to_string(y.scaled_delay));
    compare(out, f + "bandwidth", std::to_string(x.scaled_bandwidth), std::to_string(y.scaled_bandwidth));
    compare(out, f + "mtu", std::to_string(x.mtu), std::to_string(y.mtu));
    compare(out, f + "hop_count", std::to_string(x.hop_count), std::to_string(y.hop_count));
    compare(out, f + "reliability", std::to_string(x.reliability), std::to_string(y.reliability));
    compare(out, f + "load", std::to_string(x.load), std::to_string(y.load));
  }
  return out;
}

namespace {

bool retransmittable(const MessageSummary& m) {
  return m.opcode != codec::Opcode::Hello && m.sequence != 0;
}

// For every message, the index of the message it retransmits, or itself.
std::vector<std::size_t> retransmission_roots(const std::vector<MessageSummary>& msgs) {
  std::vector<std::size_t> root(msgs.size());
  for (std::size_t k = 0; k < msgs.size(); ++k) {
    root[k] = k;
    if (!retransmittable(msgs[k])) continue;
    for (std::size_t o = 0; o < k; ++o) {
      if (root[o] == o && msgs[o].src == msgs[k].src && msgs[o].opcode == msgs[k].opcode &&
          msgs[o].sequence == msgs[k].sequence) {
        root[k] = o;
        break;
      }
    }
  }
  return root;
}

std::string describe_message(const MessageSummary& m) {
  std::string s = m.kind();
  if (!m.is_ack() && m.flags) s += " " + codec::flags_to_string(m.flags);
  s += " from " + m.src.to_string() + " " + cast_mode(m.multicast());
  if (!m.routes.empty()) {
    s += " [";
    for (std::size_t i = 0; i < m.routes.size(); ++i) {
      const auto& r = m.routes[i];
      s += (i ? " " : "") + r.destination.to_string();
      if (!r.reachable) {
        s += " unreachable";
      } else if (r.metric) {
        s += " " + std::to_string(*r.metric);
      }
      if (i + 1 < m.routes.size()) s += ",";
    }
    s += "]";
  }
  return s;
}

struct Row {
  std::vector<std::size_t> ref, sim;  // 0-based
  std::vector<std::string> notes;
  bool partial = false;
};

}  // namespace

std::vector<AlignmentRow> align_traces(const std::vector<MessageSummary>& reference,
                                       const std::vector<MessageSummary>& simulated, AlignOptions options) {
  const auto w = static_cast<long>(std::max<std::size_t>(options.window, 1));
  const auto ref_root = retransmission_roots(reference);
  const auto sim_root = retransmission_roots(simulated);
  std::vector<long> ref_to_sim(reference.size(), -1), sim_to_ref(simulated.size(), -1);
  std::vector<bool> loose(reference.size(), false);

  auto in_window = [w](long j, long anchor) { return j > anchor - w && j <= anchor + w; };

  // Exact keys first.
  long last = -1;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (ref_root[i] != i) continue;
    const auto key = reference[i].key();
    long pick = -1;
    for (std::size_t j = 0; j < simulated.size(); ++j) {
      if (sim_root[j] != j || sim_to_ref[j] >= 0 || !in_window(long(j), last)) continue;
      if (simulated[j].key() != key) continue;
      if (pick < 0) pick = long(j);
      // Same key from the same sender wins over an earlier one from another router.
      if (!reference[i].is_ack() && simulated[j].src == reference[i].src) {
        pick = long(j);
        break;
      }
    }
    if (pick >= 0) {
      ref_to_sim[i] = pick;
      sim_to_ref[std::size_t(pick)] = long(i);
      last = std::max(last, pick);
    }
  }

  // Same kind and flags, different route sets: partial rows.
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (ref_root[i] != i || ref_to_sim[i] >= 0 || reference[i].is_ack()) continue;
    long anchor = -1;
    for (std::size_t p = i; p-- > 0;)
      if (ref_to_sim[p] >= 0) {
        anchor = ref_to_sim[p];
        break;
      }
    for (std::size_t j = 0; j < simulated.size(); ++j) {
      if (sim_root[j] != j || sim_to_ref[j] >= 0 || !in_window(long(j), anchor)) continue;
      if (simulated[j].kind() != reference[i].kind() || simulated[j].flags != reference[i].flags) continue;
      ref_to_sim[i] = long(j);
      sim_to_ref[j] = long(i);
      loose[i] = true;
      break;
    }
  }

  std::vector<Row> rows;
  std::vector<long> ref_row(reference.size(), -1), sim_row(simulated.size(), -1);
  auto add_sim = [&](Row& row, std::size_t j, std::size_t r) {
    row.sim.push_back(j);
    sim_row[j] = long(r);
  };

  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (ref_root[i] != i) continue;
    Row row;
    row.ref.push_back(i);
    std::size_t r = rows.size();
    ref_row[i] = long(r);
    if (ref_to_sim[i] >= 0) {
      auto j = std::size_t(ref_to_sim[i]);
      add_sim(row, j, r);
      auto diffs = diff_messages(reference[i], simulated[j]);
      row.partial = !diffs.empty();
      for (const auto& d : diffs)
        row.notes.push_back("ref " + std::to_string(i + 1) + " / sim " + std::to_string(j + 1) + ": " + d.field +
                            " " + d.reference + " vs " + d.simulated);
      if (loose[i]) row.notes.push_back("paired on kind and flags; route sets differ");
    }
    rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < simulated.size(); ++j) {
    if (sim_root[j] != j || sim_to_ref[j] >= 0) continue;
    Row row;
    add_sim(row, j, rows.size());
    rows.push_back(std::move(row));
  }

  // Retransmissions share the row of their original.
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (ref_root[i] == i) continue;
    auto& row = rows[std::size_t(ref_row[ref_root[i]])];
    row.ref.push_back(i);
    ref_row[i] = ref_row[ref_root[i]];
    row.notes.push_back("ref " + std::to_string(i + 1) + " retransmits ref " + std::to_string(ref_root[i] + 1) +
                        " (same sequence number)");
  }
  for (std::size_t j = 0; j < simulated.size(); ++j) {
    if (sim_root[j] == j) continue;
    auto r = std::size_t(sim_row[sim_root[j]]);
    add_sim(rows[r], j, r);
    rows[r].notes.push_back("sim " + std::to_string(j + 1) + " retransmits sim " + std::to_string(sim_root[j] + 1) +
                            " (same sequence number)");
  }

  // A leftover with the same key as its predecessor joins the predecessor's row.
  std::vector<bool> dead(rows.size(), false);
  for (std::size_t i = 1; i < reference.size(); ++i) {
    auto r = std::size_t(ref_row[i]);
    if (rows[r].ref.size() != 1 || !rows[r].sim.empty() || ref_root[i] != i) continue;
    if (reference[i - 1].key() != reference[i].key()) continue;
    auto target = std::size_t(ref_row[i - 1]);
    rows[target].ref.push_back(i);
    rows[target].notes.push_back("ref " + std::to_string(i + 1) + " repeats the key of ref " + std::to_string(i));
    ref_row[i] = long(target);
    dead[r] = true;
  }
  for (std::size_t j = 1; j < simulated.size(); ++j) {
    auto r = std::size_t(sim_row[j]);
    if (rows[r].sim.size() != 1 || !rows[r].ref.empty() || sim_root[j] != j) continue;
    if (simulated[j - 1].key() != simulated[j].key()) continue;
    auto target = std::size_t(sim_row[j - 1]);
    rows[target].sim.push_back(j);
    rows[target].notes.push_back("sim " + std::to_string(j + 1) + " repeats the key of sim " + std::to_string(j));
    sim_row[j] = long(target);
    dead[r] = true;
  }

  // Order: rows with reference messages by their earliest one; simulated-only rows
  // right after the row holding the preceding simulated message.
  std::vector<std::size_t> order;
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (!dead[r] && !rows[r].ref.empty()) order.push_back(r);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return *std::min_element(rows[a].ref.begin(), rows[a].ref.end()) <
           *std::min_element(rows[b].ref.begin(), rows[b].ref.end());
  });
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (dead[r] || !rows[r].ref.empty()) continue;
    auto first = *std::min_element(rows[r].sim.begin(), rows[r].sim.end());
    auto pos = order.begin();
    if (first > 0) {
      auto prev = std::size_t(sim_row[first - 1]);
      pos = std::find(order.begin(), order.end(), prev);
      pos = pos == order.end() ? order.begin() : pos + 1;
    }
    order.insert(pos, r);
  }

  auto row_key = [&](const Row& row) {
    return std::pair{row.ref.empty() ? std::string() : reference[row.ref.front()].key(),
                     row.sim.empty() ? std::string() : simulated[row.sim.front()].key()};
  };

  std::vector<Row> merged;
  for (auto r : order) {
    if (!merged.empty() && row_key(merged.back()) == row_key(rows[r])) {
      auto& m = merged.back();
      m.ref.insert(m.ref.end(), rows[r].ref.begin(), rows[r].ref.end());
      m.sim.insert(m.sim.end(), rows[r].sim.begin(), rows[r].sim.end());
      m.notes.insert(m.notes.end(), rows[r].notes.begin(), rows[r].notes.end());
      m.partial = m.partial || rows[r].partial;
    } else {
      merged.push_back(rows[r]);
    }
  }

  std::vector<AlignmentRow> out;
  for (auto& row : merged) {
    std::sort(row.ref.begin(), row.ref.end());
    std::sort(row.sim.begin(), row.sim.end());
    AlignmentRow a;
    for (auto i : row.ref) a.reference_indices.push_back(reference[i].index ? reference[i].index : i + 1);
    for (auto j : row.sim) a.simulated_indices.push_back(simulated[j].index ? simulated[j].index : j + 1);
    if (row.ref.empty()) {
      a.verdict = Verdict::SimulatedOnly;
      a.description = describe_message(simulated[row.sim.front()]);
      a.notes.push_back("no reference counterpart within " + std::to_string(w) + " messages");
    } else if (row.sim.empty()) {
      a.verdict = Verdict::ReferenceOnly;
      a.description = describe_message(reference[row.ref.front()]);
      a.notes.push_back("no simulated counterpart within " + std::to_string(w) + " messages");
    } else {
      a.verdict = row.partial ? Verdict::Partial : Verdict::Match;
      a.description = describe_message(reference[row.ref.front()]);
    }
    a.notes.insert(a.notes.end(), row.notes.begin(), row.notes.end());
    out.push_back(std::move(a));
  }
  return out;
}

bool DiffReport::pass() const {
  return table_diffs.empty() &&
         std::all_of(rows.begin(), rows.end(), [](const AlignmentRow& r) { return r.verdict == Verdict::Match; });
}

namespace {

constexpr std::string_view kStrictNote =
    "overall pass requires every message row to match and identical routing tables; "
    "this is stricter than judging equivalence by hand";

std::string_view kind_name(tables::TableDiffKind k) {
  switch (k) {
    case tables::TableDiffKind::Missing: return "missing";
    case tables::TableDiffKind::Extra: return "extra";
    case tables::TableDiffKind::FieldMismatch: return "field-mismatch";
  }
  return "?";
}

std::string indices_text(const std::vector<std::size_t>& v) {
  if (v.empty()) return "-";
  std::string s;
  for (auto i : v) s += (s.empty() ? "" : ",") + std::to_string(i);
  return s;
}

std::string pad(std::string s, std::size_t n) {
  if (s.size() < n) s.append(n - s.size(), ' ');
  return s;
}

}  // namespace

std::string render_report(const DiffReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    j["title"] = report.title;
    j["verdict"] = report.pass() ? "pass" : "fail";
    j["note"] = kStrictNote;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
      nlohmann::ordered_json row;
      row["reference"] = r.reference_indices;
      row["simulated"] = r.simulated_indices;
      row["verdict"] = to_string(r.verdict);
      row["description"] = r.description;
      row["notes"] = r.notes;
      j["rows"].push_back(std::move(row));
    }
    j["table_diffs"] = nlohmann::ordered_json::array();
    for (const auto& d : report.table_diffs) {
      nlohmann::ordered_json t;
      t["kind"] = kind_name(d.kind);
      t["destination"] = d.destination.to_string();
      t["next_hop"] = d.next_hop ? nlohmann::ordered_json(d.next_hop->to_string()) : nlohmann::ordered_json();
      if (d.kind == tables::TableDiffKind::FieldMismatch) t["field"] = d.field;
      t["reference"] = d.reference_value;
      t["simulated"] = d.simulated_value;
      j["table_diffs"].push_back(std::move(t));
    }
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  if (!report.title.empty()) out << report.title << '\n';
  out << "verdict: " << (report.pass() ? "PASS" : "FAIL") << '\n';
  out << "note: " << kStrictNote << "\n\n";
  if (report.has_messages || !report.rows.empty()) {
    out << pad("Reference", 12) << pad("Simulated", 12) << pad("Verdict", 16) << "Description\n";
    for (const auto& r : report.rows) {
      out << pad(indices_text(r.reference_indices), 12) << pad(indices_text(r.simulated_indices), 12)
          << pad(std::string(to_string(r.verdict)), 16) << r.description << '\n';
      for (const auto& n : r.notes) out << pad("", 40) << "- " << n << '\n';
    }
    out << '\n';
  }
  if (report.has_tables || !report.table_diffs.empty()) {
    out << "routing table differences: " << report.table_diffs.size() << '\n';
    for (const auto& d : report.table_diffs) out << "  " << tables::describe(d) << '\n';
  }
  return out.str();
}

}  // namespace eigrpvv::vv
