#pragma once

// Reference vs simulated comparison: message alignment, per-message diffs, table diffs
// and the combined report.

#include <stdexcept>
#include <string>
#include <vector>

#include "eigrpvv/packet.hpp"
#include "eigrpvv/tables.hpp"
#include "eigrpvv/trace.hpp"

namespace eigrpvv::vv {

enum class Verdict { Match, Partial, ReferenceOnly, SimulatedOnly };

std::string_view to_string(Verdict v);

struct FieldDiff {
  std::string field;
  std::string reference;
  std::string simulated;
  bool operator==(const FieldDiff&) const = default;
};

struct OpcodeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Differences in flags, cast mode, TLV kinds and routes. Sequence and ack numbers and
/// timestamps are implementation specific and never compared. Throws OpcodeMismatch
/// when the two messages are of different kinds.
std::vector<FieldDiff> diff_messages(const MessageSummary& reference, const MessageSummary& simulated);

/// Payload-level comparison of two decoded packets: everything diff_messages reports
/// plus TLV field values (K values, hold time, versions, route vector metrics).
std::vector<FieldDiff> diff_packets(const codec::EigrpPacket& reference, bool reference_multicast,
                                    const codec::EigrpPacket& simulated, bool simulated_multicast);

struct AlignmentRow {
  std::vector<std::size_t> reference_indices;
  std::vector<std::size_t> simulated_indices;
  Verdict verdict = Verdict::Match;
  std::string description;
  std::vector<std::string> notes;
};

struct AlignOptions {
  std::size_t window = 4;
};

/// Greedy ordered matching on (kind, flags, route set) inside a sliding window, then a
/// looser pass on (kind, flags) that yields partial rows. Retransmissions (same source,
/// opcode and sequence number) share their original's row; a leftover message with the
/// same key as the message just before it on its side joins that message's row.
std::vector<AlignmentRow> align_traces(const std::vector<MessageSummary>& reference,
                                       const std::vector<MessageSummary>& simulated, AlignOptions options = {});

struct DiffReport {
  std::string title;
  std::vector<AlignmentRow> rows;
  std::vector<tables::TableDiff> table_diffs;
  bool has_messages = false;
  bool has_tables = false;

  /// Pass only when every row matches and no table entry differs.
  bool pass() const;
};

enum class ReportFormat { Text, Json };

std::string render_report(const DiffReport& report, ReportFormat format);

}  // namespace eigrpvv::vv
