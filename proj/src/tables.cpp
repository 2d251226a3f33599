#include "eigrpvv/tables.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace eigrpvv::tables {

char source_code(RouteSource s) { return s == RouteSource::Connected ? 'C' : 'D'; }

std::uint8_t administrative_distance(RouteSource s) { return s == RouteSource::Connected ? 0 : 90; }

bool entry_less(const RoutingEntry& a, const RoutingEntry& b) {
  auto key = [](const RoutingEntry& e) {
    return std::tuple{e.destination.network(), e.destination.length(), e.next_hop.has_value(),
                      e.next_hop.value_or(Ipv4Address{})};
  };
  return key(a) < key(b);
}

RoutingDelta RoutingTable::sync(std::vector<RoutingEntry> desired) {
  std::sort(desired.begin(), desired.end(), entry_less);
  RoutingDelta delta;
  for (const auto& e : entries_)
    if (std::find(desired.begin(), desired.end(), e) == desired.end()) delta.removed.push_back(e);
  for (const auto& e : desired)
    if (std::find(entries_.begin(), entries_.end(), e) == entries_.end()) delta.added.push_back(e);
  entries_ = std::move(desired);
  return delta;
}

std::string write_snapshot(const TableSnapshot& snap) {
  std::ostringstream out;
  out << "# node=" << snap.node << " t=" << snap.taken_at.to_string() << '\n';
  std::vector<RoutingEntry> routes = snap.routes;
  std::stable_sort(routes.begin(), routes.end(), entry_less);
  for (const auto& r : routes) {
    out << source_code(r.source) << ' ' << r.destination.to_string() << " [" << int{r.admin_distance} << '/'
        << r.metric << "] via " << (r.next_hop ? r.next_hop->to_string() : "connected") << ", " << r.exit_interface
        << '\n';
  }
  for (const auto& t : snap.topology) {
    out << "# topo " << t.destination.to_string() << ' ' << (t.active ? 'A' : 'P') << " fd=";
    if (t.feasible_distance == eigrp::kInfiniteMetric) {
      out << "inf";
    } else {
      out << t.feasible_distance;
    }
    out << " successors=";
    for (std::size_t i = 0; i < t.successors.size(); ++i) out << (i ? "," : "") << t.successors[i];
    if (t.successors.empty()) out << '-';
    out << '\n';
  }
  for (const auto& n : snap.neighbors)
    out << "# nbr " << n.address.to_string() << ' ' << n.interface << ' ' << (n.up ? "up" : "pending") << '\n';
  return out.str();
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

RoutingEntry parse_route(const std::string& line, int lineno) {
  auto fail = [&](const std::string& what) -> RoutingEntry { throw SnapshotParseError(what + ": " + line, lineno); };
  std::istringstream in(line);
  std::string code, prefix, bracket, via, hop, iface;
  if (!(in >> code >> prefix >> bracket >> via >> hop >> iface)) return fail("incomplete route line");
  std::string rest;
  if (in >> rest) return fail("trailing text on route line");
  RoutingEntry e;
  if (code == "C") {
    e.source = RouteSource::Connected;
  } else if (code == "D") {
    e.source = RouteSource::Eigrp;
  } else {
    return fail("unknown route source '" + code + "'");
  }
  auto p = Ipv4Prefix::parse(prefix);
  if (!p) return fail("bad prefix");
  e.destination = *p;
  if (bracket.size() < 5 || bracket.front() != '[' || bracket.back() != ']') return fail("bad [AD/metric]");
  auto slash = bracket.find('/');
  if (slash == std::string::npos) return fail("bad [AD/metric]");
  try {
    unsigned long ad = std::stoul(bracket.substr(1, slash - 1));
    unsigned long long metric = std::stoull(bracket.substr(slash + 1, bracket.size() - slash - 2));
    if (ad > 255 || metric > eigrp::kInfiniteMetric) return fail("[AD/metric] out of range");
    e.admin_distance = static_cast<std::uint8_t>(ad);
    e.metric = static_cast<eigrp::Metric>(metric);
  } catch (const std::logic_error&) {
    return fail("bad [AD/metric]");
  }
  if (via != "via") return fail("expected 'via'");
  if (hop.empty() || hop.back() != ',') return fail("expected ',' after next hop");
  hop.pop_back();
  if (hop != "connected") {
    auto a = Ipv4Address::parse(hop);
    if (!a) return fail("bad next hop");
    e.next_hop = *a;
  }
  e.exit_interface = iface;
  return e;
}

}  // namespace

TableSnapshot parse_snapshot(std::string_view text) {
  TableSnapshot snap;
  bool have_header = false;
  int lineno = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.starts_with("# node=")) {
      std::istringstream h(line.substr(2));
      std::string node, t;
      h >> node >> t;
      snap.node = node.substr(5);
      if (t.starts_with("t=")) {
        try {
          snap.taken_at = SimTime::from_seconds_double(std::stod(t.substr(2)));
        } catch (const std::logic_error&) {
          throw SnapshotParseError("bad snapshot time", lineno);
        }
      }
      have_header = true;
      continue;
    }
    if (line.front() == '#') continue;
    snap.routes.push_back(parse_route(line, lineno));
  }
  if (!have_header) throw SnapshotParseError("missing '# node=' header", 1);
  std::stable_sort(snap.routes.begin(), snap.routes.end(), entry_less);
  return snap;
}

std::vector<TableDiff> diff_tables(const TableSnapshot& reference, const TableSnapshot& simulated) {
  if (reference.node != simulated.node)
    throw NodeMismatch("snapshots belong to different routers: " + reference.node + " vs " + simulated.node);
  using Key = std::pair<Ipv4Prefix, std::optional<Ipv4Address>>;
  std::map<Key, const RoutingEntry*> ref, sim;
  for (const auto& e : reference.routes) ref[{e.destination, e.next_hop}] = &e;
  for (const auto& e : simulated.routes) sim[{e.destination, e.next_hop}] = &e;

  std::vector<TableDiff> out;
  for (const auto& [key, r] : ref) {
    auto it = sim.find(key);
    if (it == sim.end()) {
      out.push_back({TableDiffKind::Missing, key.first, key.second, {}, {}, {}});
      continue;
    }
    const RoutingEntry* s = it->second;
    auto field = [&](const char* name, std::string a, std::string b) {
      if (a != b) out.push_back({TableDiffKind::FieldMismatch, key.first, key.second, name, a, b});
    };
    field("source", std::string(1, source_code(r->source)), std::string(1, source_code(s->source)));
    field("metric", std::to_string(r->metric), std::to_string(s->metric));
    field("interface", r->exit_interface, s->exit_interface);
    field("distance", std::to_string(r->admin_distance), std::to_string(s->admin_distance));
  }
  for (const auto& [key, s] : sim)
    if (!ref.contains(key)) out.push_back({TableDiffKind::Extra, key.first, key.second, {}, {}, {}});
  std::stable_sort(out.begin(), out.end(), [](const TableDiff& a, const TableDiff& b) {
    return std::pair{a.destination, a.next_hop} < std::pair{b.destination, b.next_hop};
  });
  return out;
}

std::string describe(const TableDiff& d) {
  std::string where = d.destination.to_string() + " via " + (d.next_hop ? d.next_hop->to_string() : "connected");
  switch (d.kind) {
    case TableDiffKind::Missing:
      return "missing in simulation: " + where;
    case TableDiffKind::Extra:
      return "extra in simulation: " + where;
    case TableDiffKind::FieldMismatch:
      return where + ": " + d.field + " reference=" + d.reference_value + " simulated=" + d.simulated_value;
  }
  return where;
}

}  // namespace eigrpvv::tables
