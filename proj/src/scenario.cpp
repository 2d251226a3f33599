#include "eigrpvv/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <utility>

namespace eigrpvv::sim {

namespace {

struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlElement> children;
  int line = 1;
  int column = 1;

  const std::string* attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes)
      if (k == key) return &v;
    return nullptr;
  }
};

// Just enough XML for scenario documents: prolog, comments, elements, attributes.
class XmlReader {
 public:
  explicit XmlReader(std::string_view text) : text_(text) {}

  XmlElement parse_document() {
    skip_misc();
    if (!peek_is("<")) fail("expected root element");
    XmlElement root = parse_element();
    skip_misc();
    if (pos_ < text_.size()) fail("unexpected content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ScenarioParseError(what, line_, column_); }

  bool peek_is(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  void skip_until(std::string_view terminator, const char* what) {
    auto end = text_.find(terminator, pos_);
    if (end == std::string_view::npos) fail(std::string("unterminated ") + what);
    advance(end + terminator.size() - pos_);
  }

  void skip_misc() {
    for (;;) {
      skip_ws();
      if (peek_is("<?")) {
        skip_until("?>", "processing instruction");
      } else if (peek_is("<!--")) {
        skip_until("-->", "comment");
      } else {
        return;
      }
    }
  }

  std::string parse_name() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' || c == '.') {
        advance();
      } else {
        break;
      }
    }
    if (pos_ == start) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string parse_attribute_value() {
    if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\'')) fail("expected quoted attribute value");
    char quote = text_[pos_];
    advance();
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != quote) {
      if (text_[pos_] == '<') fail("'<' inside attribute value");
      if (text_[pos_] == '&') {
        static constexpr std::pair<std::string_view, char> kEntities[] = {
            {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}};
        bool matched = false;
        for (auto [ent, ch] : kEntities) {
          if (peek_is(ent)) {
            out += ch;
            advance(ent.size());
            matched = true;
            break;
          }
        }
        if (!matched) fail("unknown entity");
        continue;
      }
      out += text_[pos_];
      advance();
    }
    if (pos_ >= text_.size()) fail("unterminated attribute value");
    advance();
    return out;
  }

  XmlElement parse_element() {
    XmlElement el;
    el.line = line_;
    el.column = column_;
    advance();  // '<'
    el.name = parse_name();
    for (;;) {
      skip_ws();
      if (peek_is("/>")) {
        advance(2);
        return el;
      }
      if (peek_is(">")) {
        advance();
        break;
      }
      int line = line_, col = column_;
      std::string key = parse_name();
      skip_ws();
      if (!peek_is("=")) fail("expected '=' after attribute name");
      advance();
      skip_ws();
      if (el.attribute(key)) throw ScenarioParseError("duplicate attribute '" + key + "'", line, col);
      el.attributes.emplace_back(std::move(key), parse_attribute_value());
    }
    for (;;) {
      skip_misc();
      if (pos_ >= text_.size()) fail("unterminated element <" + el.name + ">");
      if (peek_is("</")) {
        advance(2);
        std::string closing = parse_name();
        if (closing != el.name) fail("mismatched closing tag </" + closing + ">");
        skip_ws();
        if (!peek_is(">")) fail("expected '>'");
        advance();
        return el;
      }
      if (peek_is("<")) {
        el.children.push_back(parse_element());
      } else {
        fail("unexpected text content");
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// Exact decimal seconds to picoseconds; rejects negatives and exponents.
std::optional<SimTime> parse_seconds(std::string_view s) {
  if (!s.empty() && s.back() == 's') s.remove_suffix(1);
  if (s.empty()) return std::nullopt;
  std::int64_t whole = 0;
  std::int64_t frac = 0;
  int frac_digits = 0;
  bool seen_dot = false;
  bool any_digit = false;
  for (char c : s) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      any_digit = true;
      if (!seen_dot) {
        if (whole > 9'000'000) return std::nullopt;
        whole = whole * 10 + (c - '0');
      } else if (frac_digits < 12) {
        frac = frac * 10 + (c - '0');
        ++frac_digits;
      }
    } else {
      return std::nullopt;
    }
  }
  if (!any_digit) return std::nullopt;
  for (int i = frac_digits; i < 12; ++i) frac *= 10;
  return SimTime::from_seconds(whole) + SimTime::from_ps(frac);
}

ScenarioAction parse_action(const XmlElement& el, SimTime at) {
  ScenarioAction a;
  a.at = at;
  std::vector<std::string_view> allowed;
  if (el.name == "disconnect") {
    a.kind = ActionKind::Disconnect;
    allowed = {"src-module", "src-gate", "dest-module", "dest-gate"};
  } else if (el.name == "connect") {
    a.kind = ActionKind::Connect;
    allowed = {"src-module", "src-gate", "dest-module", "dest-gate", "channel-type"};
  } else {
    throw ScenarioParseError("unsupported action <" + el.name + ">", el.line, el.column);
  }
  for (const auto& [k, v] : el.attributes) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw UnknownAttribute("unknown attribute '" + k + "' on <" + el.name + ">", el.line, el.column);
  }
  auto required = [&](std::string_view key) -> std::string {
    const std::string* v = el.attribute(key);
    if (!v || v->empty())
      throw ScenarioParseError("<" + el.name + "> needs attribute '" + std::string(key) + "'", el.line, el.column);
    return *v;
  };
  auto optional = [&](std::string_view key) -> std::string {
    const std::string* v = el.attribute(key);
    return v ? *v : std::string{};
  };
  a.src_module = required("src-module");
  a.src_gate = normalize_gate(required("src-gate"));
  if (a.kind == ActionKind::Connect) {
    a.dest_module = required("dest-module");
    a.dest_gate = normalize_gate(required("dest-gate"));
    a.channel = short_channel_name(required("channel-type"));
  } else {
    a.dest_module = optional("dest-module");
    a.dest_gate = normalize_gate(optional("dest-gate"));
  }
  return a;
}

}  // namespace

std::string normalize_gate(std::string_view gate) {
  std::string out;
  for (char c : gate)
    if (c != '[' && c != ']') out += c;
  return out;
}

std::string short_channel_name(std::string_view channel_type) {
  auto dot = channel_type.rfind('.');
  return std::string(dot == std::string_view::npos ? channel_type : channel_type.substr(dot + 1));
}

std::vector<ScenarioAction> load_scenario(std::string_view document) {
  XmlElement root = XmlReader{document}.parse_document();
  if (root.name != "scenario") throw ScenarioParseError("root element must be <scenario>", root.line, root.column);
  if (!root.attributes.empty())
    throw UnknownAttribute("unknown attribute '" + root.attributes.front().first + "' on <scenario>", root.line,
                           root.column);
  std::vector<ScenarioAction> actions;
  for (const auto& at : root.children) {
    if (at.name != "at") throw ScenarioParseError("expected <at>, found <" + at.name + ">", at.line, at.column);
    for (const auto& [k, v] : at.attributes)
      if (k != "t") throw UnknownAttribute("unknown attribute '" + k + "' on <at>", at.line, at.column);
    const std::string* t = at.attribute("t");
    if (!t) throw ScenarioParseError("<at> needs attribute 't'", at.line, at.column);
    auto time = parse_seconds(*t);
    if (!time) throw ScenarioParseError("invalid time '" + *t + "' (non-negative seconds expected)", at.line, at.column);
    for (const auto& child : at.children) actions.push_back(parse_action(child, *time));
  }
  std::stable_sort(actions.begin(), actions.end(), [](const auto& x, const auto& y) { return x.at < y.at; });
  return actions;
}

std::string render_scenario(const std::vector<ScenarioAction>& actions) {
  std::string out = "<scenario>\n";
  std::size_t i = 0;
  while (i < actions.size()) {
    SimTime at = actions[i].at;
    out += "  <at t=\"" + at.to_string() + "\">\n";
    for (; i < actions.size() && actions[i].at == at; ++i) {
      const auto& a = actions[i];
      if (a.kind == ActionKind::Disconnect) {
        out += "    <disconnect src-module=\"" + a.src_module + "\" src-gate=\"" + a.src_gate + "\"/>\n";
      } else {
        out += "    <connect src-module=\"" + a.src_module + "\" src-gate=\"" + a.src_gate + "\" dest-module=\"" +
               a.dest_module + "\" dest-gate=\"" + a.dest_gate + "\" channel-type=\"" + a.channel + "\"/>\n";
      }
    }
    out += "  </at>\n";
  }
  return out + "</scenario>\n";
}

}  // namespace eigrpvv::sim
