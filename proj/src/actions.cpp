#include "llm3/actions.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "llm3/world.hpp"

namespace llm3::actions {

const ParamSpec* ActionSchema::find_param(const std::string& pname) const {
  for (const auto& p : params) {
    if (p.name == pname) return &p;
  }
  return nullptr;
}

const std::vector<ActionSchema>& builtin_schemas() {
  static const std::vector<ActionSchema> schemas{
      {"pick", 1, {}},
      {"place",
       1,
       {{"x", 0.0, 1.0}, {"y", -1.0, 1.0}, {"theta", -3.14, 3.14}}},
  };
  return schemas;
}

const ActionSchema* find_schema(const std::string& name) {
  for (const auto& s : builtin_schemas()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::string fmt2(double v) {
  double r = std::round(v * 100.0) / 100.0;
  if (r == 0.0) r = 0.0;  // collapse -0.00
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", r);
  return buf;
}

namespace {

// Minimal recursive-descent scanner for the action surface syntax:
//   action   := ident '(' '[' obj-list ']' ',' '{' param-map '}' ')'
//   obj-list := (string (',' string)*)?
//   param-map:= (pair (',' pair)*)?    pair := string ':' number
// Strings accept single or double quotes; whitespace is free between tokens.
class Scanner {
 public:
  explicit Scanner(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string identifier() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected identifier");
    return text_.substr(start, pos_ - start);
  }

  std::string quoted_string() {
    skip_ws();
    if (pos_ >= text_.size() || (text_[pos_] != '\'' && text_[pos_] != '"')) {
      fail("expected quoted string");
    }
    const char quote = text_[pos_++];
    size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != quote) ++pos_;
    if (pos_ >= text_.size()) fail("unterminated string");
    std::string s = text_.substr(start, pos_ - start);
    ++pos_;
    return s;
  }

  double number() {
    skip_ws();
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("expected number");
    pos_ += static_cast<size_t>(end - begin);
    return v;
  }

  [[noreturn]] void fail(const std::string& what) {
    std::ostringstream os;
    os << "syntax error at position " << pos_ << ": " << what;
    throw ParseError(os.str());
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace

GroundAction parse_action(const std::string& text) {
  Scanner sc(text);
  GroundAction a;
  a.schema = sc.identifier();
  sc.expect('(');
  sc.expect('[');
  if (sc.peek() != ']') {
    a.objects.push_back(sc.quoted_string());
    while (sc.consume(',')) a.objects.push_back(sc.quoted_string());
  }
  sc.expect(']');
  sc.expect(',');
  sc.expect('{');
  if (sc.peek() != '}') {
    do {
      std::string key = sc.quoted_string();
      sc.expect(':');
      double value = sc.number();
      if (a.params.count(key)) {
        throw ValidationError("duplicate parameter '" + key + "'");
      }
      a.params[key] = value;
    } while (sc.consume(','));
  }
  sc.expect('}');
  sc.expect(')');
  if (!sc.at_end()) sc.fail("trailing characters after action");

  const ActionSchema* schema = find_schema(a.schema);
  if (!schema) {
    throw SchemaError("unknown action '" + a.schema + "'");
  }
  if (static_cast<int>(a.objects.size()) != schema->object_arity) {
    std::ostringstream os;
    os << "action '" << a.schema << "' takes " << schema->object_arity
       << " object(s), got " << a.objects.size();
    throw ValidationError(os.str());
  }
  for (const auto& [key, value] : a.params) {
    const ParamSpec* p = schema->find_param(key);
    if (!p) {
      throw ValidationError("action '" + a.schema + "' has no parameter '" + key + "'");
    }
    if (!(value >= p->lo && value <= p->hi)) {
      std::ostringstream os;
      os << "parameter '" << key << "' = " << value << " outside [" << p->lo
         << ", " << p->hi << "]";
      throw ValidationError(os.str());
    }
  }
  for (const auto& p : schema->params) {
    if (!a.params.count(p.name)) {
      throw ValidationError("action '" + a.schema + "' missing parameter '" + p.name + "'");
    }
  }
  return a;
}

std::string format_action(const GroundAction& a) {
  std::ostringstream os;
  os << a.schema << "([";
  for (size_t i = 0; i < a.objects.size(); ++i) {
    if (i) os << ", ";
    os << '\'' << a.objects[i] << '\'';
  }
  os << "], {";
  const ActionSchema* schema = find_schema(a.schema);
  bool first = true;
  if (schema) {
    for (const auto& p : schema->params) {
      auto it = a.params.find(p.name);
      if (it == a.params.end()) continue;
      if (!first) os << ", ";
      first = false;
      os << '\'' << p.name << "': " << fmt2(it->second);
    }
  }
  os << "})";
  return os.str();
}

Applicability applicable(const world::WorldState& s, const GroundAction& a) {
  if (a.objects.empty()) return {false, "no object argument"};
  const std::string& obj = a.objects.front();
  const world::ObjectState* os = s.find_object(obj);
  if (a.schema == "pick") {
    if (!os) return {false, "unknown object '" + obj + "'"};
    if (s.holding) return {false, "gripper occupied"};
    if (os->held) return {false, "object '" + obj + "' is already held"};
    return {true, {}};
  }
  if (a.schema == "place") {
    if (!os) return {false, "unknown object '" + obj + "'"};
    if (!s.holding) return {false, "gripper empty"};
    if (*s.holding != obj) {
      return {false, "not holding '" + obj + "' (holding '" + *s.holding + "')"};
    }
    return {true, {}};
  }
  return {false, "unknown action '" + a.schema + "'"};
}

}  // namespace llm3::actions
