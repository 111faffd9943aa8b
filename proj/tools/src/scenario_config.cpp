#include "dcmd/io/scenario_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "dcmd/errors.hpp"

namespace dcmd::io {

double SignalSpec::operator()(double t, double x) const {
  if (table.empty()) return expression(t, x, 0.0);
  if (t <= table.front()[0]) return table.front()[1];
  if (t >= table.back()[0]) return table.back()[1];
  const auto it = std::upper_bound(table.begin(), table.end(), t,
                                   [](double v, const std::array<double, 2>& row) { return v < row[0]; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double s = (t - lo[0]) / (hi[0] - lo[0]);
  return lo[1] + s * (hi[1] - lo[1]);
}

namespace {

struct Value {
  enum class Kind { Number, String, Table } kind = Kind::Number;
  double number = 0.0;
  std::string text;
  std::vector<std::array<double, 2>> table;
  std::size_t line = 0;
  std::size_t column = 0;      // 1-based column of the value
  std::size_t text_offset = 0; // 0-based column of the first character inside quotes
};

struct Entry {
  Value value;
  std::size_t key_column = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::vector<std::string>>& schema() {
  static const std::map<std::string, std::vector<std::string>> s{
      {"geometry", {"nx", "ny", "length"}},
      {"physics",
       {"alpha_f", "alpha_p", "beta_f", "beta_p", "gamma_f", "gamma_p", "orientation", "advection"}},
      {"signals",
       {"disturbance_f", "disturbance_p", "reference_f", "reference_p", "noise_f", "noise_p"}},
      {"initial", {"plant_f", "plant_p", "observer_f", "observer_p", "servo_f", "servo_p"}},
      {"time", {"dt", "horizon"}},
      {"output", {"snapshot_every"}},
  };
  return s;
}

class LineParser {
 public:
  LineParser(const std::string& line, std::size_t number) : s_(line), line_(number) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, std::min(pos_, s_.size()) + 1);
  }

  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  bool at_end() {
    skip();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::size_t pos() const { return pos_; }

  std::string name() {
    skip();
    const auto start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (pos_ == start) fail("expected a name");
    return s_.substr(start, pos_ - start);
  }

  double number() {
    skip();
    const auto start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '+') ++pos_;
    const auto digits = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
            ((s_[pos_] == '-' || s_[pos_] == '+') && pos_ > start &&
             (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E')) ||
            (s_[pos_] == '-' && pos_ == start))) {
      ++pos_;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s_.data() + digits, s_.data() + pos_, v);
    if (pos_ == digits || ec != std::errc() || ptr != s_.data() + pos_ || !std::isfinite(v)) {
      pos_ = start;
      fail("malformed number");
    }
    return v;
  }

  Value value() {
    skip();
    Value v;
    v.line = line_;
    v.column = pos_ + 1;
    if (pos_ >= s_.size()) fail("missing value");
    if (s_[pos_] == '"') {
      v.kind = Value::Kind::String;
      ++pos_;
      v.text_offset = pos_;
      while (pos_ < s_.size() && s_[pos_] != '"') {
        if (s_[pos_] == '\\') {
          ++pos_;
          if (pos_ >= s_.size() || (s_[pos_] != '"' && s_[pos_] != '\\')) fail("unsupported escape");
        }
        v.text.push_back(s_[pos_++]);
      }
      if (pos_ >= s_.size()) fail("unterminated string");
      ++pos_;
      return v;
    }
    if (s_[pos_] == '[') {
      v.kind = Value::Kind::Table;
      ++pos_;
      if (!accept(']')) {
        do {
          if (!accept('[')) fail("expected '[' starting a [t, value] row");
          const double t = number();
          if (!accept(',')) fail("expected ','");
          const double y = number();
          if (!accept(']')) fail("expected ']' closing a [t, value] row");
          v.table.push_back({t, y});
        } while (accept(','));
        if (!accept(']')) fail("expected ']'");
      }
      return v;
    }
    v.kind = Value::Kind::Number;
    v.number = number();
    return v;
  }

 private:
  const std::string& s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::map<std::string, Section> parse_document(const std::string& text) {
  std::map<std::string, Section> doc;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  Section* current = nullptr;
  std::string current_name;
  while (std::getline(in, line)) {
    ++number;
    LineParser p(line, number);
    if (p.at_end()) continue;
    if (p.accept('[')) {
      const auto col = p.pos();
      const auto name = p.name();
      if (!p.accept(']')) p.fail("expected ']'");
      if (!p.at_end()) p.fail("unexpected text after section header");
      if (!schema().contains(name)) throw ParseError("unknown section [" + name + "]", number, col + 1);
      if (doc.contains(name)) throw ParseError("duplicate section [" + name + "]", number, col + 1);
      current = &doc[name];
      current_name = name;
      continue;
    }
    p.skip();
    const auto key_col = p.pos() + 1;
    const auto key = p.name();
    if (!current) throw ParseError("key '" + key + "' outside of any section", number, key_col);
    const auto& known = schema().at(current_name);
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError("unknown key '" + key + "' in [" + current_name + "]", number, key_col);
    }
    if (current->contains(key)) {
      throw ParseError("duplicate key '" + current_name + "." + key + "'", number, key_col);
    }
    if (!p.accept('=')) p.fail("expected '='");
    Entry e;
    e.value = p.value();
    e.key_column = key_col;
    if (!p.at_end()) p.fail("unexpected text after value");
    current->emplace(key, std::move(e));
  }
  return doc;
}

class Reader {
 public:
  explicit Reader(std::map<std::string, Section> doc) : doc_(std::move(doc)) {}

  const Entry* find(const std::string& section, const std::string& key) {
    auto s = doc_.find(section);
    if (s == doc_.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    return &k->second;
  }

  const Entry& require(const std::string& section, const std::string& key) {
    const auto* e = find(section, key);
    if (!e) throw ValidationError("missing required key '" + section + "." + key + "'");
    return *e;
  }

  static double as_number(const std::string& name, const Entry& e) {
    if (e.value.kind != Value::Kind::Number) {
      throw ParseError("'" + name + "' must be a number", e.value.line, e.value.column);
    }
    return e.value.number;
  }

  static std::size_t as_count(const std::string& name, const Entry& e) {
    const double v = as_number(name, e);
    if (v < 0.0 || v != std::floor(v) || v > 1e9) {
      throw ParseError("'" + name + "' must be a non-negative integer", e.value.line, e.value.column);
    }
    return static_cast<std::size_t>(v);
  }

  static std::string as_string(const std::string& name, const Entry& e) {
    if (e.value.kind != Value::Kind::String) {
      throw ParseError("'" + name + "' must be a string", e.value.line, e.value.column);
    }
    return e.value.text;
  }

  static Expression as_expression(const std::string& name, const Entry& e,
                                  const std::vector<Variable>& vars) {
    switch (e.value.kind) {
      case Value::Kind::Number: return Expression::constant(e.value.number);
      case Value::Kind::String:
        return Expression::parse(e.value.text, vars, e.value.line, e.value.text_offset);
      case Value::Kind::Table: break;
    }
    throw ParseError("'" + name + "' must be an expression", e.value.line, e.value.column);
  }

  double number(const std::string& section, const std::string& key) {
    return as_number(section + "." + key, require(section, key));
  }

  double number_or(const std::string& section, const std::string& key, double fallback) {
    const auto* e = find(section, key);
    return e ? as_number(section + "." + key, *e) : fallback;
  }

  std::size_t count(const std::string& section, const std::string& key) {
    return as_count(section + "." + key, require(section, key));
  }

  SignalSpec signal(const std::string& key) {
    SignalSpec s;
    const auto* e = find("signals", key);
    if (!e) return s;
    const auto name = "signals." + key;
    if (e->value.kind == Value::Kind::Table) {
      if (e->value.table.empty()) {
        throw ParseError("'" + name + "' table needs at least one row", e->value.line, e->value.column);
      }
      for (std::size_t k = 1; k < e->value.table.size(); ++k) {
        if (!(e->value.table[k][0] > e->value.table[k - 1][0])) {
          throw ParseError("'" + name + "' table times must increase", e->value.line, e->value.column);
        }
      }
      s.table = e->value.table;
      return s;
    }
    s.expression = as_expression(name, *e, {Variable::T, Variable::X});
    return s;
  }

  Expression initial(const std::string& key) {
    const auto* e = find("initial", key);
    return e ? as_expression("initial." + key, *e, {Variable::X, Variable::Y}) : Expression();
  }

 private:
  std::map<std::string, Section> doc_;
};

std::string format_number(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_signal(const SignalSpec& s) {
  if (!s.is_table()) return quote(s.expression.text());
  std::string out = "[";
  for (std::size_t k = 0; k < s.table.size(); ++k) {
    if (k) out += ", ";
    out += "[" + format_number(s.table[k][0]) + ", " + format_number(s.table[k][1]) + "]";
  }
  return out + "]";
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  Reader r(parse_document(text));
  ScenarioConfig c;
  c.nx = r.count("geometry", "nx");
  c.ny = r.count("geometry", "ny");
  c.length = r.number("geometry", "length");

  c.physics.alpha_f = r.number("physics", "alpha_f");
  c.physics.alpha_p = r.number("physics", "alpha_p");
  c.physics.gamma_f = r.number("physics", "gamma_f");
  c.physics.gamma_p = r.number("physics", "gamma_p");
  c.physics.beta_f = r.number_or("physics", "beta_f", 0.0);
  c.physics.beta_p = r.number_or("physics", "beta_p", 0.0);
  c.physics.orientation = Orientation::CoCurrent;
  if (const auto* e = r.find("physics", "orientation")) {
    const auto v = Reader::as_string("physics.orientation", *e);
    if (v == "cocurrent") c.physics.orientation = Orientation::CoCurrent;
    else if (v == "countercurrent") c.physics.orientation = Orientation::CounterCurrent;
    else {
      throw ParseError("physics.orientation must be \"cocurrent\" or \"countercurrent\"",
                       e->value.line, e->value.column);
    }
  }
  if (const auto* e = r.find("physics", "advection")) {
    const auto v = Reader::as_string("physics.advection", *e);
    if (v == "centered") c.advection = AdvectionScheme::Centered;
    else if (v == "upwind") c.advection = AdvectionScheme::Upwind;
    else {
      throw ParseError("physics.advection must be \"centered\" or \"upwind\"", e->value.line,
                       e->value.column);
    }
  }

  c.disturbance_f = r.signal("disturbance_f");
  c.disturbance_p = r.signal("disturbance_p");
  c.reference_f = r.signal("reference_f");
  c.reference_p = r.signal("reference_p");
  c.noise_f = r.signal("noise_f");
  c.noise_p = r.signal("noise_p");

  c.plant_f = r.initial("plant_f");
  c.plant_p = r.initial("plant_p");
  c.observer_f = r.initial("observer_f");
  c.observer_p = r.initial("observer_p");
  c.servo_f = r.initial("servo_f");
  c.servo_p = r.initial("servo_p");

  c.dt = r.number("time", "dt");
  c.horizon = r.number("time", "horizon");
  if (const auto* e = r.find("output", "snapshot_every")) {
    c.snapshot_every = Reader::as_count("output.snapshot_every", *e);
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "[geometry]\n"
      << "nx = " << c.nx << "\n"
      << "ny = " << c.ny << "\n"
      << "length = " << format_number(c.length) << "\n\n";
  out << "[physics]\n"
      << "alpha_f = " << format_number(c.physics.alpha_f) << "\n"
      << "alpha_p = " << format_number(c.physics.alpha_p) << "\n"
      << "beta_f = " << format_number(c.physics.beta_f) << "\n"
      << "beta_p = " << format_number(c.physics.beta_p) << "\n"
      << "gamma_f = " << format_number(c.physics.gamma_f) << "\n"
      << "gamma_p = " << format_number(c.physics.gamma_p) << "\n"
      << "orientation = "
      << quote(c.physics.orientation == Orientation::CoCurrent ? "cocurrent" : "countercurrent") << "\n"
      << "advection = " << quote(c.advection == AdvectionScheme::Centered ? "centered" : "upwind")
      << "\n\n";
  out << "[signals]\n"
      << "disturbance_f = " << format_signal(c.disturbance_f) << "\n"
      << "disturbance_p = " << format_signal(c.disturbance_p) << "\n"
      << "reference_f = " << format_signal(c.reference_f) << "\n"
      << "reference_p = " << format_signal(c.reference_p) << "\n"
      << "noise_f = " << format_signal(c.noise_f) << "\n"
      << "noise_p = " << format_signal(c.noise_p) << "\n\n";
  out << "[initial]\n"
      << "plant_f = " << quote(c.plant_f.text()) << "\n"
      << "plant_p = " << quote(c.plant_p.text()) << "\n"
      << "observer_f = " << quote(c.observer_f.text()) << "\n"
      << "observer_p = " << quote(c.observer_p.text()) << "\n"
      << "servo_f = " << quote(c.servo_f.text()) << "\n"
      << "servo_p = " << quote(c.servo_p.text()) << "\n\n";
  out << "[time]\n"
      << "dt = " << format_number(c.dt) << "\n"
      << "horizon = " << format_number(c.horizon) << "\n\n";
  out << "[output]\n"
      << "snapshot_every = " << c.snapshot_every << "\n";
  return out.str();
}

namespace {

void require_positive(const char* key, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(key) + " must be positive and finite");
  }
}

BoundarySignal make_signal(Segment s, const SignalSpec& f, const SignalSpec& p) {
  return BoundarySignal(s, [f, p](double t, double x) { return std::array<double, 2>{f(t, x), p(t, x)}; });
}

FieldPair make_field(const Grid& grid, const Expression& f, const Expression& p) {
  return FieldPair::sample(
      grid, [&](double x, double y) { return f(0.0, x, y); },
      [&](double x, double y) { return p(0.0, x, y); });
}

}  // namespace

Scenario to_scenario(const ScenarioConfig& c) {
  if (c.nx < 3) throw ValidationError("geometry.nx must be at least 3");
  if (c.ny < 3) throw ValidationError("geometry.ny must be at least 3");
  require_positive("geometry.length", c.length);
  require_positive("physics.alpha_f", c.physics.alpha_f);
  require_positive("physics.alpha_p", c.physics.alpha_p);
  require_positive("physics.gamma_f", c.physics.gamma_f);
  require_positive("physics.gamma_p", c.physics.gamma_p);
  if (!(c.physics.beta_f >= 0.0) || !std::isfinite(c.physics.beta_f)) {
    throw ValidationError("physics.beta_f must be non-negative and finite");
  }
  if (!std::isfinite(c.physics.beta_p)) throw ValidationError("physics.beta_p must be finite");
  require_positive("time.dt", c.dt);
  require_positive("time.horizon", c.horizon);
  if (c.horizon < c.dt) throw ValidationError("time.horizon must be at least time.dt");
  const double steps = c.horizon / c.dt;
  if (std::abs(steps - std::round(steps)) > 1e-9 * steps) {
    throw ValidationError("time.horizon must be a whole number of time.dt steps");
  }

  Scenario s;
  s.params = c.physics;
  s.grid = make_grid(c.nx, c.ny, c.length);
  s.scheme = c.advection;
  s.disturbance = make_signal(Segment::Gamma1, c.disturbance_f, c.disturbance_p);
  s.reference = make_signal(Segment::Gamma3, c.reference_f, c.reference_p);
  s.noise = make_signal(Segment::Gamma1, c.noise_f, c.noise_p);
  s.w0 = make_field(s.grid, c.plant_f, c.plant_p);
  s.w_hat0 = make_field(s.grid, c.observer_f, c.observer_p);
  s.v0 = make_field(s.grid, c.servo_f, c.servo_p);
  for (const auto* w : {&s.w0, &s.w_hat0, &s.v0}) {
    for (const auto* comp : {&w->f, &w->p}) {
      if (!std::all_of(comp->begin(), comp->end(), [](double v) { return std::isfinite(v); })) {
        throw ValidationError("[initial] expressions must be finite on the grid");
      }
    }
  }
  s.dt = c.dt;
  s.horizon = c.horizon;
  s.validate();
  return s;
}

Scenario parse_scenario(const std::string& text) { return to_scenario(parse_config(text)); }

}  // namespace dcmd::io
