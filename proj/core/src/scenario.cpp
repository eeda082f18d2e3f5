#include "fourflow/scenario.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "fourflow/errors.hpp"

namespace fourflow {

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::canonical4d: return "canonical4d";
    case RunMode::gauge4d: return "gauge4d";
    case RunMode::reference3d: return "reference3d";
    case RunMode::compare: return "compare";
    case RunMode::quantum: return "quantum";
  }
  return "?";
}

namespace {

struct RawValue {
  std::string text;
  int line = 0;
  mutable bool used = false;
};

struct RawSection {
  int line = 0;
  std::map<std::string, RawValue> kv;
  mutable bool used = false;
};

using RawFile = std::map<std::string, RawSection>;  // "" is the top level

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  return !std::isdigit(static_cast<unsigned char>(s.front()));
}

// Collects the raw section/key structure; grammar errors land in errors.
RawFile parse_raw(std::string_view text, std::vector<std::string>& errors) {
  RawFile raw;
  raw[""].line = 0;
  std::string current;

  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back("line " + std::to_string(lineno) + ": unterminated section header");
        continue;
      }
      const auto name = std::string(trim(line.substr(1, line.size() - 2)));
      if (!valid_name(name)) {
        errors.push_back("line " + std::to_string(lineno) + ": invalid section name '" + name +
                         "'");
        continue;
      }
      if (raw.count(name)) {
        errors.push_back("line " + std::to_string(lineno) + ": duplicate section [" + name + "]");
        current = name;
        continue;
      }
      raw[name].line = lineno;
      current = name;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected 'key = value' or '[section]'");
      continue;
    }
    const auto key = std::string(trim(line.substr(0, eq)));
    const auto value = std::string(trim(line.substr(eq + 1)));
    if (!valid_name(key)) {
      errors.push_back("line " + std::to_string(lineno) + ": invalid key '" + key + "'");
      continue;
    }
    if (value.empty()) {
      errors.push_back("line " + std::to_string(lineno) + ": empty value for '" + key + "'");
      continue;
    }
    auto& sec = raw[current];
    if (sec.kv.count(key)) {
      errors.push_back("line " + std::to_string(lineno) + ": duplicate key '" + key + "'" +
                       (current.empty() ? "" : " in [" + current + "]"));
      continue;
    }
    sec.kv[key] = RawValue{value, lineno};
  }
  return raw;
}

// Typed access with error collection.
class Reader {
public:
  Reader(const RawFile& raw, std::vector<std::string>& errors) : raw_(raw), errors_(&errors) {}

  bool has_section(const std::string& name) const {
    const auto it = raw_.find(name);
    if (it == raw_.end()) return false;
    return true;
  }

  bool has_key(const std::string& sec, const std::string& key) const {
    const auto s = raw_.find(sec);
    if (s == raw_.end()) return false;
    return s->second.kv.count(key) != 0;
  }

  void mark_section_used(const std::string& name) const {
    const auto it = raw_.find(name);
    if (it != raw_.end()) it->second.used = true;
  }

  const RawValue* find(const std::string& sec, const std::string& key) const {
    const auto s = raw_.find(sec);
    if (s == raw_.end()) return nullptr;
    const auto k = s->second.kv.find(key);
    if (k == s->second.kv.end()) return nullptr;
    k->second.used = true;
    return &k->second;
  }

  std::optional<std::string> get_string(const std::string& sec, const std::string& key) const {
    const RawValue* v = find(sec, key);
    if (!v) return std::nullopt;
    return v->text;
  }

  std::optional<double> get_double(const std::string& sec, const std::string& key) const {
    const RawValue* v = find(sec, key);
    if (!v) return std::nullopt;
    double out;
    if (!parse_double(v->text, out)) {
      fail(*v, key, "a number");
      return std::nullopt;
    }
    return out;
  }

  std::optional<long> get_long(const std::string& sec, const std::string& key) const {
    const RawValue* v = find(sec, key);
    if (!v) return std::nullopt;
    long out;
    const char* b = v->text.data();
    const char* e = b + v->text.size();
    const auto res = std::from_chars(b, e, out);
    if (res.ec != std::errc{} || res.ptr != e) {
      fail(*v, key, "an integer");
      return std::nullopt;
    }
    return out;
  }

  std::optional<Vec3> get_vec3(const std::string& sec, const std::string& key) const {
    const RawValue* v = find(sec, key);
    if (!v) return std::nullopt;
    std::istringstream ss(v->text);
    std::string a, b, c, extra;
    ss >> a >> b >> c;
    if (ss >> extra || a.empty() || b.empty() || c.empty()) {
      fail(*v, key, "three whitespace-separated numbers");
      return std::nullopt;
    }
    Vec3 out;
    if (!parse_double(a, out.x) || !parse_double(b, out.y) || !parse_double(c, out.z)) {
      fail(*v, key, "three whitespace-separated numbers");
      return std::nullopt;
    }
    return out;
  }

  void error(const std::string& msg) const { errors_->push_back(msg); }

  // Anything never touched by the schema is reported as unknown.
  void report_unused() const {
    for (const auto& [name, sec] : raw_) {
      if (!name.empty() && !sec.used) {
        errors_->push_back("line " + std::to_string(sec.line) + ": unknown section [" + name +
                           "]");
        continue;
      }
      for (const auto& [key, val] : sec.kv)
        if (!val.used)
          errors_->push_back("line " + std::to_string(val.line) + ": unknown key '" + key + "'" +
                             (name.empty() ? "" : " in [" + name + "]"));
    }
  }

private:
  // inf/nan have no place in a scenario file
  static bool parse_double(std::string_view s, double& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    const auto res = std::from_chars(b, e, out);
    return res.ec == std::errc{} && res.ptr == e && std::isfinite(out);
  }

  void fail(const RawValue& v, const std::string& key, const char* what) const {
    errors_->push_back("line " + std::to_string(v.line) + ": '" + key + "' must be " + what +
                       ", got '" + v.text + "'");
  }

  const RawFile& raw_;
  std::vector<std::string>* errors_;
};

std::optional<RunMode> mode_from_string(const std::string& s) {
  if (s == "canonical4d") return RunMode::canonical4d;
  if (s == "gauge4d") return RunMode::gauge4d;
  if (s == "reference3d") return RunMode::reference3d;
  if (s == "compare") return RunMode::compare;
  if (s == "quantum") return RunMode::quantum;
  return std::nullopt;
}

bool is_trajectory(RunMode m) { return m != RunMode::quantum; }

PotentialSpec read_potential(const Reader& rd, bool quantum, std::vector<std::string>& errors) {
  PotentialSpec pot;
  rd.mark_section_used("potential");
  pot.type = rd.get_string("potential", "type").value_or("none");

  auto need_scalar = [&](const char* key, double& slot) {
    if (const auto v = rd.get_double("potential", key)) slot = *v;
    else errors.push_back("[potential] type '" + pot.type + "' requires key '" + key + "'");
  };
  auto need_vec = [&](const char* key, Vec3& slot) {
    if (const auto v = rd.get_vec3("potential", key)) slot = *v;
    else errors.push_back("[potential] type '" + pot.type + "' requires key '" + key + "'");
  };

  if (pot.type == "none") {
    // nothing to read
  } else if (pot.type == "uniform") {
    need_scalar("v0", pot.v0);
  } else if (pot.type == "linear") {
    if (quantum) need_scalar("g", pot.g1);
    else need_vec("g", pot.g);
  } else if (pot.type == "harmonic") {
    need_scalar("k", pot.k);
    if (quantum) {
      if (const auto v = rd.get_double("potential", "center")) pot.center1 = *v;
    } else {
      if (const auto v = rd.get_vec3("potential", "center")) pot.center = *v;
    }
  } else if (pot.type == "driven_linear") {
    need_scalar("omega", pot.omega);
    if (quantum) need_scalar("f0", pot.f0);
    else need_vec("f", pot.f);
  } else {
    errors.push_back("[potential] unknown type '" + pot.type +
                     "' (known: none, uniform, linear, harmonic, driven_linear)");
  }
  return pot;
}

FieldSpec read_field(const Reader& rd, std::vector<std::string>& errors) {
  FieldSpec f;
  rd.mark_section_used("field");
  const auto type = rd.get_string("field", "type");
  if (!type) {
    errors.push_back("[field] requires key 'type'");
    return f;
  }
  f.type = *type;
  const bool needs_E = f.type == "uniform_E" || f.type == "crossed" || f.type == "ramp_E";
  const bool needs_B = f.type == "uniform_B" || f.type == "crossed";
  if (!needs_E && !needs_B) {
    errors.push_back("[field] unknown type '" + f.type +
                     "' (known: uniform_E, uniform_B, crossed, ramp_E)");
    return f;
  }
  if (needs_E) {
    if (const auto v = rd.get_vec3("field", "E")) f.E = *v;
    else errors.push_back("[field] type '" + f.type + "' requires key 'E'");
  }
  if (needs_B) {
    if (const auto v = rd.get_vec3("field", "B")) f.B = *v;
    else errors.push_back("[field] type '" + f.type + "' requires key 'B'");
  }
  return f;
}

IndexSpec read_index(const Reader& rd, std::vector<std::string>& errors) {
  IndexSpec idx;
  rd.mark_section_used("index");
  idx.type = rd.get_string("index", "type").value_or("uniform");
  if (const auto v = rd.get_double("index", "n0")) idx.n0 = *v;
  if (!(idx.n0 > 0.0)) errors.push_back("[index] n0 must be positive");
  if (idx.type == "uniform") {
    // nothing else
  } else if (idx.type == "linear_gradient") {
    if (const auto v = rd.get_vec3("index", "alpha")) idx.alpha = *v;
    else errors.push_back("[index] type 'linear_gradient' requires key 'alpha'");
  } else {
    errors.push_back("[index] unknown type '" + idx.type +
                     "' (known: uniform, linear_gradient)");
  }
  return idx;
}

}  // namespace

ScenarioParseResult parse_scenario(std::string_view text) {
  ScenarioParseResult result;
  auto& errors = result.errors;

  const RawFile raw = parse_raw(text, errors);
  const Reader rd(raw, errors);
  Scenario sc;

  // Mode first: it decides how the rest is interpreted.
  const auto mode_str = rd.get_string("", "mode");
  std::optional<RunMode> mode;
  if (!mode_str) {
    errors.push_back("missing required key 'mode' (canonical4d, gauge4d, reference3d, compare, "
                     "quantum)");
  } else {
    mode = mode_from_string(*mode_str);
    if (!mode)
      errors.push_back("unknown mode '" + *mode_str +
                       "' (known: canonical4d, gauge4d, reference3d, compare, quantum)");
  }

  if (const auto v = rd.get_double("", "dt")) {
    sc.dt = *v;
    if (!(sc.dt > 0.0)) errors.push_back("dt must be positive");
  } else if (!rd.has_key("", "dt")) {
    errors.push_back("missing required key 'dt'");
  }

  if (const auto v = rd.get_long("", "steps")) {
    sc.steps = *v;
    if (sc.steps < 1) errors.push_back("steps must be at least 1");
  } else if (!rd.has_key("", "steps")) {
    errors.push_back("missing required key 'steps'");
  }

  if (const auto v = rd.get_string("", "output")) sc.output = *v;
  else errors.push_back("missing required key 'output'");

  if (!mode) {
    rd.report_unused();
    return result;
  }
  sc.mode = *mode;
  const bool quantum = sc.mode == RunMode::quantum;

  // [model]
  rd.mark_section_used("model");
  sc.model.type = rd.get_string("model", "type").value_or("free_nonrel");
  if (const auto v = rd.get_double("model", "m")) sc.model.m = *v;
  if (const auto v = rd.get_double("model", "e")) sc.model.e = *v;
  if (const auto v = rd.get_double("model", "c")) sc.model.c = *v;
  if (const auto v = rd.get_double("model", "hbar")) sc.model.hbar = *v;
  if (!(sc.model.m > 0.0)) errors.push_back("[model] m must be positive");
  if (!(sc.model.c > 0.0)) errors.push_back("[model] c must be positive");
  if (!(sc.model.hbar > 0.0)) errors.push_back("[model] hbar must be positive");

  const bool known_model = sc.model.type == "free_nonrel" || sc.model.type == "relativistic" ||
                           sc.model.type == "charged_canonical" || sc.model.type == "optics_ray";
  if (!known_model)
    errors.push_back("[model] unknown type '" + sc.model.type +
                     "' (known: free_nonrel, relativistic, charged_canonical, optics_ray)");

  if (quantum && known_model && sc.model.type != "free_nonrel")
    errors.push_back("quantum mode supports model type 'free_nonrel' only");

  // [potential]
  if (rd.has_section("potential")) {
    if (sc.model.type == "charged_canonical" || sc.model.type == "optics_ray") {
      rd.mark_section_used("potential");
      errors.push_back("[potential] is not accepted by model '" + sc.model.type + "'");
    } else if (sc.mode == RunMode::gauge4d) {
      rd.mark_section_used("potential");
      errors.push_back("[potential] is not accepted in gauge4d mode (kinetic Hamiltonian only)");
    } else {
      sc.potential = read_potential(rd, quantum, errors);
    }
  }

  // [field]
  const bool field_required =
      sc.mode == RunMode::gauge4d || (!quantum && sc.model.type == "charged_canonical");
  if (rd.has_section("field")) {
    if (field_required) {
      sc.field = read_field(rd, errors);
    } else {
      rd.mark_section_used("field");
      errors.push_back("[field] is only accepted in gauge4d mode or with model "
                       "'charged_canonical'");
    }
  } else if (field_required) {
    errors.push_back(sc.mode == RunMode::gauge4d
                         ? "gauge4d mode requires a [field] section"
                         : "model 'charged_canonical' requires a [field] section");
  }

  if (sc.mode == RunMode::gauge4d && known_model && sc.model.type != "free_nonrel" &&
      sc.model.type != "relativistic")
    errors.push_back("gauge4d mode requires a kinetic model (free_nonrel or relativistic)");

  // [index]
  if (rd.has_section("index")) {
    if (sc.model.type == "optics_ray") {
      sc.index = read_index(rd, errors);
    } else {
      rd.mark_section_used("index");
      errors.push_back("[index] is only accepted with model 'optics_ray'");
    }
  } else if (sc.model.type == "optics_ray") {
    errors.push_back("model 'optics_ray' requires an [index] section");
  }

  // [initial] / [packet] / [grid]
  if (is_trajectory(sc.mode)) {
    rd.mark_section_used("initial");
    if (!rd.has_section("initial")) {
      errors.push_back(to_string(sc.mode) + " mode requires an [initial] section");
    } else {
      InitialSpec init;
      if (const auto v = rd.get_double("initial", "t0")) init.t0 = *v;
      if (const auto v = rd.get_vec3("initial", "r")) init.r = *v;
      else errors.push_back("[initial] requires key 'r'");
      if (const auto v = rd.get_vec3("initial", "p")) init.p = *v;
      else errors.push_back("[initial] requires key 'p'");
      sc.initial = init;
      if (sc.model.type == "optics_ray" && norm2(init.p) == 0.0)
        errors.push_back("model 'optics_ray' requires nonzero initial p (ray direction)");
    }
    if (rd.has_section("packet")) {
      rd.mark_section_used("packet");
      errors.push_back("[packet] is only accepted in quantum mode");
    }
    if (rd.has_section("grid")) {
      rd.mark_section_used("grid");
      errors.push_back("[grid] is only accepted in quantum mode");
    }
  } else {
    rd.mark_section_used("packet");
    if (!rd.has_section("packet")) {
      errors.push_back("quantum mode requires a [packet] section");
    } else {
      PacketSpec pk;
      if (const auto v = rd.get_double("packet", "x0")) pk.x0 = *v;
      if (const auto v = rd.get_double("packet", "k0")) pk.k0 = *v;
      if (const auto v = rd.get_double("packet", "sigma")) pk.sigma = *v;
      else errors.push_back("[packet] requires key 'sigma'");
      if (!(pk.sigma > 0.0)) errors.push_back("[packet] sigma must be positive");
      sc.packet = pk;
    }
    rd.mark_section_used("grid");
    if (const auto v = rd.get_long("grid", "n")) sc.grid.n = *v;
    if (const auto v = rd.get_double("grid", "xmin")) sc.grid.xmin = *v;
    if (const auto v = rd.get_double("grid", "xmax")) sc.grid.xmax = *v;
    if (sc.grid.n < 16) errors.push_back("[grid] n must be at least 16");
    if (!(sc.grid.xmax > sc.grid.xmin)) errors.push_back("[grid] xmax must exceed xmin");
    if (rd.has_section("initial")) {
      rd.mark_section_used("initial");
      errors.push_back("[initial] is not accepted in quantum mode");
    }
  }

  rd.report_unused();

  if (errors.empty()) result.scenario = std::move(sc);
  return result;
}

ScenarioParseResult parse_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading scenario file '" + path + "'");
  return parse_scenario(ss.str());
}

}  // namespace fourflow
