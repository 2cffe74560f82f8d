#include "casimir/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "casimir/csv.hpp"
#include "casimir/kramers_kronig.hpp"

namespace casimir {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& sec, const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos]))) ++pos;
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("[" + sec + "] " + key + ": cannot parse number '" + v + "'");
  }
}

} // namespace

bool IniFile::has_section(const std::string& s) const {
  for (const auto& [name, kv] : sections)
    if (name == s) return true;
  return false;
}

const std::vector<std::pair<std::string, std::string>>* IniFile::section(const std::string& s) const {
  for (const auto& [name, kv] : sections)
    if (name == s) return &kv;
  return nullptr;
}

std::optional<std::string> IniFile::get(const std::string& sec, const std::string& key) const {
  const auto* kv = section(sec);
  if (!kv) return std::nullopt;
  for (const auto& [k, v] : *kv)
    if (k == key) return v;
  return std::nullopt;
}

IniFile IniFile::parse(const std::string& text) {
  IniFile f;
  std::istringstream in(text);
  std::string line, cur;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      cur = trim(line.substr(1, line.size() - 2));
      f.sections.push_back({cur, {}});
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (cur.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
    f.sections.back().second.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
  }
  return f;
}

std::string IniFile::serialize() const {
  std::string out;
  for (const auto& [name, kv] : sections) {
    out += "[" + name + "]\n";
    for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct SectionReader {
  const IniFile& ini;
  std::string sec;
  double omega_scale; // 0 = absolute rad/s

  std::optional<std::string> raw(const std::string& key) const { return ini.get(sec, key); }

  double number(const std::string& key, std::optional<double> def = std::nullopt) const {
    auto v = raw(key);
    if (!v) {
      if (def) return *def;
      throw ConfigError("[" + sec + "] missing key '" + key + "'");
    }
    return to_double(sec, key, *v);
  }

  // frequency-valued key: multiples of omega_scale when one is declared
  double freq(const std::string& key, std::optional<double> def = std::nullopt) const {
    auto v = raw(key);
    if (!v) {
      if (def) return *def;
      throw ConfigError("[" + sec + "] missing frequency key '" + key + "'");
    }
    const double x = to_double(sec, key, *v);
    return omega_scale > 0.0 ? x * omega_scale : x;
  }
};

LorentzResonanceParams lorentz_from(const SectionReader& r, const std::string& suffix) {
  LorentzResonanceParams p;
  p.strength = r.freq("Omega" + suffix, 0.0);
  p.resonance = r.freq("omega" + suffix, 0.0);
  p.dissipation = r.freq("gamma" + suffix, 0.0);
  return p;
}

CompositeAxisParams composite_axis_from(const SectionReader& r, const std::string& axis,
                                        const std::string& fallback_axis) {
  auto key = [&](const std::string& base) {
    const std::string k = base + axis;
    if (r.raw(k)) return k;
    return base + fallback_axis;
  };
  CompositeAxisParams p;
  p.filling = r.number(key("f_"), 0.0);
  p.resonance.strength = r.freq(key("Omega_e_"), 0.0);
  p.resonance.resonance = r.freq(key("omega_e_"), 0.0);
  p.resonance.dissipation = r.freq(key("gamma_e_"), 0.0);
  p.drude.plasma_freq = r.freq(key("Omega_D_"), 0.0);
  p.drude.dissipation = r.freq(key("gamma_D_"), 0.0);
  return p;
}

std::vector<LorentzResonanceParams> host_oscillators(const SectionReader& r) {
  std::vector<LorentzResonanceParams> osc;
  for (int i = 1;; ++i) {
    const std::string suffix = "_h" + std::to_string(i);
    if (!r.raw("Omega" + suffix)) break;
    osc.push_back(lorentz_from(r, suffix));
  }
  return osc;
}

MaterialPtr material_from(const SectionReader& r) {
  const std::string model = r.raw("model").value_or("vacuum");
  if (model == "vacuum") return std::make_shared<Vacuum>();
  if (model == "drude" || model == "plasma") {
    DrudeParams p;
    p.plasma_freq = r.freq("Omega");
    p.dissipation = model == "plasma" ? 0.0 : r.freq("gamma", 0.0);
    return std::make_shared<DrudeMetal>(p);
  }
  if (model == "composite") {
    CompositeAxisParams e;
    e.filling = r.number("f", 0.0);
    e.resonance = lorentz_from(r, "_e");
    e.drude.plasma_freq = r.freq("Omega_D", 0.0);
    e.drude.dissipation = r.freq("gamma_D", 0.0);
    return std::make_shared<IsotropicCompositeMM>(e, lorentz_from(r, "_m"));
  }
  if (model == "tensor") {
    return std::make_shared<TensorMM>(
        composite_axis_from(r, "x", "x"), composite_axis_from(r, "y", "x"),
        composite_axis_from(r, "z", "x"), lorentz_from(r, "_m_x"),
        r.raw("Omega_m_y") ? lorentz_from(r, "_m_y") : lorentz_from(r, "_m_x"),
        lorentz_from(r, "_m_z"));
  }
  if (model == "nc") {
    DrudeParams met;
    met.plasma_freq = r.freq("Omega_met");
    met.dissipation = r.freq("gamma_met", 0.0);
    return std::make_shared<NonConnectedMM>(r.number("f"), met, host_oscillators(r),
                                            lorentz_from(r, "_e"), lorentz_from(r, "_m"));
  }
  if (model == "oscillators") {
    return std::make_shared<OscillatorDielectric>(host_oscillators(r));
  }
  if (model == "spheres_kk") {
    PolaritonicParams p;
    p.eps_inf = r.number("eps_inf", 1.0);
    p.Omega_pol = r.freq("Omega_pol");
    p.omega_pol = r.freq("omega_pol");
    p.gamma_pol = r.freq("gamma_pol", 0.0);
    return std::make_shared<SphereCompositeMaterial>(r.number("f"), r.number("radius"), p,
                                                     r.number("eps_host", 1.0));
  }
  throw ConfigError("[" + r.sec + "] unknown material model '" + model + "'");
}

Layer layer_from(const IniFile& ini, const std::string& sec, double omega_scale) {
  SectionReader r{ini, sec, omega_scale};
  Layer l;
  l.material = ini.has_section(sec) ? material_from(r) : std::make_shared<Vacuum>();
  if (auto th = ini.get(sec, "thickness")) {
    if (*th != "inf" && *th != "halfspace") l.thickness = to_double(sec, "thickness", *th);
  }
  return l;
}

const std::set<std::string> kKnownSections = {
    "preset", "units", "metal", "metamaterial", "geometry", "atom",
    "sweep",  "quadrature", "output", "grid"};

std::set<std::string> known_keys(const std::string& sec) {
  if (sec == "units") return {"omega_scale"};
  if (sec == "geometry") return {"gap", "temperature"};
  if (sec == "atom") return {"alpha0_cm3", "omega0", "mass_kg", "trap_hz"};
  if (sec == "sweep") return {"variable", "min", "max", "points", "spacing"};
  if (sec == "quadrature")
    return {"rel_tol", "cutoff_mult", "k_budget", "phi_nodes", "matsubara_tol", "threads"};
  if (sec == "output") return {"path"};
  if (sec == "preset") return {"id"};
  if (sec == "metal" || sec == "metamaterial") {
    std::set<std::string> k = {"model", "thickness", "Omega", "gamma", "f",
                               "Omega_e", "omega_e", "gamma_e",
                               "Omega_m", "omega_m", "gamma_m",
                               "Omega_D", "gamma_D",
                               "Omega_met", "gamma_met",
                               "eps_inf", "Omega_pol", "omega_pol", "gamma_pol",
                               "radius", "eps_host"};
    for (const char* a : {"x", "y", "z"}) {
      k.insert(std::string("f_") + a);
      for (const char* b : {"Omega_e_", "omega_e_", "gamma_e_", "Omega_D_", "gamma_D_",
                            "Omega_m_", "omega_m_", "gamma_m_"})
        k.insert(std::string(b) + a);
    }
    for (int i = 1; i <= 8; ++i) {
      k.insert("Omega_h" + std::to_string(i));
      k.insert("omega_h" + std::to_string(i));
      k.insert("gamma_h" + std::to_string(i));
    }
    return k;
  }
  if (sec == "grid") {
    return {"d_over_lambda_min", "d_over_lambda_max", "d_points", "fillings",
            "f_min", "f_max", "f_points", "fy_factors", "fx_values",
            "temperatures", "metals", "toggles",
            "xi_over_omega_min", "xi_over_omega_max", "xi_points",
            "d_min", "d_max", "z_min", "z_max", "z_points", "ratios", "variants"};
  }
  return {};
}

} // namespace

RunConfig parse_run_config(const std::string& text) {
  RunConfig cfg;
  cfg.raw = IniFile::parse(text);
  const IniFile& ini = cfg.raw;

  cfg.omega_scale = 0.0;
  if (auto s = ini.get("units", "omega_scale")) cfg.omega_scale = to_double("units", "omega_scale", *s);

  cfg.scenario.layer1 = layer_from(ini, "metal", cfg.omega_scale);
  cfg.scenario.layer2 = layer_from(ini, "metamaterial", cfg.omega_scale);

  const bool preset = ini.has_section("preset");
  SectionReader geom{ini, "geometry", 0.0};
  if (ini.has_section("geometry")) {
    cfg.scenario.gap =
        geom.number("gap", preset ? std::optional<double>(0.0) : std::optional<double>());
    cfg.scenario.temperature = geom.number("temperature", 0.0);
  } else if (!preset) {
    throw ConfigError("missing required section [geometry]");
  }
  if (!preset && !(cfg.scenario.gap > 0.0)) throw ConfigError("[geometry] gap must be > 0");
  if (cfg.scenario.temperature < 0.0) throw ConfigError("[geometry] temperature must be >= 0");

  if (ini.has_section("atom")) {
    SectionReader a{ini, "atom", cfg.omega_scale};
    AtomParams atom;
    atom.alpha0 = polarizability_cm3_to_m3(a.number("alpha0_cm3"));
    atom.omega0 = a.freq("omega0");
    atom.mass = a.number("mass_kg");
    atom.omega_z = 2.0 * kPi * a.number("trap_hz");
    if (!(atom.alpha0 > 0.0) || !(atom.omega0 > 0.0) || !(atom.mass > 0.0) || !(atom.omega_z > 0.0))
      throw ConfigError("[atom] all parameters must be > 0");
    cfg.scenario.atom = atom;
  }

  if (ini.has_section("quadrature")) {
    SectionReader q{ini, "quadrature", 0.0};
    cfg.scenario.quad.rel_tol = q.number("rel_tol", 1e-6);
    cfg.scenario.quad.cutoff_mult = q.number("cutoff_mult", 30.0);
    cfg.scenario.quad.k_budget = static_cast<long long>(q.number("k_budget", 40000));
    cfg.scenario.quad.phi_nodes = static_cast<int>(q.number("phi_nodes", 16));
    cfg.scenario.quad.matsubara_tol = q.number("matsubara_tol", 1e-8);
    cfg.scenario.quad.threads = static_cast<int>(q.number("threads", 1));
  }
  cfg.scenario.quad.validate();

  if (ini.has_section("sweep")) {
    SweepSpec sw;
    SectionReader s{ini, "sweep", 0.0};
    const std::string var = s.raw("variable").value_or("gap");
    if (var == "gap") sw.variable = SweepVariable::kGap;
    else if (var == "temperature") sw.variable = SweepVariable::kTemperature;
    else if (var == "z") sw.variable = SweepVariable::kZ;
    else if (var == "filling_factor") sw.variable = SweepVariable::kFillingFactor;
    else if (var == "dissipation_scale") sw.variable = SweepVariable::kDissipationScale;
    else throw ConfigError("[sweep] unknown variable '" + var + "'");
    sw.min = s.number("min");
    sw.max = s.number("max");
    sw.points = static_cast<int>(s.number("points", 10));
    const std::string spacing = s.raw("spacing").value_or("log");
    if (spacing == "log") sw.log_spacing = true;
    else if (spacing == "linear") sw.log_spacing = false;
    else throw ConfigError("[sweep] spacing must be 'linear' or 'log'");
    if (!(sw.min < sw.max)) throw ConfigError("[sweep] requires min < max");
    if (sw.points < 1) throw ConfigError("[sweep] points must be >= 1");
    if (sw.log_spacing && !(sw.min > 0.0)) throw ConfigError("[sweep] log spacing needs min > 0");
    cfg.sweep = sw;
  }

  if (auto p = ini.get("output", "path")) cfg.output_path = *p;
  return cfg;
}

std::vector<Diagnostic> validate_config(const std::string& text) {
  std::vector<Diagnostic> out;
  IniFile ini;
  try {
    ini = IniFile::parse(text);
  } catch (const ConfigError& e) {
    out.push_back({Diagnostic::Severity::kError, e.what()});
    return out;
  }

  if (ini.sections.empty()) {
    out.push_back({Diagnostic::Severity::kError,
                   "empty config: required sections [geometry] plus [metal] and/or [metamaterial]"});
    return out;
  }

  for (const auto& [name, kv] : ini.sections) {
    if (!kKnownSections.count(name)) {
      out.push_back({Diagnostic::Severity::kWarning, "unknown section [" + name + "]"});
      continue;
    }
    const auto known = known_keys(name);
    for (const auto& [k, v] : kv)
      if (!known.count(k))
        out.push_back({Diagnostic::Severity::kWarning, "unknown key '" + k + "' in [" + name + "]"});
  }

  RunConfig cfg;
  try {
    cfg = parse_run_config(text);
  } catch (const std::exception& e) {
    out.push_back({Diagnostic::Severity::kError, e.what()});
    return out;
  }

  // unit and range checks
  for (const auto& sec : {std::string("metal"), std::string("metamaterial")}) {
    if (!ini.has_section(sec)) continue;
    for (const auto& [k, v] : *ini.section(sec)) {
      if (k == "model" || k == "thickness") continue;
      double x = 0;
      try {
        x = to_double(sec, k, v);
      } catch (...) {
        continue;
      }
      if ((k == "f" || k.rfind("f_", 0) == 0) && (x < 0.0 || x > 1.0))
        out.push_back({Diagnostic::Severity::kError,
                       "[" + sec + "] filling factor " + k + " outside [0, 1]"});
      else if (x < 0.0)
        out.push_back({Diagnostic::Severity::kError, "[" + sec + "] " + k + " must be >= 0"});
    }
  }

  // regime warnings
  for (const auto& sec : {std::string("metal"), std::string("metamaterial")}) {
    if (!ini.has_section(sec)) continue;
    SectionReader r{ini, sec, cfg.omega_scale};
    const std::string model = r.raw("model").value_or("vacuum");
    auto th = ini.get(sec, "thickness");
    if (th && *th != "inf" && *th != "halfspace") {
      double t = 0.0;
      try {
        t = to_double(sec, "thickness", *th);
      } catch (...) {
      }
      if (!(t > 0.0))
        out.push_back({Diagnostic::Severity::kError,
                       "[" + sec + "] finite thickness must be > 0"});
      if (model == "tensor")
        out.push_back({Diagnostic::Severity::kError,
                       "[" + sec + "] finite-thickness biaxial layers are unsupported"});
    }
    if (th && *th != "inf" && *th != "halfspace" && (model == "drude" || model == "plasma")) {
      DrudeParams p{r.freq("Omega", 0.0), r.freq("gamma", 0.0)};
      if (p.plasma_freq > 0.0) {
        const double bound = min_halfspace_thickness(p, ThicknessRegime::kHighFrequency);
        const double t = to_double(sec, "thickness", *th);
        if (t < bound) {
          out.push_back({Diagnostic::Severity::kWarning,
                         "[" + sec + "] slab of " + format_double(t) +
                             " m is thinner than the half-space bound lambda_p/2pi = " +
                             format_double(bound) + " m (typically 10-20 nm for metals)"});
        }
      }
    }
    if (model == "spheres_kk") {
      const double R = r.number("radius", 0.0);
      const double w_hi = 2.0 * r.freq("Omega_pol", 0.0);
      if (R > 0.0 && w_hi * R / kLightSpeed > 0.3)
        out.push_back({Diagnostic::Severity::kWarning,
                       "[" + sec + "] x = omega R / c exceeds 0.3 below twice the polaritonic "
                       "strength frequency; the effective-medium description is strained"});
    }
  }
  return out;
}

std::string serialize_run_config(const RunConfig& cfg) { return cfg.raw.serialize(); }

} // namespace casimir
