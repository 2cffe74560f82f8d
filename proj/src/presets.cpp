#include "casimir/presets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "casimir/kramers_kronig.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

// ---------------------------------------------------------------------------
// canned preset configs (pinned parameter sets)
// ---------------------------------------------------------------------------

// shared silver-scale metallic-MM blocks (frequencies in units of
// omega_scale = 1.37e16 rad/s)
const char* kFig4Metal =
    "[metal]\n"
    "model = drude\n"
    "Omega = 0.96\n"
    "gamma = 0.004\n";

const char* kFig4MM =
    "[metamaterial]\n"
    "model = composite\n"
    "f = 0\n"
    "Omega_e = 0.04\n"
    "omega_e = 0.1\n"
    "gamma_e = 0.005\n"
    "Omega_m = 0.1\n"
    "omega_m = 0.1\n"
    "gamma_m = 0.005\n"
    "Omega_D = 1\n"
    "gamma_D = 0.006\n";

const char* kUnits =
    "[units]\n"
    "omega_scale = 1.37e16\n";

const char* kQuad =
    "[quadrature]\n"
    "rel_tol = 1e-6\n"
    "cutoff_mult = 30\n"
    "k_budget = 40000\n"
    "phi_nodes = 16\n"
    "matsubara_tol = 1e-8\n";

// fig11 / fig12 non-connected MM (dimensional values, rad/s)
const char* kFig11MM =
    "[metamaterial]\n"
    "model = nc\n"
    "f = 0.1\n"
    "Omega_met = 1.32e16\n"
    "gamma_met = 5.48e13\n"
    "Omega_h1 = 2.52e16\n"
    "omega_h1 = 2.48e16\n"
    "Omega_h2 = 6.4e15\n"
    "omega_h2 = 3.8e15\n"
    "Omega_h3 = 1.9e14\n"
    "omega_h3 = 1.9e14\n"
    "Omega_e = 4.7e15\n"
    "omega_e = 2.7e15\n"
    "gamma_e = 5.5e14\n"
    "Omega_m = 8.7e14\n"
    "omega_m = 2e15\n"
    "gamma_m = 2.7e14\n";

std::string cat(std::initializer_list<const char*> parts) {
  std::string s;
  for (const char* p : parts) s += p;
  return s;
}

std::map<std::string, std::string> build_presets() {
  std::map<std::string, std::string> m;

  m["fig4"] = cat({"[preset]\nid = fig4\n", kUnits, kFig4Metal, kFig4MM,
                   "[geometry]\ntemperature = 0\n",
                   "[grid]\n"
                   "d_over_lambda_min = 0.05\n"
                   "d_over_lambda_max = 5\n"
                   "d_points = 50\n"
                   "fillings = 0,0.001,0.003,0.01\n",
                   kQuad, "[output]\npath = fig4.csv\n"});

  m["fig5"] = cat({"[preset]\nid = fig5\n", kUnits, kFig4Metal,
                   "[metamaterial]\n"
                   "model = tensor\n"
                   "f_x = 0\n"
                   "f_z = 0\n"
                   "Omega_e_x = 0.04\n"
                   "omega_e_x = 0.1\n"
                   "gamma_e_x = 0.005\n"
                   "Omega_D_x = 1\n"
                   "gamma_D_x = 0.006\n"
                   "Omega_m_x = 0.1\n"
                   "omega_m_x = 0.1\n"
                   "gamma_m_x = 0.005\n"
                   "Omega_m_z = 0.1\n"
                   "omega_m_z = 0.1\n"
                   "gamma_m_z = 0.005\n",
                   "[geometry]\ntemperature = 0\n",
                   "[grid]\n"
                   "f_min = 1e-5\n"
                   "f_max = 0.1\n"
                   "f_points = 13\n",
                   kQuad, "[output]\npath = fig5.csv\n"});

  m["fig6"] = cat({"[preset]\nid = fig6\n", kUnits, kFig4Metal, kFig4MM,
                   "[geometry]\ntemperature = 0\n",
                   "[grid]\n"
                   "d_over_lambda_min = 0.05\n"
                   "d_over_lambda_max = 5\n"
                   "d_points = 25\n"
                   "fx_values = 1e-4,1e-3,1e-2\n"
                   "fy_factors = 0.8,1,1.2\n",
                   kQuad, "[output]\npath = fig6.csv\n"});

  m["fig7"] = cat({"[preset]\nid = fig7\n", kUnits, kFig4Metal, kFig4MM,
                   "[geometry]\ntemperature = 0\n",
                   "[grid]\n"
                   "d_over_lambda_min = 0.05\n"
                   "d_over_lambda_max = 5\n"
                   "d_points = 25\n"
                   "variants = main,a,b\n"
                   "ratios = 0.1,0.5,2.5\n",
                   kQuad, "[output]\npath = fig7.csv\n"});

  m["fig8a"] = cat({"[preset]\nid = fig8a\n", kUnits, kFig4Metal, kFig4MM,
                    "[geometry]\ntemperature = 0\n",
                    "[grid]\n"
                    "d_over_lambda_min = 0.1\n"
                    "d_over_lambda_max = 40\n"
                    "d_points = 40\n"
                    "temperatures = 0,300,600\n",
                    kQuad, "[output]\npath = fig8a.csv\n"});

  m["fig8b"] = cat({"[preset]\nid = fig8b\n", kUnits,
                    "[metal]\n"
                    "model = plasma\n"
                    "Omega = 0.96\n",
                    kFig4MM, "[geometry]\ntemperature = 0\n",
                    "[grid]\n"
                    "d_over_lambda_min = 0.1\n"
                    "d_over_lambda_max = 40\n"
                    "d_points = 40\n"
                    "temperatures = 0,300\n",
                    kQuad, "[output]\npath = fig8b.csv\n"});

  m["fig9"] = cat({"[preset]\nid = fig9\n", kUnits,
                   "[metal]\n"
                   "model = drude\n"
                   "Omega = 0.96\n"
                   "gamma = 0.004\n",
                   "[metamaterial]\n"
                   "model = nc\n"
                   "f = 0.1\n"
                   "Omega_met = 0.96\n"
                   "gamma_met = 0.004\n"
                   "Omega_h1 = 1.84\n"
                   "omega_h1 = 1.81\n"
                   "Omega_h2 = 0.47\n"
                   "omega_h2 = 0.28\n"
                   "Omega_h3 = 0.014\n"
                   "omega_h3 = 0.014\n"
                   "Omega_e = 0.34\n"
                   "omega_e = 0.2\n"
                   "gamma_e = 0.04\n"
                   "Omega_m = 0.064\n"
                   "omega_m = 0.15\n"
                   "gamma_m = 0.02\n",
                   "[geometry]\ntemperature = 0\n",
                   "[grid]\n"
                   "d_over_lambda_min = 0.05\n"
                   "d_over_lambda_max = 5\n"
                   "d_points = 40\n",
                   kQuad, "[output]\npath = fig9.csv\n"});

  // TlCl-like polaritonic spheres in vacuum; the radius and filling factor
  // are free knobs of this preset, pinned here (see README)
  m["fig10"] = cat({"[preset]\nid = fig10\n", kUnits,
                    "[metamaterial]\n"
                    "model = spheres_kk\n"
                    "f = 0.4\n"
                    "radius = 5e-9\n"
                    "eps_inf = 2\n"
                    "Omega_pol = 0.4\n"
                    "omega_pol = 0.15\n"
                    "gamma_pol = 0.001\n",
                    "[geometry]\ntemperature = 0\n",
                    "[grid]\n"
                    "xi_over_omega_min = 0.005\n"
                    "xi_over_omega_max = 1\n"
                    "xi_points = 60\n",
                    kQuad, "[output]\npath = fig10.csv\n"});

  m["fig11"] = cat({"[preset]\nid = fig11\n",
                    "[metal]\n"
                    "model = drude\n"
                    "Omega = 1.32e16\n"
                    "gamma = 5.48e13\n",
                    kFig11MM, "[geometry]\ntemperature = 0\n",
                    "[grid]\n"
                    "d_min = 2e-7\n"
                    "d_max = 1.2e-6\n"
                    "d_points = 12\n"
                    "temperatures = 0,300\n"
                    "metals = drude,plasma\n"
                    "toggles = magnetic,electric\n",
                    kQuad, "[output]\npath = fig11.csv\n"});

  m["fig12"] = cat({"[preset]\nid = fig12\n",
                    "[metal]\nmodel = vacuum\n", kFig11MM,
                    "[atom]\n"
                    "alpha0_cm3 = 4.74e-23\n"
                    "omega0 = 2.54e15\n"
                    "mass_kg = 1.45e-25\n"
                    "trap_hz = 229\n",
                    "[geometry]\ntemperature = 0\n",
                    "[grid]\n"
                    "z_min = 5e-7\n"
                    "z_max = 6e-6\n"
                    "z_points = 16\n",
                    kQuad, "[output]\npath = fig12.csv\n"});
  return m;
}

const std::map<std::string, std::string>& presets() {
  static const std::map<std::string, std::string> m = build_presets();
  return m;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::vector<std::string> parse_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::vector<double> grid_points(double lo, double hi, int n, bool log_spacing) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    v[i] = log_spacing ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
  }
  return v;
}

double lambda_scale(const RunConfig& cfg) {
  if (!(cfg.omega_scale > 0.0)) throw ConfigError("preset grid in d/lambda needs [units] omega_scale");
  return 2.0 * kPi * kLightSpeed / cfg.omega_scale;
}

struct GridReader {
  const RunConfig& cfg;
  double num(const std::string& key, double def) const {
    auto v = cfg.raw.get("grid", key);
    return v ? std::stod(*v) : def;
  }
  std::vector<double> list(const std::string& key, const std::string& def) const {
    return parse_list(cfg.raw.get("grid", key).value_or(def));
  }
  std::vector<std::string> names(const std::string& key, const std::string& def) const {
    return parse_names(cfg.raw.get("grid", key).value_or(def));
  }
};

void track(RunSummary& s, const ForceResult& r) {
  s.evals += r.evals;
  s.max_abs_error = std::max(s.max_abs_error, r.abs_error);
  ++s.points;
}

// ---------------------------------------------------------------------------
// per-figure runners
// ---------------------------------------------------------------------------

RunOutput run_fig4(const RunConfig& cfg) {
  const double lam = lambda_scale(cfg);
  GridReader g{cfg};
  const auto ds = grid_points(g.num("d_over_lambda_min", 0.05), g.num("d_over_lambda_max", 5.0),
                              static_cast<int>(g.num("d_points", 50)), true);
  const auto fillings = g.list("fillings", "0,0.001,0.003,0.01");
  auto mm = std::dynamic_pointer_cast<const IsotropicCompositeMM>(cfg.scenario.layer2.material);
  if (!mm) throw ConfigError("fig4 preset needs a composite metamaterial");

  RunOutput out{CsvWriter({"d_over_lambda", "f", "F_over_FC", "err"}), {}};
  for (double f : fillings) {
    CompositeAxisParams e = mm->eps_params();
    e.filling = f;
    Scenario s = cfg.scenario;
    s.layer2.material = std::make_shared<IsotropicCompositeMM>(e, mm->mu_params());
    for (double dl : ds) {
      s.gap = dl * lam;
      const ForceResult r = casimir_force(s);
      out.csv.add_row_values({dl, f, r.F_over_FC, r.abs_error / ideal_normalization(s.gap)});
      track(out.summary, r);
    }
  }
  return out;
}

RunOutput run_fig5(const RunConfig& cfg) {
  const double lam = lambda_scale(cfg);
  GridReader g{cfg};
  const auto fs = grid_points(g.num("f_min", 1e-5), g.num("f_max", 0.1),
                              static_cast<int>(g.num("f_points", 13)), true);
  auto mm = std::dynamic_pointer_cast<const TensorMM>(cfg.scenario.layer2.material);
  if (!mm) throw ConfigError("fig5 preset needs a tensor metamaterial");

  RunOutput out{CsvWriter({"f_x", "f_z", "F_over_FC", "err"}), {}};
  Scenario s = cfg.scenario;
  s.gap = lam;
  for (double fx : fs) {
    for (double fz : fs) {
      CompositeAxisParams ex = mm->eps_axis(0), ez = mm->eps_axis(2);
      ex.filling = fx;
      ez.filling = fz;
      s.layer2.material = std::make_shared<TensorMM>(ex, ex, ez, mm->mu_axis(0), mm->mu_axis(1),
                                                     mm->mu_axis(2));
      const ForceResult r = casimir_force(s);
      out.csv.add_row_values({fx, fz, r.F_over_FC, r.abs_error / ideal_normalization(s.gap)});
      track(out.summary, r);
    }
  }
  return out;
}

RunOutput run_fig6(const RunConfig& cfg) {
  const double lam = lambda_scale(cfg);
  GridReader g{cfg};
  const auto ds = grid_points(g.num("d_over_lambda_min", 0.05), g.num("d_over_lambda_max", 5.0),
                              static_cast<int>(g.num("d_points", 25)), true);
  const auto fxs = g.list("fx_values", "1e-4,1e-3,1e-2");
  const auto fy_factors = g.list("fy_factors", "0.8,1,1.2");
  auto mm = std::dynamic_pointer_cast<const IsotropicCompositeMM>(cfg.scenario.layer2.material);
  if (!mm) throw ConfigError("fig6 preset needs a composite metamaterial");

  RunOutput out{CsvWriter({"d_over_lambda", "f_x", "f_y", "F_over_FC", "err"}), {}};
  for (double fx : fxs) {
    for (double fac : fy_factors) {
      const double fy = fac * fx;
      CompositeAxisParams ex = mm->eps_params(), ey = mm->eps_params(), ez = mm->eps_params();
      ex.filling = fx;
      ey.filling = fy;
      ez.filling = fx;
      LorentzResonanceParams mu = mm->mu_params(), mu_z; // mu_zz = 1
      Scenario s = cfg.scenario;
      s.layer2.material = std::make_shared<TensorMM>(ex, ey, ez, mu, mu, mu_z);
      for (double dl : ds) {
        s.gap = dl * lam;
        const ForceResult r = casimir_force_perturbative(s);
        out.csv.add_row_values({dl, fx, fy, r.F_over_FC, r.abs_error / ideal_normalization(s.gap)});
        track(out.summary, r);
      }
    }
  }
  return out;
}

RunOutput run_fig7(const RunConfig& cfg) {
  const double lam = lambda_scale(cfg);
  GridReader g{cfg};
  const auto ds = grid_points(g.num("d_over_lambda_min", 0.05), g.num("d_over_lambda_max", 5.0),
                              static_cast<int>(g.num("d_points", 25)), true);
  const auto ratios = g.list("ratios", "0.1,0.5,2.5");
  const auto variants = g.names("variants", "main,a,b");
  auto mm = std::dynamic_pointer_cast<const IsotropicCompositeMM>(cfg.scenario.layer2.material);
  if (!mm) throw ConfigError("fig7 preset needs a composite metamaterial");

  RunOutput out{CsvWriter({"variant", "ratio", "d_over_lambda", "F_over_FC", "err"}), {}};
  for (const std::string& variant : variants) {
    for (double ratio : ratios) {
      CompositeAxisParams e = mm->eps_params();
      LorentzResonanceParams mu = mm->mu_params();
      e.filling = 1e-4;
      if (variant == "main" || variant == "a") e.resonance.dissipation = ratio * e.resonance.strength;
      if (variant == "main" || variant == "b") mu.dissipation = ratio * mu.strength;
      Scenario s = cfg.scenario;
      s.layer2.material = std::make_shared<IsotropicCompositeMM>(e, mu);
      for (double dl : ds) {
        s.gap = dl * lam;
        const ForceResult r = casimir_force(s);
        out.csv.add_row({variant, format_double(ratio), format_double(dl),
                         format_double(r.F_over_FC),
                         format_double(r.abs_error / ideal_normalization(s.gap))});
        track(out.summary, r);
      }
    }
  }
  return out;
}

RunOutput run_fig8(const RunConfig& cfg, const std::string& which) {
  const double lam = lambda_scale(cfg);
  GridReader g{cfg};
  const auto ds = grid_points(g.num("d_over_lambda_min", 0.1), g.num("d_over_lambda_max", 40.0),
                              static_cast<int>(g.num("d_points", 40)), true);
  const auto temps = g.list("temperatures", which == "fig8a" ? "0,300,600" : "0,300");

  RunOutput out{CsvWriter({"d_over_lambda", "T_K", "F_over_FC", "err"}), {}};
  for (double T : temps) {
    Scenario s = cfg.scenario;
    s.temperature = T;
    for (double dl : ds) {
      s.gap = dl * lam;
      const ForceResult r = casimir_force(s);
      out.csv.add_row_values({dl, T, r.F_over_FC, r.abs_error / ideal_normalization(s.gap)});
      track(out.summary, r);
    }
  }
  return out;
}

RunOutput run_fig9(const RunConfig& cfg) {
  const double lam = lambda_scale(cfg);
  GridReader g{cfg};
  const auto ds = grid_points(g.num("d_over_lambda_min", 0.05), g.num("d_over_lambda_max", 5.0),
                              static_cast<int>(g.num("d_points", 40)), true);
  RunOutput out{CsvWriter({"d_over_lambda", "F_over_FC", "err"}), {}};
  Scenario s = cfg.scenario;
  for (double dl : ds) {
    s.gap = dl * lam;
    const ForceResult r = casimir_force(s);
    out.csv.add_row_values({dl, r.F_over_FC, r.abs_error / ideal_normalization(s.gap)});
    track(out.summary, r);
  }
  return out;
}

RunOutput run_fig10(const RunConfig& cfg) {
  if (!(cfg.omega_scale > 0.0)) throw ConfigError("fig10 needs [units] omega_scale");
  GridReader g{cfg};
  const auto xis = grid_points(g.num("xi_over_omega_min", 0.005), g.num("xi_over_omega_max", 1.0),
                               static_cast<int>(g.num("xi_points", 60)), true);
  auto mm = std::dynamic_pointer_cast<const SphereCompositeMaterial>(cfg.scenario.layer2.material);
  if (!mm) throw ConfigError("fig10 preset needs a spheres_kk metamaterial");

  RunOutput out{CsvWriter({"xi_over_omega", "eps", "mu"}), {}};
  for (double x : xis) {
    const DiagonalTensorResponse t = mm->eval(ImaginaryFrequency(x * cfg.omega_scale));
    out.csv.add_row_values({x, t.eps_xx, t.mu_xx});
    ++out.summary.points;
  }
  return out;
}

RunOutput run_fig11(const RunConfig& cfg) {
  GridReader g{cfg};
  const auto ds = grid_points(g.num("d_min", 2e-7), g.num("d_max", 1.2e-6),
                              static_cast<int>(g.num("d_points", 12)), true);
  const auto temps = g.list("temperatures", "0,300");
  const auto metals = g.names("metals", "drude,plasma");
  const auto toggles = g.names("toggles", "magnetic,electric");
  auto base_metal = std::dynamic_pointer_cast<const DrudeMetal>(cfg.scenario.layer1.material);
  if (!base_metal) throw ConfigError("fig11 preset needs a drude metal");

  RunOutput out{CsvWriter({"d_m", "T_K", "metal", "toggle", "dP_Pa", "err"}), {}};
  for (const std::string& metal : metals) {
    DrudeParams mp = base_metal->params();
    if (metal == "plasma") mp.dissipation = 0.0;
    for (double T : temps) {
      for (const std::string& toggle : toggles) {
        const ContrastToggle tog = toggle == "magnetic" ? ContrastToggle::kMagneticOff
                                                        : ContrastToggle::kElectricResonanceOff;
        Scenario s = cfg.scenario;
        s.layer1.material = std::make_shared<DrudeMetal>(mp);
        s.temperature = T;
        for (double d : ds) {
          s.gap = d;
          const ContrastResult c = magnetic_contrast(s, tog);
          out.csv.add_row({format_double(d), format_double(T), metal, toggle,
                           format_double(c.delta), format_double(c.abs_error)});
          out.summary.max_abs_error = std::max(out.summary.max_abs_error, c.abs_error);
          ++out.summary.points;
        }
      }
    }
  }
  return out;
}

RunOutput run_fig12(const RunConfig& cfg) {
  GridReader g{cfg};
  const auto zs = grid_points(g.num("z_min", 5e-7), g.num("z_max", 6e-6),
                              static_cast<int>(g.num("z_points", 16)), true);
  if (!cfg.scenario.atom) throw ConfigError("fig12 preset needs an [atom] section");

  RunOutput out{CsvWriter({"z_m", "delta_gamma", "err"}), {}};
  for (double z : zs) {
    const ContrastResult c = trap_shift_contrast(*cfg.scenario.atom, cfg.scenario.layer2, z,
                                                 cfg.scenario.quad, ContrastToggle::kMagneticOff);
    out.csv.add_row_values({z, c.delta, c.abs_error});
    out.summary.max_abs_error = std::max(out.summary.max_abs_error, c.abs_error);
    ++out.summary.points;
  }
  return out;
}

RunOutput run_generic(const RunConfig& cfg) {
  Scenario base = cfg.scenario;
  if (!cfg.sweep) {
    if (base.atom) {
      const CasimirPolderResult r = casimir_polder(*base.atom, base.layer2, base.gap, base.quad);
      RunOutput out{CsvWriter({"z_m", "U_J", "gamma", "err_U"}), {}};
      out.csv.add_row_values({base.gap, r.potential, r.gamma, r.abs_error_potential});
      out.summary.max_abs_error = r.abs_error_potential;
      out.summary.points = 1;
      return out;
    }
    const ForceResult r = casimir_force(base);
    RunOutput out{CsvWriter({"gap_m", "pressure_Pa", "F_over_FC", "err"}), {}};
    out.csv.add_row_values({base.gap, r.pressure, r.F_over_FC, r.abs_error});
    track(out.summary, r);
    return out;
  }

  const SweepSpec& sw = *cfg.sweep;
  const auto xs = grid_points(sw.min, sw.max, sw.points, sw.log_spacing);

  auto scaled_dissipation = [&](const MaterialPtr& m, double scale) -> MaterialPtr {
    if (auto iso = std::dynamic_pointer_cast<const IsotropicCompositeMM>(m)) {
      CompositeAxisParams e = iso->eps_params();
      LorentzResonanceParams mu = iso->mu_params();
      e.resonance.dissipation *= scale;
      e.drude.dissipation *= scale;
      mu.dissipation *= scale;
      return std::make_shared<IsotropicCompositeMM>(e, mu);
    }
    throw ConfigError("dissipation_scale sweep needs a composite metamaterial");
  };
  auto with_filling = [&](const MaterialPtr& m, double f) -> MaterialPtr {
    if (auto iso = std::dynamic_pointer_cast<const IsotropicCompositeMM>(m)) {
      CompositeAxisParams e = iso->eps_params();
      e.filling = f;
      return std::make_shared<IsotropicCompositeMM>(e, iso->mu_params());
    }
    throw ConfigError("filling_factor sweep needs a composite metamaterial");
  };

  std::string col = "gap_m";
  switch (sw.variable) {
    case SweepVariable::kGap: col = "gap_m"; break;
    case SweepVariable::kTemperature: col = "T_K"; break;
    case SweepVariable::kZ: col = "z_m"; break;
    case SweepVariable::kFillingFactor: col = "f"; break;
    case SweepVariable::kDissipationScale: col = "dissipation_scale"; break;
  }

  if (sw.variable == SweepVariable::kZ) {
    if (!base.atom) throw ConfigError("z sweep needs an [atom] section");
    RunOutput out{CsvWriter({"z_m", "U_J", "gamma", "err_U"}), {}};
    for (double z : xs) {
      const CasimirPolderResult r = casimir_polder(*base.atom, base.layer2, z, base.quad);
      out.csv.add_row_values({z, r.potential, r.gamma, r.abs_error_potential});
      out.summary.max_abs_error = std::max(out.summary.max_abs_error, r.abs_error_potential);
      ++out.summary.points;
    }
    return out;
  }

  RunOutput out{CsvWriter({col, "pressure_Pa", "F_over_FC", "err"}), {}};
  for (double x : xs) {
    Scenario s = base;
    switch (sw.variable) {
      case SweepVariable::kGap: s.gap = x; break;
      case SweepVariable::kTemperature: s.temperature = x; break;
      case SweepVariable::kFillingFactor:
        s.layer2.material = with_filling(base.layer2.material, x);
        break;
      case SweepVariable::kDissipationScale:
        s.layer2.material = scaled_dissipation(base.layer2.material, x);
        break;
      default: break;
    }
    const ForceResult r = casimir_force(s);
    out.csv.add_row_values({x, r.pressure, r.F_over_FC, r.abs_error});
    track(out.summary, r);
  }
  return out;
}

} // namespace

std::vector<std::string> preset_ids() {
  std::vector<std::string> v;
  for (const auto& [k, _] : presets()) v.push_back(k);
  return v;
}

bool is_preset(const std::string& id) { return presets().count(id) > 0; }

std::string preset_config_text(const std::string& id) {
  auto it = presets().find(id);
  if (it == presets().end()) throw ConfigError("unknown preset '" + id + "'");
  return it->second;
}

RunOutput run_config(const RunConfig& cfg) {
  const auto id = cfg.raw.get("preset", "id");
  if (!id) return run_generic(cfg);
  if (*id == "fig4") return run_fig4(cfg);
  if (*id == "fig5") return run_fig5(cfg);
  if (*id == "fig6") return run_fig6(cfg);
  if (*id == "fig7") return run_fig7(cfg);
  if (*id == "fig8a" || *id == "fig8b") return run_fig8(cfg, *id);
  if (*id == "fig9") return run_fig9(cfg);
  if (*id == "fig10") return run_fig10(cfg);
  if (*id == "fig11") return run_fig11(cfg);
  if (*id == "fig12") return run_fig12(cfg);
  throw ConfigError("unknown preset id '" + *id + "'");
}

CsvWriter dump_materials(const RunConfig& cfg, int layer, double xi_min, double xi_max, int points) {
  const Layer& l = layer == 1 ? cfg.scenario.layer1 : cfg.scenario.layer2;
  CsvWriter csv({"xi_rad_s", "eps_xx", "eps_yy", "eps_zz", "mu_xx", "mu_yy", "mu_zz"});
  for (double xi : grid_points(xi_min, xi_max, points, true)) {
    const DiagonalTensorResponse t = l.material->eval(ImaginaryFrequency(xi));
    csv.add_row_values({xi, t.eps_xx, t.eps_yy, t.eps_zz, t.mu_xx, t.mu_yy, t.mu_zz});
  }
  return csv;
}

CsvWriter dump_reflectivity(const RunConfig& cfg, int layer, double xi_min, double xi_max,
                            int xi_points, int k_points, int phi_points) {
  const Layer& l = layer == 1 ? cfg.scenario.layer1 : cfg.scenario.layer2;
  CsvWriter csv({"xi_rad_s", "k_par", "phi", "r_tete", "r_tetm", "r_tmte", "r_tmtm"});
  for (double xi : grid_points(xi_min, xi_max, xi_points, true)) {
    const double kc = xi / kLightSpeed;
    for (double k : grid_points(0.01 * kc, 100.0 * kc, k_points, true)) {
      for (int p = 0; p < phi_points; ++p) {
        const double phi = (kPi / 2.0) * p / std::max(1, phi_points - 1);
        const ReflectionMatrix r = layer_reflection(l, {k, phi, xi});
        csv.add_row_values({xi, k, phi, r.te_te, r.te_tm, r.tm_te, r.tm_tm});
      }
    }
  }
  return csv;
}

} // namespace casimir
