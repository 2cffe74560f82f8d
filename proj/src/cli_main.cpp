#include "casimir/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "casimir/kernels.hpp"
#include "casimir/presets.hpp"

namespace casimir {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitQuadrature = 3;
constexpr int kExitIo = 4;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct CommonOpts {
  std::string preset, config, out;
  double tolerance = 0.0;
  int threads = 0;
};

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("CASIMIR_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 0;
}

RunConfig load(const CommonOpts& o) {
  if (!o.preset.empty() && !o.config.empty())
    throw ConfigError("--preset and --config are mutually exclusive");
  std::string text;
  if (!o.preset.empty()) {
    text = preset_config_text(o.preset);
  } else if (!o.config.empty()) {
    try {
      text = read_file(o.config);
    } catch (const std::ios_base::failure& e) {
      throw ConfigError(e.what()); // unreadable input config is a config error
    }
  } else {
    throw ConfigError("one of --preset or --config is required");
  }
  RunConfig cfg = parse_run_config(text);
  if (o.tolerance > 0.0) cfg.scenario.quad.rel_tol = o.tolerance;
  const int threads = resolve_threads(o.threads);
  if (threads > 0) cfg.scenario.quad.threads = threads;
  cfg.scenario.quad.validate();
  if (!o.out.empty()) cfg.output_path = o.out;
  return cfg;
}

int write_csv(const CsvWriter& csv, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << csv.to_string();
    return kExitOk;
  }
  if (!csv.write_file(path)) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return kExitIo;
  }
  return kExitOk;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Casimir-Lifshitz forces between anisotropic magnetodielectric media"};
  app.require_subcommand(0, 1);

  CommonOpts o;
  app.add_option("--preset", o.preset, "built-in figure preset id (fig4 ... fig12)");
  app.add_option("--config", o.config, "scenario config file");
  app.add_option("--out", o.out, "output CSV path (default from config, '-' = stdout)");
  app.add_option("--tolerance", o.tolerance, "override quadrature relative tolerance");
  app.add_option("--threads", o.threads, "worker threads (or CASIMIR_THREADS)");
  bool flag_dump_mat = false, flag_dump_refl = false;
  app.add_flag("--dump-materials", flag_dump_mat, "shorthand for the material-dump subcommand");
  app.add_flag("--dump-reflectivity", flag_dump_refl, "shorthand for the reflectivity-dump subcommand");

  int layer = 2;
  double xi_min = 1e12, xi_max = 1e18;
  int xi_points = 200, k_points = 12, phi_points = 5;

  CLI::App* run = app.add_subcommand("run", "evaluate a preset or config and write CSV");
  run->fallthrough();
  CLI::App* validate = app.add_subcommand("validate", "diagnostics for a config file");
  validate->fallthrough();
  CLI::App* mat = app.add_subcommand("material-dump", "tabulate eps/mu on the imaginary axis");
  mat->fallthrough();
  mat->add_option("--layer", layer, "1 = metal side, 2 = metamaterial side");
  mat->add_option("--xi-min", xi_min, "grid start [rad/s]");
  mat->add_option("--xi-max", xi_max, "grid end [rad/s]");
  mat->add_option("--xi-points", xi_points, "grid size");
  CLI::App* refl = app.add_subcommand("reflectivity-dump", "tabulate reflection amplitudes");
  refl->fallthrough();
  refl->add_option("--layer", layer, "1 = metal side, 2 = metamaterial side");
  refl->add_option("--xi-min", xi_min, "grid start [rad/s]");
  refl->add_option("--xi-max", xi_max, "grid end [rad/s]");
  refl->add_option("--xi-points", xi_points, "xi grid size");
  refl->add_option("--k-points", k_points, "k grid size");
  refl->add_option("--phi-points", phi_points, "phi grid size");
  CLI::App* dump = app.add_subcommand("dump-preset", "print a preset as a config file");
  std::string dump_id;
  dump->add_option("id", dump_id, "preset id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (dump->parsed()) {
      std::cout << preset_config_text(dump_id);
      return kExitOk;
    }
    if (validate->parsed()) {
      std::string text;
      try {
        text = !o.preset.empty() ? preset_config_text(o.preset) : read_file(o.config);
      } catch (const std::ios_base::failure& e) {
        throw ConfigError(e.what());
      }
      const auto diags = validate_config(text);
      for (const auto& d : diags)
        std::cout << (d.severity == Diagnostic::Severity::kError ? "error: " : "warning: ")
                  << d.message << "\n";
      std::cout << (diags.empty() ? "config ok\n" : "") << std::flush;
      return kExitOk;
    }
    if (mat->parsed() || flag_dump_mat) {
      RunConfig cfg = load(o);
      return write_csv(dump_materials(cfg, layer, xi_min, xi_max, xi_points), cfg.output_path);
    }
    if (refl->parsed() || flag_dump_refl) {
      RunConfig cfg = load(o);
      return write_csv(dump_reflectivity(cfg, layer, xi_min, xi_max, xi_points, k_points, phi_points),
                       cfg.output_path);
    }
    // default: run
    (void)run;
    RunConfig cfg = load(o);
    RunOutput out = run_config(cfg);
    const int rc = write_csv(out.csv, cfg.output_path);
    if (rc != kExitOk) return rc;
    std::cerr << "points=" << out.summary.points << " kernel_evals=" << out.summary.evals
              << " max_err=" << out.summary.max_abs_error << " kernel=" << active_kernel_name()
              << "\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const QuadratureError& e) {
    std::cerr << "quadrature error: " << e.what() << "\n";
    return kExitQuadrature;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

} // namespace casimir
