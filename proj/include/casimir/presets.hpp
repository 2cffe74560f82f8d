#pragma once

#include <string>
#include <vector>

#include "casimir/config.hpp"
#include "casimir/csv.hpp"

namespace casimir {

struct RunSummary {
  long long evals = 0;
  double max_abs_error = 0.0;
  int points = 0;
  std::string note;
};

struct RunOutput {
  CsvWriter csv;
  RunSummary summary;
};

// Built-in figure presets are canned configs; ids: fig4, fig5, fig6, fig7,
// fig8a, fig8b, fig9, fig10, fig11, fig12.
std::vector<std::string> preset_ids();
bool is_preset(const std::string& id);
std::string preset_config_text(const std::string& id);

// Execute a parsed configuration (preset or generic scenario/sweep).
RunOutput run_config(const RunConfig& cfg);

// material-dump / reflectivity-dump helpers
CsvWriter dump_materials(const RunConfig& cfg, int layer, double xi_min, double xi_max, int points);
CsvWriter dump_reflectivity(const RunConfig& cfg, int layer, double xi_min, double xi_max,
                            int xi_points, int k_points, int phi_points);

} // namespace casimir
