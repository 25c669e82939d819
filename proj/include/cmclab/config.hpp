#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cmclab/metric.hpp"

namespace cmclab {

// Metric config files: line-based "key = value", '#' comments, unknown keys
// rejected with a line diagnostic. Keys:
//   kind       schwarzschild | analytic | tabulated   (required)
//   mass       one positive real; repeatable for analytic
//   bump       "amplitude center width"; analytic only, repeatable
//   shell      "strength radius softness"; analytic only, repeatable
//   table      path to a two-column (r, phi) file; tabulated only
//   r_min      inner domain edge (defaults: see docs)
//   r_cutoff   outer cutoff
//   deriv_step finite-difference step passthrough
//   asym_tol   asymptotic flatness tolerance
// All parse failures throw Error(BadConfig, ...) naming the line.

Metric parse_metric_config(std::istream& in, const std::string& display_name,
                           const std::string& base_dir = ".");

// Accepts a bundled metric name or a filesystem path.
Metric load_metric(const std::string& path_or_name);

std::vector<std::string> bundled_metric_names();
bool is_bundled_metric(const std::string& name);

// Two-column (r, phi) table, ascending r, at least 200 samples.
Metric load_metric_table(const std::string& path);

}  // namespace cmclab
