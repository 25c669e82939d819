#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmclab/foliation.hpp"
#include "cmclab/solver.hpp"
#include "cmclab/stability.hpp"

namespace cmclab {

// Canonical serialization: keys sorted (nlohmann's std::map order), floats
// at 12 significant digits with a trailing ".0" when they would otherwise
// print as integers, two-space indentation. parse -> dump is a fixed point,
// and identical inputs yield byte-identical output across runs. Volatile
// values (wall time) must never enter a canonical document.
std::string canonical_json(const nlohmann::json& value);

nlohmann::json bound_report_json(const BoundReport& report);

struct SuiteResult {
    std::string metric_id;
    std::size_t grid_n = 0;
    std::vector<BoundReport> reports;
    bool overall = false;  // every non-skipped report passed
    double wall_ms = 0.0;  // reporting only; excluded from JSON
};

// The full inequality battery for one metric: bound sweeps over the
// exterior grid, horizon stability, mass checks, and the foliation checks
// at a deterministic ladder of h values plus any extra targets.
SuiteResult run_verify_suite(const Metric& metric, std::size_t grid_n = 10000,
                             const std::vector<double>& extra_h = {});

nlohmann::json suite_json(const SuiteResult& suite);
void print_suite_table(std::ostream& os, const SuiteResult& suite);

struct AnalyzeSummary {
    std::string metric_id;
    double r_horizon = 0.0;
    double horizon_area = 0.0;
    double adm_mass = 0.0;
    double c_lower = 0.0;
    bool nonneg_scalar = false;
    double h_max = 0.0;
    double r_star = 0.0;
    BoundReport penrose;
    HorizonStability horizon_stability;
};

AnalyzeSummary analyze_metric(const Metric& metric, std::size_t grid_n = 10000);

nlohmann::json analyze_json(const AnalyzeSummary& summary);
void print_analyze_table(std::ostream& os, const AnalyzeSummary& summary);

// Foliation outputs: CSV columns r, H, u, plateau_flag; JSON summary with
// the region, plateau list, total variation, and the attached checks.
void write_profile_csv(std::ostream& os, const FoliationProfile& profile);
nlohmann::json foliate_json(const Metric& metric, const FoliationProfile& profile,
                            const std::vector<BoundReport>& checks);

inline constexpr int kSchemaVersion = 1;

}  // namespace cmclab
