#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyslice/bounds.hpp"
#include "polyslice/direction.hpp"
#include "polyslice/monte_carlo.hpp"
#include "polyslice/psi.hpp"
#include "polyslice/quadrature.hpp"

namespace polyslice::harness {

enum class Sampler { uniform_sphere, dirichlet_squares, grid_2d, special_vectors };
std::string to_string(Sampler s);
Sampler sampler_from_string(const std::string& name);

struct SweepConfig {
    std::vector<int> n_values;
    int directions_per_n = 100;
    Sampler sampler = Sampler::uniform_sphere;
    uint64_t seed = 1;
    QuadratureConfig engine_tolerances{};
    long mc_samples = 0;
    bool inject_failure = false;  // test hook: flips one check result
};

struct CheckResult {
    std::string name;
    bool applicable = true;
    bool pass = true;
    double margin = 0.0;  // slack remaining; negative means violated
};

struct DirectionRecord {
    int index = 0;
    int n = 0;
    std::vector<double> weights;
    std::optional<VolumeEstimate> volume;
    std::optional<VolumeEstimate> mc;
    double delta = 0.0;
    double thm1_upper = 2.0;
    double lower_stab = 1.0;
    double fourier_product = 0.0;  // +inf when vacuous; NaN when skipped
    bounds::RegionAssignment regions;
    std::vector<CheckResult> checks;
    std::string note;  // e.g. TolNotReached diagnostics; empty normally
};

struct SweepSummary {
    long records = 0;
    long checks_run = 0;
    long checks_failed = 0;
    std::map<std::string, double> worst_margin;
    double runtime_ms = 0.0;
};

struct VerificationReport {
    SweepConfig config;
    std::vector<DirectionRecord> records;
    SweepSummary summary;

    bool all_passed() const { return summary.checks_failed == 0; }
    nlohmann::json to_json(bool include_timing = true) const;
    // Flat CSV, one row per direction-check; schema in the README.
    void write_csv(std::ostream& os) const;
};

// Deterministic direction sampling: item (n, index) draws from a stream
// derived from (seed, n, index).
Direction sample_direction(Sampler s, int n, uint64_t seed, int index, int count);

// Evaluate every engine and bound over the sampled directions and record
// pass/fail of each inequality.  Deterministic given the config; direction
// work items are independent (POLYSLICE_THREADS caps the worker count).
VerificationReport sweep(const SweepConfig& cfg);

struct AsymptoticRow {
    int n = 0;
    double value = 0.0;
    double deficit = 0.0;    // d_n = 2 - A_n(1/sqrt(n), ...)
    double n_deficit = 0.0;  // n * d_n
};

struct AsymptoticScan {
    std::vector<AsymptoticRow> rows;
    bool deficits_positive = true;
    bool stabilized = true;  // consecutive n*d_n ratios within [0.75, 1.33] for the largest three n
};

AsymptoticScan asymptotic_extremiser_scan(const std::vector<int>& n_list,
                                          const QuadratureConfig& cfg = {});

struct NearExtremiserRow {
    double eps = 0.0;
    double value = 0.0;    // A_2 = (1/2 + eps)^-1
    double deficit = 0.0;  // 2 - A_2
    double delta = 0.0;
    double ratio = 0.0;  // deficit / eps
    bool pass = true;    // ratio in [1, 2] for eps <= 0.1
};

std::vector<NearExtremiserRow> near_extremiser_scan(const std::vector<double>& epsilons);

struct PsiScanRow {
    double s = 0.0;
    double value = 0.0;
    double error = 0.0;
    double branch_bound = 0.0;  // 1 - (s-2)^2/12 on [2, 8/3], 1 - 1/(151 s) beyond
    bool pass = true;
};

std::vector<PsiScanRow> psi_scan(const std::vector<double>& s_grid,
                                 const QuadratureConfig& cfg = default_psi_config());

double psi_branch_bound(double s);

}  // namespace polyslice::harness
