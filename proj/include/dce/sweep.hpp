#pragma once

// Independent evolve runs over a list of driving periods or sheet positions.

#include "dce/config.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace dce {

struct SweepRow {
    double eta = 0.0;
    double period_ps = 0.0;
    bool ok = false;
    std::string error;        // empty when ok
    Eigen::VectorXd N_final;  // per mode index; NaN when the run failed
    double max_defect = 0.0;  // NaN when the run failed
};

struct SweepTable {
    std::vector<int> branches;
    std::vector<SweepRow> rows; // sorted by the sweep key
};

// One row per requested period, in ascending order. A failed run yields a
// row with ok = false instead of aborting the sweep. `jobs` bounds the
// number of concurrent runs; results do not depend on it.
SweepTable sweep_tuning(const RunConfig& base, const std::vector<double>& periods_ps, int jobs = 1);

// As above over eta; base.eta_periods_ps overrides the period per eta.
SweepTable sweep_position(const RunConfig& base, const std::vector<double>& etas, int jobs = 1);

} // namespace dce
