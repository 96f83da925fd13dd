#include "dce/sweep.hpp"

#include "dce/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace dce {

namespace {

SweepRow run_point(RunConfig cfg, double eta, double period_ps) {
    SweepRow row;
    row.eta = eta;
    row.period_ps = period_ps;
    const int count = cfg.cavity().mode_count();
    try {
        cfg.eta = eta;
        cfg.period_ps = period_ps;
        validate(cfg);
        const RunResult r = run(cfg.cavity(), cfg.profile(), cfg.run_options());
        row.ok = true;
        row.N_final = r.final.N;
        row.max_defect = r.max_defect;
    } catch (const Error& e) {
        row.ok = false;
        row.error = e.what();
        row.N_final = Eigen::VectorXd::Constant(count, std::numeric_limits<double>::quiet_NaN());
        row.max_defect = std::numeric_limits<double>::quiet_NaN();
    }
    return row;
}

template <class Task>
std::vector<SweepRow> run_all(std::size_t count, int jobs, Task task) {
    std::vector<SweepRow> rows(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++)
            rows[i] = task(i);
    };
    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    return rows;
}

std::vector<int> branches_of(const RunConfig& cfg) {
    std::vector<int> out;
    const CavityConfig cavity = cfg.cavity();
    for (int i = 0; i < cavity.mode_count(); ++i)
        out.push_back(cavity.branch_of(i));
    return out;
}

} // namespace

SweepTable sweep_tuning(const RunConfig& base, const std::vector<double>& periods_ps, int jobs) {
    SweepTable table;
    table.branches = branches_of(base);
    table.rows = run_all(periods_ps.size(), jobs,
                         [&](std::size_t i) { return run_point(base, base.eta, periods_ps[i]); });
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const SweepRow& a, const SweepRow& b) { return a.period_ps < b.period_ps; });
    return table;
}

SweepTable sweep_position(const RunConfig& base, const std::vector<double>& etas, int jobs) {
    auto period_for = [&](double eta) {
        for (const auto& [e, T] : base.eta_periods_ps)
            if (std::abs(e - eta) < 1e-12)
                return T;
        return base.period_ps;
    };
    SweepTable table;
    table.branches = branches_of(base);
    table.rows = run_all(etas.size(), jobs,
                         [&](std::size_t i) { return run_point(base, etas[i], period_for(etas[i])); });
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const SweepRow& a, const SweepRow& b) { return a.eta < b.eta; });
    return table;
}

} // namespace dce
