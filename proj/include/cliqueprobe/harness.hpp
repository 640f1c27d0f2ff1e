#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "cliqueprobe/detector.hpp"
#include "cliqueprobe/errors.hpp"
#include "cliqueprobe/oracle.hpp"
#include "cliqueprobe/prng.hpp"
#include "cliqueprobe/recoverer.hpp"

namespace cliqueprobe {

enum class Region {
    DetectionImpossible,
    DetectOnlyRecoverImpossible,
    RecoveryPossible,
    Boundary
};

inline const char* region_name(Region r) {
    switch (r) {
        case Region::DetectionImpossible: return "DetectionImpossible";
        case Region::DetectOnlyRecoverImpossible:
            return "DetectOnlyRecoverImpossible";
        case Region::RecoveryPossible: return "RecoveryPossible";
        case Region::Boundary: return "Boundary";
    }
    return "?";
}

// Phase-diagram cell for k = n^gamma, budget = n^delta. The detection
// frontier is delta = 2-2*gamma, the recovery frontier delta = 1;
// points on either frontier (within floating tolerance) are Boundary.
inline Region classify_region(double gamma, double delta) {
    if (!(gamma > 0 && gamma < 1))
        throw parameter_error("classify_region: need gamma in (0,1)");
    if (!(delta > 0 && delta < 2))
        throw parameter_error("classify_region: need delta in (0,2)");
    constexpr double tol = 1e-12;
    const double frontier = 2.0 - 2.0 * gamma;
    if (std::abs(delta - frontier) <= tol) return Region::Boundary;
    if (delta < frontier) return Region::DetectionImpossible;
    if (std::abs(delta - 1.0) <= tol) return Region::Boundary;
    if (delta < 1.0) return Region::DetectOnlyRecoverImpossible;
    return Region::RecoveryPossible;
}

struct TrialRecord {
    int trial_id = 0;
    Hypothesis hypothesis = Hypothesis::Null;
    int n = 0;
    int k = 0;
    double eps0 = 0;
    std::uint64_t seed = 0;
    std::string summary;  // decision or recovery result
    bool success = false;
    std::uint64_t queries_charged = 0;
    double wall_time = 0;  // seconds

    void write_json(std::ostream& os) const {
        os << "{\"trial_id\":" << trial_id << ",\"hypothesis\":\""
           << (hypothesis == Hypothesis::Planted ? "Planted" : "Null")
           << "\",\"n\":" << n << ",\"k\":" << k << ",\"eps0\":" << eps0
           << ",\"seed\":" << seed << ",\"summary\":\"" << summary
           << "\",\"success\":" << (success ? "true" : "false")
           << ",\"queries_charged\":" << queries_charged
           << ",\"wall_time\":" << wall_time << "}";
    }
};

// 95% Wilson score half-width for a binomial proportion.
inline double wilson_halfwidth(long long successes, long long trials) {
    if (trials <= 0) return 0;
    constexpr double z = 1.959963984540054;
    const double nd = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / nd;
    const double z2 = z * z;
    return (z / (1.0 + z2 / nd)) *
           std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd));
}

struct RiskEstimate {
    double type1 = 0;
    double type2 = 0;
    double risk = 0;
    int trials_per_arm = 0;
    double wilson_ci_halfwidth = 0;  // sum of per-arm half-widths
};

struct RateEstimate {
    double rate = 0;
    int trials = 0;
    double wilson_ci_halfwidth = 0;
};

struct HarnessOptions {
    std::optional<std::uint64_t> budget;
    int workers = 1;
    std::vector<TrialRecord>* records = nullptr;  // appended in id order
};

namespace detail_harness {

template <class Fn>
void parallel_for(int count, int workers, Fn&& fn) {
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int w = std::min(workers, count);
    pool.reserve(static_cast<std::size_t>(w));
    for (int t = 0; t < w; ++t)
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                fn(i);
        });
    for (auto& th : pool) th.join();
}

inline constexpr std::uint64_t kNullArmTag = 0x6e756c6cULL;
inline constexpr std::uint64_t kPlantedArmTag = 0x706c6e74ULL;
inline constexpr std::uint64_t kRecoveryArmTag = 0x72656376ULL;

}  // namespace detail_harness

// Paired Monte Carlo arms: `trials` null and `trials` planted seeded
// detection runs; budget exhaustion counts as a Null decision.
inline RiskEstimate estimate_risk(int n, int k, double eps0, int trials,
                                  std::uint64_t base_seed,
                                  const HarnessOptions& opts = {}) {
    if (trials < 1) throw parameter_error("estimate_risk: need trials >= 1");
    const DetectionParams params = derive_params(n, k, eps0);
    std::vector<TrialRecord> recs(static_cast<std::size_t>(2 * trials));
    detail_harness::parallel_for(2 * trials, opts.workers, [&](int idx) {
        const bool planted_arm = idx >= trials;
        const int t = planted_arm ? idx - trials : idx;
        const Hypothesis h =
            planted_arm ? Hypothesis::Planted : Hypothesis::Null;
        const std::uint64_t seed = derive_seed(
            base_seed,
            planted_arm ? detail_harness::kPlantedArmTag
                        : detail_harness::kNullArmTag,
            static_cast<std::uint64_t>(t));
        EdgeOracle oracle(sample_instance(n, k, h, seed), opts.budget);
        const auto t0 = std::chrono::steady_clock::now();
        Hypothesis decision = Hypothesis::Null;
        try {
            decision = detect(oracle, params).decision;
        } catch (const budget_exhausted_error&) {
            decision = Hypothesis::Null;
        }
        TrialRecord& r = recs[static_cast<std::size_t>(idx)];
        r.trial_id = idx;
        r.hypothesis = h;
        r.n = n;
        r.k = k;
        r.eps0 = eps0;
        r.seed = seed;
        r.summary = decision == Hypothesis::Planted ? "Planted" : "Null";
        r.success = decision == h;
        r.queries_charged = oracle.queries_used();
        r.wall_time =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
    });
    long long false_pos = 0, false_neg = 0;
    for (int t = 0; t < trials; ++t) {
        if (!recs[static_cast<std::size_t>(t)].success) ++false_pos;
        if (!recs[static_cast<std::size_t>(trials + t)].success) ++false_neg;
    }
    RiskEstimate est;
    est.trials_per_arm = trials;
    est.type1 = static_cast<double>(false_pos) / trials;
    est.type2 = static_cast<double>(false_neg) / trials;
    est.risk = est.type1 + est.type2;
    est.wilson_ci_halfwidth = wilson_halfwidth(false_pos, trials) +
                              wilson_halfwidth(false_neg, trials);
    if (opts.records)
        opts.records->insert(opts.records->end(), recs.begin(), recs.end());
    return est;
}

// Planted-only arm; success is exact-set recovery, budget exhaustion a
// failure.
inline RateEstimate estimate_recovery_rate(int n, int k, double eps0,
                                           int trials,
                                           std::uint64_t base_seed,
                                           const HarnessOptions& opts = {}) {
    if (trials < 1)
        throw parameter_error("estimate_recovery_rate: need trials >= 1");
    const DetectionParams params = derive_params(n, k, eps0);
    std::vector<TrialRecord> recs(static_cast<std::size_t>(trials));
    detail_harness::parallel_for(trials, opts.workers, [&](int t) {
        const std::uint64_t seed =
            derive_seed(base_seed, detail_harness::kRecoveryArmTag,
                        static_cast<std::uint64_t>(t));
        const PlantedInstance inst =
            sample_instance(n, k, Hypothesis::Planted, seed);
        EdgeOracle oracle(inst, opts.budget);
        const auto t0 = std::chrono::steady_clock::now();
        bool success = false;
        try {
            success = verify_estimate(recover(oracle, params, eps0), inst);
        } catch (const budget_exhausted_error&) {
            success = false;
        }
        TrialRecord& r = recs[static_cast<std::size_t>(t)];
        r.trial_id = t;
        r.hypothesis = Hypothesis::Planted;
        r.n = n;
        r.k = k;
        r.eps0 = eps0;
        r.seed = seed;
        r.summary = success ? "recovered" : "failed";
        r.success = success;
        r.queries_charged = oracle.queries_used();
        r.wall_time =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
    });
    long long good = 0;
    for (const auto& r : recs) good += r.success ? 1 : 0;
    RateEstimate est;
    est.trials = trials;
    est.rate = static_cast<double>(good) / trials;
    est.wilson_ci_halfwidth = wilson_halfwidth(good, trials);
    if (opts.records)
        opts.records->insert(opts.records->end(), recs.begin(), recs.end());
    return est;
}

enum class SweepMode { Detection, Recovery };

struct SweepGrid {
    int n = 0;
    std::vector<double> gammas;  // in (0,1)
    std::vector<double> deltas;  // in (0,2)
    int trials = 0;
    std::uint64_t base_seed = 0;
    SweepMode mode = SweepMode::Detection;
    double eps0 = 4.0;
    int workers = 1;
};

struct SweepRow {
    double gamma = 0;
    double delta = 0;
    int n = 0;
    int k = 0;
    std::uint64_t budget = 0;
    SweepMode mode = SweepMode::Detection;
    int trials = 0;
    double metric = 0;  // risk (Detection) or recovery rate (Recovery)
    double ci = 0;
    Region region = Region::Boundary;
    std::string error;  // nonempty when the cell failed to run
};

// One Monte Carlo cell per (gamma, delta): k = round(n^gamma), budget =
// round(n^delta). Cells that violate algorithm preconditions are
// recorded with an error and the sweep continues.
inline std::vector<SweepRow> run_sweep(const SweepGrid& grid) {
    if (grid.n < 4) throw parameter_error("run_sweep: need n >= 4");
    if (grid.trials < 1) throw parameter_error("run_sweep: need trials >= 1");
    std::vector<SweepRow> rows;
    for (std::size_t gi = 0; gi < grid.gammas.size(); ++gi) {
        for (std::size_t di = 0; di < grid.deltas.size(); ++di) {
            const double gamma = grid.gammas[gi];
            const double delta = grid.deltas[di];
            SweepRow row;
            row.gamma = gamma;
            row.delta = delta;
            row.n = grid.n;
            row.mode = grid.mode;
            row.trials = grid.trials;
            row.region = classify_region(gamma, delta);
            row.k = static_cast<int>(
                std::llround(std::pow(static_cast<double>(grid.n), gamma)));
            row.budget = static_cast<std::uint64_t>(
                std::llround(std::pow(static_cast<double>(grid.n), delta)));
            HarnessOptions opts;
            opts.budget = row.budget;
            opts.workers = grid.workers;
            const std::uint64_t cell_seed = derive_seed(
                grid.base_seed, 0x63656c6cULL,
                (static_cast<std::uint64_t>(gi) << 32) | di);
            try {
                if (grid.mode == SweepMode::Detection) {
                    const RiskEstimate est = estimate_risk(
                        grid.n, row.k, grid.eps0, grid.trials, cell_seed,
                        opts);
                    row.metric = est.risk;
                    row.ci = est.wilson_ci_halfwidth;
                } else {
                    const RateEstimate est = estimate_recovery_rate(
                        grid.n, row.k, grid.eps0, grid.trials, cell_seed,
                        opts);
                    row.metric = est.rate;
                    row.ci = est.wilson_ci_halfwidth;
                }
            } catch (const parameter_error& e) {
                row.metric = std::nan("");
                row.ci = std::nan("");
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

// Fixed-header CSV; floats carry 6 significant digits.
inline void write_sweep_csv(std::ostream& os,
                            const std::vector<SweepRow>& rows) {
    os << "gamma,delta,n,k,budget,mode,trials,metric,ci,classification\n";
    const auto old_precision = os.precision(6);
    for (const auto& r : rows) {
        os << r.gamma << "," << r.delta << "," << r.n << "," << r.k << ","
           << r.budget << ","
           << (r.mode == SweepMode::Detection ? "detection" : "recovery")
           << "," << r.trials << "," << r.metric << "," << r.ci << ","
           << region_name(r.region) << "\n";
    }
    os.precision(old_precision);
}

}  // namespace cliqueprobe
