#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <vector>

#include "cliqueprobe/errors.hpp"
#include "cliqueprobe/max_clique.hpp"
#include "cliqueprobe/oracle.hpp"
#include "cliqueprobe/prng.hpp"
#include "cliqueprobe/subgraph.hpp"

namespace cliqueprobe {

enum class SMode { FirstM, RandomSeeded };

// Slack eps_prime is the largest value allowed by both constraints
// 2e + e^2/2 <= eps0 and e <= k/log2(n) - 2, maximizing the gap
// between the expected clique-overlap in S and the threshold.
struct DetectionParams {
    int n = 0;
    int k = 0;
    double eps0 = 0;
    double eps_prime = 0;
    int m = 0;
    int threshold = 0;
    std::vector<int> s_vertices;  // sorted, |s_vertices| = m
    bool m_clamped = false;       // m hit n (whole-graph fallback)
};

inline DetectionParams derive_params(int n, int k, double eps0,
                                     SMode s_mode = SMode::FirstM,
                                     std::uint64_t s_seed = 0) {
    if (n < 4) throw parameter_error("derive_params: need n >= 4");
    if (k < 1 || k > n) throw parameter_error("derive_params: need 1 <= k <= n");
    if (!(eps0 > 0)) throw parameter_error("derive_params: need eps0 > 0");
    const double log2n = std::log2(static_cast<double>(n));
    const double cap = static_cast<double>(k) / log2n - 2.0;
    if (!(cap > 0))
        throw parameter_error("clique below detectability hypothesis: need "
                              "k > 2*log2(n)");
    DetectionParams p;
    p.n = n;
    p.k = k;
    p.eps0 = eps0;
    p.eps_prime = std::min(std::sqrt(4.0 + 2.0 * eps0) - 2.0, cap);
    const double m_real =
        (2.0 + p.eps_prime) * (static_cast<double>(n) / k) * log2n;
    double m_ceil = std::ceil(m_real);
    if (m_ceil >= static_cast<double>(n)) {
        p.m = n;
        p.m_clamped = true;
    } else {
        p.m = static_cast<int>(m_ceil);
    }
    p.threshold =
        static_cast<int>(std::ceil((2.0 + p.eps_prime / 2.0) * log2n));
    if (s_mode == SMode::FirstM) {
        p.s_vertices.resize(p.m);
        for (int i = 0; i < p.m; ++i) p.s_vertices[i] = i + 1;
    } else {
        p.s_vertices = uniform_subset(n, p.m, derive_seed(s_seed, 0x73736574ULL));
    }
    return p;
}

struct DetectionOutcome {
    Hypothesis decision = Hypothesis::Null;
    int witness_size = 0;
    int threshold = 0;
    int m = 0;
    double eps_prime = 0;
    std::uint64_t queries_charged = 0;

    void write_json(std::ostream& os) const {
        os << "{\"decision\":\""
           << (decision == Hypothesis::Planted ? "Planted" : "Null")
           << "\",\"witness_size\":" << witness_size
           << ",\"threshold\":" << threshold << ",\"m\":" << m
           << ",\"eps_prime\":" << eps_prime << ",\"queries\":"
           << queries_charged << "}";
    }
};

// Nonadaptive test: query all pairs inside S, accept Planted iff the
// induced subgraph holds a clique of size >= threshold. The threshold
// comparison is exact; witness_size is the largest clique the search
// actually produced (a lower bound for omega when below threshold).
inline DetectionOutcome detect(EdgeOracle& oracle,
                               const DetectionParams& params) {
    const std::uint64_t before = oracle.queries_used();
    DenseSubgraph g = build_from_oracle(params.s_vertices, oracle);
    ThresholdSearchResult r = clique_threshold_search(g, params.threshold);
    DetectionOutcome out;
    out.witness_size = r.witness.size;
    out.decision = r.reached ? Hypothesis::Planted : Hypothesis::Null;
    out.threshold = params.threshold;
    out.m = params.m;
    out.eps_prime = params.eps_prime;
    out.queries_charged = oracle.queries_used() - before;
    return out;
}

// Mean and a variance bound for |K ∩ S| (hypergeometric overlap).
struct OverlapMoments {
    double mean = 0;
    double variance_bound = 0;
};

inline OverlapMoments expected_overlap(const DetectionParams& params) {
    OverlapMoments om;
    const double frac = static_cast<double>(params.k) / params.n;
    om.mean = params.m * frac;
    om.variance_bound = params.m * frac * (1.0 - frac);
    return om;
}

}  // namespace cliqueprobe
