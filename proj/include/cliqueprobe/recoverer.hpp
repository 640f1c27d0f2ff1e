#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include "cliqueprobe/detector.hpp"
#include "cliqueprobe/errors.hpp"
#include "cliqueprobe/max_clique.hpp"
#include "cliqueprobe/oracle.hpp"
#include "cliqueprobe/subgraph.hpp"

namespace cliqueprobe {

struct RecoveryOutcome {
    std::vector<int> d_set;    // largest clique in S (lexicographic min)
    std::vector<int> d_prime;  // lowest-labeled filter subset of d_set
    std::vector<int> t_set;    // filter survivors from [n] \ S
    std::vector<int> estimate;  // d_set ∪ t_set, sorted
    std::uint64_t queries_step1 = 0;
    std::uint64_t queries_step2 = 0;

    void write_json(std::ostream& os) const {
        auto write_vec = [&os](const std::vector<int>& v) {
            os << "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) os << ",";
                os << v[i];
            }
            os << "]";
        };
        os << "{\"d_set\":";
        write_vec(d_set);
        os << ",\"d_prime\":";
        write_vec(d_prime);
        os << ",\"t_set\":";
        write_vec(t_set);
        os << ",\"estimate\":";
        write_vec(estimate);
        os << ",\"queries_step1\":" << queries_step1
           << ",\"queries_step2\":" << queries_step2 << "}";
    }
};

// Keep the candidates adjacent to every member of d_prime; a candidate
// is dropped on its first false answer, so worst-case charge is
// unchanged but typical charge is about 2 per non-member.
inline std::vector<int> membership_filter(const std::vector<int>& d_prime,
                                          const std::vector<int>& candidates,
                                          EdgeOracle& oracle) {
    if (d_prime.empty())
        throw parameter_error("membership_filter: empty filter set");
    std::vector<int> out;
    for (int v : candidates) {
        bool all_true = true;
        for (int d : d_prime) {
            if (d == v)
                throw parameter_error(
                    "membership_filter: candidate overlaps filter set");
            if (!oracle.query(d, v)) {
                all_true = false;
                break;
            }
        }
        if (all_true) out.push_back(v);
    }
    return out;
}

// Two-step recovery: Step 1 finds the largest clique D inside S; Step 2
// keeps the outside vertices adjacent to all of D', the
// ceil((1+eps0)*log2 n) lowest-labeled members of D.
inline RecoveryOutcome recover(EdgeOracle& oracle,
                               const DetectionParams& params, double eps0) {
    if (!(eps0 > 0)) throw parameter_error("recover: need eps0 > 0");
    const int n = params.n;
    RecoveryOutcome out;

    const std::uint64_t q0 = oracle.queries_used();
    DenseSubgraph g = build_from_oracle(params.s_vertices, oracle);
    CliqueWitness d = max_clique(g);
    out.d_set = d.vertices;
    out.queries_step1 = oracle.queries_used() - q0;

    const int want = static_cast<int>(
        std::ceil((1.0 + eps0) * std::log2(static_cast<double>(n))));
    const int take = std::min<int>(want, static_cast<int>(out.d_set.size()));
    out.d_prime.assign(out.d_set.begin(), out.d_set.begin() + take);

    std::vector<char> in_s(static_cast<std::size_t>(n) + 1, 0);
    for (int v : params.s_vertices) in_s[static_cast<std::size_t>(v)] = 1;
    std::vector<int> candidates;
    candidates.reserve(static_cast<std::size_t>(n - params.m));
    for (int v = 1; v <= n; ++v)
        if (!in_s[static_cast<std::size_t>(v)]) candidates.push_back(v);

    const std::uint64_t q1 = oracle.queries_used();
    if (!candidates.empty())
        out.t_set = membership_filter(out.d_prime, candidates, oracle);
    out.queries_step2 = oracle.queries_used() - q1;

    out.estimate = out.d_set;
    out.estimate.insert(out.estimate.end(), out.t_set.begin(),
                        out.t_set.end());
    std::sort(out.estimate.begin(), out.estimate.end());
    return out;
}

// Exact-set success criterion.
inline bool verify_estimate(const RecoveryOutcome& outcome,
                            const PlantedInstance& instance) {
    if (instance.hypothesis != Hypothesis::Planted)
        throw parameter_error("verify_estimate: instance is not Planted");
    return outcome.estimate == instance.clique;
}

}  // namespace cliqueprobe
