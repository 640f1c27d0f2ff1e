#include <cmath>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "cliqueprobe/recoverer.hpp"

using namespace cliqueprobe;

TEST_CASE("whole-graph instance recovers trivially", "[recoverer]") {
    auto p = derive_params(8, 8, 4.0);
    REQUIRE(p.m == 8);
    REQUIRE(p.m_clamped);
    auto inst = sample_instance(8, 8, Hypothesis::Planted, 1);
    EdgeOracle oracle(inst);
    auto out = recover(oracle, p, 4.0);
    REQUIRE(out.d_set == inst.clique);
    REQUIRE(out.t_set.empty());
    REQUIRE(out.queries_step2 == 0);
    REQUIRE(out.estimate == inst.clique);
    REQUIRE(verify_estimate(out, inst));
}

TEST_CASE("membership filter basics", "[recoverer]") {
    auto inst = sample_instance(64, 10, Hypothesis::Planted, 21);
    EdgeOracle oracle(inst);
    std::vector<int> d_prime(inst.clique.begin(), inst.clique.begin() + 5);

    // a planted candidate always survives a planted filter set
    std::vector<int> cand{inst.clique[7]};
    REQUIRE(membership_filter(d_prime, cand, oracle) == cand);

    std::vector<int> none;
    const std::uint64_t used = oracle.queries_used();
    REQUIRE(membership_filter(d_prime, none, oracle).empty());
    REQUIRE(oracle.queries_used() == used);

    REQUIRE_THROWS_AS(membership_filter(none, cand, oracle),
                      parameter_error);
    REQUIRE_THROWS_AS(membership_filter(d_prime, d_prime, oracle),
                      parameter_error);
}

TEST_CASE("non-members survive the filter at rate 2^-l", "[recoverer]") {
    EdgeOracle oracle(sample_instance(10003, 1, Hypothesis::Null, 8));
    std::vector<int> d_prime{1, 2, 3};
    std::vector<int> candidates;
    for (int v = 4; v <= 10003; ++v) candidates.push_back(v);
    const auto survivors = membership_filter(d_prime, candidates, oracle);
    const double rate =
        static_cast<double>(survivors.size()) / candidates.size();
    const double p = 1.0 / 8.0;
    const double sigma = std::sqrt(p * (1 - p) / candidates.size());
    REQUIRE(std::abs(rate - p) <= 3 * sigma);
}

TEST_CASE("verify_estimate is the exact-set criterion", "[recoverer]") {
    auto inst = sample_instance(32, 5, Hypothesis::Planted, 9);
    RecoveryOutcome out;
    out.estimate = inst.clique;
    REQUIRE(verify_estimate(out, inst));
    out.estimate.push_back(31);
    std::sort(out.estimate.begin(), out.estimate.end());
    REQUIRE_FALSE(verify_estimate(out, inst));
    out.estimate = inst.clique;
    out.estimate.pop_back();
    REQUIRE_FALSE(verify_estimate(out, inst));

    auto null = sample_instance(32, 5, Hypothesis::Null, 9);
    REQUIRE_THROWS_AS(verify_estimate(out, null), parameter_error);
}

TEST_CASE("golden seeded recovery run", "[recoverer]") {
    const int n = 4096, k = 512;
    const double eps0 = 4.0;
    auto params = derive_params(n, k, eps0);
    auto inst = sample_instance(n, k, Hypothesis::Planted, 20260823);
    EdgeOracle oracle(inst, std::nullopt, true);
    auto out = recover(oracle, params, eps0);

    REQUIRE(out.estimate == inst.clique);
    REQUIRE(verify_estimate(out, inst));

    // structural invariants
    REQUIRE(static_cast<int>(out.d_prime.size()) ==
            std::min<int>(static_cast<int>(out.d_set.size()),
                          static_cast<int>(std::ceil(
                              (1.0 + eps0) * std::log2(double(n))))));
    REQUIRE(std::includes(out.d_set.begin(), out.d_set.end(),
                          out.d_prime.begin(), out.d_prime.end()));
    REQUIRE(out.queries_step2 <=
            out.d_prime.size() *
                static_cast<std::uint64_t>(n - params.m));

    // total budget inequality
    const double lg = std::log2(static_cast<double>(n));
    const double bound = (2.0 + eps0) * (double(n) / k) * (double(n) / k) *
                             lg * lg +
                         (1.0 + eps0) * n * lg;
    REQUIRE(static_cast<double>(out.queries_step1 + out.queries_step2) <=
            bound);

    // containment: D inside K forces K inside the estimate
    const std::set<int> clique(inst.clique.begin(), inst.clique.end());
    bool d_in_k = true;
    for (int v : out.d_set)
        if (!clique.count(v)) d_in_k = false;
    REQUIRE(d_in_k);
    for (int v : inst.clique)
        REQUIRE(std::binary_search(out.estimate.begin(), out.estimate.end(),
                                   v));

    // in-clique query sparsity: far below C(k,2)
    std::uint64_t in_clique_pairs = 0;
    for (const auto& e : oracle.transcript())
        if (clique.count(e.i) && clique.count(e.j)) ++in_clique_pairs;
    std::uint64_t overlap = 0;
    for (int v : params.s_vertices) overlap += clique.count(v) ? 1 : 0;
    const std::uint64_t cap =
        overlap * (overlap - 1) / 2 +
        out.d_prime.size() * (static_cast<std::uint64_t>(k) - overlap);
    REQUIRE(in_clique_pairs <= cap);
}
