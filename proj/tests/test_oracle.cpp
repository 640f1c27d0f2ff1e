#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "cliqueprobe/oracle.hpp"
#include "cliqueprobe/subgraph.hpp"

using namespace cliqueprobe;

TEST_CASE("instance sampling basics", "[oracle]") {
    auto full = sample_instance(8, 8, Hypothesis::Planted, 42);
    REQUIRE(full.clique == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});

    auto null = sample_instance(8, 3, Hypothesis::Null, 42);
    REQUIRE(null.clique.empty());

    auto planted = sample_instance(8, 3, Hypothesis::Planted, 7);
    REQUIRE(planted.clique.size() == 3);
    REQUIRE(std::is_sorted(planted.clique.begin(), planted.clique.end()));
    REQUIRE(planted.clique.front() >= 1);
    REQUIRE(planted.clique.back() <= 8);
    REQUIRE(sample_instance(8, 3, Hypothesis::Planted, 7).clique ==
            planted.clique);

    REQUIRE_THROWS_AS(sample_instance(8, 9, Hypothesis::Planted, 0),
                      parameter_error);
    REQUIRE_THROWS_AS(sample_instance(8, 0, Hypothesis::Planted, 0),
                      parameter_error);
}

TEST_CASE("instance sampling is uniform", "[oracle]") {
    constexpr int trials = 100000;
    std::vector<int> hits(9, 0);
    for (int s = 0; s < trials; ++s) {
        auto inst = sample_instance(8, 3, Hypothesis::Planted,
                                    static_cast<std::uint64_t>(s));
        for (int v : inst.clique) ++hits[static_cast<std::size_t>(v)];
    }
    const double p = 3.0 / 8.0;
    const double sigma = std::sqrt(p * (1 - p) / trials);
    for (int v = 1; v <= 8; ++v) {
        const double freq = static_cast<double>(hits[v]) / trials;
        REQUIRE(std::abs(freq - p) <= 3 * sigma);
    }
}

TEST_CASE("edge query semantics", "[oracle]") {
    auto inst = sample_instance(16, 5, Hypothesis::Planted, 3);
    EdgeOracle oracle(inst);
    REQUIRE(oracle.query(inst.clique[0], inst.clique[1]));
    REQUIRE(oracle.query(inst.clique[4], inst.clique[2]));
    REQUIRE_THROWS_AS(oracle.query(3, 3), parameter_error);
    REQUIRE_THROWS_AS(oracle.query(0, 1), parameter_error);
    REQUIRE_THROWS_AS(oracle.query(1, 17), parameter_error);
}

TEST_CASE("null edge density is a fair coin", "[oracle]") {
    EdgeOracle oracle(sample_instance(1000, 1, Hypothesis::Null, 11));
    long long trues = 0, total = 0;
    for (int i = 1; i <= 1000 && total < 100000; ++i)
        for (int j = i + 1; j <= 1000 && total < 100000; ++j) {
            if (oracle.query(i, j)) ++trues;
            ++total;
        }
    const double sigma = std::sqrt(0.25 / total);
    REQUIRE(std::abs(static_cast<double>(trues) / total - 0.5) <= 3 * sigma);
}

TEST_CASE("memoization and budget accounting", "[oracle]") {
    EdgeOracle oracle(sample_instance(32, 4, Hypothesis::Planted, 5));
    REQUIRE(oracle.queries_used() == 0);
    bool first = oracle.query(1, 2);
    for (int rep = 0; rep < 4; ++rep) REQUIRE(oracle.query(2, 1) == first);
    REQUIRE(oracle.queries_used() == 1);
    REQUIRE(oracle.raw_calls() == 5);

    for (int i = 1; i <= 10; ++i)
        for (int j = i + 1; j <= 10; ++j) oracle.query(i, j);
    REQUIRE(oracle.queries_used() == 45);
}

TEST_CASE("budget safety", "[oracle]") {
    EdgeOracle oracle(sample_instance(32, 4, Hypothesis::Null, 5), 3);
    oracle.query(1, 2);
    oracle.query(1, 3);
    oracle.query(1, 4);
    REQUIRE(oracle.queries_used() == 3);
    REQUIRE_THROWS_AS(oracle.query(1, 5), budget_exhausted_error);
    REQUIRE(oracle.queries_used() == 3);
    // cached pairs remain answerable for free
    REQUIRE_NOTHROW(oracle.query(2, 1));
    REQUIRE(oracle.remaining_budget() == std::uint64_t{0});
}

TEST_CASE("answers are order independent and deterministic", "[oracle]") {
    auto inst = sample_instance(20, 6, Hypothesis::Planted, 99);
    EdgeOracle a(inst), b(inst);
    std::map<std::pair<int, int>, bool> seen;
    for (int i = 1; i <= 20; ++i)
        for (int j = i + 1; j <= 20; ++j) seen[{i, j}] = a.query(i, j);
    for (auto it = seen.rbegin(); it != seen.rend(); ++it)
        REQUIRE(b.query(it->first.second, it->first.first) == it->second);
}

TEST_CASE("lazy oracle matches an eagerly materialized matrix", "[oracle]") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const int n = 12;
        auto inst = sample_instance(n, 4, Hypothesis::Planted, seed);
        // eager: realize every pair up front from the same stream rule
        std::vector<std::vector<bool>> adj(
            static_cast<std::size_t>(n) + 1,
            std::vector<bool>(static_cast<std::size_t>(n) + 1, false));
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                const bool in_clique =
                    std::binary_search(inst.clique.begin(),
                                       inst.clique.end(), i) &&
                    std::binary_search(inst.clique.begin(),
                                       inst.clique.end(), j);
                adj[i][j] = in_clique || pair_coin(inst.seed, i, j);
            }
        EdgeOracle oracle(inst);
        for (int j = n; j >= 1; --j)
            for (int i = 1; i < j; ++i)
                REQUIRE(oracle.query(i, j) == adj[i][j]);
    }
}

TEST_CASE("transcript export", "[oracle]") {
    EdgeOracle oracle(sample_instance(8, 8, Hypothesis::Planted, 1),
                      std::nullopt, true);
    oracle.query(2, 1);
    oracle.query(1, 2);  // cached, not recorded again
    oracle.query(3, 4);
    REQUIRE(oracle.transcript().size() == 2);
    std::ostringstream os;
    oracle.write_transcript(os);
    REQUIRE(os.str() ==
            "{\"i\":1,\"j\":2,\"answer\":true}\n"
            "{\"i\":3,\"j\":4,\"answer\":true}\n");
}
