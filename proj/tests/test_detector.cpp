#include <cmath>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "cliqueprobe/detector.hpp"

using namespace cliqueprobe;

TEST_CASE("derive_params reference values", "[detector]") {
    auto p = derive_params(65536, 2048, 4.0);
    REQUIRE(p.eps_prime == Catch::Approx(std::sqrt(12.0) - 2.0));
    REQUIRE(p.m == 1774);
    REQUIRE(p.threshold == 44);
    REQUIRE(static_cast<int>(p.s_vertices.size()) == 1774);
    REQUIRE(p.s_vertices.front() == 1);
    REQUIRE(p.s_vertices.back() == 1774);
    REQUIRE_FALSE(p.m_clamped);

    // slack capped by the quadratic root when k is generous
    auto q = derive_params(1024, 500, 0.5);
    REQUIRE(q.eps_prime == Catch::Approx(std::sqrt(5.0) - 2.0));

    REQUIRE_THROWS_WITH(derive_params(16, 4, 1.0),
                        Catch::Matchers::ContainsSubstring(
                            "clique below detectability hypothesis"));
    REQUIRE_THROWS_AS(derive_params(3, 3, 1.0), parameter_error);
    REQUIRE_THROWS_AS(derive_params(64, 20, 0.0), parameter_error);
}

TEST_CASE("m clamps to n when k is barely detectable", "[detector]") {
    auto p = derive_params(256, 17, 4.0);
    REQUIRE(p.m == 256);
    REQUIRE(p.m_clamped);
}

TEST_CASE("random S mode", "[detector]") {
    auto a = derive_params(4096, 512, 4.0, SMode::RandomSeeded, 5);
    auto b = derive_params(4096, 512, 4.0, SMode::RandomSeeded, 5);
    auto c = derive_params(4096, 512, 4.0, SMode::RandomSeeded, 6);
    REQUIRE(a.s_vertices == b.s_vertices);
    REQUIRE(a.s_vertices != c.s_vertices);
    REQUIRE(static_cast<int>(a.s_vertices.size()) == a.m);
    REQUIRE(std::is_sorted(a.s_vertices.begin(), a.s_vertices.end()));
}

TEST_CASE("expected overlap", "[detector]") {
    auto p = derive_params(65536, 2048, 4.0);
    auto om = expected_overlap(p);
    REQUIRE(om.mean == Catch::Approx(55.4375));

    auto full = derive_params(64, 64, 4.0);
    auto om2 = expected_overlap(full);
    REQUIRE(om2.mean == Catch::Approx(static_cast<double>(full.m)));
    REQUIRE(om2.variance_bound == Catch::Approx(0.0));

    // signal gap: mean overlap exceeds the threshold across a grid
    for (int n : {256, 1024, 4096, 65536}) {
        const int lg = static_cast<int>(std::log2(n));
        for (int mult : {3, 4, 6}) {
            for (double eps0 : {1.0, 2.0, 4.0}) {
                auto g = derive_params(n, mult * lg, eps0);
                REQUIRE(expected_overlap(g).mean > g.threshold);
            }
        }
    }
}

TEST_CASE("detect on a fully planted graph", "[detector]") {
    auto p = derive_params(64, 64, 4.0);
    EdgeOracle oracle(sample_instance(64, 64, Hypothesis::Planted, 1));
    auto out = detect(oracle, p);
    REQUIRE(out.decision == Hypothesis::Planted);
    REQUIRE(out.witness_size == p.m);
    REQUIRE(out.witness_size >= p.threshold);
}

TEST_CASE("query accounting is exactly all pairs of S", "[detector]") {
    auto p = derive_params(1024, 181, 4.0);
    EdgeOracle oracle(sample_instance(1024, 181, Hypothesis::Planted, 2));
    auto out = detect(oracle, p);
    const std::uint64_t m = static_cast<std::uint64_t>(p.m);
    REQUIRE(out.queries_charged == m * (m - 1) / 2);
    REQUIRE(oracle.queries_used() == m * (m - 1) / 2);
}

TEST_CASE("nonadaptivity: the pair sequence ignores answers", "[detector]") {
    auto p = derive_params(256, 40, 4.0);
    EdgeOracle planted(sample_instance(256, 40, Hypothesis::Planted, 3),
                       std::nullopt, true);
    EdgeOracle null(sample_instance(256, 40, Hypothesis::Null, 4),
                    std::nullopt, true);
    detect(planted, p);
    detect(null, p);
    REQUIRE(planted.transcript().size() == null.transcript().size());
    for (std::size_t t = 0; t < null.transcript().size(); ++t) {
        REQUIRE(planted.transcript()[t].i == null.transcript()[t].i);
        REQUIRE(planted.transcript()[t].j == null.transcript()[t].j);
    }
}

TEST_CASE("decision matches the threshold rule", "[detector]") {
    auto p = derive_params(256, 40, 4.0);
    for (std::uint64_t s = 0; s < 10; ++s) {
        for (auto h : {Hypothesis::Null, Hypothesis::Planted}) {
            EdgeOracle oracle(sample_instance(256, 40, h, s));
            auto out = detect(oracle, p);
            REQUIRE((out.decision == Hypothesis::Planted) ==
                    (out.witness_size >= p.threshold));
        }
    }
}

TEST_CASE("null instances stay below threshold", "[detector]") {
    auto p = derive_params(1024, 181, 4.0);
    int nulls = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        EdgeOracle oracle(sample_instance(1024, 181, Hypothesis::Null, s));
        if (detect(oracle, p).decision == Hypothesis::Null) ++nulls;
    }
    REQUIRE(nulls >= 95);
}

TEST_CASE("outcome json", "[detector]") {
    auto p = derive_params(64, 64, 1.0);
    EdgeOracle oracle(sample_instance(64, 64, Hypothesis::Planted, 1));
    auto out = detect(oracle, p);
    std::ostringstream os;
    out.write_json(os);
    REQUIRE(os.str().find("\"decision\":\"Planted\"") != std::string::npos);
    REQUIRE(os.str().find("\"witness_size\":") != std::string::npos);
    REQUIRE(os.str().find("\"queries\":") != std::string::npos);
}
