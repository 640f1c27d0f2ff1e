#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cliqueprobe/errors.hpp"
#include "cliqueprobe/prng.hpp"

namespace cliqueprobe {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt binomial(long long a, long long b) {
    if (b < 0 || b > a) return 0;
    if (b > a - b) b = a - b;
    BigInt r = 1;
    for (long long i = 1; i <= b; ++i) {
        r *= a - b + i;
        r /= i;  // exact at every step
    }
    return r;
}

inline std::string to_fraction_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << "/" << denominator(r);
    return os.str();
}

inline std::string to_decimal_string(const Rational& r, int sig_digits = 6) {
    std::ostringstream os;
    os << std::setprecision(sig_digits) << r.convert_to<double>();
    return os.str();
}

// Marked-set game: a hidden uniform k-subset of [1..n]; queries reveal
// joint or per-element marked status.
struct MarkedInstance {
    int n = 0;
    int k = 0;
    std::vector<int> marked;  // sorted
    std::uint64_t seed = 0;
};

inline MarkedInstance sample_marked_instance(int n, int k,
                                             std::uint64_t seed) {
    if (n < 1 || k < 1 || k > n)
        throw parameter_error("sample_marked_instance: need 1 <= k <= n");
    MarkedInstance inst;
    inst.n = n;
    inst.k = k;
    inst.seed = seed;
    inst.marked = uniform_subset(n, k, derive_seed(seed, 0x6d61726bULL));
    return inst;
}

namespace detail_variant {
inline void validate_element(const MarkedInstance& inst, int i) {
    if (i < 1 || i > inst.n)
        throw parameter_error("marked-set query: element out of range");
}
}  // namespace detail_variant

inline bool is_marked(const MarkedInstance& inst, int i) {
    detail_variant::validate_element(inst, i);
    return std::binary_search(inst.marked.begin(), inst.marked.end(), i);
}

// True iff both elements are marked.
inline bool pair_query(const MarkedInstance& inst, int i, int j) {
    if (i == j) throw parameter_error("pair_query: need i != j");
    return is_marked(inst, i) && is_marked(inst, j);
}

// Per-element marked flags.
inline std::pair<bool, bool> strong_pair_query(const MarkedInstance& inst,
                                               int i, int j) {
    if (i == j) throw parameter_error("strong_pair_query: need i != j");
    return {is_marked(inst, i), is_marked(inst, j)};
}

// Edge-answer simulation from a pair answer: a true pair is a certain
// edge, a false pair is a fair coin.
template <class Coin>
bool simulate_edge_from_pair(bool pair_answer, Coin&& coin) {
    if (pair_answer) return true;
    return static_cast<bool>(coin());
}

// Fixed list of normalized pair queries; the all-false path of an
// adaptive tree.
struct QuerySet {
    std::vector<std::pair<int, int>> pairs;

    void validate(int n) const {
        for (auto [i, j] : pairs) {
            if (i < 1 || j < 1 || i > n || j > n)
                throw parameter_error("QuerySet: element out of range");
            if (i >= j)
                throw parameter_error("QuerySet: pairs must satisfy i < j");
        }
    }

    bool has_duplicates() const {
        auto sorted = pairs;
        std::sort(sorted.begin(), sorted.end());
        return std::adjacent_find(sorted.begin(), sorted.end()) !=
               sorted.end();
    }

    std::vector<std::pair<int, int>> distinct() const {
        auto sorted = pairs;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        return sorted;
    }
};

inline constexpr std::uint64_t kEnumerationCap = 10'000'000;
inline constexpr int kInclusionExclusionCap = 20;

namespace detail_variant {

// |S_q| by walking every k-subset of [1..n].
inline BigInt count_forbidden_enum(
    int n, int k, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i + 1;
    std::vector<char> in(static_cast<std::size_t>(n) + 1, 0);
    long long count = 0;
    while (true) {
        std::fill(in.begin(), in.end(), 0);
        for (int v : comb) in[static_cast<std::size_t>(v)] = 1;
        for (auto [a, b] : pairs) {
            if (in[static_cast<std::size_t>(a)] &&
                in[static_cast<std::size_t>(b)]) {
                ++count;
                break;
            }
        }
        int pos = k - 1;
        while (pos >= 0 && comb[pos] == n - (k - 1 - pos)) --pos;
        if (pos < 0) break;
        ++comb[pos];
        for (int t = pos + 1; t < k; ++t) comb[t] = comb[t - 1] + 1;
    }
    return count;
}

// |S_q| by inclusion-exclusion over distinct pairs: a subset of pairs
// with u distinct endpoints is contained in C(n-u, k-u) k-subsets.
inline BigInt count_forbidden_ie(
    int n, int k, const std::vector<std::pair<int, int>>& pairs) {
    const int q = static_cast<int>(pairs.size());
    // compact endpoint ids, at most 2q <= 40 of them
    std::vector<int> verts;
    for (auto [a, b] : pairs) {
        verts.push_back(a);
        verts.push_back(b);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    auto id = [&](int v) {
        return static_cast<int>(
            std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
    };
    std::vector<std::uint64_t> pmask(static_cast<std::size_t>(q));
    for (int t = 0; t < q; ++t)
        pmask[static_cast<std::size_t>(t)] =
            (1ULL << id(pairs[static_cast<std::size_t>(t)].first)) |
            (1ULL << id(pairs[static_cast<std::size_t>(t)].second));
    // union of endpoint sets for every subset of pairs, built from the
    // subset with its lowest bit cleared
    std::vector<std::uint64_t> umask(std::size_t{1} << q);
    std::vector<BigInt> by_u(verts.size() + 1);
    for (std::size_t u = 0; u <= verts.size(); ++u)
        by_u[u] = binomial(n - static_cast<long long>(u),
                           k - static_cast<long long>(u));
    BigInt forbidden = 0;
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << q); ++s) {
        umask[s] = umask[s & (s - 1)] | pmask[__builtin_ctzll(s)];
        const int u = __builtin_popcountll(umask[s]);
        const int bits = __builtin_popcountll(s);
        if (bits & 1)
            forbidden += by_u[static_cast<std::size_t>(u)];
        else
            forbidden -= by_u[static_cast<std::size_t>(u)];
    }
    return forbidden;
}

}  // namespace detail_variant

// P(all queries answer false) = 1 - |S_q| / C(n,k), with the forbidden
// family S_q (k-subsets containing some queried pair) counted exactly.
// Direct enumeration up to the cap, inclusion-exclusion over distinct
// pairs when the query list is short.
inline Rational exact_prob_all_false(int n, int k, const QuerySet& queries) {
    if (n < 1 || k < 1 || k > n)
        throw parameter_error("exact_prob_all_false: need 1 <= k <= n");
    queries.validate(n);
    const auto pairs = queries.distinct();
    const BigInt total = binomial(n, k);
    if (pairs.empty()) return 1;

    BigInt forbidden;
    if (total <= kEnumerationCap) {
        forbidden = detail_variant::count_forbidden_enum(n, k, pairs);
    } else if (static_cast<int>(pairs.size()) <= kInclusionExclusionCap) {
        forbidden = detail_variant::count_forbidden_ie(n, k, pairs);
    } else {
        throw enumeration_infeasible_error(
            "exact enumeration infeasible: C(n,k) exceeds the cap and the "
            "query list is too long for inclusion-exclusion; use "
            "lower_bound_prob_all_false");
    }
    return Rational(total - forbidden, total);
}

struct BoundResult {
    Rational value;
    bool hypothesis_satisfied = true;  // q <= n(n-1)/(k(k-1)) - 1
};

// Closed-form bound 1 - q*k(k-1)/(n(n-1)); computed even when the
// hypothesis on q fails, with the violation flagged.
inline BoundResult lower_bound_prob_all_false(int n, int k, long long q) {
    if (n < 2 || k < 1 || k > n)
        throw parameter_error("lower_bound_prob_all_false: need 1 <= k <= n, "
                              "n >= 2");
    if (q < 0) throw parameter_error("lower_bound_prob_all_false: need q >= 0");
    BoundResult r;
    const BigInt nn = BigInt(n) * (n - 1);
    const BigInt kk = BigInt(k) * (k - 1);
    r.value = 1 - Rational(BigInt(q) * kk, nn);
    // q <= n(n-1)/(k(k-1)) - 1, as exact rationals
    r.hypothesis_satisfied = (kk == 0) || (BigInt(q + 1) * kk <= nn);
    return r;
}

struct HypergeomSpec {
    long long population = 0;
    long long successes = 0;
    long long draws = 0;

    HypergeomSpec(long long n, long long k, long long d)
        : population(n), successes(k), draws(d) {
        if (k < 0 || k > n || d < 0 || d > n)
            throw parameter_error("HypergeomSpec: need 0 <= successes <= "
                                  "population and 0 <= draws <= population");
    }
};

// P(X = x) for X counting successes among `draws` draws without
// replacement; zero off-support.
inline Rational hypergeom_pmf(const HypergeomSpec& spec, long long x) {
    if (x < 0 || x > spec.draws) return 0;
    const BigInt num = binomial(spec.successes, x) *
                       binomial(spec.population - spec.successes,
                                spec.draws - x);
    if (num == 0) return 0;
    return Rational(num, binomial(spec.population, spec.draws));
}

// P(X <= x), exact.
inline Rational hypergeom_cdf(const HypergeomSpec& spec, long long x) {
    Rational acc = 0;
    const long long hi = std::min(x, std::min(spec.draws, spec.successes));
    for (long long t = std::max(0LL, spec.draws - (spec.population -
                                                   spec.successes));
         t <= hi; ++t)
        acc += hypergeom_pmf(spec, t);
    return acc;
}

// Success probability of the optimal estimator after strong pair
// queries on (1,2),...,(2q-1,2q): E[1 / C(n-2q, k-X)] with X the
// hypergeometric count of marked elements among the 2q revealed ones.
inline Rational exact_recovery_success(int n, int k, int q) {
    if (n < 1 || k < 1 || k > n)
        throw parameter_error("exact_recovery_success: need 1 <= k <= n");
    if (q < 0 || 2LL * q > n)
        throw parameter_error("exact_recovery_success: need 0 <= 2q <= n");
    const HypergeomSpec spec(n, k, 2LL * q);
    Rational acc = 0;
    for (long long x = 0; x <= spec.draws && x <= k; ++x) {
        const Rational p = hypergeom_pmf(spec, x);
        if (p == 0) continue;
        acc += p / Rational(binomial(n - 2LL * q, k - x));
    }
    return acc;
}

// The strategy behind that formula: reveal [1..2q] via strong queries,
// keep the marked ones, fill the remainder uniformly from outside.
inline std::vector<int> canonical_strong_strategy(const MarkedInstance& inst,
                                                  int q,
                                                  std::uint64_t fill_seed) {
    if (q < 0 || 2LL * q > inst.n)
        throw parameter_error("canonical_strong_strategy: need 0 <= 2q <= n");
    std::vector<int> found;
    for (int t = 0; t < q; ++t) {
        auto [a, b] = strong_pair_query(inst, 2 * t + 1, 2 * t + 2);
        if (a) found.push_back(2 * t + 1);
        if (b) found.push_back(2 * t + 2);
    }
    const int x = static_cast<int>(found.size());
    if (x < inst.k) {
        // uniform (k-x)-subset of [2q+1..n]
        const std::vector<int> fill = uniform_subset(
            inst.n - 2 * q, inst.k - x, derive_seed(fill_seed, 0x66696c6cULL));
        for (int v : fill) found.push_back(v + 2 * q);
    }
    std::sort(found.begin(), found.end());
    return found;
}

}  // namespace cliqueprobe
