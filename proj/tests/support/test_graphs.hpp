#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cliqueprobe/max_clique.hpp"
#include "cliqueprobe/subgraph.hpp"

namespace testsupport {

// Independent subset-enumeration reference for graphs of <= ~20
// vertices; returns the lexicographically smallest maximum clique.
inline cliqueprobe::CliqueWitness brute_force_max_clique(
    const cliqueprobe::DenseSubgraph& g) {
    const int n = g.size();
    std::vector<int> best;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> verts;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) verts.push_back(v);
        bool clique = true;
        for (std::size_t a = 0; a < verts.size() && clique; ++a)
            for (std::size_t b = a + 1; b < verts.size(); ++b)
                if (!g.adjacent(verts[a], verts[b])) {
                    clique = false;
                    break;
                }
        if (!clique) continue;
        std::vector<int> labeled;
        for (int v : verts) labeled.push_back(g.labels()[v]);
        if (labeled.size() > best.size() ||
            (labeled.size() == best.size() && labeled < best))
            best = labeled;
    }
    cliqueprobe::CliqueWitness w;
    w.vertices = best;
    w.size = static_cast<int>(best.size());
    return w;
}

inline cliqueprobe::DenseSubgraph random_graph(int n, std::uint64_t seed,
                                               double p = 0.5) {
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = i + 1;
    cliqueprobe::DenseSubgraph g(labels);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution edge(p);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (edge(rng)) g.set_edge(a, b);
    return g;
}

inline bool is_clique(const cliqueprobe::DenseSubgraph& g,
                      const std::vector<int>& labels) {
    std::vector<int> local;
    for (int lab : labels) {
        const auto& ls = g.labels();
        const auto it = std::lower_bound(ls.begin(), ls.end(), lab);
        if (it == ls.end() || *it != lab) return false;
        local.push_back(static_cast<int>(it - ls.begin()));
    }
    for (std::size_t a = 0; a < local.size(); ++a)
        for (std::size_t b = a + 1; b < local.size(); ++b)
            if (!g.adjacent(local[a], local[b])) return false;
    return true;
}

}  // namespace testsupport
