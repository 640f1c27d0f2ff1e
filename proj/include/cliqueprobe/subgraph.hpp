#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <vector>

#include "cliqueprobe/errors.hpp"
#include "cliqueprobe/oracle.hpp"

namespace cliqueprobe {

// Explicit induced subgraph on a queried vertex subset, stored as a
// symmetric bit-matrix over local indices. Small by construction
// (|S| = O((n/k) log n)), density about 1/2.
class DenseSubgraph {
  public:
    DenseSubgraph() = default;

    explicit DenseSubgraph(std::vector<int> labels)
        : labels_(std::move(labels)),
          n_(static_cast<int>(labels_.size())),
          words_((n_ + 63) / 64),
          adj_(static_cast<std::size_t>(n_) * words_, 0) {
        for (std::size_t i = 1; i < labels_.size(); ++i)
            if (labels_[i - 1] >= labels_[i])
                throw parameter_error(
                    "DenseSubgraph: labels must be sorted and distinct");
    }

    int size() const { return n_; }
    int words() const { return words_; }
    const std::vector<int>& labels() const { return labels_; }

    bool adjacent(int a, int b) const {
        return (adj_[static_cast<std::size_t>(a) * words_ + b / 64] >>
                (b % 64)) & 1ULL;
    }

    void set_edge(int a, int b) {
        if (a == b) throw parameter_error("DenseSubgraph: self-loop");
        adj_[static_cast<std::size_t>(a) * words_ + b / 64] |=
            1ULL << (b % 64);
        adj_[static_cast<std::size_t>(b) * words_ + a / 64] |=
            1ULL << (a % 64);
    }

    const std::uint64_t* row(int v) const {
        return adj_.data() + static_cast<std::size_t>(v) * words_;
    }

    int degree(int v) const {
        int d = 0;
        const std::uint64_t* r = row(v);
        for (int w = 0; w < words_; ++w) d += __builtin_popcountll(r[w]);
        return d;
    }

    std::uint64_t edge_count() const {
        std::uint64_t twice = 0;
        for (int v = 0; v < n_; ++v) twice += degree(v);
        return twice / 2;
    }

    // DIMACS-like edge list: `p edge V E` header, `e i j` lines using
    // original labels.
    void write_dimacs(std::ostream& os) const {
        os << "p edge " << n_ << " " << edge_count() << "\n";
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                if (adjacent(a, b))
                    os << "e " << labels_[a] << " " << labels_[b] << "\n";
    }

  private:
    std::vector<int> labels_;
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> adj_;
};

// Query every pair within vertex_set exactly once and assemble the
// induced subgraph. Ledger grows by the number of previously uncached
// internal pairs.
inline DenseSubgraph build_from_oracle(std::vector<int> vertex_set,
                                       EdgeOracle& oracle) {
    std::sort(vertex_set.begin(), vertex_set.end());
    for (std::size_t i = 1; i < vertex_set.size(); ++i)
        if (vertex_set[i - 1] == vertex_set[i])
            throw parameter_error("build_from_oracle: duplicate vertex");
    DenseSubgraph g(vertex_set);
    const auto& labels = g.labels();
    const int m = g.size();
    oracle.reserve_cache(oracle.queries_used() +
                         static_cast<std::size_t>(m) * (m - 1) / 2);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (oracle.query(labels[a], labels[b])) g.set_edge(a, b);
    return g;
}

}  // namespace cliqueprobe
