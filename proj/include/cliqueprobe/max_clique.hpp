#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "cliqueprobe/subgraph.hpp"

namespace cliqueprobe {

// A clique in a source subgraph, reported in original vertex ids.
struct CliqueWitness {
    std::vector<int> vertices;  // sorted ascending
    int size = 0;
};

namespace detail {

using Bits = std::vector<std::uint64_t>;

// Branch and bound over bit-parallel candidate sets with a greedy
// coloring upper bound and single-vertex recoloring. Vertices are
// pre-sorted by non-increasing degree.
class MaxCliqueSearch {
  public:
    explicit MaxCliqueSearch(const DenseSubgraph& g)
        : n_(g.size()), words_((n_ + 63) / 64) {
        order_.resize(n_);
        pos_.resize(n_);
        std::iota(order_.begin(), order_.end(), 0);
        std::vector<int> deg(n_);
        for (int v = 0; v < n_; ++v) deg[v] = g.degree(v);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return deg[a] > deg[b]; });
        for (int i = 0; i < n_; ++i) pos_[order_[i]] = i;
        adj_.assign(static_cast<std::size_t>(n_) * words_, 0);
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                if (g.adjacent(a, b)) {
                    set_bit(row(pos_[a]), pos_[b]);
                    set_bit(row(pos_[b]), pos_[a]);
                }
        levels_.resize(static_cast<std::size_t>(n_) + 1);
        classes_.assign(static_cast<std::size_t>(n_) + 1, Bits(words_));
        classes_store_.assign(static_cast<std::size_t>(n_) + 1, Bits(words_));
    }

    // Exact search within `candidates`. best_size starts at lower_bound
    // (no witness is claimed for the bound itself); stops early once a
    // clique of size >= stop_at is found. With lower_bound = 0 and
    // stop_at > n the result is the exact maximum clique.
    void run(const Bits& candidates, int lower_bound, int stop_at) {
        best_size_ = lower_bound;
        stop_at_ = stop_at;
        stopped_ = false;
        best_.clear();
        current_.clear();
        Bits p = candidates;
        if (count(p) > 0) expand(p, 0);
    }

    // Decision driver: multi-start greedy fast path, then exact search
    // with an artificial lower bound of t-1.
    void run_decision(int t) {
        Bits full = full_set();
        auto seed = greedy_clique(full);
        if (static_cast<int>(seed.size()) >= t) {
            best_size_ = static_cast<int>(seed.size());
            best_ = seed;
            return;
        }
        run(full, t - 1, t);
        if (!found_witness()) {
            // keep the greedy clique as the best one actually found
            best_size_ = static_cast<int>(seed.size());
            best_ = seed;
        }
    }

    // Full exact search seeded with a multi-start greedy clique.
    void run_all() {
        Bits full = full_set();
        auto seed = greedy_clique(full);
        best_size_ = static_cast<int>(seed.size());
        best_ = seed;
        stop_at_ = n_ + 1;
        stopped_ = false;
        current_.clear();
        Bits p = full;
        if (count(p) > 0) expand(p, 0);
    }

    int best_size() const { return best_size_; }
    bool found_witness() const { return !best_.empty(); }
    // Local indices of the source subgraph, sorted.
    std::vector<int> best_local() const {
        std::vector<int> out;
        out.reserve(best_.size());
        for (int p : best_) out.push_back(order_[p]);
        std::sort(out.begin(), out.end());
        return out;
    }

    Bits full_set() const {
        Bits full(words_, 0);
        for (int v = 0; v < n_; ++v) set_bit(const_cast<Bits&>(full).data(), v);
        return full;
    }
    bool contains_local(const Bits& set, int local) const {
        const int p = pos_[local];
        return (set[p / 64] >> (p % 64)) & 1ULL;
    }
    Bits neighbors_of_local(int local, const Bits& within) const {
        const std::uint64_t* r = row_const(pos_[local]);
        Bits out(words_);
        for (int w = 0; w < words_; ++w) out[w] = r[w] & within[w];
        return out;
    }

    static int count(const Bits& s) {
        int c = 0;
        for (auto w : s) c += __builtin_popcountll(w);
        return c;
    }

  private:
    struct Level {
        Bits np;
        std::vector<int> verts;
        std::vector<int> colors;
    };

    std::uint64_t* row(int v) {
        return adj_.data() + static_cast<std::size_t>(v) * words_;
    }
    const std::uint64_t* row_const(int v) const {
        return adj_.data() + static_cast<std::size_t>(v) * words_;
    }
    static void set_bit(std::uint64_t* s, int v) {
        s[v / 64] |= 1ULL << (v % 64);
    }
    static void clear_bit(Bits& s, int v) {
        s[v / 64] &= ~(1ULL << (v % 64));
    }
    static int first_bit(const Bits& s) {
        for (std::size_t w = 0; w < s.size(); ++w)
            if (s[w]) return static_cast<int>(w) * 64 + __builtin_ctzll(s[w]);
        return -1;
    }

    // Deterministic multi-start greedy: from each of the highest-degree
    // start vertices, repeatedly add the candidate with the largest
    // degree inside the shrinking candidate set.
    std::vector<int> greedy_clique(const Bits& full) const {
        std::vector<int> best;
        const int starts = std::min(n_, 128);
        Bits cand(words_), tmp(words_);
        for (int s = 0; s < starts; ++s) {
            std::vector<int> clique{s};
            const std::uint64_t* rs = row_const(s);
            for (int w = 0; w < words_; ++w) cand[w] = rs[w] & full[w];
            while (true) {
                int pick = -1, pick_deg = -1;
                for (int w = 0; w < words_; ++w) {
                    std::uint64_t bits = cand[w];
                    while (bits) {
                        const int v = w * 64 + __builtin_ctzll(bits);
                        bits &= bits - 1;
                        const std::uint64_t* rv = row_const(v);
                        int d = 0;
                        for (int x = 0; x < words_; ++x)
                            d += __builtin_popcountll(rv[x] & cand[x]);
                        if (d > pick_deg) {
                            pick_deg = d;
                            pick = v;
                        }
                    }
                }
                if (pick < 0) break;
                clique.push_back(pick);
                const std::uint64_t* rp = row_const(pick);
                for (int w = 0; w < words_; ++w) cand[w] &= rp[w];
            }
            if (clique.size() > best.size()) best = std::move(clique);
        }
        return best;
    }

    // Greedy sequential coloring of P restricted to the branching set:
    // only vertices with color > kmin are emitted, in nondecreasing
    // color order. Vertices that would exceed kmin are first offered a
    // recoloring swap into the low classes.
    void color_sort(const Bits& p, int kmin, std::vector<int>& verts,
                    std::vector<int>& colors) {
        verts.clear();
        colors.clear();
        Bits uncolored = p;
        int ncls = 0;
        while (first_bit(uncolored) >= 0) {
            ++ncls;
            Bits& cls = classes_[ncls];
            cls = uncolored;
            std::fill(classes_store_[ncls].begin(), classes_store_[ncls].end(),
                      0);
            while (true) {
                const int v = first_bit(cls);
                if (v < 0) break;
                clear_bit(uncolored, v);
                clear_bit(cls, v);
                const std::uint64_t* r = row_const(v);
                for (int w = 0; w < words_; ++w) cls[w] &= ~r[w];
                if (ncls > kmin && kmin >= 1 && try_recolor(v, kmin)) continue;
                set_bit(classes_store_[ncls].data(), v);
                if (ncls > kmin) {
                    verts.push_back(v);
                    colors.push_back(ncls);
                }
            }
        }
    }

    // Try to move v into a class <= kmin: find a low class with exactly
    // one neighbor w of v and a second low class with no neighbor of w.
    bool try_recolor(int v, int kmin) {
        const std::uint64_t* rv = row_const(v);
        for (int j1 = 1; j1 <= kmin; ++j1) {
            const Bits& c1 = classes_store_[j1];
            int cnt = 0, w_vert = -1;
            for (int w = 0; w < words_; ++w) {
                std::uint64_t inter = c1[w] & rv[w];
                if (inter) {
                    cnt += __builtin_popcountll(inter);
                    if (cnt > 1) break;
                    w_vert = w * 64 + __builtin_ctzll(inter);
                }
            }
            if (cnt == 0) {
                set_bit(classes_store_[j1].data(), v);
                return true;
            }
            if (cnt != 1) continue;
            const std::uint64_t* rw = row_const(w_vert);
            for (int j2 = j1 + 1; j2 <= kmin; ++j2) {
                Bits& c2 = classes_store_[j2];
                bool clash = false;
                for (int w = 0; w < words_; ++w)
                    if (c2[w] & rw[w]) {
                        clash = true;
                        break;
                    }
                if (!clash) {
                    clear_bit(classes_store_[j1], w_vert);
                    set_bit(classes_store_[j1].data(), v);
                    set_bit(c2.data(), w_vert);
                    return true;
                }
            }
        }
        return false;
    }

    // Re-root the subproblem on the current candidate set as a compact
    // re-indexed graph. Word count per bitset drops with the candidate
    // count, which is where most of the search time goes.
    void subsolve(const Bits& p, int depth) {
        std::vector<int> locs;
        for (int w = 0; w < words_; ++w) {
            std::uint64_t bits = p[w];
            while (bits) {
                locs.push_back(order_[w * 64 + __builtin_ctzll(bits)]);
                bits &= bits - 1;
            }
        }
        std::sort(locs.begin(), locs.end());
        DenseSubgraph sg(locs);
        const int s = static_cast<int>(locs.size());
        for (int a = 0; a < s; ++a) {
            const std::uint64_t* r = row_const(pos_[locs[a]]);
            for (int b = a + 1; b < s; ++b) {
                const int pb = pos_[locs[b]];
                if ((r[pb / 64] >> (pb % 64)) & 1ULL) sg.set_edge(a, b);
            }
        }
        MaxCliqueSearch sub(sg);
        sub.compaction_enabled_ = false;
        sub.run(sub.full_set(), std::max(0, best_size_ - depth),
                stop_at_ - depth);
        if (sub.found_witness() && sub.best_size() + depth > best_size_) {
            best_size_ = sub.best_size() + depth;
            best_ = current_;
            for (int l : sub.best_local()) best_.push_back(pos_[locs[l]]);
            if (best_size_ >= stop_at_) stopped_ = true;
        }
    }

    void expand(Bits& p, int depth) {
        if (depth == 1 && compaction_enabled_ && words_ >= 8) {
            const int cnt = count(p);
            if (cnt >= 300 && ((cnt + 63) / 64) * 3 <= words_ * 2) {
                subsolve(p, depth);
                return;
            }
        }
        Level& lv = levels_[depth];
        if (lv.np.empty()) lv.np.assign(words_, 0);
        const int kmin = std::max(0, best_size_ - depth);
        color_sort(p, kmin, lv.verts, lv.colors);
        for (int idx = static_cast<int>(lv.verts.size()) - 1; idx >= 0;
             --idx) {
            if (stopped_) return;
            if (depth + lv.colors[idx] <= best_size_) return;
            const int v = lv.verts[idx];
            current_.push_back(v);
            const std::uint64_t* r = row_const(v);
            bool empty = true;
            for (int w = 0; w < words_; ++w) {
                lv.np[w] = p[w] & r[w];
                if (lv.np[w]) empty = false;
            }
            if (empty) {
                if (depth + 1 > best_size_) {
                    best_size_ = depth + 1;
                    best_ = current_;
                    if (best_size_ >= stop_at_) stopped_ = true;
                }
            } else {
                Bits saved = lv.np;
                expand(saved, depth + 1);
            }
            current_.pop_back();
            clear_bit(p, v);
        }
    }

    int n_, words_;
    std::vector<int> order_;  // position -> original local index
    std::vector<int> pos_;    // original local index -> position
    std::vector<std::uint64_t> adj_;
    std::vector<Level> levels_;
    std::vector<Bits> classes_;
    std::vector<Bits> classes_store_{};
    int best_size_ = 0;
    int stop_at_ = 0;
    bool stopped_ = false;
    bool compaction_enabled_ = true;
    std::vector<int> best_, current_;
};

}  // namespace detail

// Exact decision: does g contain a clique of size >= t? Returns a
// (not necessarily lexicographically minimal) witness when one exists.
inline std::optional<CliqueWitness> find_clique_of_size(
    const DenseSubgraph& g, int t) {
    if (t <= 0) return CliqueWitness{{}, 0};
    if (t > g.size()) return std::nullopt;
    if (t == 1) return CliqueWitness{{g.labels()[0]}, 1};
    detail::MaxCliqueSearch s(g);
    s.run_decision(t);
    if (s.best_size() < t) return std::nullopt;
    CliqueWitness w;
    for (int local : s.best_local()) w.vertices.push_back(g.labels()[local]);
    w.size = static_cast<int>(w.vertices.size());
    return w;
}

// Exact threshold test reporting the largest clique actually found:
// `reached` is exact (a clique of size >= t exists iff true); when it
// is false, `witness` is the best clique encountered, a lower bound.
struct ThresholdSearchResult {
    bool reached = false;
    CliqueWitness witness;
};

inline ThresholdSearchResult clique_threshold_search(const DenseSubgraph& g,
                                                     int t) {
    ThresholdSearchResult res;
    if (g.size() == 0) {
        res.reached = (t <= 0);
        return res;
    }
    detail::MaxCliqueSearch s(g);
    s.run_decision(t);
    for (int local : s.best_local())
        res.witness.vertices.push_back(g.labels()[local]);
    res.witness.size = static_cast<int>(res.witness.vertices.size());
    res.reached = res.witness.size >= t;
    return res;
}

// Exact maximum clique size, without the tie-break pass.
inline int max_clique_size(const DenseSubgraph& g) {
    if (g.size() == 0) return 0;
    detail::MaxCliqueSearch s(g);
    s.run_all();
    return s.best_size();
}

// Exact maximum clique; among all maximum cliques, returns the
// lexicographically smallest vertex set.
inline CliqueWitness max_clique(const DenseSubgraph& g) {
    CliqueWitness w;
    if (g.size() == 0) return w;
    detail::MaxCliqueSearch s(g);
    s.run_all();
    const int omega = s.best_size();
    // Lexicographic minimization: grow the clique by always taking the
    // smallest local index that still extends to a clique of size omega.
    auto cand = s.full_set();
    std::vector<int> chosen;
    const int n = g.size();
    while (static_cast<int>(chosen.size()) < omega) {
        const int need = omega - static_cast<int>(chosen.size()) - 1;
        for (int v = 0; v < n; ++v) {
            if (!s.contains_local(cand, v)) continue;
            auto nb = s.neighbors_of_local(v, cand);
            bool ok;
            if (need == 0) {
                ok = true;
            } else if (detail::MaxCliqueSearch::count(nb) < need) {
                ok = false;
            } else {
                s.run(nb, need - 1, need);
                ok = s.found_witness();
            }
            if (ok) {
                chosen.push_back(v);
                cand = std::move(nb);
                break;
            }
        }
    }
    std::sort(chosen.begin(), chosen.end());
    for (int v : chosen) w.vertices.push_back(g.labels()[v]);
    w.size = omega;
    return w;
}

// Clique-number reference values for G(n,1/2): the two-term point of
// concentration and the first-moment upper cap 2*log2(n) + 3.
inline std::pair<double, double> omega_reference(int n) {
    if (n < 4) throw parameter_error("omega_reference: need n >= 4");
    const double log2n = std::log2(static_cast<double>(n));
    const double omega_n = 2.0 * log2n - 2.0 * std::log2(log2n) +
                           2.0 * std::log2(std::exp(1.0)) - 1.0;
    return {omega_n, 2.0 * log2n + 3.0};
}

}  // namespace cliqueprobe
