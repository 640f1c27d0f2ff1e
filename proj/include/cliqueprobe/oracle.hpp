#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <unordered_map>
#include <vector>

#include "cliqueprobe/errors.hpp"
#include "cliqueprobe/prng.hpp"

namespace cliqueprobe {

enum class Hypothesis { Null, Planted };

// Hidden ground truth of one instance. Vertices are 1-based in [1..n].
struct PlantedInstance {
    int n = 0;
    int k = 0;
    Hypothesis hypothesis = Hypothesis::Null;
    std::vector<int> clique;  // sorted, empty under Null
    std::uint64_t seed = 0;
};

// Draw an instance: under Planted the clique is a uniform k-subset of
// [1..n] determined by the seed; under Null it is empty.
inline PlantedInstance sample_instance(int n, int k, Hypothesis h,
                                       std::uint64_t seed) {
    if (n < 1 || k < 1 || k > n)
        throw parameter_error("sample_instance: need 1 <= k <= n");
    PlantedInstance inst;
    inst.n = n;
    inst.k = k;
    inst.hypothesis = h;
    inst.seed = seed;
    if (h == Hypothesis::Planted)
        inst.clique = uniform_subset(n, k, derive_seed(seed, 0x636c6971ULL));
    return inst;
}

struct TranscriptEntry {
    int i, j;
    bool answer;
};

// Distinct-pair query accounting; the model's budget q.
// Repeated queries of a cached pair are free.
class QueryLedger {
  public:
    QueryLedger() = default;
    explicit QueryLedger(std::optional<std::uint64_t> budget)
        : budget_(budget) {}

    std::optional<std::uint64_t> budget() const { return budget_; }
    std::uint64_t used() const { return used_; }
    bool unlimited() const { return !budget_.has_value(); }
    std::optional<std::uint64_t> remaining() const {
        if (!budget_) return std::nullopt;
        return *budget_ - used_;
    }
    bool can_charge() const { return !budget_ || used_ < *budget_; }
    void charge() {
        if (!can_charge())
            throw budget_exhausted_error("query budget exhausted");
        ++used_;
    }

  private:
    std::optional<std::uint64_t> budget_;  // nullopt = unlimited
    std::uint64_t used_ = 0;
};

// Budget-enforcing adaptive edge oracle with lazy edge realization.
// Pairs inside the planted clique always answer true; every other pair
// is a memoized fair coin derived from (seed, i, j), so answers are
// independent of query order. Confined to a single trial / worker.
class EdgeOracle {
  public:
    explicit EdgeOracle(PlantedInstance instance,
                        std::optional<std::uint64_t> budget = std::nullopt,
                        bool record_transcript = false)
        : inst_(std::move(instance)),
          ledger_(budget),
          record_transcript_(record_transcript),
          in_clique_(static_cast<std::size_t>(inst_.n) + 1, 0) {
        for (int v : inst_.clique) in_clique_[static_cast<std::size_t>(v)] = 1;
    }

    const PlantedInstance& instance() const { return inst_; }
    const QueryLedger& ledger() const { return ledger_; }
    std::uint64_t queries_used() const { return ledger_.used(); }
    std::optional<std::uint64_t> remaining_budget() const {
        return ledger_.remaining();
    }
    // Raw call count, including free re-queries of cached pairs.
    std::uint64_t raw_calls() const { return raw_calls_; }

    bool is_cached(int i, int j) const {
        validate_pair(i, j);
        return cache_.count(pair_key(i, j)) != 0;
    }

    bool query(int i, int j) {
        validate_pair(i, j);
        ++raw_calls_;
        const std::uint64_t key = pair_key(i, j);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        ledger_.charge();
        bool ans;
        if (in_clique_[static_cast<std::size_t>(i)] &&
            in_clique_[static_cast<std::size_t>(j)]) {
            ans = true;
        } else {
            ans = pair_coin(inst_.seed, std::min(i, j), std::max(i, j));
        }
        cache_.emplace(key, ans);
        if (record_transcript_)
            transcript_.push_back({std::min(i, j), std::max(i, j), ans});
        return ans;
    }

    const std::vector<TranscriptEntry>& transcript() const {
        return transcript_;
    }

    // JSON-lines transcript export: {"i":..,"j":..,"answer":..}
    void write_transcript(std::ostream& os) const {
        for (const auto& e : transcript_) {
            os << "{\"i\":" << e.i << ",\"j\":" << e.j << ",\"answer\":"
               << (e.answer ? "true" : "false") << "}\n";
        }
    }

    void reserve_cache(std::size_t n_pairs) { cache_.reserve(n_pairs); }

  private:
    void validate_pair(int i, int j) const {
        if (i == j) throw parameter_error("edge query: self-loop");
        if (i < 1 || j < 1 || i > inst_.n || j > inst_.n)
            throw parameter_error("edge query: vertex out of range");
    }
    static std::uint64_t pair_key(int i, int j) {
        const int a = std::min(i, j), b = std::max(i, j);
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a))
                << 32) |
               static_cast<std::uint32_t>(b);
    }

    PlantedInstance inst_;
    QueryLedger ledger_;
    bool record_transcript_;
    std::vector<char> in_clique_;
    std::unordered_map<std::uint64_t, bool> cache_;
    std::vector<TranscriptEntry> transcript_;
    std::uint64_t raw_calls_ = 0;
};

}  // namespace cliqueprobe
