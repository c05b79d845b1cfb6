// Interval partitions of a characteristic poset and the exact-cover search
// for sdepth.
//
// The decision search processes poset members in canonical order. The
// minimum uncovered member must be the bottom of the interval covering it:
// any interval with a strictly smaller bottom would contain an earlier
// uncovered member. So we branch only over tops G ⊇ sigma with |G| >= d,
// [sigma,G] inside the poset and disjoint from the covered region. Since a
// characteristic poset is monotone, the inside-the-poset check reduces to
// G ∈ P (downward closed) resp. sigma ∈ P (upward closed); the generic
// check lives in validate_partition. Failed cover states are memoized up
// to a memory cap, beyond which the search degrades to plain backtracking.
#pragma once

#include <chrono>
#include <cstring>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "sdepth/poset.hpp"

namespace sdepth {

struct Interval {
    Mask bottom = 0;
    Mask top = 0;
    bool operator==(const Interval&) const = default;
};

struct IntervalPartition {
    CharacteristicPoset poset;
    std::vector<Interval> intervals;

    int sdepth() const {
        int v = poset.ambient();
        for (const Interval& iv : intervals) v = std::min(v, card(iv.top));
        return v;
    }
};

struct SolverOptions {
    std::size_t memo_bytes = std::size_t{64} << 20;
    std::uint64_t budget_ms = 0;  // 0 = unlimited
};

// One pass/fail line per serialized interval: "{1,2} -> {1,2,4,5}".
inline std::string to_text(const IntervalPartition& p) {
    std::string out;
    for (const Interval& iv : p.intervals)
        out += subset_to_string(iv.bottom) + " -> " + subset_to_string(iv.top) + "\n";
    return out;
}

namespace detail {

// Members of minimal rank r1 are bottoms of pairwise distinct intervals
// (any smaller bottom would be an earlier member), and an interval with
// top of size >= d covers at least d - r1 distinct rank-(r1+1) members.
// So a partition with all tops >= d forces n1 * (d - r1) <= W, with n1
// members at rank r1 and W at rank r1 + 1. Valid for any poset.
inline int counting_upper_bound(const std::vector<Mask>& members) {
    const int min_rank = card(members.front());
    std::size_t at_min = 0;
    std::size_t above = 0;
    for (Mask s : members) {
        const int c = card(s);
        if (c == min_rank)
            ++at_min;
        else if (c == min_rank + 1)
            ++above;
        else
            break;  // canonical order: ranks ascend
    }
    return min_rank + static_cast<int>(above / at_min);
}

struct CoverKeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& key) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint64_t w : key) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

class CoverSearch {
  public:
    CoverSearch(const CharacteristicPoset& poset, int d, const SolverOptions& opts,
                Deadline deadline)
        : poset_(poset), d_(d), opts_(opts), deadline_(deadline) {
        members_ = poset.all_members();
        if (poset.ambient() <= 20) {
            dense_index_.assign(std::size_t{1} << poset.ambient(), -1);
            for (std::size_t i = 0; i < members_.size(); ++i)
                dense_index_[members_[i]] = static_cast<std::int32_t>(i);
        } else {
            sparse_index_.reserve(members_.size() * 2);
            for (std::size_t i = 0; i < members_.size(); ++i)
                sparse_index_.emplace(members_[i], static_cast<std::int32_t>(i));
        }
        covered_.assign((members_.size() + 63) / 64, 0);
    }

    std::optional<std::vector<Interval>> run() {
        if (members_.empty()) return chosen_;  // empty poset: vacuous cover
        if (d_ > counting_upper_bound(members_)) return std::nullopt;
        if (!feasible_by_upper_sets()) return std::nullopt;
        if (search(0)) return chosen_;
        return std::nullopt;
    }

  private:
    std::int32_t index_of(Mask s) const {
        if (!dense_index_.empty()) return dense_index_[s];
        auto it = sparse_index_.find(s);
        return it == sparse_index_.end() ? -1 : it->second;
    }

    bool covered(std::size_t i) const {
        return (covered_[i >> 6] >> (i & 63)) & 1;
    }

    void set_covered(std::size_t i, bool on) {
        if (on)
            covered_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else
            covered_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    // Downward-closed posets admit a whole-poset feasibility test: every
    // member needs a superset of rank >= d inside P to serve as its top.
    bool feasible_by_upper_sets() {
        if (poset_.side() != Side::quotient) return true;
        std::unordered_map<Mask, int> reach;
        reach.reserve(members_.size() * 2);
        for (auto it = members_.rbegin(); it != members_.rend(); ++it) {
            Mask s = *it;
            int best = card(s);
            Mask rest = full_mask(poset_.ambient()) & ~s;
            while (rest) {
                Mask low = rest & -rest;
                rest &= rest - 1;
                auto up = reach.find(s | low);
                if (up != reach.end()) best = std::max(best, up->second);
            }
            reach.emplace(s, best);
            if (best < d_) return false;
        }
        return true;
    }

    void check_budget() {
        if (deadline_ && (++ticks_ & 1023) == 0 && Clock::now() > *deadline_)
            throw BudgetExceeded("partition search exceeded time budget");
    }

    std::vector<Mask> candidate_tops(Mask sigma) const {
        std::vector<Mask> tops;
        const Mask free = full_mask(poset_.ambient()) & ~sigma;
        const bool quotient = poset_.side() == Side::quotient;
        Mask s = free;
        while (true) {
            Mask g = sigma | s;
            if (card(g) >= d_ && (!quotient || poset_.contains(g)))
                tops.push_back(g);
            if (s == 0) break;
            s = (s - 1) & free;
        }
        std::sort(tops.begin(), tops.end(), [](Mask a, Mask b) {
            int ca = card(a), cb = card(b);
            if (ca != cb) return ca > cb;
            return canonical_less(a, b);
        });
        return tops;
    }

    bool interval_uncovered(Mask sigma, Mask top) const {
        const Mask free = top & ~sigma;
        Mask s = free;
        while (true) {
            if (covered(static_cast<std::size_t>(index_of(sigma | s)))) return false;
            if (s == 0) break;
            s = (s - 1) & free;
        }
        return true;
    }

    void mark(Mask sigma, Mask top, bool on) {
        const Mask free = top & ~sigma;
        Mask s = free;
        while (true) {
            set_covered(static_cast<std::size_t>(index_of(sigma | s)), on);
            if (s == 0) break;
            s = (s - 1) & free;
        }
    }

    bool memo_hit() const {
        return failed_.find(covered_) != failed_.end();
    }

    void memo_insert() {
        const std::size_t entry = covered_.size() * 8 + 64;
        if (memo_used_ + entry > opts_.memo_bytes) return;
        memo_used_ += entry;
        failed_.insert(covered_);
    }

    bool search(std::size_t hint) {
        std::size_t pos = hint;
        while (pos < members_.size() && covered(pos)) ++pos;
        if (pos == members_.size()) return true;
        check_budget();
        if (memo_hit()) return false;
        const Mask sigma = members_[pos];
        for (Mask top : candidate_tops(sigma)) {
            if (!interval_uncovered(sigma, top)) continue;
            mark(sigma, top, true);
            chosen_.push_back(Interval{sigma, top});
            if (search(pos + 1)) return true;
            chosen_.pop_back();
            mark(sigma, top, false);
        }
        memo_insert();
        return false;
    }

    const CharacteristicPoset& poset_;
    int d_;
    SolverOptions opts_;
    Deadline deadline_;
    std::vector<Mask> members_;
    std::vector<std::int32_t> dense_index_;
    std::unordered_map<Mask, std::int32_t> sparse_index_;
    std::vector<std::uint64_t> covered_;
    std::vector<Interval> chosen_;
    std::unordered_set<std::vector<std::uint64_t>, CoverKeyHash> failed_;
    std::size_t memo_used_ = 0;
    std::uint64_t ticks_ = 0;
};

inline std::optional<IntervalPartition> exists_partition_until(
    const CharacteristicPoset& poset, int d, const SolverOptions& opts,
    Deadline deadline) {
    if (d < 0 || d > poset.ambient())
        throw std::invalid_argument("exists_partition: d out of range");
    CoverSearch search(poset, d, opts, deadline);
    auto intervals = search.run();
    if (!intervals) return std::nullopt;
    return IntervalPartition{poset, std::move(*intervals)};
}

}  // namespace detail

inline std::optional<IntervalPartition> exists_partition(
    const CharacteristicPoset& poset, int d, const SolverOptions& opts = {}) {
    return detail::exists_partition_until(poset, d, opts,
                                          detail::deadline_from(opts.budget_ms));
}

// min over members sigma of the largest d with P_{d,sigma} nonempty;
// always an upper bound for sdepth(P).
inline int quick_upper_bound(const CharacteristicPoset& poset) {
    if (poset.empty())
        throw std::invalid_argument("quick_upper_bound: empty poset");
    if (poset.side() == Side::ideal) return poset.ambient();
    // Downward closed: DP from the top rank; the bound is attained on
    // inclusion-maximal members, and scanning all members covers them.
    std::unordered_map<Mask, int> reach;
    int ub = poset.ambient();
    for (int d = poset.ambient(); d >= 0; --d) {
        for (Mask s : poset.members_of_rank(d)) {
            int best = d;
            Mask rest = full_mask(poset.ambient()) & ~s;
            while (rest) {
                Mask low = rest & -rest;
                rest &= rest - 1;
                auto up = reach.find(s | low);
                if (up != reach.end()) best = std::max(best, up->second);
            }
            reach.emplace(s, best);
            ub = std::min(ub, best);
        }
    }
    return ub;
}

struct SdepthResult {
    int value = 0;
    IntervalPartition witness;
};

// Largest d admitting a partition with all tops of size >= d, found by
// descending from quick_upper_bound; d = 0 always succeeds on a nonempty
// poset, so the loop terminates.
inline SdepthResult sdepth_poset(const CharacteristicPoset& poset,
                                 const SolverOptions& opts = {}) {
    if (poset.empty())
        throw std::invalid_argument("sdepth_poset: empty poset");
    const auto deadline = detail::deadline_from(opts.budget_ms);
    int start = quick_upper_bound(poset);
    start = std::min(start, detail::counting_upper_bound(poset.all_members()));
    for (int d = start; d >= 0; --d) {
        auto witness = detail::exists_partition_until(poset, d, opts, deadline);
        if (witness) return SdepthResult{d, std::move(*witness)};
    }
    throw std::logic_error("sdepth_poset: unreachable");
}

// Independent checker: full interval enumeration, no monotonicity fast
// paths. True iff the intervals are valid, pairwise disjoint and cover P.
inline bool validate_partition(const IntervalPartition& p) {
    std::unordered_map<Mask, int> seen;
    for (const Interval& iv : p.intervals) {
        if (!subset_of(iv.bottom, iv.top)) return false;
        bool inside = true;
        for_each_in_interval(iv.bottom, iv.top, [&](Mask t) {
            if (!p.poset.contains(t)) inside = false;
            ++seen[t];
        });
        if (!inside) return false;
    }
    for (const auto& [t, count] : seen)
        if (count != 1) return false;
    return seen.size() == p.poset.member_count();
}

}  // namespace sdepth
