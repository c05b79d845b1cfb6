// Subsets of [n] as fixed-width bitmasks, plus the canonical ordering used
// everywhere for deterministic output: ascending cardinality, then
// lexicographic on the ascending index sequence within a rank.
#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdepth {

// Variable i (1-based) lives at bit i-1.
using Mask = std::uint64_t;

inline constexpr int kMaxAmbient = 64;
inline constexpr int kDefaultPosetCap = 24;
inline constexpr int kDefaultHomologyCap = 14;

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

using Clock = std::chrono::steady_clock;
using Deadline = std::optional<Clock::time_point>;

inline Deadline deadline_from(std::uint64_t budget_ms) {
    if (budget_ms == 0) return std::nullopt;
    return Clock::now() + std::chrono::milliseconds(budget_ms);
}

}  // namespace detail

inline Mask var_bit(int v) {
    return Mask{1} << (v - 1);
}

inline bool has_var(Mask s, int v) {
    return (s >> (v - 1)) & 1;
}

inline int card(Mask s) {
    return std::popcount(s);
}

inline bool subset_of(Mask a, Mask b) {
    return (a & ~b) == 0;
}

inline Mask full_mask(int n) {
    return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

// Equal cardinality: the set owning the lowest differing bit has the
// smaller first differing index, hence comes first lexicographically.
inline bool canonical_less(Mask a, Mask b) {
    int ca = card(a), cb = card(b);
    if (ca != cb) return ca < cb;
    if (a == b) return false;
    Mask diff = a ^ b;
    return (a & (diff & -diff)) != 0;
}

inline std::vector<int> var_list(Mask s) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(card(s)));
    while (s) {
        out.push_back(std::countr_zero(s) + 1);
        s &= s - 1;
    }
    return out;
}

inline Mask mask_of(std::initializer_list<int> vars) {
    Mask s = 0;
    for (int v : vars) s |= var_bit(v);
    return s;
}

// "{1,2,5}", "{}" for the empty set.
inline std::string subset_to_string(Mask s) {
    std::string out = "{";
    bool first = true;
    while (s) {
        if (!first) out += ',';
        out += std::to_string(std::countr_zero(s) + 1);
        s &= s - 1;
        first = false;
    }
    out += '}';
    return out;
}

// All d-subsets of the variables set in `pool`, in canonical order.
inline std::vector<Mask> subsets_of_rank(Mask pool, int d) {
    std::vector<Mask> out;
    const std::vector<int> vars = var_list(pool);
    const int n = static_cast<int>(vars.size());
    if (d < 0 || d > n) return out;
    std::vector<int> pick(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
        Mask s = 0;
        for (int i : pick) s |= var_bit(vars[static_cast<std::size_t>(i)]);
        out.push_back(s);
        int i = d - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == i + n - d) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < d; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

// Visits every t with bottom ⊆ t ⊆ top. Visit order is unspecified.
template <typename Fn>
void for_each_in_interval(Mask bottom, Mask top, Fn&& fn) {
    const Mask free = top & ~bottom;
    Mask s = free;
    while (true) {
        fn(bottom | s);
        if (s == 0) break;
        s = (s - 1) & free;
    }
}

}  // namespace sdepth
