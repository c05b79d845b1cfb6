// Characteristic posets of a squarefree ideal:
//   ideal side     P_I    = { sigma : x_sigma ∈ I }   (upward closed)
//   quotient side  P_S/I  = { sigma : x_sigma ∉ I }   (downward closed)
// Membership is evaluated from the ideal; rank slices materialize on demand.
#pragma once

#include <cstddef>
#include <vector>

#include "sdepth/ideal.hpp"

namespace sdepth {

enum class Side { ideal, quotient };

class CharacteristicPoset {
  public:
    CharacteristicPoset(SquarefreeIdeal I, Side side, int cap = kDefaultPosetCap)
        : ideal_(std::move(I)), side_(side) {
        if (ideal_.ambient > cap)
            throw CapExceeded("poset ambient " + std::to_string(ideal_.ambient) +
                              " exceeds cap " + std::to_string(cap));
    }

    int ambient() const { return ideal_.ambient; }
    Side side() const { return side_; }
    const SquarefreeIdeal& ideal() const { return ideal_; }

    bool contains(Mask sigma) const {
        const bool in_ideal = ideal_.contains_monomial(sigma);
        return side_ == Side::ideal ? in_ideal : !in_ideal;
    }

    // Quotient side is empty iff I is the unit ideal; ideal side iff I = 0.
    bool empty() const {
        return side_ == Side::ideal ? ideal_.is_zero() : ideal_.is_unit();
    }

    // P_d, in canonical order.
    std::vector<Mask> members_of_rank(int d) const {
        std::vector<Mask> out;
        if (d < 0 || d > ambient()) return out;
        for (Mask s : subsets_of_rank(full_mask(ambient()), d))
            if (contains(s)) out.push_back(s);
        return out;
    }

    // P_{d,sigma}: rank-d members containing sigma. Requires sigma ∈ P.
    std::vector<Mask> upper_set_at(Mask sigma, int d) const {
        if (!contains(sigma))
            throw std::invalid_argument("upper_set_at: sigma is not a poset member");
        std::vector<Mask> out;
        const int extra = d - card(sigma);
        if (extra < 0) return out;
        for (Mask add : subsets_of_rank(full_mask(ambient()) & ~sigma, extra)) {
            Mask t = sigma | add;
            if (contains(t)) out.push_back(t);
        }
        return out;
    }

    bool is_downward_closed() const {
        if (side_ == Side::quotient) return true;
        // Upward-closed P_I is also downward closed only when trivial.
        return ideal_.is_zero() || ideal_.is_unit();
    }

    // All members in canonical order (ascending rank, lex within a rank).
    std::vector<Mask> all_members() const {
        std::vector<Mask> out;
        for (int d = 0; d <= ambient(); ++d) {
            auto rank = members_of_rank(d);
            out.insert(out.end(), rank.begin(), rank.end());
        }
        return out;
    }

    std::size_t member_count() const {
        std::size_t c = 0;
        const Mask end = full_mask(ambient());
        for (Mask s = 0;; ++s) {
            if (contains(s)) ++c;
            if (s == end) break;
        }
        return c;
    }

  private:
    SquarefreeIdeal ideal_;
    Side side_;
};

inline CharacteristicPoset build_poset(SquarefreeIdeal I, Side side,
                                       int cap = kDefaultPosetCap) {
    return CharacteristicPoset(std::move(I), side, cap);
}

}  // namespace sdepth
