// Exact depth of S/I for squarefree I, via graded Betti numbers.
//
// The Stanley-Reisner complex of I has the members of P_{S/I} as faces.
// Hochster: beta_{i,sigma}(S/I) = rank H~_{|sigma|-i-1} of the restriction
// of the complex to sigma. pd(S/I) is the largest i with a nonzero Betti
// number and depth = n - pd (Auslander-Buchsbaum). Homology ranks are
// computed over a prime field by modular Gaussian elimination; an optional
// second prime cross-checks the ranks and flags any disagreement instead of
// returning silently wrong characteristic-dependent values.
#pragma once

#include <unordered_map>
#include <unordered_set>

#include "sdepth/ideal.hpp"

namespace sdepth {

struct SimplicialComplex {
    int ambient = 0;
    std::vector<Mask> facets;  // inclusion-maximal faces, canonical order

    bool has_face(Mask f) const {
        for (Mask g : facets)
            if (subset_of(f, g)) return true;
        return false;
    }

    Mask vertices() const {
        Mask v = 0;
        for (Mask g : facets) v |= g;
        return v;
    }
};

// Faces are exactly the monomials outside I.
inline SimplicialComplex stanley_reisner_complex(const SquarefreeIdeal& I,
                                                 int cap = kDefaultPosetCap) {
    if (I.is_unit())
        throw std::invalid_argument("stanley_reisner_complex: unit ideal");
    if (I.ambient > cap)
        throw CapExceeded("stanley_reisner_complex: ambient exceeds cap");
    std::vector<Mask> facets;
    const Mask full = full_mask(I.ambient);
    for (Mask s = 0;; ++s) {
        if (!I.contains_monomial(s)) {
            bool maximal = true;
            Mask rest = full & ~s;
            while (rest) {
                Mask low = rest & -rest;
                rest &= rest - 1;
                if (!I.contains_monomial(s | low)) {
                    maximal = false;
                    break;
                }
            }
            if (maximal) facets.push_back(s);
        }
        if (s == full) break;
    }
    std::sort(facets.begin(), facets.end(), canonical_less);
    return SimplicialComplex{I.ambient, std::move(facets)};
}

namespace detail {

inline bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p) {
    std::int64_t r = 1;
    base %= p;
    while (exp > 0) {
        if (exp & 1) r = r * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return r;
}

// Row-echelon rank over F_p. Matrix is row-major, entries in [0, p).
inline int matrix_rank_mod_p(std::vector<std::int64_t>& m, int rows, int cols,
                             std::int64_t p) {
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (m[static_cast<std::size_t>(r) * cols + col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int c = col; c < cols; ++c)
                std::swap(m[static_cast<std::size_t>(pivot) * cols + c],
                          m[static_cast<std::size_t>(rank) * cols + c]);
        const std::int64_t inv =
            mod_pow(m[static_cast<std::size_t>(rank) * cols + col], p - 2, p);
        for (int r = rank + 1; r < rows; ++r) {
            const std::int64_t v = m[static_cast<std::size_t>(r) * cols + col];
            if (v == 0) continue;
            const std::int64_t f = (p - v) * inv % p;
            for (int c = col; c < cols; ++c) {
                auto& cell = m[static_cast<std::size_t>(r) * cols + c];
                cell = (cell + f * m[static_cast<std::size_t>(rank) * cols + c]) % p;
            }
        }
        ++rank;
    }
    return rank;
}

// Reduced homology ranks of the complex whose face list is given, grouped
// and sorted by cardinality. result[s] = rank H~_{s-1}. Empty input (void
// complex) gives an empty vector.
inline std::vector<int> homology_ranks_of_faces(std::vector<Mask> faces,
                                                std::int64_t p) {
    if (faces.empty()) return {};
    std::sort(faces.begin(), faces.end(), canonical_less);
    const int top = card(faces.back());
    std::vector<std::vector<Mask>> by_card(static_cast<std::size_t>(top) + 1);
    for (Mask f : faces) by_card[static_cast<std::size_t>(card(f))].push_back(f);
    std::vector<std::unordered_map<Mask, int>> index(by_card.size());
    for (std::size_t s = 0; s < by_card.size(); ++s)
        for (std::size_t i = 0; i < by_card[s].size(); ++i)
            index[s].emplace(by_card[s][i], static_cast<int>(i));

    // boundary_rank[s] = rank of d_s : C_{s-1} -> C_{s-2} (cardinality s to s-1)
    std::vector<int> boundary_rank(by_card.size() + 1, 0);
    for (std::size_t s = 1; s < by_card.size(); ++s) {
        const int rows = static_cast<int>(by_card[s - 1].size());
        const int cols = static_cast<int>(by_card[s].size());
        if (rows == 0 || cols == 0) continue;
        std::vector<std::int64_t> m(static_cast<std::size_t>(rows) * cols, 0);
        for (int c = 0; c < cols; ++c) {
            Mask f = by_card[s][static_cast<std::size_t>(c)];
            int sign_pos = 0;
            Mask rest = f;
            while (rest) {
                Mask low = rest & -rest;
                rest &= rest - 1;
                const int r = index[s - 1].at(f & ~low);
                m[static_cast<std::size_t>(r) * cols + c] =
                    (sign_pos % 2 == 0) ? 1 : p - 1;
                ++sign_pos;
            }
        }
        boundary_rank[s] = matrix_rank_mod_p(m, rows, cols, p);
    }

    std::vector<int> ranks(by_card.size(), 0);
    for (std::size_t s = 0; s < by_card.size(); ++s) {
        const int faces_s = static_cast<int>(by_card[s].size());
        ranks[s] = faces_s - boundary_rank[s] - boundary_rank[s + 1];
    }
    return ranks;
}

}  // namespace detail

inline std::vector<int> reduced_homology_ranks(const SimplicialComplex& C,
                                               std::int64_t field_char) {
    if (!detail::is_prime(field_char))
        throw std::invalid_argument("field characteristic must be prime");
    std::unordered_set<Mask> faces;
    for (Mask facet : C.facets)
        for_each_in_interval(0, facet, [&](Mask f) { faces.insert(f); });
    return detail::homology_ranks_of_faces(
        std::vector<Mask>(faces.begin(), faces.end()), field_char);
}

struct BettiEntry {
    int i = 0;       // homological index
    Mask sigma = 0;  // multidegree
    int rank = 0;
    bool operator==(const BettiEntry&) const = default;
};

struct BettiResult {
    int ambient = 0;
    int pd = 0;
    int depth = 0;
    std::vector<BettiEntry> nonzero;
    std::int64_t prime = 0;
    std::int64_t check_prime = 0;     // 0 when the cross-check was off
    bool torsion_suspected = false;   // rank disagreement between the primes
};

struct DepthOptions {
    std::int64_t prime = 32003;
    std::int64_t check_prime = 0;
    int cap = kDefaultHomologyCap;
    std::uint64_t budget_ms = 0;
};

// Betti numbers of S/I from homology of all vertex-restrictions of the
// Stanley-Reisner complex, then pd = max i and depth = n - pd.
inline BettiResult depth_quotient(const SquarefreeIdeal& I,
                                  const DepthOptions& opts = {}) {
    if (I.is_unit()) throw std::invalid_argument("depth_quotient: unit ideal");
    if (I.ambient > opts.cap)
        throw CapExceeded("depth_quotient: ambient " + std::to_string(I.ambient) +
                          " exceeds cap " + std::to_string(opts.cap));
    if (!detail::is_prime(opts.prime) ||
        (opts.check_prime != 0 && !detail::is_prime(opts.check_prime)))
        throw std::invalid_argument("field characteristic must be prime");

    const SimplicialComplex complex = stanley_reisner_complex(I, opts.cap);
    const Mask vertices = complex.vertices();
    const auto deadline = detail::deadline_from(opts.budget_ms);

    // Rank vectors of restrictions depend only on sigma ∩ vertices.
    std::unordered_map<Mask, std::vector<int>> cache;
    BettiResult out;
    out.ambient = I.ambient;
    out.prime = opts.prime;
    out.check_prime = opts.check_prime;

    const Mask full = full_mask(I.ambient);
    std::uint64_t steps = 0;
    for (Mask sigma = 0;; ++sigma) {
        if (deadline && (++steps & 255) == 0 &&
            detail::Clock::now() > *deadline)
            throw BudgetExceeded("depth_quotient exceeded time budget");
        // A restriction to a face is a full simplex: acyclic unless sigma
        // is the empty set, whose restriction {∅} carries H~_{-1} = K.
        if (sigma != 0 && complex.has_face(sigma)) {
            if (sigma == full) break;
            continue;
        }
        const Mask key = sigma & vertices;
        auto it = cache.find(key);
        if (it == cache.end()) {
            std::vector<Mask> faces;
            for_each_in_interval(0, key, [&](Mask f) {
                if (complex.has_face(f)) faces.push_back(f);
            });
            auto ranks = detail::homology_ranks_of_faces(faces, opts.prime);
            if (opts.check_prime != 0) {
                auto check = detail::homology_ranks_of_faces(faces, opts.check_prime);
                if (check != ranks) out.torsion_suspected = true;
            }
            it = cache.emplace(key, std::move(ranks)).first;
        }
        const std::vector<int>& ranks = it->second;
        for (std::size_t s = 0; s < ranks.size(); ++s) {
            if (ranks[s] == 0) continue;
            const int i = card(sigma) - static_cast<int>(s);
            out.nonzero.push_back(BettiEntry{i, sigma, ranks[s]});
            out.pd = std::max(out.pd, i);
        }
        if (sigma == full) break;
    }
    std::sort(out.nonzero.begin(), out.nonzero.end(),
              [](const BettiEntry& a, const BettiEntry& b) {
                  if (a.i != b.i) return a.i < b.i;
                  return canonical_less(a.sigma, b.sigma);
              });
    out.depth = I.ambient - out.pd;
    return out;
}

inline int pd_quotient(const SquarefreeIdeal& I, const DepthOptions& opts = {}) {
    return depth_quotient(I, opts).pd;
}

}  // namespace sdepth
