// Squarefree monomial ideals as antichains of minimal generator supports.
//
// A generator x_F is stored as the mask of F. The generator list is always
// inclusion-minimal, duplicate-free and sorted in canonical order, so equal
// ideals compare equal as structs. The unit ideal (generator x_∅ = 1) is
// representable; operations on S/I reject it.
#pragma once

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sdepth/common.hpp"

namespace sdepth {

struct PathIdealParams {
    int n = 1;
    int m = 1;  // 1 <= m <= n
};

struct SquarefreeIdeal {
    int ambient = 0;
    std::vector<Mask> gens;  // minimal, canonical order

    bool is_zero() const { return gens.empty(); }
    bool is_unit() const { return !gens.empty() && gens.front() == 0; }

    // x_sigma ∈ I, i.e. sigma contains some generator.
    bool contains_monomial(Mask sigma) const {
        for (Mask g : gens)
            if (subset_of(g, sigma)) return true;
        return false;
    }

    Mask support() const {
        Mask s = 0;
        for (Mask g : gens) s |= g;
        return s;
    }

    Mask free_vars() const { return full_mask(ambient) & ~support(); }

    bool operator==(const SquarefreeIdeal&) const = default;
};

inline void check_ambient(int ambient) {
    if (ambient < 0 || ambient > kMaxAmbient)
        throw std::invalid_argument("ambient must be in [0, " +
                                    std::to_string(kMaxAmbient) + "]");
}

// Inclusion-minimal elements of `raw`, deduplicated and canonically sorted.
inline SquarefreeIdeal minimalize(int ambient, std::vector<Mask> raw) {
    check_ambient(ambient);
    for (Mask g : raw)
        if (!subset_of(g, full_mask(ambient)))
            throw std::invalid_argument("generator support exceeds ambient");
    std::sort(raw.begin(), raw.end(), canonical_less);
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    std::vector<Mask> keep;
    for (Mask g : raw) {
        bool minimal = true;
        for (Mask h : keep) {
            if (subset_of(h, g)) {  // keep is sorted by cardinality, h != g
                minimal = false;
                break;
            }
        }
        if (minimal) keep.push_back(g);
    }
    return SquarefreeIdeal{ambient, std::move(keep)};
}

inline SquarefreeIdeal zero_ideal(int ambient) {
    check_ambient(ambient);
    return SquarefreeIdeal{ambient, {}};
}

// I_{n,m}: the n-m+1 windows {i,...,i+m-1} of width m.
inline SquarefreeIdeal make_path_ideal(PathIdealParams p) {
    if (p.m < 1 || p.m > p.n)
        throw std::invalid_argument("path ideal needs 1 <= m <= n");
    check_ambient(p.n);
    std::vector<Mask> gens;
    gens.reserve(static_cast<std::size_t>(p.n - p.m + 1));
    const Mask window = full_mask(p.m);
    for (int i = 1; i <= p.n - p.m + 1; ++i)
        gens.push_back(window << (i - 1));
    return SquarefreeIdeal{p.n, std::move(gens)};
}

inline SquarefreeIdeal make_path_ideal(int n, int m) {
    return make_path_ideal(PathIdealParams{n, m});
}

// (I : x_u). For squarefree I this is generated by the g \ supp(u).
inline SquarefreeIdeal colon_by_monomial(const SquarefreeIdeal& I, Mask u) {
    if (!subset_of(u, full_mask(I.ambient)))
        throw std::invalid_argument("colon monomial exceeds ambient");
    std::vector<Mask> raw;
    raw.reserve(I.gens.size());
    for (Mask g : I.gens) raw.push_back(g & ~u);
    return minimalize(I.ambient, std::move(raw));
}

// (I, x_v).
inline SquarefreeIdeal add_variable(const SquarefreeIdeal& I, int v) {
    if (v < 1 || v > I.ambient)
        throw std::invalid_argument("variable index out of range");
    std::vector<Mask> raw = I.gens;
    raw.push_back(var_bit(v));
    return minimalize(I.ambient, std::move(raw));
}

// (union of generator supports, unused variables).
inline std::pair<Mask, Mask> support_and_free_vars(const SquarefreeIdeal& I) {
    return {I.support(), I.free_vars()};
}

// Drops unused variables and relabels the support onto 1..|support|,
// preserving order.
inline SquarefreeIdeal relabel_to_support(const SquarefreeIdeal& I) {
    const Mask supp = I.support();
    std::vector<Mask> gens;
    gens.reserve(I.gens.size());
    for (Mask g : I.gens) {
        Mask out = 0;
        int pos = 0;
        Mask s = supp;
        while (s) {
            Mask low = s & -s;
            if (g & low) out |= Mask{1} << pos;
            ++pos;
            s &= s - 1;
        }
        gens.push_back(out);
    }
    std::sort(gens.begin(), gens.end(), canonical_less);
    return SquarefreeIdeal{card(supp), std::move(gens)};
}

// True iff I, after discarding free variables and order-preserving
// relabeling, has exactly the generators of I_{params.n, params.m}.
inline bool order_preserving_match(const SquarefreeIdeal& I, PathIdealParams params) {
    const SquarefreeIdeal compact = relabel_to_support(I);
    if (params.m < 1 || params.m > params.n) return false;
    const SquarefreeIdeal target = make_path_ideal(params);
    return compact.ambient == target.ambient && compact.gens == target.gens;
}

// ---------------------------------------------------------------------------
// Text format: first line "n=<ambient>", then one generator per nonempty
// line as space-separated 1-based indices. '#' starts a comment line.
// ---------------------------------------------------------------------------

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
          line(line_) {}
};

inline std::string to_text(const SquarefreeIdeal& I) {
    if (I.is_unit())
        throw std::invalid_argument("the unit ideal has no text form");
    std::string out = "n=" + std::to_string(I.ambient) + "\n";
    for (Mask g : I.gens) {
        bool first = true;
        for (int v : var_list(g)) {
            if (!first) out += ' ';
            out += std::to_string(v);
            first = false;
        }
        out += '\n';
    }
    return out;
}

inline SquarefreeIdeal parse_ideal(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    int ambient = -1;
    std::vector<Mask> raw;
    auto is_blank = [](const std::string& s) {
        return std::all_of(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); });
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line) || line[line.find_first_not_of(" \t")] == '#') continue;
        if (ambient < 0) {
            std::istringstream ls{line};
            std::string tok;
            ls >> tok;
            if (tok.rfind("n=", 0) != 0)
                throw ParseError(lineno, "expected header 'n=<ambient>'");
            try {
                std::size_t used = 0;
                ambient = std::stoi(tok.substr(2), &used);
                if (used != tok.size() - 2) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError(lineno, "malformed ambient in '" + tok + "'");
            }
            if (ambient < 0 || ambient > kMaxAmbient)
                throw ParseError(lineno, "ambient out of range");
            std::string extra;
            if (ls >> extra) throw ParseError(lineno, "trailing tokens after header");
            continue;
        }
        std::istringstream ls{line};
        Mask g = 0;
        std::string tok;
        while (ls >> tok) {
            int v = 0;
            try {
                std::size_t used = 0;
                v = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError(lineno, "malformed index '" + tok + "'");
            }
            if (v < 1 || v > ambient)
                throw ParseError(lineno, "index " + std::to_string(v) +
                                             " outside 1.." + std::to_string(ambient));
            g |= var_bit(v);
        }
        raw.push_back(g);
    }
    if (ambient < 0) throw ParseError(lineno, "missing 'n=<ambient>' header");
    return minimalize(ambient, std::move(raw));
}

}  // namespace sdepth
