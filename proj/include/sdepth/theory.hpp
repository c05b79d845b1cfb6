// Closed forms and checkable proof machinery for path ideals I_{n,m}.
//
//   phi(n,m) = n+1 - floor((n+1)/(m+1)) - ceil((n+1)/(m+1))
//
// is the common value of depth(S/I_{n,m}) and sdepth(S/I_{n,m}). This
// module evaluates phi two ways, the projective dimension via its residue
// case split, builds the colon/adjoin recursion L_j = (L_{j-1} : x_v),
// U_j = (L_{j-1}, x_v) at the pivots v = j(m+1)-1 with the expected
// generator displays as assertions under test (the computed colon is
// authoritative), constructs the maximal witness set certifying the sdepth
// upper bound, and packages full verification reports.
#pragma once

#include <map>
#include <optional>

#include "sdepth/homology.hpp"
#include "sdepth/partition.hpp"

namespace sdepth {

struct PhiParams {
    int n = 0, m = 0;
    int k = 0;  // floor((n+1)/(m+1))
    int a = 0;  // n+1 - k(m+1), in [0, m]
};

inline PhiParams phi_params(int n, int m) {
    if (m < 1 || m > n) throw std::invalid_argument("phi requires 1 <= m <= n");
    const int k = (n + 1) / (m + 1);
    return PhiParams{n, m, k, n + 1 - k * (m + 1)};
}

// Both the floor/ceiling expression and the (k,a) case form; they must agree.
inline int phi(int n, int m) {
    const PhiParams p = phi_params(n, m);
    const int floor_form = n + 1 - (n + 1) / (m + 1) - (n + 1 + m) / (m + 1);
    const int case_form = p.a == 0 ? n + 1 - 2 * p.k : n - 2 * p.k;
    if (floor_form != case_form)
        throw std::logic_error("phi: the two closed forms disagree");
    return floor_form;
}

// pd(S/I_{n,m}) by the residue of n mod (m+1); must equal n - phi(n,m).
inline int pd_closed_form(int n, int m) {
    if (m < 1 || m > n)
        throw std::invalid_argument("pd_closed_form requires 1 <= m <= n");
    const int r = n % (m + 1);
    int pd = 0;
    if (r <= m - 1) {
        if (2 * (n - r) % (m + 1) != 0)
            throw std::logic_error("pd_closed_form: non-integral branch value");
        pd = 2 * (n - r) / (m + 1);
    } else {
        if ((2 * n - m + 1) % (m + 1) != 0)
            throw std::logic_error("pd_closed_form: non-integral branch value");
        pd = (2 * n - m + 1) / (m + 1);
    }
    if (pd != n - phi(n, m))
        throw std::logic_error("pd_closed_form: disagrees with n - phi");
    return pd;
}

// The witness set tau: x_tau ∉ I_{n,m}, every one-variable extension lands
// in I_{n,m}, and |tau| = phi(n,m). With k = floor(n/(m+1)), each chunk of
// m+1 consecutive variables contributes a run of m-1 kept variables; the
// two cases differ in where the runs sit inside their chunk and in the
// tail past k(m+1). Violations of the three assertions throw.
inline Mask witness_tau(int n, int m) {
    if (m < 1 || m > n)
        throw std::invalid_argument("witness_tau requires 1 <= m <= n");
    check_ambient(n);
    const int k = n / (m + 1);
    const auto add_range = [](Mask& s, int lo, int hi) {
        for (int v = lo; v <= hi; ++v) s |= var_bit(v);
    };
    Mask tau = 0;
    if (n == (k + 1) * (m + 1) - 1 || n == (k + 1) * (m + 1) - 2) {
        // (a): runs at the start of each chunk, plus one more full run.
        for (int j = 0; j < k; ++j)
            add_range(tau, j * (m + 1) + 1, j * (m + 1) + m - 1);
        add_range(tau, k * (m + 1) + 1, k * (m + 1) + m - 1);
    } else {
        // (b): runs at the end of each chunk, plus the tail up to n.
        for (int j = 0; j < k; ++j)
            add_range(tau, j * (m + 1) + 2, j * (m + 1) + m);
        add_range(tau, k * (m + 1) + 1, n);
    }

    const SquarefreeIdeal I = make_path_ideal(n, m);
    if (I.contains_monomial(tau))
        throw std::logic_error("witness_tau: x_tau lies in the ideal at (" +
                               std::to_string(n) + "," + std::to_string(m) + ")");
    for (int i = 1; i <= n; ++i)
        if (!has_var(tau, i) && !I.contains_monomial(tau | var_bit(i)))
            throw std::logic_error("witness_tau: extension by x_" + std::to_string(i) +
                                   " stays outside the ideal at (" + std::to_string(n) +
                                   "," + std::to_string(m) + ")");
    if (card(tau) != phi(n, m))
        throw std::logic_error("witness_tau: |tau| != phi at (" + std::to_string(n) +
                               "," + std::to_string(m) + ")");
    return tau;
}

// ---------------------------------------------------------------------------
// Recursion trace
// ---------------------------------------------------------------------------

struct TraceStep {
    int j = 0;
    int pivot_var = 0;              // j(m+1) - 1
    SquarefreeIdeal colon_ideal;    // L_j = (L_{j-1} : x_pivot)
    SquarefreeIdeal adjoin_ideal;   // U_j = (L_{j-1}, x_pivot)
    std::vector<Mask> expected_colon_gens;
    std::vector<Mask> expected_adjoin_gens;
    // Filled by verify_lemma_inequalities.
    std::optional<int> depth_colon, sdepth_colon;
    std::optional<int> depth_adjoin, sdepth_adjoin;
};

struct TraceMismatch {
    std::string where;
    std::vector<Mask> expected;
    std::vector<Mask> computed;
};

struct RecursionTrace {
    int n = 0, m = 0;
    int k = 0, a = 0, t = 0;
    bool main_case = false;  // m >= 3 and n >= 2m; otherwise only L_0 is set
    SquarefreeIdeal base;    // L_0 = I_{n,m}
    std::vector<TraceStep> steps;
    std::vector<TraceMismatch> mismatches;

    bool ok() const { return mismatches.empty(); }
};

namespace detail {

// Window u_i = {i, ..., i+m-1}.
inline Mask path_window(int i, int m) {
    return full_mask(m) << (i - 1);
}

// Divided generators u_i / x_pivot for i in [lo, hi].
inline void add_block(std::vector<Mask>& gens, int lo, int hi, int pivot, int m) {
    for (int i = lo; i <= hi; ++i)
        gens.push_back(path_window(i, m) & ~var_bit(pivot));
}

inline std::vector<Mask> canonical_sorted(std::vector<Mask> gens) {
    std::sort(gens.begin(), gens.end(), canonical_less);
    return gens;
}

}  // namespace detail

// Expected G(L_j) per the displayed formulas: blocks of divided generators
// around each processed pivot, then the untouched trailing windows. At the
// final step the last block is truncated at t and there is no tail.
inline std::vector<Mask> expected_colon_gens(int n, int m, int j, int k, int t) {
    std::vector<Mask> gens;
    const int last_window = n - m + 1;
    if (j < k) {
        for (int b = 1; b <= j; ++b)
            detail::add_block(gens, b * (m + 1) - m, b * (m + 1) - 1,
                              b * (m + 1) - 1, m);
        for (int i = j * (m + 1) + 1; i <= last_window; ++i)
            gens.push_back(detail::path_window(i, m));
    } else {
        for (int b = 1; b <= k - 1; ++b)
            detail::add_block(gens, b * (m + 1) - m, b * (m + 1) - 1,
                              b * (m + 1) - 1, m);
        detail::add_block(gens, k * (m + 1) - m, t, k * (m + 1) - 1, m);
    }
    return detail::canonical_sorted(std::move(gens));
}

// Expected G(U_j): the blocks before the pivot, the pivot variable itself,
// and the windows past the pivot's reach.
inline std::vector<Mask> expected_adjoin_gens(int n, int m, int j) {
    std::vector<Mask> gens;
    for (int b = 1; b <= j - 1; ++b)
        detail::add_block(gens, b * (m + 1) - m, b * (m + 1) - 1, b * (m + 1) - 1, m);
    gens.push_back(var_bit(j * (m + 1) - 1));
    for (int i = j * (m + 1); i <= n - m + 1; ++i)
        gens.push_back(detail::path_window(i, m));
    return detail::canonical_sorted(std::move(gens));
}

inline RecursionTrace recursion_trace(int n, int m) {
    const PhiParams p = phi_params(n, m);
    RecursionTrace trace;
    trace.n = n;
    trace.m = m;
    trace.k = p.k;
    trace.a = p.a;
    trace.t = p.a == m ? n - m : n - m + 1;
    trace.base = make_path_ideal(n, m);
    trace.main_case = m >= 3 && n >= 2 * m;
    if (!trace.main_case) return trace;

    const auto note = [&trace](std::string where, std::vector<Mask> expected,
                               std::vector<Mask> computed) {
        trace.mismatches.push_back(
            TraceMismatch{std::move(where), std::move(expected), std::move(computed)});
    };
    const auto tag = [](const char* what, int j) {
        return std::string(what) + "_" + std::to_string(j);
    };

    SquarefreeIdeal prev = trace.base;
    for (int j = 1; j <= trace.k; ++j) {
        TraceStep step;
        step.j = j;
        step.pivot_var = j * (m + 1) - 1;
        step.colon_ideal = colon_by_monomial(prev, var_bit(step.pivot_var));
        step.adjoin_ideal = add_variable(prev, step.pivot_var);
        step.expected_colon_gens = expected_colon_gens(n, m, j, trace.k, trace.t);
        step.expected_adjoin_gens = expected_adjoin_gens(n, m, j);
        if (step.colon_ideal.gens != step.expected_colon_gens)
            note(tag("L", j), step.expected_colon_gens, step.colon_ideal.gens);
        if (step.adjoin_ideal.gens != step.expected_adjoin_gens)
            note(tag("U", j), step.expected_adjoin_gens, step.adjoin_ideal.gens);
        prev = step.colon_ideal;
        trace.steps.push_back(std::move(step));
    }

    // |G(L_k)| = t + 1 - k, and L_k is a path ideal in m-1 after relabeling.
    const SquarefreeIdeal& last = trace.steps.back().colon_ideal;
    if (static_cast<int>(last.gens.size()) != trace.t + 1 - trace.k)
        note("L_k_count", trace.steps.back().expected_colon_gens, last.gens);
    const PathIdealParams last_params{trace.t + m - trace.k - 1, m - 1};
    if (!order_preserving_match(last, last_params))
        note("L_k_path_match", make_path_ideal(last_params).gens,
             relabel_to_support(last).gens);

    // V_j: the divided part of G(L_j); W_j: the window part of G(U_{j+1}).
    for (int j = 1; j <= trace.k - 1; ++j) {
        std::vector<Mask> divided, windows;
        for (Mask g : trace.steps[static_cast<std::size_t>(j - 1)].colon_ideal.gens)
            if (card(g) == m - 1) divided.push_back(g);
        for (Mask g : trace.steps[static_cast<std::size_t>(j)].adjoin_ideal.gens)
            if (card(g) == m) windows.push_back(g);
        const SquarefreeIdeal v_part{n, detail::canonical_sorted(std::move(divided))};
        const SquarefreeIdeal w_part{n, detail::canonical_sorted(std::move(windows))};
        const PathIdealParams v_params{m * (j + 1) - 2, m - 1};
        if (!order_preserving_match(v_part, v_params))
            note(tag("V", j), make_path_ideal(v_params).gens,
                 relabel_to_support(v_part).gens);
        const int w_n = n - (m + 1) * (j + 1) + 1;
        if (w_n >= m) {
            if (!order_preserving_match(w_part, PathIdealParams{w_n, m}))
                note(tag("W", j), make_path_ideal(w_n, m).gens,
                     relabel_to_support(w_part).gens);
        } else if (!w_part.gens.empty()) {
            // Degenerate tail: fewer than m variables left, so no windows.
            note(tag("W", j), {}, w_part.gens);
        }
    }
    return trace;
}

// ---------------------------------------------------------------------------
// Theorem and lemma verification
// ---------------------------------------------------------------------------

struct VerifyOptions {
    int solver_cap = kDefaultHomologyCap;
    int homology_cap = kDefaultHomologyCap;
    std::int64_t prime = 32003;
    std::int64_t check_prime = 0;
    std::uint64_t budget_ms = 0;
    std::size_t memo_bytes = std::size_t{64} << 20;
};

struct StageRuntimes {
    double depth_ms = 0;
    double sdepth_ms = 0;
    double witness_ms = 0;
};

struct TheoremReport {
    int n = 0, m = 0;
    int phi_value = 0;
    std::optional<int> depth, sdepth, tau_size;
    bool depth_ok = false, sdepth_ok = false, tau_ok = false;
    std::vector<std::string> skipped;  // stages hitting a cap or the budget
    StageRuntimes runtimes;

    // Every stage that ran agrees with phi; skipped stages do not falsify.
    bool ok() const {
        return (!depth || depth_ok) && (!sdepth || sdepth_ok) && (!tau_size || tau_ok);
    }
};

namespace detail {

template <typename Fn>
auto timed_ms(double& slot, Fn&& fn) {
    const auto start = Clock::now();
    auto result = fn();
    slot = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return result;
}

}  // namespace detail

inline TheoremReport verify_theorem(int n, int m, const VerifyOptions& opts = {}) {
    TheoremReport report;
    report.n = n;
    report.m = m;
    report.phi_value = phi(n, m);

    try {
        const Mask tau = detail::timed_ms(report.runtimes.witness_ms,
                                          [&] { return witness_tau(n, m); });
        report.tau_size = card(tau);
        report.tau_ok = *report.tau_size == report.phi_value;
    } catch (const CapExceeded&) {
        report.skipped.push_back("witness");
    }

    try {
        DepthOptions dopts;
        dopts.prime = opts.prime;
        dopts.check_prime = opts.check_prime;
        dopts.cap = opts.homology_cap;
        dopts.budget_ms = opts.budget_ms;
        const BettiResult betti = detail::timed_ms(report.runtimes.depth_ms, [&] {
            return depth_quotient(make_path_ideal(n, m), dopts);
        });
        report.depth = betti.depth;
        report.depth_ok = betti.depth == report.phi_value && !betti.torsion_suspected;
    } catch (const CapExceeded&) {
        report.skipped.push_back("depth");
    } catch (const BudgetExceeded&) {
        report.skipped.push_back("depth");
    }

    try {
        SolverOptions sopts;
        sopts.memo_bytes = opts.memo_bytes;
        sopts.budget_ms = opts.budget_ms;
        const SdepthResult result = detail::timed_ms(report.runtimes.sdepth_ms, [&] {
            CharacteristicPoset poset(make_path_ideal(n, m), Side::quotient,
                                      opts.solver_cap);
            return sdepth_poset(poset, sopts);
        });
        report.sdepth = result.value;
        report.sdepth_ok = result.value == report.phi_value;
    } catch (const CapExceeded&) {
        report.skipped.push_back("sdepth");
    } catch (const BudgetExceeded&) {
        report.skipped.push_back("sdepth");
    }
    return report;
}

struct SequenceCheck {
    int j = 0;
    // For 0 -> S/L_j -> S/L_{j-1} -> S/U_j -> 0: sub, mid, quot.
    int depth_sub = 0, depth_mid = 0, depth_quot = 0;
    int sdepth_sub = 0, sdepth_mid = 0, sdepth_quot = 0;
    bool depth_a = false;   // depth(mid) >= min(depth(quot), depth(sub))
    bool depth_b = false;   // depth(sub) >= min(depth(mid), depth(quot)+1)
    bool depth_c = false;   // depth(quot) >= min(depth(sub)-1, depth(mid))
    bool sdepth_min = false;  // sdepth(mid) >= min(sdepth(sub), sdepth(quot))
};

struct LemmaReport {
    int n = 0, m = 0, k = 0;
    RecursionTrace trace;
    std::vector<SequenceCheck> sequences;
    int sdepth_base = 0;   // sdepth(S/L_0)
    int sdepth_final = 0;  // sdepth(S/L_k)
    bool colon_bound_ok = false;  // sdepth(S/L_k) >= sdepth(S/L_0)
    std::vector<std::string> violations;

    bool ok() const { return violations.empty() && trace.ok(); }
};

inline LemmaReport verify_lemma_inequalities(int n, int m,
                                             const VerifyOptions& opts = {}) {
    LemmaReport report;
    report.n = n;
    report.m = m;
    report.trace = recursion_trace(n, m);
    report.k = report.trace.k;

    std::map<std::vector<Mask>, std::pair<int, int>> metrics;  // gens -> (depth, sdepth)
    const auto depth_and_sdepth = [&](const SquarefreeIdeal& I) {
        auto it = metrics.find(I.gens);
        if (it != metrics.end()) return it->second;
        DepthOptions dopts;
        dopts.prime = opts.prime;
        dopts.check_prime = opts.check_prime;
        dopts.cap = opts.homology_cap;
        dopts.budget_ms = opts.budget_ms;
        SolverOptions sopts;
        sopts.memo_bytes = opts.memo_bytes;
        sopts.budget_ms = opts.budget_ms;
        const int depth = depth_quotient(I, dopts).depth;
        CharacteristicPoset poset(I, Side::quotient, opts.solver_cap);
        const int sdepth = sdepth_poset(poset, sopts).value;
        return metrics.emplace(I.gens, std::pair{depth, sdepth}).first->second;
    };

    if (!report.trace.main_case) {
        const auto [d0, s0] = depth_and_sdepth(report.trace.base);
        report.sdepth_base = s0;
        report.sdepth_final = s0;
        report.colon_bound_ok = true;
        return report;
    }

    const auto fail = [&report](int j, const char* what) {
        report.violations.push_back("sequence j=" + std::to_string(j) + ": " + what);
    };

    const SquarefreeIdeal* prev = &report.trace.base;
    for (TraceStep& step : report.trace.steps) {
        const auto [depth_mid, sdepth_mid] = depth_and_sdepth(*prev);
        const auto [depth_sub, sdepth_sub] = depth_and_sdepth(step.colon_ideal);
        const auto [depth_quot, sdepth_quot] = depth_and_sdepth(step.adjoin_ideal);
        step.depth_colon = depth_sub;
        step.sdepth_colon = sdepth_sub;
        step.depth_adjoin = depth_quot;
        step.sdepth_adjoin = sdepth_quot;

        SequenceCheck check;
        check.j = step.j;
        check.depth_sub = depth_sub;
        check.depth_mid = depth_mid;
        check.depth_quot = depth_quot;
        check.sdepth_sub = sdepth_sub;
        check.sdepth_mid = sdepth_mid;
        check.sdepth_quot = sdepth_quot;
        check.depth_a = depth_mid >= std::min(depth_quot, depth_sub);
        check.depth_b = depth_sub >= std::min(depth_mid, depth_quot + 1);
        check.depth_c = depth_quot >= std::min(depth_sub - 1, depth_mid);
        check.sdepth_min = sdepth_mid >= std::min(sdepth_sub, sdepth_quot);
        if (!check.depth_a) fail(step.j, "depth lemma (a) violated");
        if (!check.depth_b) fail(step.j, "depth lemma (b) violated");
        if (!check.depth_c) fail(step.j, "depth lemma (c) violated");
        if (!check.sdepth_min) fail(step.j, "sdepth min inequality violated");
        report.sequences.push_back(check);
        prev = &step.colon_ideal;
    }

    // L_k = (L_0 : product of all pivots); colon can only raise sdepth here.
    Mask pivots = 0;
    for (const TraceStep& step : report.trace.steps) pivots |= var_bit(step.pivot_var);
    const SquarefreeIdeal accumulated = colon_by_monomial(report.trace.base, pivots);
    if (accumulated.gens != report.trace.steps.back().colon_ideal.gens)
        report.violations.push_back("accumulated colon differs from L_k");
    report.sdepth_base = depth_and_sdepth(report.trace.base).second;
    report.sdepth_final = depth_and_sdepth(report.trace.steps.back().colon_ideal).second;
    report.colon_bound_ok = report.sdepth_final >= report.sdepth_base;
    if (!report.colon_bound_ok)
        report.violations.push_back("colon bound sdepth(S/L_k) >= sdepth(S/L_0) violated");
    return report;
}

}  // namespace sdepth
