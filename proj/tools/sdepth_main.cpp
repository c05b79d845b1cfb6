// Command-line front end.
//
//   sdepth sdepth      --path-ideal 6 3            Stanley depth of S/I
//   sdepth depth       --ideal file.txt [--betti]  depth of S/I via Betti numbers
//   sdepth phi         --path-ideal 6 3            closed form for path ideals
//   sdepth witness     --path-ideal 6 3            witness set for the upper bound
//   sdepth trace       --path-ideal 8 3            colon/adjoin recursion trace
//   sdepth verify      --path-ideal 6 3            phi = depth = sdepth check
//   sdepth table       --nmax 8                    verify over the whole grid
//   sdepth poset-stats --path-ideal 6 3            rank counts of both posets
//
// Exit codes: 0 success / all verified, 1 usage or parse error,
// 2 verification mismatch, 3 cap or budget skip with no mismatch.
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdepth/theory.hpp"

using nlohmann::ordered_json;
using namespace sdepth;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitSkipped = 3;

struct CommonOpts {
    std::vector<int> path_ideal;
    std::string ideal_file;
    std::string format = "plain";
    int cap = kDefaultHomologyCap;
    std::uint64_t budget_ms = 0;
};

void add_source_opts(CLI::App* cmd, CommonOpts& opts, bool file_allowed) {
    cmd->add_option("--path-ideal", opts.path_ideal,
                    "path ideal parameters n m (windows of width m on n variables)")
        ->expected(2);
    if (file_allowed)
        cmd->add_option("--ideal", opts.ideal_file, "ideal file (n=<ambient> header, "
                                                    "one generator per line)");
}

void add_common_opts(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"plain", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--cap", opts.cap, "ambient limit for search/homology stages")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--budget-ms", opts.budget_ms, "time budget per instance (0 = none)");
}

SquarefreeIdeal load_ideal(const CommonOpts& opts) {
    const bool have_params = !opts.path_ideal.empty();
    const bool have_file = !opts.ideal_file.empty();
    if (have_params == have_file)
        throw CLI::ValidationError("exactly one of --path-ideal and --ideal is required");
    if (have_params)
        return make_path_ideal(opts.path_ideal[0], opts.path_ideal[1]);
    std::ifstream in(opts.ideal_file);
    if (!in)
        throw std::runtime_error("cannot open '" + opts.ideal_file + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_ideal(buffer.str());
    } catch (const ParseError& e) {
        throw std::runtime_error(opts.ideal_file + ": " + e.what());
    }
}

PathIdealParams require_params(const CommonOpts& opts) {
    if (opts.path_ideal.size() != 2)
        throw CLI::ValidationError("this command requires --path-ideal <n> <m>");
    return PathIdealParams{opts.path_ideal[0], opts.path_ideal[1]};
}

ordered_json subset_json(Mask s) {
    return ordered_json(var_list(s));
}

ordered_json report_json(const TheoremReport& r) {
    ordered_json j;
    j["n"] = r.n;
    j["m"] = r.m;
    j["phi"] = r.phi_value;
    j["depth"] = r.depth ? ordered_json(*r.depth) : ordered_json(nullptr);
    j["sdepth"] = r.sdepth ? ordered_json(*r.sdepth) : ordered_json(nullptr);
    j["tau_size"] = r.tau_size ? ordered_json(*r.tau_size) : ordered_json(nullptr);
    j["ok"] = r.ok();
    j["stage_runtimes_ms"] = ordered_json{{"depth", r.runtimes.depth_ms},
                                          {"sdepth", r.runtimes.sdepth_ms},
                                          {"witness", r.runtimes.witness_ms}};
    j["skipped"] = r.skipped;
    return j;
}

std::string report_csv_row(const TheoremReport& r) {
    auto cell = [](const std::optional<int>& v) {
        return v ? std::to_string(*v) : std::string();
    };
    char buf[64];
    std::snprintf(buf, sizeof buf, ",%.3f,%.3f,%.3f", r.runtimes.depth_ms,
                  r.runtimes.sdepth_ms, r.runtimes.witness_ms);
    return std::to_string(r.n) + "," + std::to_string(r.m) + "," +
           std::to_string(r.phi_value) + "," + cell(r.depth) + "," + cell(r.sdepth) +
           "," + cell(r.tau_size) + "," + (r.ok() ? "true" : "false") + buf;
}

constexpr const char* kCsvHeader =
    "n,m,phi,depth,sdepth,tau_size,ok,depth_ms,sdepth_ms,witness_ms";

std::string report_plain_row(const TheoremReport& r) {
    auto cell = [](const std::optional<int>& v) {
        return v ? std::to_string(*v) : std::string("-");
    };
    std::string line = "n=" + std::to_string(r.n) + " m=" + std::to_string(r.m) +
                       " phi=" + std::to_string(r.phi_value) + " depth=" + cell(r.depth) +
                       " sdepth=" + cell(r.sdepth) + " tau=" + cell(r.tau_size) + " " +
                       (r.ok() ? "ok" : "MISMATCH");
    if (!r.skipped.empty()) {
        line += " skipped:";
        for (const auto& s : r.skipped) line += " " + s;
    }
    return line;
}

int exit_code_for(const TheoremReport& r) {
    if (!r.ok()) return kExitMismatch;
    if (!r.skipped.empty()) return kExitSkipped;
    return kExitOk;
}

// ---- subcommand bodies ----------------------------------------------------

int run_sdepth(const CommonOpts& opts) {
    const SquarefreeIdeal ideal = load_ideal(opts);
    CharacteristicPoset poset(ideal, Side::quotient, opts.cap);
    SolverOptions sopts;
    sopts.budget_ms = opts.budget_ms;
    const SdepthResult result = sdepth_poset(poset, sopts);
    if (opts.format == "json") {
        ordered_json j;
        j["sdepth"] = result.value;
        ordered_json ivs = ordered_json::array();
        for (const Interval& iv : result.witness.intervals)
            ivs.push_back(subset_to_string(iv.bottom) + " -> " +
                          subset_to_string(iv.top));
        j["intervals"] = ivs;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << result.value << "\n";
    }
    return kExitOk;
}

int run_depth(const CommonOpts& opts, bool betti) {
    const SquarefreeIdeal ideal = load_ideal(opts);
    DepthOptions dopts;
    dopts.cap = opts.cap;
    dopts.budget_ms = opts.budget_ms;
    const BettiResult result = depth_quotient(ideal, dopts);
    if (opts.format == "json") {
        ordered_json j;
        j["depth"] = result.depth;
        j["pd"] = result.pd;
        if (betti) {
            ordered_json entries = ordered_json::array();
            for (const BettiEntry& e : result.nonzero)
                entries.push_back(ordered_json{
                    {"i", e.i}, {"sigma", subset_json(e.sigma)}, {"rank", e.rank}});
            j["betti"] = entries;
        }
        std::cout << j.dump() << "\n";
    } else {
        std::cout << result.depth << "\n";
        if (betti)
            for (const BettiEntry& e : result.nonzero)
                std::cout << "beta_" << e.i << "," << subset_to_string(e.sigma)
                          << " = " << e.rank << "\n";
    }
    return kExitOk;
}

int run_phi(const CommonOpts& opts) {
    const PathIdealParams p = require_params(opts);
    const int value = phi(p.n, p.m);
    if (opts.format == "json")
        std::cout << ordered_json{{"n", p.n}, {"m", p.m}, {"phi", value}}.dump() << "\n";
    else
        std::cout << value << "\n";
    return kExitOk;
}

int run_witness(const CommonOpts& opts) {
    const PathIdealParams p = require_params(opts);
    const Mask tau = witness_tau(p.n, p.m);
    if (opts.format == "json") {
        ordered_json j;
        j["tau"] = subset_json(tau);
        j["size"] = card(tau);
        j["phi"] = phi(p.n, p.m);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << subset_to_string(tau) << "\n";
    }
    return kExitOk;
}

int run_trace(const CommonOpts& opts) {
    const PathIdealParams p = require_params(opts);
    const RecursionTrace trace = recursion_trace(p.n, p.m);
    auto gens_string = [](const std::vector<Mask>& gens) {
        std::string out;
        for (Mask g : gens) {
            if (!out.empty()) out += ' ';
            out += subset_to_string(g);
        }
        return out.empty() ? std::string("(0)") : out;
    };
    if (opts.format == "json") {
        ordered_json j;
        j["n"] = trace.n;
        j["m"] = trace.m;
        j["k"] = trace.k;
        j["a"] = trace.a;
        j["t"] = trace.t;
        j["main_case"] = trace.main_case;
        ordered_json steps = ordered_json::array();
        for (const TraceStep& s : trace.steps) {
            ordered_json step;
            step["j"] = s.j;
            step["pivot"] = s.pivot_var;
            step["colon_gens"] = ordered_json::array();
            for (Mask g : s.colon_ideal.gens) step["colon_gens"].push_back(subset_json(g));
            step["adjoin_gens"] = ordered_json::array();
            for (Mask g : s.adjoin_ideal.gens) step["adjoin_gens"].push_back(subset_json(g));
            steps.push_back(step);
        }
        j["steps"] = steps;
        ordered_json bad = ordered_json::array();
        for (const TraceMismatch& mm : trace.mismatches) {
            bad.push_back(ordered_json{{"where", mm.where},
                                       {"expected", gens_string(mm.expected)},
                                       {"computed", gens_string(mm.computed)}});
        }
        j["mismatches"] = bad;
        j["ok"] = trace.ok();
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "n=" << trace.n << " m=" << trace.m << " k=" << trace.k
                  << " a=" << trace.a << " t=" << trace.t
                  << (trace.main_case ? "" : " (base case: no recursion steps)") << "\n";
        std::cout << "L_0: " << gens_string(trace.base.gens) << "\n";
        for (const TraceStep& s : trace.steps) {
            std::cout << "j=" << s.j << " pivot=x_" << s.pivot_var << "\n";
            std::cout << "  L_" << s.j << ": " << gens_string(s.colon_ideal.gens) << "\n";
            std::cout << "  U_" << s.j << ": " << gens_string(s.adjoin_ideal.gens) << "\n";
        }
        for (const TraceMismatch& mm : trace.mismatches)
            std::cout << "MISMATCH at " << mm.where
                      << "\n  expected: " << gens_string(mm.expected)
                      << "\n  computed: " << gens_string(mm.computed) << "\n";
        if (trace.main_case && trace.ok())
            std::cout << "all generator displays and pattern matches hold\n";
    }
    return trace.ok() ? kExitOk : kExitMismatch;
}

VerifyOptions verify_options(const CommonOpts& opts) {
    VerifyOptions v;
    v.solver_cap = opts.cap;
    v.homology_cap = opts.cap;
    v.budget_ms = opts.budget_ms;
    return v;
}

int run_verify(const CommonOpts& opts) {
    const PathIdealParams p = require_params(opts);
    const TheoremReport report = verify_theorem(p.n, p.m, verify_options(opts));
    if (opts.format == "json")
        std::cout << report_json(report).dump() << "\n";
    else if (opts.format == "csv")
        std::cout << kCsvHeader << "\n" << report_csv_row(report) << "\n";
    else
        std::cout << report_plain_row(report) << "\n";
    return exit_code_for(report);
}

std::vector<TheoremReport> grid_reports(int nmax, const VerifyOptions& vopts,
                                        bool parallel) {
    std::vector<PathIdealParams> cells;
    for (int n = 1; n <= nmax; ++n)
        for (int m = 1; m <= n; ++m) cells.push_back(PathIdealParams{n, m});
    std::vector<TheoremReport> reports(cells.size());
    if (!parallel) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            reports[i] = verify_theorem(cells[i].n, cells[i].m, vopts);
        return reports;
    }
    std::atomic<std::size_t> next{0};
    const unsigned workers =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(cells.size())));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                reports[i] = verify_theorem(cells[i].n, cells[i].m, vopts);
            }
        });
    }
    for (auto& th : pool) th.join();
    return reports;
}

int run_table(const CommonOpts& opts, int nmax, bool parallel) {
    const auto reports = grid_reports(nmax, verify_options(opts), parallel);
    if (opts.format == "csv") std::cout << kCsvHeader << "\n";
    bool mismatch = false, skipped = false;
    for (const TheoremReport& r : reports) {
        mismatch = mismatch || !r.ok();
        skipped = skipped || !r.skipped.empty();
        if (opts.format == "json")
            std::cout << report_json(r).dump() << "\n";
        else if (opts.format == "csv")
            std::cout << report_csv_row(r) << "\n";
        else
            std::cout << report_plain_row(r) << "\n";
    }
    if (mismatch) return kExitMismatch;
    if (skipped) return kExitSkipped;
    return kExitOk;
}

int run_poset_stats(const CommonOpts& opts) {
    const SquarefreeIdeal ideal = load_ideal(opts);
    auto stats = [&](Side side) {
        CharacteristicPoset poset(ideal, side, opts.cap);
        std::vector<std::size_t> ranks;
        std::size_t total = 0;
        for (int d = 0; d <= poset.ambient(); ++d) {
            ranks.push_back(poset.members_of_rank(d).size());
            total += ranks.back();
        }
        return std::pair{total, ranks};
    };
    const auto [ideal_total, ideal_ranks] = stats(Side::ideal);
    const auto [quot_total, quot_ranks] = stats(Side::quotient);
    if (opts.format == "json") {
        ordered_json j;
        j["n"] = ideal.ambient;
        j["ideal_side"] = ordered_json{{"total", ideal_total}, {"ranks", ideal_ranks}};
        j["quotient_side"] = ordered_json{{"total", quot_total}, {"ranks", quot_ranks}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "n=" << ideal.ambient << "\n";
        auto print = [&](const char* name, std::size_t total,
                         const std::vector<std::size_t>& ranks) {
            std::cout << name << ": total " << total << ", by rank:";
            for (std::size_t c : ranks) std::cout << " " << c;
            std::cout << "\n";
        };
        print("ideal side", ideal_total, ideal_ranks);
        print("quotient side", quot_total, quot_ranks);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stanley depth, depth and closed-form verification for "
                 "squarefree monomial ideals"};
    app.require_subcommand(1);

    CommonOpts sdepth_opts, depth_opts, phi_opts, witness_opts, trace_opts,
        verify_opts_, table_opts, stats_opts;
    bool betti = false, parallel = false;
    int nmax = 8;

    auto* cmd_sdepth = app.add_subcommand("sdepth", "Stanley depth of S/I");
    add_source_opts(cmd_sdepth, sdepth_opts, true);
    add_common_opts(cmd_sdepth, sdepth_opts);

    auto* cmd_depth = app.add_subcommand("depth", "depth of S/I via Betti numbers");
    add_source_opts(cmd_depth, depth_opts, true);
    add_common_opts(cmd_depth, depth_opts);
    cmd_depth->add_flag("--betti", betti, "print nonzero Betti positions");

    auto* cmd_phi = app.add_subcommand("phi", "closed-form value for path ideals");
    add_source_opts(cmd_phi, phi_opts, false);
    add_common_opts(cmd_phi, phi_opts);

    auto* cmd_witness = app.add_subcommand("witness", "witness set for the sdepth "
                                                      "upper bound");
    add_source_opts(cmd_witness, witness_opts, false);
    add_common_opts(cmd_witness, witness_opts);

    auto* cmd_trace = app.add_subcommand("trace", "colon/adjoin recursion trace");
    add_source_opts(cmd_trace, trace_opts, false);
    add_common_opts(cmd_trace, trace_opts);

    auto* cmd_verify = app.add_subcommand("verify", "check phi = depth = sdepth");
    add_source_opts(cmd_verify, verify_opts_, false);
    add_common_opts(cmd_verify, verify_opts_);

    auto* cmd_table = app.add_subcommand("table", "verify over the grid m <= n <= nmax");
    add_common_opts(cmd_table, table_opts);
    cmd_table->add_option("--nmax", nmax, "grid bound")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_table->add_flag("--parallel", parallel, "fan out across grid cells");

    auto* cmd_stats = app.add_subcommand("poset-stats", "rank counts of the "
                                                        "characteristic posets");
    add_source_opts(cmd_stats, stats_opts, true);
    add_common_opts(cmd_stats, stats_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cmd_sdepth->parsed()) return run_sdepth(sdepth_opts);
        if (cmd_depth->parsed()) return run_depth(depth_opts, betti);
        if (cmd_phi->parsed()) return run_phi(phi_opts);
        if (cmd_witness->parsed()) return run_witness(witness_opts);
        if (cmd_trace->parsed()) return run_trace(trace_opts);
        if (cmd_verify->parsed()) return run_verify(verify_opts_);
        if (cmd_table->parsed()) return run_table(table_opts, nmax, parallel);
        if (cmd_stats->parsed()) return run_poset_stats(stats_opts);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CapExceeded& e) {
        std::cerr << "skipped: " << e.what() << "\n";
        return kExitSkipped;
    } catch (const BudgetExceeded& e) {
        std::cerr << "skipped: " << e.what() << "\n";
        return kExitSkipped;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
