#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and explicit streams so tests can drive it in-process.
//
// Exit codes: 0 ok, 1 invalid input, 2 regime not applicable / no design,
// 3 budget exceeded, 4 verification found violations.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sigmahyper/sigmahyper.hpp"

namespace sigmahyper::cli {

enum ExitCode : int { ok = 0, invalid_input = 1, not_applicable = 2, over_budget = 3, violations = 4 };

inline int exit_code(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::validation: return invalid_input;
        case ErrorKind::regime:
        case ErrorKind::no_representation:
        case ErrorKind::no_such_design:
        case ErrorKind::no_edges: return not_applicable;
        case ErrorKind::budget_exceeded:
        case ErrorKind::overflow: return over_budget;
    }
    return invalid_input;
}

namespace detail {

struct SpecArgs {
    std::optional<int> n;
    std::optional<int> q;
    std::vector<int> sigma;
    std::string spec_file;
    std::string format = "json";
};

inline void add_spec_options(CLI::App* app, SpecArgs& a) {
    app->add_option("--n", a.n, "number of classes");
    app->add_option("--q", a.q, "vertices per class");
    app->add_option("--sigma", a.sigma, "parts of sigma, comma-separated, any order")->delimiter(',');
    app->add_option("--spec", a.spec_file, "JSON spec file ('-' for stdin)");
    app->add_option("--format", a.format, "output format")->check(CLI::IsMember({"json", "table"}));
}

inline json read_json(const std::string& path, std::istream& in) {
    try {
        if (path == "-") return json::parse(in);
        std::ifstream file(path);
        if (!file) throw ValidationError("cannot open " + path);
        return json::parse(file);
    } catch (const json::exception& e) {
        throw ValidationError("malformed JSON in " + path + ": " + e.what());
    }
}

inline bool has_inline_spec(const SpecArgs& a) { return a.n || a.q || !a.sigma.empty(); }

inline HypergraphSpec inline_spec(const SpecArgs& a) {
    if (!a.n || !a.q || a.sigma.empty()) throw ValidationError("inline spec needs all of --n, --q and --sigma");
    return make_spec(*a.n, *a.q, a.sigma);
}

/// Exactly one of --spec FILE and the inline flags.
inline HypergraphSpec resolve_spec(const SpecArgs& a, std::istream& in) {
    const bool inline_given = has_inline_spec(a);
    if (inline_given == !a.spec_file.empty()) {
        throw ValidationError("give the spec either with --n/--q/--sigma or with --spec FILE, not both or neither");
    }
    if (inline_given) return inline_spec(a);
    return spec_from_json(read_json(a.spec_file, in));
}

inline std::string join(const std::vector<int>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
    return out;
}

inline std::string spec_line(const HypergraphSpec& spec) {
    return "H(n=" + std::to_string(spec.n) + ", q=" + std::to_string(spec.q) + " | sigma=" + spec.sigma.to_string() +
           ")";
}

/// Scale factor for the oracle limits, from SIGMA_HYPER_BUDGET.
inline oracle::OracleBudget budget_from_env() {
    const char* raw = std::getenv("SIGMA_HYPER_BUDGET");
    if (!raw || !*raw) return {};
    char* end = nullptr;
    const long long factor = std::strtoll(raw, &end, 10);
    if (*end != '\0' || factor < 1 || factor > 1'000'000) {
        throw ValidationError("SIGMA_HYPER_BUDGET must be a positive integer scale factor, got '" + std::string(raw) + "'");
    }
    return oracle::OracleBudget{}.scaled(factor);
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// --- worked example ----------------------------------------------------------

inline std::int64_t example_alpha8(int n, int q) { return std::max({3 * n, q + 2 * n - 2, 2 * q + n - 2}); }
inline std::int64_t example_alpha7(int n, int q) { return n >= q ? 2 * n + 1 : 2 * q; }
inline std::int64_t example_alpha6(int n, int q) { return n >= q - 1 ? 2 * n : q + n - 1; }

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"sigma-hypergraph toolkit", "sigmahyper"};
    app.require_subcommand(1);

    detail::SpecArgs spec_args;

    auto* alpha_cmd = app.add_subcommand("alpha", "alpha_k with a witness profile");
    int k = 0;
    bool all_k = false;
    detail::add_spec_options(alpha_cmd, spec_args);
    auto* k_opt = alpha_cmd->add_option("--k", k, "k in [1, r-1]");
    alpha_cmd->add_flag("--all", all_k, "every k in [1, r-1]")->excludes(k_opt);

    auto* closed_cmd = app.add_subcommand("alpha-closed", "closed-form alpha and its maximizing j");
    detail::add_spec_options(closed_cmd, spec_args);

    auto* bounds_cmd = app.add_subcommand("bounds", "constrained-colouring bounds");
    int col_alpha = 0;
    int col_beta = 0;
    detail::add_spec_options(bounds_cmd, spec_args);
    bounds_cmd->add_option("--alpha", col_alpha, "least colours per edge")->required();
    bounds_cmd->add_option("--beta", col_beta, "most colours per edge")->required();

    auto* match_cmd = app.add_subcommand("match", "construct a large matching");
    std::string strategy = "auto";
    bool permissive = false;
    bool emit_matching = false;
    detail::add_spec_options(match_cmd, spec_args);
    match_cmd->add_option("--strategy", strategy)
        ->check(CLI::IsMember({"auto", "diagonal", "rectangular", "rgood", "greedy"}));
    match_cmd->add_flag("--permissive", permissive, "run constructions below their proven thresholds");
    match_cmd->add_flag("--emit", emit_matching, "include the matching itself");

    auto* verify_cmd = app.add_subcommand("verify", "check a matching file");
    std::string matching_file;
    detail::add_spec_options(verify_cmd, spec_args);
    verify_cmd->add_option("--matching", matching_file, "matching JSON ('-' for stdin)")->required();

    auto* edges_cmd = app.add_subcommand("edges", "edge census");
    bool count_only = false;
    bool list = false;
    std::int64_t list_limit = 100'000;
    detail::add_spec_options(edges_cmd, spec_args);
    auto* count_flag = edges_cmd->add_flag("--count", count_only);
    edges_cmd->add_flag("--list", list)->excludes(count_flag);
    edges_cmd->add_option("--max", list_limit, "refuse to list more edges than this");

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference values");
    oracle_cmd->require_subcommand(1);
    auto* o_alpha = oracle_cmd->add_subcommand("alpha", "exact alpha_k by exhaustive search");
    int o_k = 0;
    detail::add_spec_options(o_alpha, spec_args);
    o_alpha->add_option("--k", o_k)->required();
    auto* o_match = oracle_cmd->add_subcommand("match", "exact matching number");
    detail::add_spec_options(o_match, spec_args);
    auto* o_col = oracle_cmd->add_subcommand("colouring", "least and greatest colour counts");
    detail::add_spec_options(o_col, spec_args);
    o_col->add_option("--alpha", col_alpha)->required();
    o_col->add_option("--beta", col_beta)->required();
    auto* o_inter = oracle_cmd->add_subcommand("intersection", "largest edge overlap with a top-rows set");
    std::vector<int> profile;
    detail::add_spec_options(o_inter, spec_args);
    o_inter->add_option("--profile", profile, "rows taken from the top of each class")->delimiter(',')->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweeps");
    bool paper_example = false;
    int n_min = 3, n_max = 30, q_min = 4, q_max = 30;
    std::string sweep_format = "json";
    sweep_cmd->add_flag("--paper-example", paper_example, "sigma = (4,3,2), k in {6,7,8}")->required();
    sweep_cmd->add_option("--n-min", n_min);
    sweep_cmd->add_option("--n-max", n_max);
    sweep_cmd->add_option("--q-min", q_min);
    sweep_cmd->add_option("--q-max", q_max);
    sweep_cmd->add_option("--format", sweep_format)->check(CLI::IsMember({"json", "table"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : invalid_input;
    }

    const bool table = spec_args.format == "table";
    try {
        if (alpha_cmd->parsed()) {
            const auto spec = detail::resolve_spec(spec_args, in);
            if (all_k == (k_opt->count() > 0)) throw ValidationError("alpha needs exactly one of --k and --all");
            std::vector<int> ks;
            if (all_k) {
                for (int i = 1; i <= spec.r() - 1; ++i) ks.push_back(i);
                if (ks.empty()) throw ValidationError("r = 1 leaves no k in [1, r-1]");
            } else {
                ks.push_back(k);
            }
            json values = json::array();
            for (int kk : ks) {
                const auto w = alpha_k_witness(spec, kk);
                json row{{"k", kk}, {"alpha_k", w.value}, {"profile", w.profile}};
                row["sequence"] = w.sequence ? to_json(*w.sequence) : json(nullptr);
                values.push_back(std::move(row));
                if (table) out << "alpha_" << kk << " = " << w.value << "  profile " << detail::join(w.profile) << '\n';
            }
            if (table) return ok;
            json doc{{"spec", to_json(spec)}};
            if (all_k) {
                doc["values"] = std::move(values);
            } else {
                for (auto& [key, v] : values[0].items()) doc[key] = v;
            }
            detail::emit(out, doc);
            return ok;
        }

        if (closed_cmd->parsed()) {
            const auto spec = detail::resolve_spec(spec_args, in);
            const auto c = alpha_closed_form(spec);
            if (table) {
                out << detail::spec_line(spec) << "\nalpha = " << c.value << " (j = " << c.j << ")\n";
            } else {
                detail::emit(out, json{{"spec", to_json(spec)}, {"alpha", c.value}, {"j", c.j}});
            }
            return ok;
        }

        if (bounds_cmd->parsed()) {
            const auto spec = detail::resolve_spec(spec_args, in);
            const auto b = colouring_bounds(spec, col_alpha, col_beta);
            if (table) {
                out << "alpha_beta(H) = " << b.alpha_beta_ind << "\nalpha(H) = " << b.alpha_ind
                    << "\nchi lower bound = " << b.chi_lower << "\nfeasible = " << (b.feasible ? "yes" : "no") << '\n';
            } else {
                json doc{{"spec", to_json(spec)}, {"alpha", col_alpha}, {"beta", col_beta}};
                const auto body = to_json(b);
                for (auto& [key, v] : body.items()) doc[key] = v;
                detail::emit(out, doc);
            }
            return ok;
        }

        if (match_cmd->parsed()) {
            const auto spec = detail::resolve_spec(spec_args, in);
            const MatchOptions options{permissive};
            MatchingReport report;
            if (strategy == "auto") {
                report = best_matching(spec, options);
            } else if (strategy == "diagonal") {
                auto m = diagonal_perfect_matching(spec);
                report = sigmahyper::detail::finish(spec, std::move(m.edges), "diagonal", {}, true);
            } else if (strategy == "rectangular") {
                report = rectangular_maximum_matching(spec, options);
            } else if (strategy == "rgood") {
                report = r_good_maximum_matching(spec, options);
            } else {
                report = greedy_matching(spec);
            }
            if (table) {
                out << detail::spec_line(spec) << "\nstrategy " << report.strategy << "\nnu = " << report.nu
                    << "\nunmatched = " << report.unmatched_count << "\nproven = " << (report.proven ? "yes" : "no")
                    << '\n';
                for (const auto& c : report.certificates) out << "  " << c.name << " = " << c.value << '\n';
                if (emit_matching) {
                    for (const auto& e : report.matching.edges) {
                        out << " ";
                        for (const auto& p : e.parts()) out << " " << p.cls << ":" << detail::join(p.rows);
                        out << '\n';
                    }
                }
                return ok;
            }
            json doc{{"spec", to_json(spec)}};
            const auto body = to_json(report, emit_matching);
            for (auto& [key, v] : body.items()) doc[key] = v;
            detail::emit(out, doc);
            return ok;
        }

        if (verify_cmd->parsed()) {
            const auto doc = detail::read_json(matching_file, in);
            HypergraphSpec spec;
            const bool file_spec = doc.is_object() && doc.contains("spec");
            const bool flag_spec = detail::has_inline_spec(spec_args) || !spec_args.spec_file.empty();
            if (file_spec == flag_spec) {
                throw ValidationError("the spec must come either from the matching file or from flags, exactly once");
            }
            spec = file_spec ? spec_from_json(doc["spec"]) : detail::resolve_spec(spec_args, in);
            const auto matching = matching_from_json(doc);
            const auto report = verify_matching(spec, matching);
            if (table) {
                out << (report.ok() ? "ok" : "violations: " + std::to_string(report.violations.size())) << '\n';
                for (const auto& v : report.violations) out << "  " << to_string(v.kind) << ": " << v.detail << '\n';
            } else {
                json j{{"spec", to_json(spec)}, {"edge_count", matching.edges.size()}};
                const auto body = to_json(report);
                for (auto& [key, v] : body.items()) j[key] = v;
                detail::emit(out, j);
            }
            if (!report.ok()) err << report.violations.size() << " violation(s)\n";
            return report.ok() ? ok : violations;
        }

        if (edges_cmd->parsed()) {
            const auto spec = detail::resolve_spec(spec_args, in);
            if (count_only == list) throw ValidationError("edges needs exactly one of --count and --list");
            const auto count = spec.has_edges() ? count_edges(spec) : 0;
            if (list && count > list_limit) {
                throw BudgetExceeded(std::to_string(count) + " edges exceed --max " + std::to_string(list_limit));
            }
            if (table) {
                out << detail::spec_line(spec) << "\nedges = " << count << '\n';
                if (list && spec.has_edges()) {
                    for (const auto& e : enumerate_edges(spec)) {
                        for (const auto& p : e.parts()) out << " " << p.cls << ":" << detail::join(p.rows);
                        out << '\n';
                    }
                }
                return ok;
            }
            json doc{{"spec", to_json(spec)}, {"count", count}};
            if (list) {
                json edges = json::array();
                if (spec.has_edges()) {
                    for (const auto& e : enumerate_edges(spec)) edges.push_back(to_json(e));
                }
                doc["edges"] = std::move(edges);
            }
            detail::emit(out, doc);
            return ok;
        }

        if (oracle_cmd->parsed()) {
            const auto spec = detail::resolve_spec(spec_args, in);
            const auto budget = detail::budget_from_env();
            json doc{{"spec", to_json(spec)}};
            if (o_alpha->parsed()) {
                doc["k"] = o_k;
                doc["alpha_k"] = oracle::bf_alpha_k(spec, o_k, budget);
            } else if (o_match->parsed()) {
                doc["nu"] = oracle::bf_max_matching(spec, budget);
            } else if (o_col->parsed()) {
                const auto c = oracle::bf_colouring_spectrum(spec, col_alpha, col_beta, budget);
                doc["alpha"] = col_alpha;
                doc["beta"] = col_beta;
                doc["chi"] = c.chi ? json(*c.chi) : json(nullptr);
                doc["chi_bar"] = c.chi_bar ? json(*c.chi_bar) : json(nullptr);
            } else {
                const auto set = VertexSet::from_profile(spec, profile);
                doc["profile"] = profile;
                doc["max_intersection"] = oracle::bf_max_intersection(spec, set, budget);
            }
            if (table) {
                for (auto& [key, v] : doc.items()) {
                    if (key != "spec") out << key << " = " << v.dump() << '\n';
                }
            } else {
                detail::emit(out, doc);
            }
            return ok;
        }

        if (sweep_cmd->parsed()) {
            if (n_min < 3 || q_min < 4 || n_min > n_max || q_min > q_max) {
                throw ValidationError("the example grid needs 3 <= n-min <= n-max and 4 <= q-min <= q-max");
            }
            json rows = json::array();
            bool all_agree = true;
            if (sweep_format == "table") out << "   n    q  alpha_6  alpha_7  alpha_8  agree\n";
            for (int n = n_min; n <= n_max; ++n) {
                for (int q = q_min; q <= q_max; ++q) {
                    const auto spec = make_spec(n, q, {4, 3, 2});
                    const std::int64_t a6 = alpha_k(spec, 6);
                    const std::int64_t a7 = alpha_k(spec, 7);
                    const std::int64_t a8 = alpha_k(spec, 8);
                    const bool agree = a6 == detail::example_alpha6(n, q) && a7 == detail::example_alpha7(n, q) &&
                                       a8 == detail::example_alpha8(n, q);
                    all_agree = all_agree && agree;
                    if (sweep_format == "table") {
                        char line[96];
                        std::snprintf(line, sizeof line, "%4d %4d %8lld %8lld %8lld  %s\n", n, q,
                                      static_cast<long long>(a6), static_cast<long long>(a7),
                                      static_cast<long long>(a8), agree ? "yes" : "NO");
                        out << line;
                    } else {
                        rows.push_back({{"n", n}, {"q", q}, {"alpha_6", a6}, {"alpha_7", a7}, {"alpha_8", a8},
                                        {"agrees_with_closed_forms", agree}});
                    }
                }
            }
            if (sweep_format == "json") {
                detail::emit(out, json{{"sigma", {4, 3, 2}}, {"rows", std::move(rows)}, {"all_agree", all_agree}});
            }
            return all_agree ? ok : violations;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
    }
    return invalid_input;
}

}  // namespace sigmahyper::cli
