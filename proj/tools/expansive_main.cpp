#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "expansive/errors.hpp"
#include "expansive/gallery.hpp"
#include "expansive/report.hpp"
#include "expansive/spec_io.hpp"
#include "expansive/version.hpp"

namespace {

struct CommonArgs {
    std::string spec_path;
    double eta = 0.0;
    double x0 = 0.0;
    double tol = 0.0;
    std::size_t max_iter = 0;
    std::uint64_t seed = 0;
    std::string theorem;
    std::string trace_dir;
    bool strict = false;
};

// Only values the user actually passed become overrides.
expansive::RunOptions to_options(const CLI::App* cmd, const CommonArgs& a) {
    expansive::RunOptions opts;
    if (cmd->count("--eta")) opts.eta = a.eta;
    if (cmd->count("--x0")) opts.x0 = a.x0;
    if (cmd->count("--tol")) opts.tol = a.tol;
    if (cmd->count("--max-iter")) opts.max_iter = a.max_iter;
    if (cmd->count("--seed")) opts.seed = a.seed;
    opts.theorem = a.theorem;
    opts.strict = a.strict;
    opts.out_dir = a.trace_dir;
    return opts;
}

void add_common(CLI::App* cmd, CommonArgs& a, bool with_spec) {
    if (with_spec)
        cmd->add_option("--spec", a.spec_path, "problem spec JSON file")->required();
    cmd->add_option("--eta", a.eta, "exponent eta (> 1); overrides the spec");
    cmd->add_option("--x0", a.x0, "start coordinate; overrides the spec");
    cmd->add_option("--tol", a.tol, "convergence tolerance; overrides the spec");
    cmd->add_option("--max-iter", a.max_iter, "iteration budget; overrides the spec");
    cmd->add_option("--seed", a.seed, "sampling seed; overrides the spec");
    cmd->add_option("--trace-dir", a.trace_dir, "write iteration traces as CSV here");
    cmd->add_flag("--strict", a.strict, "any failing check makes the exit code 1");
}

void emit(const expansive::RunReport& rep, bool as_json, const std::string& out_file) {
    if (as_json)
        std::cout << rep.to_json().dump(2) << "\n";
    else
        std::cout << rep.to_text();
    if (!out_file.empty()) {
        std::ofstream out(out_file);
        out << rep.to_json().dump(2) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed points of expansive mappings: hypothesis checks, constructive "
                 "iterations, and worked demonstrations"};
    app.set_version_flag("--version", expansive::kVersion);
    app.require_subcommand(1);
    app.fallthrough();  // accept the global flags after the subcommand too

    bool as_json = false;
    std::string out_file;
    app.add_flag("--json", as_json, "print the report as JSON");
    app.add_option("--out", out_file, "also write the JSON report to this file");

    CommonArgs check_args, solve_args, falsify_args, gallery_args;
    std::string falsify_condition;
    std::uint64_t falsify_budget = 1000000;
    std::string gallery_name;
    bool gallery_list = false;

    auto* check = app.add_subcommand("check", "verify every testable hypothesis of a spec");
    add_common(check, check_args, true);

    auto* solve = app.add_subcommand("solve", "verify hypotheses, then iterate to a fixed point");
    add_common(solve, solve_args, true);
    solve->add_option("--theorem", solve_args.theorem,
                      "which iteration to run: ordered, min, or common");

    auto* falsify =
        app.add_subcommand("falsify", "escalating counterexample search for one condition");
    add_common(falsify, falsify_args, true);
    falsify->add_option("--condition", falsify_condition, "phi, wang, min, or jungck")
        ->required();
    falsify->add_option("--budget", falsify_budget, "pair-evaluation budget (default 1e6)");

    auto* gallery = app.add_subcommand("gallery", "run a named built-in demonstration");
    add_common(gallery, gallery_args, false);
    gallery->add_option("name", gallery_name, "demonstration name");
    gallery->add_flag("--list", gallery_list, "list the available demonstrations");

    int exit_code = 0;
    try {
        app.parse(argc, argv);

        if (check->parsed()) {
            const auto spec = expansive::parse_problem_spec_file(check_args.spec_path);
            const auto rep = expansive::cmd_check(spec, to_options(check, check_args));
            emit(rep, as_json, out_file);
            exit_code = rep.exit_code;
        } else if (solve->parsed()) {
            const auto spec = expansive::parse_problem_spec_file(solve_args.spec_path);
            const auto rep = expansive::cmd_solve(spec, to_options(solve, solve_args));
            emit(rep, as_json, out_file);
            exit_code = rep.exit_code;
        } else if (falsify->parsed()) {
            const auto spec = expansive::parse_problem_spec_file(falsify_args.spec_path);
            const auto rep = expansive::cmd_falsify(spec, falsify_condition, falsify_budget,
                                                    to_options(falsify, falsify_args));
            emit(rep, as_json, out_file);
            exit_code = rep.exit_code;
        } else if (gallery->parsed()) {
            if (gallery_list) {
                for (const auto& n : expansive::gallery_names()) std::cout << n << "\n";
                return 0;
            }
            if (gallery_name.empty())
                throw expansive::Error(expansive::ErrorCode::UnknownGalleryItem,
                                       "gallery needs a name or --list");
            const auto rep =
                expansive::run_gallery(gallery_name, to_options(gallery, gallery_args));
            emit(rep, as_json, out_file);
            exit_code = rep.exit_code;
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const expansive::Error& e) {
        std::cerr << "error [" << expansive::error_code_name(e.code()) << "]: " << e.what()
                  << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
