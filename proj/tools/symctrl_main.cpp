// symctrl: structural (target) controllability of undirected networks.
//
//   symctrl analyze network.json [--check full|target] [--targets 2,6,8]
//                                [--verify] [--trials N] [--seed S] [--tol R]
//                                [--format json|text] [--certificate] [--augment]
//   symctrl example
//
// Exit codes: 0 success, 1 usage, 2 invalid input, 3 numeric failure.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "symctrl/errors.hpp"
#include "symctrl/network_io.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw symctrl::InputError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structural controllability checks for undirected networks"};
    app.set_version_flag("--version", symctrl::io::kVersion);
    app.require_subcommand(1);

    std::string path;
    symctrl::io::AnalysisFlags flags;
    std::vector<symctrl::Index> targets;
    double tol = 0.0;

    auto* analyze = app.add_subcommand("analyze", "Check a network document");
    analyze->add_option("file", path, "Network JSON file")->required();
    analyze
        ->add_option_function<symctrl::io::CheckKind>(
            "--check", [&](const symctrl::io::CheckKind& k) { flags.check = k; },
            "full: all states; target: the target set")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, symctrl::io::CheckKind>{{"full", symctrl::io::CheckKind::full},
                                                          {"target", symctrl::io::CheckKind::target}}));
    analyze->add_option("--targets", targets, "Comma-separated 1-based target states")->delimiter(',');
    analyze->add_flag("--verify", flags.verify, "Cross-check with random numeric realizations");
    analyze->add_option("--trials", flags.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    analyze->add_option("--seed", flags.seed, "Master seed");
    analyze->add_option("--tol", tol, "Relative rank tolerance")->check(CLI::PositiveNumber);
    analyze->add_option("--format", flags.format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, symctrl::io::OutputFormat>{{"json", symctrl::io::OutputFormat::json},
                                                             {"text", symctrl::io::OutputFormat::text}}));
    analyze->add_flag("--certificate", flags.certificate, "Include matching and reachability witnesses");
    analyze->add_flag("--augment", flags.augment, "Suggest inputs that make the check pass");

    auto* example = app.add_subcommand("example", "Print the bundled 10-state example network");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (example->parsed()) {
            std::cout << symctrl::io::example_network().to_json().dump(2) << "\n";
            return 0;
        }
        if (!targets.empty()) {
            flags.targets = targets;
        }
        if (analyze->count("--tol") > 0) {
            flags.rank_rel = tol;
        }
        const auto doc = symctrl::io::parse_network(read_file(path));
        const auto result = symctrl::io::run_analysis(doc, flags);
        if (flags.format == symctrl::io::OutputFormat::text) {
            std::cout << symctrl::io::render_text(result.report);
        } else {
            std::cout << result.report.dump(2) << "\n";
        }
        return 0;
    } catch (const symctrl::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const symctrl::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    }
}
