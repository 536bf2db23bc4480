#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symctrl/errors.hpp"
#include "symctrl/network_io.hpp"

namespace py = pybind11;
using namespace symctrl;

namespace {

using Pairs = std::vector<std::pair<long long, long long>>;

// Python callers use the same 1-based convention as the JSON documents, so
// everything is routed through the document validator.
io::NetworkDocument make_document(long long n, long long m, const Pairs& edges, const Pairs& inputs,
                                  const std::optional<std::vector<long long>>& targets) {
    nlohmann::json j;
    j["n"] = n;
    j["m"] = m;
    j["edges"] = edges;
    j["inputs"] = inputs;
    if (targets) {
        j["targets"] = *targets;
    }
    return io::parse_network(j.dump());
}

py::object to_python(const nlohmann::ordered_json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

py::object verdict(long long n, long long m, const Pairs& edges, const Pairs& inputs,
                   std::optional<std::vector<long long>> targets) {
    const auto doc = make_document(n, m, edges, inputs, targets);
    io::AnalysisFlags flags;
    flags.check = targets ? io::CheckKind::target : io::CheckKind::full;
    if (targets && targets->empty()) {
        throw InputError("target set must not be empty");
    }
    return to_python(io::run_analysis(doc, flags).report);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Structural (target) controllability of undirected networks. State and input indices are 1-based.";
    m.attr("__version__") = io::kVersion;

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    m.def(
        "is_structurally_controllable",
        [](long long n, long long m_, const Pairs& edges, const Pairs& inputs) {
            return verdict(n, m_, edges, inputs, std::nullopt);
        },
        py::arg("n"), py::arg("m"), py::arg("edges"), py::arg("inputs"),
        "Checks every state; returns the report dict (decision, failure, certificates, ...).");

    m.def(
        "is_structurally_target_controllable",
        [](long long n, long long m_, const Pairs& edges, const Pairs& inputs, const std::vector<long long>& targets) {
            return verdict(n, m_, edges, inputs, targets);
        },
        py::arg("n"), py::arg("m"), py::arg("edges"), py::arg("inputs"), py::arg("targets"));

    m.def(
        "analyze",
        [](const std::string& document, std::optional<std::string> check, std::optional<std::vector<Index>> targets,
           bool verify, Index trials, std::uint64_t seed, std::optional<double> tol, bool certificate, bool augment) {
            io::AnalysisFlags flags;
            if (check) {
                if (*check != "full" && *check != "target") {
                    throw InputError("check must be 'full' or 'target'");
                }
                flags.check = *check == "full" ? io::CheckKind::full : io::CheckKind::target;
            }
            flags.targets = std::move(targets);
            flags.verify = verify;
            flags.trials = trials;
            flags.seed = seed;
            flags.rank_rel = tol;
            flags.certificate = certificate;
            flags.augment = augment;
            return to_python(io::run_analysis(io::parse_network(document), flags).report);
        },
        py::arg("document"), py::arg("check") = py::none(), py::arg("targets") = py::none(), py::arg("verify") = false,
        py::arg("trials") = 20, py::arg("seed") = 0, py::arg("tol") = py::none(), py::arg("certificate") = false,
        py::arg("augment") = false, "Runs the analysis on a JSON network document and returns the report dict.");

    m.def(
        "hall_check",
        [](long long n, long long m_, const Pairs& edges, const Pairs& inputs, const std::vector<long long>& right) {
            const auto doc = make_document(n, m_, edges, inputs, right);
            const auto h = hall_check(bipartite_view(SystemDigraph(doc.to_pattern()), doc.target_set()->indices()));
            std::optional<std::vector<Index>> violating;
            if (h.violating_set) {
                violating = std::vector<Index>{};
                for (Index s : *h.violating_set) {
                    violating->push_back(s + 1);
                }
            }
            return std::make_pair(h.satisfied, violating);
        },
        py::arg("n"), py::arg("m"), py::arg("edges"), py::arg("inputs"), py::arg("right"),
        "(satisfied, violating set or None) for |N(S)| >= |S| over subsets of `right`.");

    m.def(
        "term_rank",
        [](long long n, const Pairs& edges) { return term_rank(make_document(n, 0, edges, {}, std::nullopt).to_pattern()); },
        py::arg("n"), py::arg("edges"));

    m.def(
        "monte_carlo_verify",
        [](long long n, long long m_, const Pairs& edges, const Pairs& inputs,
           std::optional<std::vector<long long>> targets, Index trials, std::uint64_t seed) {
            const auto doc = make_document(n, m_, edges, inputs, targets);
            MonteCarloOptions opts;
            opts.trials = trials;
            opts.seed = seed;
            const auto s = monte_carlo_verify(doc.to_pattern(), doc.target_set(), opts);
            py::dict out;
            out["trials"] = s.trials;
            out["seed"] = s.seed;
            out["ranks"] = s.ranks;
            out["target_rows"] = s.target_rows;
            out["agreement"] = s.agreement;
            out["anomalies"] = s.anomalies;
            out["structural_decision"] = s.structural_decision;
            return out;
        },
        py::arg("n"), py::arg("m"), py::arg("edges"), py::arg("inputs"), py::arg("targets") = py::none(),
        py::arg("trials") = 20, py::arg("seed") = 0);

    m.def(
        "suggest_input_augmentation",
        [](long long n, long long m_, const Pairs& edges, const Pairs& inputs, const std::vector<long long>& targets) {
            const auto doc = make_document(n, m_, edges, inputs, targets);
            std::vector<std::pair<Index, Index>> out;
            for (const auto& a : suggest_input_augmentation(doc.to_pattern(), *doc.target_set())) {
                out.emplace_back(a.input + 1, a.state + 1);
            }
            return out;
        },
        py::arg("n"), py::arg("m"), py::arg("edges"), py::arg("inputs"), py::arg("targets"),
        "New (input, state) attachments, 1-based, that make the target check pass.");

    m.def("example_network", [] { return to_python(io::example_network().to_json()); },
          "The bundled 10-state example as a document dict.");
}
