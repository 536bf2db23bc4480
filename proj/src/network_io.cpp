#include "symctrl/network_io.hpp"

#include <algorithm>
#include <sstream>

#include "symctrl/errors.hpp"

namespace symctrl::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
    for (std::size_t k = 0; k < end; ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

Index read_count(const json& root, const char* key, bool positive) {
    if (!root.contains(key)) {
        throw InputError(std::string("missing required field \"") + key + "\"");
    }
    const auto& v = root.at(key);
    if (!v.is_number_integer() || v.get<long long>() < (positive ? 1 : 0)) {
        throw InputError(std::string("field \"") + key + "\" must be a " +
                         (positive ? "positive" : "non-negative") + " integer, got " + v.dump());
    }
    return static_cast<Index>(v.get<long long>());
}

Index read_index(const json& v, Index upper, const std::string& where, const char* what) {
    if (!v.is_number_integer()) {
        throw InputError(where + ": " + what + " must be an integer, got " + v.dump());
    }
    const long long x = v.get<long long>();
    if (x < 1 || static_cast<unsigned long long>(x) > upper) {
        throw InputError(where + ": " + what + " " + std::to_string(x) + " out of range 1.." + std::to_string(upper) +
                         " (indices are 1-based)");
    }
    return static_cast<Index>(x);
}

std::vector<std::pair<Index, Index>> read_pairs(const json& root, const char* key, Index first_upper,
                                                Index second_upper, const char* first_what,
                                                const char* second_what) {
    std::vector<std::pair<Index, Index>> out;
    if (!root.contains(key)) {
        return out;
    }
    const auto& arr = root.at(key);
    if (!arr.is_array()) {
        throw InputError(std::string("field \"") + key + "\" must be an array");
    }
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string where = std::string(key) + "[" + std::to_string(k) + "] = " + arr[k].dump();
        if (!arr[k].is_array() || arr[k].size() != 2) {
            throw InputError(where + ": expected a two-element array");
        }
        out.emplace_back(read_index(arr[k][0], first_upper, where, first_what),
                         read_index(arr[k][1], second_upper, where, second_what));
    }
    return out;
}

template <typename T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

ordered_json state_list(const std::vector<Index>& states) {
    ordered_json arr = ordered_json::array();
    for (Index s : states) {
        arr.push_back(s + 1);
    }
    return arr;
}

ordered_json vertex_list(const std::vector<Vertex>& vertices) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : vertices) {
        arr.push_back(label(v));
    }
    return arr;
}

std::string state_set_from_json(const ordered_json& arr) {
    std::vector<Index> states;
    for (const auto& v : arr) {
        states.push_back(v.get<Index>() - 1);
    }
    return format_state_set(states);
}

std::string label_set_from_json(const ordered_json& arr) {
    std::string out = "{";
    for (std::size_t k = 0; k < arr.size(); ++k) {
        out += (k ? ", " : "") + arr[k].get<std::string>();
    }
    return out + "}";
}

} // namespace

StructuredPattern NetworkDocument::to_pattern() const {
    std::vector<Entry> a;
    for (const auto& [i, j] : edges) {
        a.push_back({i - 1, j - 1});
    }
    std::vector<Entry> b;
    for (const auto& [state, input] : inputs) {
        b.push_back({state - 1, input - 1});
    }
    return StructuredPattern::symmetric(n, m, a, b);
}

std::optional<TargetSet> NetworkDocument::target_set() const {
    if (!targets) {
        return std::nullopt;
    }
    std::vector<Index> t;
    for (Index x : *targets) {
        t.push_back(x - 1);
    }
    return TargetSet(std::move(t), n);
}

ordered_json NetworkDocument::to_json() const {
    ordered_json j;
    if (!name.empty()) {
        j["name"] = name;
    }
    if (!description.empty()) {
        j["description"] = description;
    }
    j["n"] = n;
    j["m"] = m;
    j["edges"] = ordered_json::array();
    for (const auto& [a, b] : edges) {
        j["edges"].push_back({a, b});
    }
    j["inputs"] = ordered_json::array();
    for (const auto& [a, b] : inputs) {
        j["inputs"].push_back({a, b});
    }
    if (targets) {
        j["targets"] = *targets;
    }
    if (!metadata.empty()) {
        j["metadata"] = ordered_json::parse(metadata.dump());
    }
    return j;
}

NetworkDocument parse_network(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_and_column(text, e.byte);
        throw InputError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                         e.what());
    }
    if (!root.is_object()) {
        throw InputError("network document must be a JSON object");
    }
    for (const auto& [key, value] : root.items()) {
        if (key == "directed_edges") {
            throw InputError("\"directed_edges\" is not accepted: the state network must be undirected, so every "
                             "interconnection is declared once as an unordered pair in \"edges\"");
        }
        static const std::vector<std::string> known{"n",       "m",    "edges",       "inputs",
                                                    "targets", "name", "description", "metadata"};
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw InputError("unknown field \"" + key + "\"");
        }
    }

    NetworkDocument doc;
    doc.n = read_count(root, "n", true);
    doc.m = read_count(root, "m", false);
    for (auto [i, j] : read_pairs(root, "edges", doc.n, doc.n, "state", "state")) {
        doc.edges.emplace_back(std::min(i, j), std::max(i, j));
    }
    sort_unique(doc.edges);
    doc.inputs = read_pairs(root, "inputs", doc.n, doc.m, "state", "input");
    sort_unique(doc.inputs);

    if (root.contains("targets") && !root.at("targets").is_null()) {
        const auto& arr = root.at("targets");
        if (!arr.is_array()) {
            throw InputError("field \"targets\" must be an array");
        }
        std::vector<Index> t;
        for (std::size_t k = 0; k < arr.size(); ++k) {
            t.push_back(read_index(arr[k], doc.n, "targets[" + std::to_string(k) + "]", "state"));
        }
        sort_unique(t);
        doc.targets = std::move(t);
    }
    if (root.contains("name")) {
        if (!root.at("name").is_string()) {
            throw InputError("field \"name\" must be a string");
        }
        doc.name = root.at("name").get<std::string>();
    }
    if (root.contains("description")) {
        if (!root.at("description").is_string()) {
            throw InputError("field \"description\" must be a string");
        }
        doc.description = root.at("description").get<std::string>();
    }
    if (root.contains("metadata")) {
        doc.metadata = root.at("metadata");
    }
    return doc;
}

NetworkDocument example_network() {
    NetworkDocument doc;
    doc.name = "undirected-10-state-example";
    doc.description = "10 states, 2 inputs; not structurally controllable, but target controllable for {2, 6, 8}";
    doc.n = 10;
    doc.m = 2;
    doc.edges = {{1, 2}, {1, 4}, {1, 5}, {2, 3}, {3, 4}, {5, 7}, {6, 6}, {6, 7}, {7, 9}, {8, 9}, {9, 10}};
    doc.inputs = {{1, 2}, {2, 1}, {5, 2}};
    doc.targets = std::vector<Index>{2, 6, 8};
    return doc;
}

AnalysisResult run_analysis(const NetworkDocument& doc, const AnalysisFlags& flags) {
    const StructuredPattern pattern = doc.to_pattern();

    std::optional<TargetSet> targets = doc.target_set();
    if (flags.targets) {
        std::vector<Index> t;
        for (Index x : *flags.targets) {
            if (x < 1 || x > doc.n) {
                throw InputError("--targets: state " + std::to_string(x) + " out of range 1.." + std::to_string(doc.n));
            }
            t.push_back(x - 1);
        }
        sort_unique(t);
        targets = TargetSet(std::move(t), doc.n);
    }
    const CheckKind check = flags.check.value_or(targets ? CheckKind::target : CheckKind::full);
    if (check == CheckKind::target && (!targets || targets->empty())) {
        throw InputError("target check requested but no targets given (document \"targets\" or --targets)");
    }
    if (flags.trials == 0) {
        throw InputError("--trials must be >= 1");
    }

    Tolerances tol;
    if (flags.rank_rel) {
        if (!(*flags.rank_rel > 0.0)) {
            throw InputError("--tol must be positive");
        }
        tol.rank_rel = *flags.rank_rel;
    }

    AnalysisResult result;
    const TargetSet effective = check == CheckKind::target ? *targets : TargetSet::all(doc.n);
    result.verdict = check == CheckKind::target ? is_structurally_target_controllable(pattern, effective)
                                                : is_structurally_controllable(pattern);
    if (flags.verify) {
        MonteCarloOptions opts;
        opts.trials = flags.trials;
        opts.seed = flags.seed;
        opts.tol = tol;
        result.verdict.numeric_agreement =
            monte_carlo_verify(pattern, check == CheckKind::target ? targets : std::nullopt, opts);
    }
    if (flags.augment) {
        result.augmentation = suggest_input_augmentation(pattern, effective);
    }

    const Verdict& v = result.verdict;
    ordered_json report;
    report["question"] = check == CheckKind::target ? "target" : "full";
    report["targets"] = check == CheckKind::target ? state_list(effective.indices()) : ordered_json(nullptr);
    report["decision"] = v.decision;
    report["certainty"] = v.certainty == Certainty::exact ? "exact" : "necessary-only";
    report["failure"] = v.failure == Failure::none          ? "none"
                        : v.failure == Failure::unreachable ? "unreachable"
                                                            : "hall-violation";

    ordered_json cert;
    cert["unreachable"] = state_list(v.unreachable_targets);
    cert["violating_set"] = state_list(v.hall.violating_set.value_or(std::vector<Index>{}));
    cert["neighbor_set"] = vertex_list(v.hall.violating_neighbors);
    cert["matching"] = ordered_json::array();
    for (const auto& p : v.hall.matching.pairs) {
        cert["matching"].push_back({label(p.left), label(Vertex::state(p.right))});
    }
    if (flags.certificate) {
        cert["right_unmatched"] = state_list(v.hall.matching.right_unmatched);
        ordered_json paths = ordered_json::array();
        for (Index t : effective.indices()) {
            const auto path = v.reachability.path_to(t);
            if (!path.empty()) {
                paths.push_back({{"state", label(Vertex::state(t))}, {"path", vertex_list(path)}});
            }
        }
        cert["reachability"] = std::move(paths);
    }
    report["certificates"] = std::move(cert);

    if (v.numeric_agreement) {
        const auto& mc = *v.numeric_agreement;
        ordered_json j;
        j["trials"] = mc.trials;
        j["seed"] = mc.seed;
        j["target_rows"] = mc.target_rows;
        j["ranks"] = mc.ranks;
        j["agreement"] = mc.agreement;
        j["rechecked"] = mc.rechecked;
        j["anomalies"] = mc.anomalies;
        j["pruned_states"] = state_list(mc.pruned_states);
        j["normalized_krylov"] = mc.normalized_krylov;
        report["monte_carlo"] = std::move(j);
    } else {
        report["monte_carlo"] = nullptr;
    }
    if (flags.augment) {
        ordered_json arr = ordered_json::array();
        for (const auto& a : result.augmentation) {
            arr.push_back({{"input", label(Vertex::input(a.input))}, {"state", label(Vertex::state(a.state))}});
        }
        report["augmentation"] = std::move(arr);
    }
    report["tolerances"] = {{"rank_rel", tol.rank_rel},   {"rank_abs", tol.rank_abs}, {"zero_rel", tol.zero_rel},
                            {"simple_rel", tol.simple_rel}, {"pbh", tol.pbh}};
    report["version"] = kVersion;
    result.report = std::move(report);
    return result;
}

std::string format_state_set(const std::vector<Index>& states) {
    std::vector<Vertex> v;
    for (Index s : states) {
        v.push_back(Vertex::state(s));
    }
    return format_vertex_set(v);
}

std::string format_vertex_set(const std::vector<Vertex>& vertices) {
    std::string out = "{";
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        out += (k ? ", " : "") + label(vertices[k]);
    }
    return out + "}";
}

std::string render_text(const ordered_json& report) {
    std::ostringstream os;
    const bool target = report.at("question") == "target";
    const bool decision = report.at("decision").get<bool>();
    const auto& cert = report.at("certificates");

    os << "The structural pair (A, B) is " << (decision ? "" : "not ") << "structurally "
       << (target ? "target controllable with respect to T = " + state_set_from_json(report.at("targets"))
                  : std::string("controllable"))
       << ".\n";
    if (report.at("certainty") == "necessary-only") {
        os << "  note: A is not symmetric; the conditions are necessary only.\n";
    }
    if (!cert.at("unreachable").empty()) {
        os << "  not input-reachable: " << state_set_from_json(cert.at("unreachable")) << "\n";
    }
    if (!cert.at("violating_set").empty()) {
        os << "  Hall condition violated: S = " << state_set_from_json(cert.at("violating_set"))
           << ", N(S) = " << label_set_from_json(cert.at("neighbor_set")) << "\n";
    } else {
        os << "  Hall condition holds: |N(S)| >= |S| for every S within the " << (target ? "targets" : "states")
           << "\n";
    }
    if (cert.contains("reachability")) {
        for (const auto& entry : cert.at("reachability")) {
            os << "  reach " << entry.at("state").get<std::string>() << ":";
            for (std::size_t k = 0; k < entry.at("path").size(); ++k) {
                os << (k ? " -> " : " ") << entry.at("path")[k].get<std::string>();
            }
            os << "\n";
        }
        os << "  matching:";
        for (const auto& p : cert.at("matching")) {
            os << " " << p[0].get<std::string>() << "-" << p[1].get<std::string>();
        }
        os << "\n";
    }
    if (!report.at("monte_carlo").is_null()) {
        const auto& mc = report.at("monte_carlo");
        const auto rows = mc.at("target_rows").get<Index>();
        Index full = 0;
        for (const auto& r : mc.at("ranks")) {
            full += r.get<Index>() == rows ? 1 : 0;
        }
        os << "  numeric check: " << mc.at("trials").get<Index>() << " trials (seed " << mc.at("seed").get<std::uint64_t>()
           << "), full row rank " << rows << " in " << full << "/" << mc.at("trials").get<Index>()
           << ", agreement " << mc.at("agreement").get<double>() << "\n";
        if (!mc.at("anomalies").empty()) {
            os << "  WARNING: " << mc.at("anomalies").size() << " trial(s) disagree with the structural verdict\n";
        }
    }
    if (report.contains("augmentation")) {
        const auto& aug = report.at("augmentation");
        if (aug.empty()) {
            os << "  no additional inputs needed\n";
        } else {
            os << "  suggested inputs:";
            for (const auto& a : aug) {
                os << " " << a.at("input").get<std::string>() << "->" << a.at("state").get<std::string>();
            }
            os << "\n";
        }
    }
    return os.str();
}

} // namespace symctrl::io
