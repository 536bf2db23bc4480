#pragma once

// JSON network documents and analysis reports. Everything here speaks the
// 1-based x1..xn / u1..um convention; conversion to the 0-based library types
// happens in to_pattern() and report construction.
//
// Input document:
//   {
//     "n": 10, "m": 2,
//     "edges":   [[1, 2], [6, 6], ...],   undirected state pairs, i == j is a self-loop
//     "inputs":  [[2, 1], [1, 2], ...],   [state, input] attachments
//     "targets": [2, 6, 8],               optional
//     "name": "...", "description": "...", "metadata": {...}   optional, free-form
//   }

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symctrl/decision.hpp"
#include "symctrl/pattern.hpp"

namespace symctrl::io {

inline constexpr const char* kVersion = "0.1.0";

struct NetworkDocument {
    Index n = 0;
    Index m = 0;
    /// Canonical 1-based pairs, i <= j, sorted, unique.
    std::vector<std::pair<Index, Index>> edges;
    /// 1-based (state, input), sorted, unique.
    std::vector<std::pair<Index, Index>> inputs;
    /// 1-based, sorted.
    std::optional<std::vector<Index>> targets;
    std::string name;
    std::string description;
    nlohmann::json metadata = nlohmann::json::object();

    StructuredPattern to_pattern() const;
    std::optional<TargetSet> target_set() const;
    nlohmann::ordered_json to_json() const;

    bool operator==(const NetworkDocument&) const = default;
};

/// Parses and validates a network document. Throws InputError with a line and
/// column for malformed JSON and with the offending entry for invalid content.
NetworkDocument parse_network(const std::string& text);

/// The 10-state, 2-input undirected example network with targets {2, 6, 8}.
NetworkDocument example_network();

enum class CheckKind { full, target };
enum class OutputFormat { json, text };

struct AnalysisFlags {
    /// Defaults to target when the document (or --targets) names targets.
    std::optional<CheckKind> check;
    std::optional<std::vector<Index>> targets; // 1-based override
    bool verify = false;
    Index trials = 20;
    std::uint64_t seed = 0;
    std::optional<double> rank_rel;
    OutputFormat format = OutputFormat::json;
    bool certificate = false;
    bool augment = false;
};

struct AnalysisResult {
    Verdict verdict;
    std::vector<Attachment> augmentation;
    nlohmann::ordered_json report;
};

/// Runs the requested check and builds the report:
///   {question, targets, decision, certainty, failure,
///    certificates {unreachable[], violating_set[], neighbor_set[], matching[]},
///    monte_carlo {trials, seed, ranks[], agreement, ...} | null,
///    augmentation[] (with --augment), tolerances, version}
AnalysisResult run_analysis(const NetworkDocument& doc, const AnalysisFlags& flags);

/// Human-readable rendering of a report produced by run_analysis.
std::string render_text(const nlohmann::ordered_json& report);

/// "{x8, x10}" for 0-based state indices.
std::string format_state_set(const std::vector<Index>& states);
std::string format_vertex_set(const std::vector<Vertex>& vertices);

} // namespace symctrl::io
