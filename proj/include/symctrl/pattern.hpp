#pragma once

// Structural patterns of (A, B) pairs, their system digraph and bipartite views.
//
// All indices in this header are 0-based. The 1-based x1..xn / u1..um naming
// only appears at the I/O boundary (network_io.hpp, the CLI and the Python module).

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace symctrl {

using Index = std::size_t;

/// Position of a star in a pattern: [M]_{row,col}.
struct Entry {
    Index row = 0;
    Index col = 0;

    auto operator<=>(const Entry&) const = default;
};

/// Zero/star pattern of a structural pair (A, B).
///
/// A symmetric pattern ties [A]_{ij} and [A]_{ji} to one parameter: each
/// unordered pair {i, j} (a self-loop when i == j) is one independent weight.
/// A general pattern gives every star of A its own parameter; it exists so
/// that callers can ask about directed networks, for which the decision
/// engine only reports necessary conditions.
///
/// Duplicate declarations collapse. Immutable after construction.
class StructuredPattern {
public:
    /// Symmetric pattern from undirected pairs {i, j} (either order) and
    /// input attachments (state, input).
    static StructuredPattern symmetric(Index n, Index m, const std::vector<Entry>& edges,
                                       const std::vector<Entry>& inputs);

    /// General pattern from directed star positions [A]_{row,col}. Each star is
    /// an independent parameter even if its transpose is also a star.
    static StructuredPattern general(Index n, Index m, const std::vector<Entry>& a_stars,
                                     const std::vector<Entry>& inputs);

    /// Pattern from dense 0/1 masks. The A mask must be symmetric; a one-sided
    /// star is rejected with InputError rather than symmetrised.
    static StructuredPattern symmetric_from_masks(const Eigen::MatrixXi& a_mask,
                                                  const Eigen::MatrixXi& b_mask);

    Index n() const noexcept { return n_; }
    Index m() const noexcept { return m_; }
    bool is_symmetric() const noexcept { return symmetric_; }

    /// One entry per A-parameter. For symmetric patterns row <= col.
    const std::vector<Entry>& a_entries() const noexcept { return a_entries_; }
    /// One entry per B-parameter: (state, input).
    const std::vector<Entry>& b_entries() const noexcept { return b_entries_; }

    Index n_params_a() const noexcept { return a_entries_.size(); }
    Index n_params_b() const noexcept { return b_entries_.size(); }

    bool a_star(Index row, Index col) const { return a_mask_[row * n_ + col] != 0; }
    bool b_star(Index state, Index input) const { return b_mask_[state * m_ + input] != 0; }

    Index self_loop_count() const noexcept;

    /// Same A, inputs replaced by `inputs` over `m` input columns.
    StructuredPattern with_inputs(Index m, const std::vector<Entry>& inputs) const;

    /// Same A, no inputs.
    StructuredPattern without_inputs() const { return with_inputs(0, {}); }

    /// Pattern restricted to the listed states (inputs keep their indices).
    StructuredPattern induced(const std::vector<Index>& states) const;

    bool operator==(const StructuredPattern& other) const;

private:
    StructuredPattern(Index n, Index m, bool symmetric) : n_(n), m_(m), symmetric_(symmetric) {}
    void set_b(const std::vector<Entry>& inputs);
    void finalize_masks();

    Index n_ = 0;
    Index m_ = 0;
    bool symmetric_ = true;
    std::vector<Entry> a_entries_;
    std::vector<Entry> b_entries_;
    std::vector<char> a_mask_;
    std::vector<char> b_mask_;
};

enum class VertexKind { state, input };

/// A vertex of the system digraph. States order before inputs, then by index,
/// which is the tie-breaking order used for every certificate.
struct Vertex {
    VertexKind kind = VertexKind::state;
    Index index = 0;

    static constexpr Vertex state(Index i) { return {VertexKind::state, i}; }
    static constexpr Vertex input(Index j) { return {VertexKind::input, j}; }
    bool is_state() const noexcept { return kind == VertexKind::state; }

    auto operator<=>(const Vertex&) const = default;
};

/// "x3" / "u1" style label (1-based).
std::string label(const Vertex& v);

struct DiEdge {
    Vertex from;
    Vertex to;

    auto operator<=>(const DiEdge&) const = default;
};

/// D(A, B): one directed edge x_j -> x_i per star [A]_{ij}, one edge u_j -> x_i
/// per star [B]_{ij}.
class SystemDigraph {
public:
    explicit SystemDigraph(const StructuredPattern& pattern);

    Index n() const noexcept { return n_; }
    Index m() const noexcept { return m_; }
    bool is_symmetric() const noexcept { return symmetric_; }

    const std::vector<DiEdge>& state_edges() const noexcept { return state_edges_; }
    const std::vector<DiEdge>& input_edges() const noexcept { return input_edges_; }

    /// Sorted in-neighbours of state i (states first, then inputs).
    const std::vector<Vertex>& in_neighbors(Index state) const { return in_[state]; }
    /// Sorted out-neighbours (always states).
    const std::vector<Index>& out_neighbors(const Vertex& v) const;

    /// N(S) for a set of states; sorted, deduplicated.
    std::vector<Vertex> in_neighborhood(const std::vector<Index>& states) const;

    bool has_edge(const Vertex& from, Index to_state) const;

    /// Reconstructs the pattern the digraph was built from.
    StructuredPattern to_pattern() const;

private:
    Index n_ = 0;
    Index m_ = 0;
    bool symmetric_ = true;
    std::vector<DiEdge> state_edges_;
    std::vector<DiEdge> input_edges_;
    std::vector<std::vector<Vertex>> in_;
    std::vector<std::vector<Index>> out_state_;
    std::vector<std::vector<Index>> out_input_;
};

/// Ordered set of target states. May be empty; analysis entry points require
/// at least one target.
class TargetSet {
public:
    TargetSet() = default;
    /// Sorts and validates; duplicates are an InputError.
    TargetSet(std::vector<Index> indices, Index n);

    static TargetSet all(Index n);

    const std::vector<Index>& indices() const noexcept { return indices_; }
    Index size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    bool contains(Index i) const;

    bool operator==(const TargetSet&) const = default;

private:
    std::vector<Index> indices_;
};

/// B(S1, S2, E) with S1 = X u U and S2 = `right` (a set of states).
///
/// Left vertices are numbered 0..n+m-1 (states first, then inputs); right
/// vertices by their position in `right()`.
class BipartiteView {
public:
    BipartiteView(Index n_states, Index n_inputs, std::vector<Index> right,
                  std::vector<std::vector<Index>> adjacency);

    Index left_size() const noexcept { return n_states_ + n_inputs_; }
    Index right_size() const noexcept { return right_.size(); }
    const std::vector<Index>& right() const noexcept { return right_; }
    /// Sorted left ids adjacent to right position r.
    const std::vector<Index>& neighbors(Index r) const { return adj_[r]; }
    Index edge_count() const noexcept;

    Vertex left_vertex(Index id) const;
    Index left_id(const Vertex& v) const;

    /// N_B(S) for right positions; sorted left ids.
    std::vector<Index> neighborhood(const std::vector<Index>& right_positions) const;

private:
    Index n_states_ = 0;
    Index n_inputs_ = 0;
    std::vector<Index> right_;
    std::vector<std::vector<Index>> adj_;
};

/// Bipartite view of `digraph` with the given right-hand state set.
/// Throws InputError if `right` names a state out of range or repeats one.
BipartiteView bipartite_view(const SystemDigraph& digraph, const std::vector<Index>& right);

/// C_T: k x n, row l has a single 1 in column T[l].
Eigen::MatrixXd target_selector(const TargetSet& targets, Index n);

} // namespace symctrl
