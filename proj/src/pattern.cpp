#include "symctrl/pattern.hpp"

#include <algorithm>
#include <string>

#include "symctrl/errors.hpp"

namespace symctrl {

namespace {

void sort_unique(std::vector<Entry>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string entry_str(const Entry& e) {
    return "(" + std::to_string(e.row) + ", " + std::to_string(e.col) + ")";
}

} // namespace

StructuredPattern StructuredPattern::symmetric(Index n, Index m, const std::vector<Entry>& edges,
                                               const std::vector<Entry>& inputs) {
    if (n == 0) {
        throw InputError("pattern needs at least one state");
    }
    StructuredPattern p(n, m, true);
    p.a_entries_.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.row >= n || e.col >= n) {
            throw InputError("state edge " + entry_str(e) + " out of range for n = " + std::to_string(n));
        }
        p.a_entries_.push_back({std::min(e.row, e.col), std::max(e.row, e.col)});
    }
    sort_unique(p.a_entries_);
    p.set_b(inputs);
    p.finalize_masks();
    return p;
}

StructuredPattern StructuredPattern::general(Index n, Index m, const std::vector<Entry>& a_stars,
                                             const std::vector<Entry>& inputs) {
    if (n == 0) {
        throw InputError("pattern needs at least one state");
    }
    StructuredPattern p(n, m, false);
    for (const auto& e : a_stars) {
        if (e.row >= n || e.col >= n) {
            throw InputError("A-star " + entry_str(e) + " out of range for n = " + std::to_string(n));
        }
    }
    p.a_entries_ = a_stars;
    sort_unique(p.a_entries_);
    p.set_b(inputs);
    p.finalize_masks();
    return p;
}

StructuredPattern StructuredPattern::symmetric_from_masks(const Eigen::MatrixXi& a_mask,
                                                          const Eigen::MatrixXi& b_mask) {
    const auto n = static_cast<Index>(a_mask.rows());
    if (a_mask.cols() != a_mask.rows()) {
        throw InputError("A mask must be square");
    }
    if (b_mask.size() != 0 && static_cast<Index>(b_mask.rows()) != n) {
        throw InputError("B mask must have as many rows as A");
    }
    std::vector<Entry> edges;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i; j < n; ++j) {
            const bool ij = a_mask(i, j) != 0;
            const bool ji = a_mask(j, i) != 0;
            if (ij != ji) {
                throw InputError("A mask is not symmetric at " + entry_str({i, j}));
            }
            if (ij) {
                edges.push_back({i, j});
            }
        }
    }
    std::vector<Entry> inputs;
    const auto m = static_cast<Index>(b_mask.cols());
    for (Index i = 0; i < static_cast<Index>(b_mask.rows()); ++i) {
        for (Index j = 0; j < m; ++j) {
            if (b_mask(i, j) != 0) {
                inputs.push_back({i, j});
            }
        }
    }
    return symmetric(n, m, edges, inputs);
}

void StructuredPattern::set_b(const std::vector<Entry>& inputs) {
    for (const auto& e : inputs) {
        if (e.row >= n_ || e.col >= m_) {
            throw InputError("input attachment " + entry_str(e) + " out of range for n = " +
                             std::to_string(n_) + ", m = " + std::to_string(m_));
        }
    }
    b_entries_ = inputs;
    sort_unique(b_entries_);
}

void StructuredPattern::finalize_masks() {
    a_mask_.assign(n_ * n_, 0);
    b_mask_.assign(n_ * m_, 0);
    for (const auto& e : a_entries_) {
        a_mask_[e.row * n_ + e.col] = 1;
        if (symmetric_) {
            a_mask_[e.col * n_ + e.row] = 1;
        }
    }
    for (const auto& e : b_entries_) {
        b_mask_[e.row * m_ + e.col] = 1;
    }
}

Index StructuredPattern::self_loop_count() const noexcept {
    return static_cast<Index>(
        std::count_if(a_entries_.begin(), a_entries_.end(), [](const Entry& e) { return e.row == e.col; }));
}

StructuredPattern StructuredPattern::with_inputs(Index m, const std::vector<Entry>& inputs) const {
    StructuredPattern p(n_, m, symmetric_);
    p.a_entries_ = a_entries_;
    p.set_b(inputs);
    p.finalize_masks();
    return p;
}

StructuredPattern StructuredPattern::induced(const std::vector<Index>& states) const {
    std::vector<Index> pos(n_, n_);
    for (Index k = 0; k < states.size(); ++k) {
        if (states[k] >= n_) {
            throw InputError("induced: state " + std::to_string(states[k]) + " out of range");
        }
        pos[states[k]] = k;
    }
    std::vector<Entry> a;
    for (const auto& e : a_entries_) {
        if (pos[e.row] < n_ && pos[e.col] < n_) {
            a.push_back({pos[e.row], pos[e.col]});
        }
    }
    std::vector<Entry> b;
    for (const auto& e : b_entries_) {
        if (pos[e.row] < n_) {
            b.push_back({pos[e.row], e.col});
        }
    }
    const Index k = states.size();
    return symmetric_ ? symmetric(k, m_, a, b) : general(k, m_, a, b);
}

bool StructuredPattern::operator==(const StructuredPattern& other) const {
    return n_ == other.n_ && m_ == other.m_ && symmetric_ == other.symmetric_ &&
           a_entries_ == other.a_entries_ && b_entries_ == other.b_entries_;
}

std::string label(const Vertex& v) {
    return (v.is_state() ? "x" : "u") + std::to_string(v.index + 1);
}

SystemDigraph::SystemDigraph(const StructuredPattern& pattern)
    : n_(pattern.n()), m_(pattern.m()), symmetric_(pattern.is_symmetric()),
      in_(pattern.n()), out_state_(pattern.n()), out_input_(pattern.m()) {
    auto add_state_edge = [this](Index from, Index to) {
        state_edges_.push_back({Vertex::state(from), Vertex::state(to)});
        in_[to].push_back(Vertex::state(from));
        out_state_[from].push_back(to);
    };
    for (const auto& e : pattern.a_entries()) {
        // [A]_{ij} star is the edge x_j -> x_i.
        add_state_edge(e.col, e.row);
        if (symmetric_ && e.row != e.col) {
            add_state_edge(e.row, e.col);
        }
    }
    for (const auto& e : pattern.b_entries()) {
        input_edges_.push_back({Vertex::input(e.col), Vertex::state(e.row)});
        in_[e.row].push_back(Vertex::input(e.col));
        out_input_[e.col].push_back(e.row);
    }
    std::sort(state_edges_.begin(), state_edges_.end());
    std::sort(input_edges_.begin(), input_edges_.end());
    for (auto& v : in_) {
        std::sort(v.begin(), v.end());
    }
    for (auto& v : out_state_) {
        std::sort(v.begin(), v.end());
    }
    for (auto& v : out_input_) {
        std::sort(v.begin(), v.end());
    }
}

const std::vector<Index>& SystemDigraph::out_neighbors(const Vertex& v) const {
    return v.is_state() ? out_state_.at(v.index) : out_input_.at(v.index);
}

std::vector<Vertex> SystemDigraph::in_neighborhood(const std::vector<Index>& states) const {
    std::vector<Vertex> out;
    for (Index s : states) {
        const auto& nb = in_.at(s);
        out.insert(out.end(), nb.begin(), nb.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool SystemDigraph::has_edge(const Vertex& from, Index to_state) const {
    const auto& nb = in_.at(to_state);
    return std::binary_search(nb.begin(), nb.end(), from);
}

StructuredPattern SystemDigraph::to_pattern() const {
    std::vector<Entry> a;
    for (const auto& e : state_edges_) {
        // Edge x_j -> x_i is the star [A]_{ij}.
        a.push_back({e.to.index, e.from.index});
    }
    std::vector<Entry> b;
    for (const auto& e : input_edges_) {
        b.push_back({e.to.index, e.from.index});
    }
    return symmetric_ ? StructuredPattern::symmetric(n_, m_, a, b) : StructuredPattern::general(n_, m_, a, b);
}

TargetSet::TargetSet(std::vector<Index> indices, Index n) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    for (Index k = 0; k < indices_.size(); ++k) {
        if (indices_[k] >= n) {
            throw InputError("target " + std::to_string(indices_[k] + 1) + " out of range for n = " +
                             std::to_string(n));
        }
        if (k > 0 && indices_[k] == indices_[k - 1]) {
            throw InputError("duplicate target " + std::to_string(indices_[k] + 1));
        }
    }
}

TargetSet TargetSet::all(Index n) {
    std::vector<Index> v(n);
    for (Index i = 0; i < n; ++i) {
        v[i] = i;
    }
    return TargetSet(std::move(v), n);
}

bool TargetSet::contains(Index i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
}

BipartiteView::BipartiteView(Index n_states, Index n_inputs, std::vector<Index> right,
                             std::vector<std::vector<Index>> adjacency)
    : n_states_(n_states), n_inputs_(n_inputs), right_(std::move(right)), adj_(std::move(adjacency)) {
    if (adj_.size() != right_.size()) {
        throw InputError("bipartite view: adjacency size does not match right side");
    }
    for (auto& nb : adj_) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        if (!nb.empty() && nb.back() >= left_size()) {
            throw InputError("bipartite view: left id out of range");
        }
    }
}

Index BipartiteView::edge_count() const noexcept {
    Index c = 0;
    for (const auto& nb : adj_) {
        c += nb.size();
    }
    return c;
}

Vertex BipartiteView::left_vertex(Index id) const {
    return id < n_states_ ? Vertex::state(id) : Vertex::input(id - n_states_);
}

Index BipartiteView::left_id(const Vertex& v) const {
    return v.is_state() ? v.index : n_states_ + v.index;
}

std::vector<Index> BipartiteView::neighborhood(const std::vector<Index>& right_positions) const {
    std::vector<Index> out;
    for (Index r : right_positions) {
        const auto& nb = adj_.at(r);
        out.insert(out.end(), nb.begin(), nb.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

BipartiteView bipartite_view(const SystemDigraph& digraph, const std::vector<Index>& right) {
    std::vector<char> seen(digraph.n(), 0);
    std::vector<std::vector<Index>> adj;
    adj.reserve(right.size());
    for (Index s : right) {
        if (s >= digraph.n()) {
            throw InputError("bipartite view: right vertex " + std::to_string(s + 1) + " is not a state");
        }
        if (seen[s]) {
            throw InputError("bipartite view: right vertex " + std::to_string(s + 1) + " repeated");
        }
        seen[s] = 1;
        std::vector<Index> nb;
        for (const auto& v : digraph.in_neighbors(s)) {
            nb.push_back(v.is_state() ? v.index : digraph.n() + v.index);
        }
        adj.push_back(std::move(nb));
    }
    return BipartiteView(digraph.n(), digraph.m(), right, std::move(adj));
}

Eigen::MatrixXd target_selector(const TargetSet& targets, Index n) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(targets.size()), static_cast<Eigen::Index>(n));
    for (Index l = 0; l < targets.size(); ++l) {
        const Index col = targets.indices()[l];
        if (col >= n) {
            throw InputError("target selector: index " + std::to_string(col + 1) + " out of range");
        }
        c(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(col)) = 1.0;
    }
    return c;
}

} // namespace symctrl
