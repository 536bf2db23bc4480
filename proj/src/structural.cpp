#include "symctrl/structural.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "symctrl/errors.hpp"

namespace symctrl {

namespace {

constexpr Index kNil = std::numeric_limits<Index>::max();
constexpr Index kInf = std::numeric_limits<Index>::max();

// Hopcroft-Karp over a raw adjacency list right -> left. Phases search from
// the free right vertices; BFS builds layers, DFS augments along shortest
// paths only.
class HopcroftKarp {
public:
    HopcroftKarp(const std::vector<std::vector<Index>>& adj, Index n_left)
        : adj_(adj), match_right_(adj.size(), kNil), match_left_(n_left, kNil), dist_(adj.size(), kInf),
          cursor_(adj.size(), 0) {}

    Index run() {
        Index size = 0;
        while (layer()) {
            std::fill(cursor_.begin(), cursor_.end(), 0);
            for (Index r = 0; r < adj_.size(); ++r) {
                if (match_right_[r] == kNil && augment(r)) {
                    ++size;
                }
            }
        }
        return size;
    }

    const std::vector<Index>& match_right() const { return match_right_; }
    const std::vector<Index>& match_left() const { return match_left_; }

private:
    bool layer() {
        std::deque<Index> queue;
        for (Index r = 0; r < adj_.size(); ++r) {
            if (match_right_[r] == kNil) {
                dist_[r] = 0;
                queue.push_back(r);
            } else {
                dist_[r] = kInf;
            }
        }
        Index limit = kInf;
        while (!queue.empty()) {
            const Index r = queue.front();
            queue.pop_front();
            if (dist_[r] >= limit) {
                continue;
            }
            for (Index l : adj_[r]) {
                const Index r2 = match_left_[l];
                if (r2 == kNil) {
                    limit = std::min(limit, dist_[r] + 1);
                } else if (dist_[r2] == kInf) {
                    dist_[r2] = dist_[r] + 1;
                    queue.push_back(r2);
                }
            }
        }
        limit_ = limit;
        return limit != kInf;
    }

    bool augment(Index r) {
        for (Index& k = cursor_[r]; k < adj_[r].size(); ++k) {
            const Index l = adj_[r][k];
            const Index r2 = match_left_[l];
            const bool free_end = r2 == kNil && dist_[r] + 1 == limit_;
            if (free_end || (r2 != kNil && dist_[r2] == dist_[r] + 1 && augment(r2))) {
                match_left_[l] = r;
                match_right_[r] = l;
                ++k;
                return true;
            }
        }
        dist_[r] = kInf;
        return false;
    }

    const std::vector<std::vector<Index>>& adj_;
    std::vector<Index> match_right_;
    std::vector<Index> match_left_;
    std::vector<Index> dist_;
    std::vector<Index> cursor_;
    Index limit_ = kInf;
};

// Right positions and left ids reachable from `root` along alternating paths
// (any edge right -> left, matched edge left -> right).
std::pair<std::vector<Index>, std::vector<Index>> konig_set(const std::vector<std::vector<Index>>& adj,
                                                            const std::vector<Index>& match_left, Index n_left,
                                                            Index root) {
    std::vector<char> seen_r(adj.size(), 0);
    std::vector<char> seen_l(n_left, 0);
    std::deque<Index> queue{root};
    seen_r[root] = 1;
    while (!queue.empty()) {
        const Index r = queue.front();
        queue.pop_front();
        for (Index l : adj[r]) {
            if (seen_l[l]) {
                continue;
            }
            seen_l[l] = 1;
            const Index r2 = match_left[l];
            if (r2 != kNil && !seen_r[r2]) {
                seen_r[r2] = 1;
                queue.push_back(r2);
            }
        }
    }
    std::vector<Index> rs;
    std::vector<Index> ls;
    for (Index r = 0; r < adj.size(); ++r) {
        if (seen_r[r]) {
            rs.push_back(r);
        }
    }
    for (Index l = 0; l < n_left; ++l) {
        if (seen_l[l]) {
            ls.push_back(l);
        }
    }
    return {rs, ls};
}

std::vector<std::vector<Index>> view_adjacency(const BipartiteView& view) {
    std::vector<std::vector<Index>> adj(view.right_size());
    for (Index r = 0; r < view.right_size(); ++r) {
        adj[r] = view.neighbors(r);
    }
    return adj;
}

Matching to_matching(const BipartiteView& view, const std::vector<Index>& match_right) {
    Matching m;
    for (Index r = 0; r < match_right.size(); ++r) {
        if (match_right[r] == kNil) {
            m.right_unmatched.push_back(view.right()[r]);
        } else {
            m.pairs.push_back({view.left_vertex(match_right[r]), view.right()[r]});
        }
    }
    std::sort(m.pairs.begin(), m.pairs.end(),
              [](const MatchedPair& a, const MatchedPair& b) { return a.right < b.right; });
    std::sort(m.right_unmatched.begin(), m.right_unmatched.end());
    return m;
}

} // namespace

std::vector<Index> Reachability::reachable_states() const {
    std::vector<Index> out;
    for (Index i = 0; i < reached.size(); ++i) {
        if (reached[i]) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<Index> Reachability::unreachable_states() const {
    std::vector<Index> out;
    for (Index i = 0; i < reached.size(); ++i) {
        if (!reached[i]) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<Vertex> Reachability::path_to(Index state) const {
    if (state >= reached.size() || !reached[state]) {
        return {};
    }
    std::vector<Vertex> path{Vertex::state(state)};
    while (path.back().is_state()) {
        const auto& p = parent[path.back().index];
        path.push_back(*p);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

Reachability input_reachability(const SystemDigraph& digraph) {
    Reachability r;
    r.reached.assign(digraph.n(), false);
    r.parent.assign(digraph.n(), std::nullopt);
    std::deque<Index> queue;
    for (Index u = 0; u < digraph.m(); ++u) {
        for (Index x : digraph.out_neighbors(Vertex::input(u))) {
            if (!r.reached[x]) {
                r.reached[x] = true;
                r.parent[x] = Vertex::input(u);
                queue.push_back(x);
            }
        }
    }
    while (!queue.empty()) {
        const Index x = queue.front();
        queue.pop_front();
        for (Index y : digraph.out_neighbors(Vertex::state(x))) {
            if (!r.reached[y]) {
                r.reached[y] = true;
                r.parent[y] = Vertex::state(x);
                queue.push_back(y);
            }
        }
    }
    return r;
}

std::vector<Index> input_reachable(const SystemDigraph& digraph) {
    return input_reachability(digraph).reachable_states();
}

Matching max_matching(const BipartiteView& view) {
    const auto adj = view_adjacency(view);
    HopcroftKarp hk(adj, view.left_size());
    hk.run();
    return to_matching(view, hk.match_right());
}

bool verifies_violation(const BipartiteView& view, const std::vector<Index>& states) {
    std::vector<Index> positions;
    for (Index s : states) {
        const auto it = std::find(view.right().begin(), view.right().end(), s);
        if (it == view.right().end()) {
            return false;
        }
        positions.push_back(static_cast<Index>(it - view.right().begin()));
    }
    return view.neighborhood(positions).size() < positions.size();
}

HallCertificate hall_check(const BipartiteView& view) {
    const auto adj = view_adjacency(view);
    HopcroftKarp hk(adj, view.left_size());
    hk.run();
    HallCertificate cert;
    cert.matching = to_matching(view, hk.match_right());
    if (cert.matching.right_unmatched.empty()) {
        cert.satisfied = true;
        cert.saturating_matching = cert.matching;
        return cert;
    }

    // Root at the right-unmatched vertex with the smallest state index.
    Index root = kNil;
    for (Index r = 0; r < adj.size(); ++r) {
        if (hk.match_right()[r] == kNil && (root == kNil || view.right()[r] < view.right()[root])) {
            root = r;
        }
    }
    auto [rs, ls] = konig_set(adj, hk.match_left(), view.left_size(), root);
    std::vector<Index> states;
    for (Index r : rs) {
        states.push_back(view.right()[r]);
    }
    std::sort(states.begin(), states.end());
    if (!verifies_violation(view, states)) {
        throw NumericError("internal error: Konig set failed to verify as a Hall violator");
    }
    cert.satisfied = false;
    cert.violating_set = std::move(states);
    for (Index l : ls) {
        cert.violating_neighbors.push_back(view.left_vertex(l));
    }
    return cert;
}

Index term_rank(const StructuredPattern& pattern, TermRankScope scope) {
    const SystemDigraph digraph(scope == TermRankScope::a_only ? pattern.without_inputs() : pattern);
    std::vector<Index> rows(pattern.n());
    for (Index i = 0; i < rows.size(); ++i) {
        rows[i] = i;
    }
    return max_matching(bipartite_view(digraph, rows)).size();
}

std::vector<Index> term_rank_rows(const StructuredPattern& pattern) {
    const SystemDigraph digraph(pattern.without_inputs());
    std::vector<Index> rows(pattern.n());
    for (Index i = 0; i < rows.size(); ++i) {
        rows[i] = i;
    }
    const auto m = max_matching(bipartite_view(digraph, rows));
    std::vector<Index> out;
    for (const auto& p : m.pairs) {
        out.push_back(p.right);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Index> CycleCover::covered() const {
    std::vector<Index> out;
    for (const auto& c : cycles) {
        out.insert(out.end(), c.begin(), c.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

Index CycleCover::odd_cycle_count() const {
    return static_cast<Index>(std::count_if(cycles.begin(), cycles.end(),
                                            [](const auto& c) { return c.size() >= 3 && c.size() % 2 == 1; }));
}

CycleCover cycle_cover(const StructuredPattern& pattern, const std::vector<Index>& states,
                       bool split_into_two_cycles) {
    std::vector<Index> s = states;
    std::sort(s.begin(), s.end());
    for (Index k = 0; k < s.size(); ++k) {
        if (s[k] >= pattern.n()) {
            throw InputError("cycle_cover: state " + std::to_string(s[k] + 1) + " out of range");
        }
        if (k > 0 && s[k] == s[k - 1]) {
            throw InputError("cycle_cover: state " + std::to_string(s[k] + 1) + " repeated");
        }
    }

    // Rows of A[S, S] against its columns, both by position in s.
    std::vector<std::vector<Index>> adj(s.size());
    for (Index p = 0; p < s.size(); ++p) {
        for (Index q = 0; q < s.size(); ++q) {
            if (pattern.a_star(s[p], s[q])) {
                adj[p].push_back(q);
            }
        }
    }
    HopcroftKarp hk(adj, s.size());
    if (hk.run() != s.size()) {
        Index root = 0;
        while (hk.match_right()[root] != kNil) {
            ++root;
        }
        auto [rs, ls] = konig_set(adj, hk.match_left(), s.size(), root);
        std::vector<Index> violating;
        for (Index r : rs) {
            violating.push_back(s[r]);
        }
        throw NoCycleCoverError("cycle_cover: restricted pattern has no perfect matching", violating);
    }

    // Row p matched to column q is the edge x_{s[q]} -> x_{s[p]}; follow it forward.
    std::vector<Index> successor(s.size());
    for (Index p = 0; p < s.size(); ++p) {
        successor[hk.match_right()[p]] = p;
    }

    CycleCover cover;
    std::vector<char> visited(s.size(), 0);
    for (Index start = 0; start < s.size(); ++start) {
        if (visited[start]) {
            continue;
        }
        std::vector<Index> cycle;
        for (Index v = start; !visited[v]; v = successor[v]) {
            visited[v] = 1;
            cycle.push_back(s[v]);
        }
        const bool splittable = split_into_two_cycles && pattern.is_symmetric() && cycle.size() >= 3;
        if (!splittable) {
            cover.cycles.push_back(std::move(cycle));
            continue;
        }
        if (cycle.size() % 2 == 1) {
            // Odd: park a self-loop vertex (if any) in the unpaired last slot.
            for (Index t = 0; t < cycle.size(); ++t) {
                if (pattern.a_star(cycle[t], cycle[t])) {
                    std::rotate(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(t + 1), cycle.end());
                    break;
                }
            }
            if (!pattern.a_star(cycle.back(), cycle.back())) {
                cover.cycles.push_back(std::move(cycle));
                continue;
            }
        }
        for (Index t = 0; t + 1 < cycle.size(); t += 2) {
            cover.cycles.push_back({cycle[t], cycle[t + 1]});
        }
        if (cycle.size() % 2 == 1) {
            cover.cycles.push_back({cycle.back()});
        }
    }
    return cover;
}

bool is_valid_cycle_cover(const StructuredPattern& pattern, const std::vector<Index>& states,
                          const CycleCover& cover) {
    std::vector<Index> expected = states;
    std::sort(expected.begin(), expected.end());
    const auto covered = cover.covered();
    if (covered != expected || std::adjacent_find(covered.begin(), covered.end()) != covered.end()) {
        return false;
    }
    for (const auto& c : cover.cycles) {
        if (c.empty()) {
            return false;
        }
        for (Index t = 0; t < c.size(); ++t) {
            const Index from = c[t];
            const Index to = c[(t + 1) % c.size()];
            // Edge from -> to is the star [A]_{to, from}.
            if (!pattern.a_star(to, from)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace symctrl
