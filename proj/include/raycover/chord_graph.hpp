#pragma once

// Combinatorial circle graphs (chord diagrams), their intersection graphs,
// exact Hamiltonian path/cycle solvers, and the cycle-to-path pendant gadget.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace raycover {

/// A circle graph given combinatorially: 2n chord labels read clockwise
/// around the circle, each label in [1..n] appearing exactly twice.
struct ChordDiagram {
    explicit ChordDiagram(std::vector<int> order) : endpoint_order(std::move(order)) {
        if (endpoint_order.size() % 2 != 0)
            throw std::invalid_argument("ChordDiagram: odd endpoint count");
        n = static_cast<int>(endpoint_order.size() / 2);
        std::vector<int> count(n + 1, 0);
        for (int label : endpoint_order) {
            if (label < 1 || label > n)
                throw std::invalid_argument("ChordDiagram: label out of range");
            ++count[label];
        }
        for (int label = 1; label <= n; ++label)
            if (count[label] != 2)
                throw std::invalid_argument("ChordDiagram: label must appear exactly twice");
    }

    /// Positions (0-based) of the two endpoints of a chord, in circle order.
    std::pair<int, int> endpoints(int label) const {
        int first = -1;
        for (int i = 0; i < 2 * n; ++i) {
            if (endpoint_order[i] == label) {
                if (first < 0)
                    first = i;
                else
                    return {first, i};
            }
        }
        throw std::invalid_argument("ChordDiagram: unknown chord label");
    }

    int n = 0;
    std::vector<int> endpoint_order;
};

/// Simple undirected graph on vertices [1..vertex_count].
struct Graph {
    explicit Graph(int vertex_count_) : vertex_count(vertex_count_) {
        if (vertex_count < 0) throw std::invalid_argument("Graph: negative vertex count");
    }

    void add_edge(int u, int v) {
        if (u == v) throw std::invalid_argument("Graph: self loop");
        if (u < 1 || v < 1 || u > vertex_count || v > vertex_count)
            throw std::invalid_argument("Graph: vertex out of range");
        edges.insert(std::minmax(u, v));
    }

    bool adjacent(int u, int v) const {
        if (u == v) return false;
        return edges.count(std::minmax(u, v)) > 0;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.vertex_count == b.vertex_count && a.edges == b.edges;
    }

    int vertex_count;
    std::set<std::pair<int, int>> edges;
};

/// Edge {u,v} iff the two chords interleave around the circle (u v u v).
inline Graph intersection_graph(const ChordDiagram& d) {
    Graph g(d.n);
    for (int u = 1; u <= d.n; ++u) {
        const auto [u1, u2] = d.endpoints(u);
        for (int v = u + 1; v <= d.n; ++v) {
            const auto [v1, v2] = d.endpoints(v);
            const bool in1 = u1 < v1 && v1 < u2;
            const bool in2 = u1 < v2 && v2 < u2;
            if (in1 != in2) g.add_edge(u, v);
        }
    }
    return g;
}

namespace detail {

constexpr int kHamiltonianVertexCap = 22;  // bitmask DP memory guard

/// Suffix feasibility table for the bitmask DP: can[mask][last] == true iff a
/// path covering exactly `mask` and ending at `last` extends to all vertices.
/// `accept(v)` decides which full-path endpoints are admissible.
template <typename Accept>
std::vector<std::vector<char>> ham_suffix_table(const Graph& g, Accept accept) {
    const int n = g.vertex_count;
    const std::uint32_t full = (1u << n) - 1;
    std::vector<std::vector<char>> can(full + 1, std::vector<char>(n, 0));
    // Masks in decreasing popcount order: plain decreasing order works since
    // mask|bit > mask.
    for (std::uint32_t mask = full; mask >= 1; --mask) {
        for (int last = 0; last < n; ++last) {
            if (!(mask & (1u << last))) continue;
            if (mask == full) {
                can[mask][last] = accept(last + 1) ? 1 : 0;
                continue;
            }
            for (int next = 0; next < n && !can[mask][last]; ++next) {
                if (mask & (1u << next)) continue;
                if (g.adjacent(last + 1, next + 1) && can[mask | (1u << next)][next])
                    can[mask][last] = 1;
            }
        }
        if (mask == 1) break;
    }
    return can;
}

/// Lexicographically smallest admissible vertex sequence, or nullopt.
/// `start_ok(v)` filters the first vertex.
template <typename StartOk>
std::optional<std::vector<int>> ham_reconstruct(const Graph& g,
                                                const std::vector<std::vector<char>>& can,
                                                StartOk start_ok) {
    const int n = g.vertex_count;
    const std::uint32_t full = (1u << n) - 1;
    for (int s = 0; s < n; ++s) {
        if (!start_ok(s + 1) || !can[1u << s][s]) continue;
        std::vector<int> path{s + 1};
        std::uint32_t mask = 1u << s;
        int last = s;
        while (mask != full) {
            bool advanced = false;
            for (int next = 0; next < n; ++next) {
                if (mask & (1u << next)) continue;
                if (g.adjacent(last + 1, next + 1) && can[mask | (1u << next)][next]) {
                    path.push_back(next + 1);
                    mask |= 1u << next;
                    last = next;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) throw std::logic_error("ham_reconstruct: table inconsistent");
        }
        return path;
    }
    return std::nullopt;
}

}  // namespace detail

/// Exact Hamiltonian path witness (lexicographically smallest), or nullopt.
inline std::optional<std::vector<int>> hamiltonian_path(const Graph& g) {
    const int n = g.vertex_count;
    if (n < 1) throw std::invalid_argument("hamiltonian_path: empty graph");
    if (n > detail::kHamiltonianVertexCap)
        throw std::invalid_argument("hamiltonian_path: graph too large for subset DP");
    if (n == 1) return std::vector<int>{1};
    auto can = detail::ham_suffix_table(g, [](int) { return true; });
    return detail::ham_reconstruct(g, can, [](int) { return true; });
}

/// Exact Hamiltonian cycle witness as a vertex sequence (closed implicitly),
/// or nullopt.  Degenerate smalls: a single vertex has no cycle; two adjacent
/// vertices count as the closed walk 1-2-1, which is what the pendant gadget
/// equivalence needs.
inline std::optional<std::vector<int>> hamiltonian_cycle(const Graph& g) {
    const int n = g.vertex_count;
    if (n < 1) throw std::invalid_argument("hamiltonian_cycle: empty graph");
    if (n > detail::kHamiltonianVertexCap)
        throw std::invalid_argument("hamiltonian_cycle: graph too large for subset DP");
    if (n == 1) return std::nullopt;
    if (n == 2) {
        if (g.adjacent(1, 2)) return std::vector<int>{1, 2};
        return std::nullopt;
    }
    // Any Hamiltonian cycle passes vertex 1: search paths starting at 1 whose
    // final vertex is adjacent to 1.
    auto can = detail::ham_suffix_table(g, [&](int v) { return g.adjacent(v, 1); });
    return detail::ham_reconstruct(g, can, [](int v) { return v == 1; });
}

/// Permutation-enumeration oracles used to validate the DP solvers.
inline bool hamiltonian_path_naive(const Graph& g) {
    const int n = g.vertex_count;
    if (n == 1) return true;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        bool ok = true;
        for (int i = 0; i + 1 < n && ok; ++i) ok = g.adjacent(perm[i], perm[i + 1]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

inline bool hamiltonian_cycle_naive(const Graph& g) {
    const int n = g.vertex_count;
    if (n == 1) return false;
    if (n == 2) return g.adjacent(1, 2);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        bool ok = g.adjacent(perm[n - 1], perm[0]);
        for (int i = 0; i + 1 < n && ok; ++i) ok = g.adjacent(perm[i], perm[i + 1]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Replaces chord x by two parallel chords x1 (label x) and x2 (label n+1),
/// each crossing exactly what x crossed and not each other, and attaches
/// pendant chords p1 (label n+2, crossing only x1) and p2 (label n+3,
/// crossing only x2).  The output graph has a Hamiltonian path iff the input
/// graph has a Hamiltonian cycle.
inline ChordDiagram cycle_to_path_gadget(const ChordDiagram& d, int x) {
    if (x < 1 || x > d.n) throw std::invalid_argument("cycle_to_path_gadget: no such chord");
    const int x1 = x;
    const int x2 = d.n + 1;
    const int p1 = d.n + 2;
    const int p2 = d.n + 3;
    const auto [e1, e2] = d.endpoints(x);

    // Nested placement: x1 just outside x's endpoints, x2 just inside, so the
    // two copies cross everything x crossed but not each other.
    std::vector<int> order;
    order.reserve(2 * d.n + 6);
    for (int i = 0; i < 2 * d.n; ++i) {
        if (i == e1) {
            order.push_back(x1);
            order.push_back(x2);
        } else if (i == e2) {
            order.push_back(x2);
            order.push_back(x1);
        } else {
            order.push_back(d.endpoint_order[i]);
        }
    }

    // Each pendant straddles the first endpoint of its partner chord.
    auto straddle = [&order](int partner, int pendant) {
        auto it = std::find(order.begin(), order.end(), partner);
        it = order.insert(it, pendant);     // before
        order.insert(it + 2, pendant);      // after
    };
    straddle(x1, p1);
    straddle(x2, p2);
    return ChordDiagram(std::move(order));
}

/// All chord diagrams with n chords, one per perfect matching of the 2n
/// endpoint positions (canonical labeling: chords numbered by first
/// endpoint).  This is "exhaustive up to relabeling".
inline std::vector<ChordDiagram> enumerate_diagrams(int n) {
    std::vector<ChordDiagram> out;
    std::vector<int> order(2 * n, 0);
    int next_label = 1;
    auto rec = [&](auto&& self) -> void {
        int first = -1;
        for (int i = 0; i < 2 * n; ++i)
            if (order[i] == 0) {
                first = i;
                break;
            }
        if (first < 0) {
            out.push_back(ChordDiagram(order));
            return;
        }
        for (int j = first + 1; j < 2 * n; ++j) {
            if (order[j] != 0) continue;
            order[first] = order[j] = next_label++;
            self(self);
            order[first] = order[j] = 0;
            --next_label;
        }
    };
    rec(rec);
    return out;
}

}  // namespace raycover
