#pragma once

// Slow, direct reference computations used to check the library. Nothing here
// calls the code under test beyond reading plain data (circuits, graphs,
// states).

#include "qmap/qmap.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <vector>

namespace qmap::ref {

/// i precedes j directly when j is the next gate after i on a shared qubit.
inline bool shares_qubit(const GateSpec& a, const GateSpec& b) {
    return a.acts_on(b.p) || a.acts_on(b.q);
}

/// Full precedence relation (transitive closure), by repeated relaxation.
inline std::vector<std::vector<bool>> precedes(const Circuit& c) {
    const auto n = c.size();
    std::vector<std::vector<bool>> before(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (shares_qubit(c[i], c[j])) before[i][j] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (before[i][k] && before[k][j]) before[i][j] = true;
    return before;
}

/// Longest duration-weighted chain starting with gate i, over every chain of
/// the precedence order (exponential; small circuits only).
inline Time tail_time(const Circuit& c, std::size_t i) {
    auto before = precedes(c);
    std::function<Time(std::size_t)> longest = [&](std::size_t a) {
        Time best = 0;
        for (std::size_t b = 0; b < c.size(); ++b)
            if (before[a][b]) best = std::max(best, longest(b));
        return c[a].duration + best;
    };
    return longest(i);
}

/// Makespan with all-to-all connectivity: ASAP simulation in gate order.
inline Time unconstrained_makespan(const Circuit& c) {
    std::vector<Time> free_at(static_cast<std::size_t>(c.num_qubits()), 0);
    Time end = 0;
    for (const auto& g : c) {
        auto& a = free_at[static_cast<std::size_t>(g.p)];
        auto& b = free_at[static_cast<std::size_t>(g.q)];
        a = b = std::max(a, b) + g.duration;
        end = std::max(end, a);
    }
    return end;
}

/// Layer: length of the longest chain of gates ending just before i.
inline std::size_t layer(const Circuit& c, std::size_t i) {
    auto before = precedes(c);
    std::function<std::size_t(std::size_t)> depth = [&](std::size_t b) {
        std::size_t best = 0;
        for (std::size_t a = 0; a < b; ++a)
            if (before[a][b]) best = std::max(best, depth(a) + 1);
        return best;
    };
    return depth(i);
}

// -- paths -------------------------------------------------------------------

inline std::vector<Path> all_simple_paths(const HardwareGraph& g, Node from, Node to) {
    std::vector<Path> out;
    Path path{from};
    std::vector<bool> used(static_cast<std::size_t>(g.num_nodes()), false);
    used[static_cast<std::size_t>(from)] = true;
    std::function<void()> dfs = [&] {
        Node tail = path.back();
        if (tail == to) {
            out.push_back(path);
            return;
        }
        for (Node v = 0; v < g.num_nodes(); ++v) {
            if (!used[static_cast<std::size_t>(v)] && g.adjacent(tail, v)) {
                used[static_cast<std::size_t>(v)] = true;
                path.push_back(v);
                dfs();
                path.pop_back();
                used[static_cast<std::size_t>(v)] = false;
            }
        }
    };
    dfs();
    return out;
}

inline bool is_chordless(const HardwareGraph& g, const Path& p) {
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 2; b < p.size(); ++b)
            if (g.adjacent(p[a], p[b])) return false;
    return true;
}

inline std::set<Path> chordless_paths(const HardwareGraph& g, Node from, Node to) {
    std::set<Path> out;
    for (auto& p : all_simple_paths(g, from, to))
        if (is_chordless(g, p)) out.insert(p);
    return out;
}

// -- bounds ------------------------------------------------------------------

/// Gates on q in circuit order.
inline std::vector<std::size_t> gates_on(const Circuit& c, Qubit q) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i].acts_on(q)) out.push_back(i);
    return out;
}

inline Time qubit_depth(const StateView& s, Qubit q) {
    Node v = s.assignment[static_cast<std::size_t>(q)];
    return v < 0 ? 0 : s.depth[static_cast<std::size_t>(v)];
}

inline Time qubit_bound(const Circuit& c, const StateView& s) {
    Time best = 0;
    for (Qubit q = 0; q < c.num_qubits(); ++q) {
        auto seq = gates_on(c, q);
        std::size_t k = s.progress[static_cast<std::size_t>(q)];
        Time v = qubit_depth(s, q) + (k < seq.size() ? tail_time(c, seq[k]) : 0);
        best = std::max(best, v);
    }
    return best;
}

/// Four-family expression for gate i moving p from the front and q from the
/// back of path, meeting on the edge (j, j+1), 1-based positions.
inline Time h_n(const Circuit& c, const StateView& s, std::size_t i, const Path& path, std::size_t j, Time ds) {
    const auto& g = c[i];
    auto lam_before = [&](Qubit q) {
        Time sum = 0;
        auto seq = gates_on(c, q);
        for (std::size_t k = s.progress[static_cast<std::size_t>(q)]; k < seq.size() && seq[k] != i; ++k)
            sum += c[seq[k]].duration;
        return sum;
    };
    const auto n = static_cast<Time>(path.size());
    const auto jj = static_cast<Time>(j);
    Time h = std::max(qubit_depth(s, g.p) + lam_before(g.p) + (jj - 1) * ds,
                      qubit_depth(s, g.q) + lam_before(g.q) + (n - jj - 1) * ds);
    auto D = [&](std::size_t k) { return s.depth[static_cast<std::size_t>(path[k - 1])]; };
    for (std::size_t k = 2; k <= j; ++k) h = std::max(h, D(k) + (jj + 1 - static_cast<Time>(k)) * ds);
    for (std::size_t k = j + 1; k + 1 <= path.size(); ++k) h = std::max(h, D(k) + (static_cast<Time>(k) - jj) * ds);
    return h;
}

inline Time gate_bound(const Circuit& c, const HardwareGraph& graph, const StateView& s, Time ds) {
    Time best = 0;
    for (Qubit p = 0; p < c.num_qubits(); ++p) {
        for (Qubit q = p + 1; q < c.num_qubits(); ++q) {
            Node vp = s.assignment[static_cast<std::size_t>(p)];
            Node vq = s.assignment[static_cast<std::size_t>(q)];
            if (vp < 0 || vq < 0) continue;
            // first unscheduled gate acting on both p and q
            std::optional<std::size_t> first;
            auto seq = gates_on(c, p);
            for (std::size_t k = s.progress[static_cast<std::size_t>(p)]; k < seq.size(); ++k) {
                if (c[seq[k]].acts_on(q)) {
                    first = seq[k];
                    break;
                }
            }
            if (!first) continue;
            // orient the path from the gate's first qubit to its second
            Node from = c[*first].p == p ? vp : vq;
            Node to = c[*first].p == p ? vq : vp;
            Time earliest = std::numeric_limits<Time>::max();
            for (const auto& path : chordless_paths(graph, from, to))
                for (std::size_t j = 1; j + 1 <= path.size(); ++j)
                    earliest = std::min(earliest, h_n(c, s, *first, path, j, ds));
            best = std::max(best, tail_time(c, *first) + earliest);
        }
    }
    return best;
}

inline int bfs_distance(const HardwareGraph& g, Node from, Node to) {
    std::vector<int> dist(static_cast<std::size_t>(g.num_nodes()), -1);
    std::vector<Node> queue{from};
    dist[static_cast<std::size_t>(from)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Node v = queue[head];
        for (Node w = 0; w < g.num_nodes(); ++w) {
            if (g.adjacent(v, w) && dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist[static_cast<std::size_t>(to)];
}

inline std::int64_t swap_bound(const Circuit& c, const HardwareGraph& graph, const StateView& s) {
    std::int64_t extra = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& g = c[i];
        auto seq = gates_on(c, g.p);
        auto pos = static_cast<std::size_t>(std::find(seq.begin(), seq.end(), i) - seq.begin());
        if (pos < s.progress[static_cast<std::size_t>(g.p)]) continue;  // already scheduled
        Node a = s.assignment[static_cast<std::size_t>(g.p)];
        Node b = s.assignment[static_cast<std::size_t>(g.q)];
        if (a < 0 || b < 0) continue;
        extra = std::max<std::int64_t>(extra, bfs_distance(graph, a, b) - 1);
    }
    return static_cast<std::int64_t>(s.swaps) + extra;
}

/// Deviation mean in percent, straight from the definition.
inline double rmd_percent(const std::vector<std::pair<double, double>>& layered_nonlayered) {
    if (layered_nonlayered.empty()) return 0.0;
    double sum = 0.0;
    for (auto [l, nl] : layered_nonlayered) sum += (l - nl) / l;
    return 100.0 * sum / static_cast<double>(layered_nonlayered.size());
}

}  // namespace qmap::ref
