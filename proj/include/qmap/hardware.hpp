#pragma once

/**
 * @file hardware.hpp
 * @brief Undirected hardware connectivity graphs.
 *
 * Nodes are 0-based in the API; graph files and topology labels use 1-based
 * ids. Besides adjacency, a graph carries its all-pairs hop distance matrix and
 * a lazily filled cache of minimal (chordless) paths between node pairs.
 */

#include "qmap/json_io.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qmap {

using Node = int;

struct Edge {
    Node v = 0;
    Node w = 0;

    [[nodiscard]] bool touches(Node x) const noexcept { return v == x || w == x; }
    [[nodiscard]] Edge reversed() const noexcept { return {w, v}; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

using Path = std::vector<Node>;

/// Minimal paths between an ordered node pair. @c truncated is set when the
/// enumeration hit the configured cap, in which case @c paths is incomplete.
struct PathSet {
    std::vector<Path> paths;
    bool truncated = false;
};

inline constexpr std::size_t kDefaultPathCap = 20000;

class HardwareGraph {
public:
    HardwareGraph() = default;

    /// @throws std::invalid_argument on self loops, duplicate or out-of-range edges,
    ///         or a disconnected graph.
    HardwareGraph(int num_nodes, std::vector<Edge> edges, std::size_t path_cap = kDefaultPathCap)
        : num_nodes_(checked_node_count(num_nodes)),
          adjacent_(static_cast<std::size_t>(num_nodes) * static_cast<std::size_t>(num_nodes), false),
          neighbors_(static_cast<std::size_t>(num_nodes)),
          path_cap_(path_cap) {
        for (auto e : edges) {
            if (e.v == e.w) {
                throw std::invalid_argument("hardware graph: self loop on node " + std::to_string(e.v + 1));
            }
            if (e.v < 0 || e.w < 0 || e.v >= num_nodes || e.w >= num_nodes) {
                throw std::invalid_argument("hardware graph: edge node out of range");
            }
            if (e.v > e.w) {
                e = e.reversed();
            }
            if (adjacent(e.v, e.w)) {
                throw std::invalid_argument("hardware graph: duplicate edge (" + std::to_string(e.v + 1) + "," +
                                            std::to_string(e.w + 1) + ")");
            }
            adjacent_[index(e.v, e.w)] = true;
            adjacent_[index(e.w, e.v)] = true;
            edges_.push_back(e);
        }
        std::sort(edges_.begin(), edges_.end(),
                  [](const Edge& a, const Edge& b) { return std::pair(a.v, a.w) < std::pair(b.v, b.w); });
        for (const auto& e : edges_) {
            neighbors_[static_cast<std::size_t>(e.v)].push_back(e.w);
            neighbors_[static_cast<std::size_t>(e.w)].push_back(e.v);
        }
        for (auto& n : neighbors_) {
            std::sort(n.begin(), n.end());
        }
        dist_ = compute_distances();
        cache_ = std::make_shared<PathCache>(static_cast<std::size_t>(num_nodes) * static_cast<std::size_t>(num_nodes));
    }

    [[nodiscard]] int num_nodes() const noexcept { return num_nodes_; }
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
    [[nodiscard]] const std::vector<Node>& neighbors(Node v) const { return neighbors_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] bool adjacent(Node v, Node w) const { return adjacent_[index(v, w)]; }
    [[nodiscard]] bool has_edge(Edge e) const {
        return e.v >= 0 && e.w >= 0 && e.v < num_nodes_ && e.w < num_nodes_ && adjacent(e.v, e.w);
    }
    [[nodiscard]] int distance(Node v, Node w) const { return dist_[index(v, w)]; }
    [[nodiscard]] std::size_t max_degree() const {
        std::size_t d = 0;
        for (const auto& n : neighbors_) {
            d = std::max(d, n.size());
        }
        return d;
    }
    [[nodiscard]] std::size_t path_cap() const noexcept { return path_cap_; }

    /**
     * All chordless simple paths from @p v to @p w, memoized per unordered pair.
     * The reverse orientation is derived from the canonical one. Safe to call
     * concurrently; returned references stay valid for the graph's lifetime.
     */
    [[nodiscard]] const PathSet& minimal_paths(Node v, Node w) const {
        if (v == w) {
            throw std::invalid_argument("minimal_paths: endpoints must differ");
        }
        std::lock_guard lock(cache_->mutex);
        auto& slot = cache_->slots[index(v, w)];
        if (!slot) {
            Node lo = std::min(v, w);
            Node hi = std::max(v, w);
            auto& canonical = cache_->slots[index(lo, hi)];
            if (!canonical) {
                canonical = std::make_unique<PathSet>(enumerate_chordless(lo, hi));
            }
            if (!slot) {
                auto reversed = std::make_unique<PathSet>(*canonical);
                for (auto& p : reversed->paths) {
                    std::reverse(p.begin(), p.end());
                }
                slot = std::move(reversed);
            }
        }
        return *slot;
    }

private:
    struct PathCache {
        explicit PathCache(std::size_t n) : slots(n) {}
        std::mutex mutex;
        std::vector<std::unique_ptr<PathSet>> slots;
    };

    static int checked_node_count(int n) {
        if (n < 1) {
            throw std::invalid_argument("hardware graph needs at least one node");
        }
        return n;
    }

    [[nodiscard]] std::size_t index(Node v, Node w) const {
        return static_cast<std::size_t>(v) * static_cast<std::size_t>(num_nodes_) + static_cast<std::size_t>(w);
    }

    [[nodiscard]] std::vector<int> compute_distances() const {
        const auto n = static_cast<std::size_t>(num_nodes_);
        std::vector<int> dist(n * n, -1);
        for (Node s = 0; s < num_nodes_; ++s) {
            std::deque<Node> queue{s};
            dist[index(s, s)] = 0;
            while (!queue.empty()) {
                Node u = queue.front();
                queue.pop_front();
                for (Node x : neighbors(u)) {
                    if (dist[index(s, x)] < 0) {
                        dist[index(s, x)] = dist[index(s, u)] + 1;
                        queue.push_back(x);
                    }
                }
            }
        }
        if (std::find(dist.begin(), dist.end(), -1) != dist.end()) {
            throw std::invalid_argument("hardware graph is disconnected");
        }
        return dist;
    }

    // DFS that only extends to nodes with no edge to any path node except the
    // current tail, so every complete path is chordless by construction.
    [[nodiscard]] PathSet enumerate_chordless(Node from, Node to) const {
        PathSet out;
        Path path{from};
        std::vector<char> on_path(static_cast<std::size_t>(num_nodes_), 0);
        on_path[static_cast<std::size_t>(from)] = 1;

        auto extendable = [&](Node x) {
            if (on_path[static_cast<std::size_t>(x)]) {
                return false;
            }
            for (std::size_t k = 0; k + 1 < path.size(); ++k) {
                if (adjacent(path[k], x)) {
                    return false;
                }
            }
            return true;
        };

        auto dfs = [&](auto&& self) -> void {
            if (out.truncated) {
                return;
            }
            Node tail = path.back();
            if (tail == to) {
                if (out.paths.size() >= path_cap_) {
                    out.truncated = true;
                    return;
                }
                out.paths.push_back(path);
                return;
            }
            for (Node x : neighbors(tail)) {
                if (!extendable(x)) {
                    continue;
                }
                path.push_back(x);
                on_path[static_cast<std::size_t>(x)] = 1;
                self(self);
                on_path[static_cast<std::size_t>(x)] = 0;
                path.pop_back();
            }
        };
        dfs(dfs);
        return out;
    }

    int num_nodes_ = 0;
    std::vector<Edge> edges_;
    std::vector<bool> adjacent_;
    std::vector<std::vector<Node>> neighbors_;
    std::vector<int> dist_;
    std::size_t path_cap_ = kDefaultPathCap;
    std::shared_ptr<PathCache> cache_;
};

// ---------------------------------------------------------------------------
// Standard topologies
// ---------------------------------------------------------------------------

enum class TopologyKind { Linear, Grid, Y };

struct TopologySpec {
    TopologyKind kind = TopologyKind::Linear;
    int rows = 1;  // grid only
    int cols = 1;  // grid only
    int size = 2;  // node count

    [[nodiscard]] std::string label() const {
        switch (kind) {
            case TopologyKind::Linear: return "linear:" + std::to_string(size);
            case TopologyKind::Grid: return "grid:" + std::to_string(rows) + "x" + std::to_string(cols);
            case TopologyKind::Y: return "y:" + std::to_string(size);
        }
        return {};
    }
};

/// Path graph 1-2-...-n.
inline HardwareGraph linear_topology(int n) {
    if (n < 2) {
        throw std::invalid_argument("linear topology needs at least 2 nodes");
    }
    std::vector<Edge> edges;
    for (Node v = 0; v + 1 < n; ++v) {
        edges.push_back({v, v + 1});
    }
    return HardwareGraph(n, std::move(edges));
}

/// rows x cols lattice, node (r, c) has 0-based id r * cols + c.
inline HardwareGraph grid_topology(int rows, int cols) {
    if (rows < 1 || cols < 1 || rows * cols < 2) {
        throw std::invalid_argument("grid topology needs rows, cols >= 1 and at least 2 nodes");
    }
    std::vector<Edge> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            Node v = r * cols + c;
            if (c + 1 < cols) {
                edges.push_back({v, v + 1});
            }
            if (r + 1 < rows) {
                edges.push_back({v, v + cols});
            }
        }
    }
    return HardwareGraph(rows * cols, std::move(edges));
}

/// Node 1 is the center; nodes 2..n are dealt round-robin onto three arms,
/// each arm growing outward from the center. y:4 is the 3-star.
inline HardwareGraph y_topology(int n) {
    if (n < 4) {
        throw std::invalid_argument("y topology needs at least 4 nodes");
    }
    std::vector<Edge> edges;
    std::array<Node, 3> arm_tip{0, 0, 0};
    for (Node v = 1; v < n; ++v) {
        auto arm = static_cast<std::size_t>((v - 1) % 3);
        edges.push_back({arm_tip[arm], v});
        arm_tip[arm] = v;
    }
    return HardwareGraph(n, std::move(edges));
}

/// Parses "linear:N", "grid:RxC" or "y:N".
inline TopologySpec parse_topology(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("topology must look like linear:4, grid:2x3 or y:6");
    }
    auto kind = text.substr(0, colon);
    auto arg = std::string(text.substr(colon + 1));
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) {
            throw std::invalid_argument("topology: bad size \"" + s + "\"");
        }
        return value;
    };
    TopologySpec spec;
    if (kind == "linear") {
        spec.kind = TopologyKind::Linear;
        spec.size = to_int(arg);
    } else if (kind == "y") {
        spec.kind = TopologyKind::Y;
        spec.size = to_int(arg);
    } else if (kind == "grid") {
        auto x = arg.find('x');
        if (x == std::string::npos) {
            throw std::invalid_argument("grid topology must be grid:RxC");
        }
        spec.kind = TopologyKind::Grid;
        spec.rows = to_int(arg.substr(0, x));
        spec.cols = to_int(arg.substr(x + 1));
        spec.size = spec.rows * spec.cols;
    } else {
        throw std::invalid_argument("unknown topology \"" + std::string(kind) + "\"");
    }
    return spec;
}

inline HardwareGraph build_topology(const TopologySpec& spec) {
    switch (spec.kind) {
        case TopologyKind::Linear: return linear_topology(spec.size);
        case TopologyKind::Grid: return grid_topology(spec.rows, spec.cols);
        case TopologyKind::Y: return y_topology(spec.size);
    }
    throw std::invalid_argument("unknown topology kind");
}

inline HardwareGraph build_topology(std::string_view text) { return build_topology(parse_topology(text)); }

/// Hop-count distance matrix, row-major |V| x |V|.
inline std::vector<std::vector<int>> all_pairs_distance(const HardwareGraph& graph) {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(graph.num_nodes()));
    for (Node v = 0; v < graph.num_nodes(); ++v) {
        for (Node w = 0; w < graph.num_nodes(); ++w) {
            out[static_cast<std::size_t>(v)].push_back(graph.distance(v, w));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Graph file format
//
//   { "num_nodes": 4, "edges": [[1, 2], [2, 3], [3, 4]] }
// ---------------------------------------------------------------------------

inline HardwareGraph parse_graph(std::string_view text) {
    detail::JsonDocument doc(text, "graph");
    const auto& root = doc.root();
    doc.reject_unknown_keys(root, {"num_nodes", "edges"}, {});
    auto n = doc.integer(doc.require(root, "num_nodes", {}), "num_nodes", {});
    if (n < 1 || n > 4096) {
        doc.fail("num_nodes out of range", {});
    }
    const auto& list = doc.array(root, "edges", {});
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < list.size(); ++k) {
        auto at = doc.element_position("edges", k);
        auto [v, w] = doc.integer_pair(list[k], "edge", at);
        if (v < 1 || w < 1 || v > n || w > n) {
            doc.fail("edge node out of range", at);
        }
        if (v == w) {
            doc.fail("self loop", at);
        }
        edges.push_back({static_cast<Node>(v - 1), static_cast<Node>(w - 1)});
    }
    try {
        return HardwareGraph(static_cast<int>(n), std::move(edges));
    } catch (const std::invalid_argument& e) {
        doc.fail(e.what(), {});
    }
}

inline std::string write_graph(const HardwareGraph& graph) {
    std::string out = "{\n  \"num_nodes\": " + std::to_string(graph.num_nodes()) + ",\n  \"edges\": [";
    const auto& edges = graph.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        out += (i == 0 ? "" : ", ");
        out += "[" + std::to_string(edges[i].v + 1) + ", " + std::to_string(edges[i].w + 1) + "]";
    }
    out += "]\n}\n";
    return out;
}

}  // namespace qmap
