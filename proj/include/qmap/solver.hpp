#pragma once

/**
 * @file solver.hpp
 * @brief Branch-and-bound search for qubit mapping and routing.
 *
 * Each search node places one more operation (a circuit gate or a SWAP) on a
 * hardware edge, as early as the edge's nodes allow. Qubits are placed lazily:
 * a virtual qubit gets a physical node the first time a gate touches it.
 *
 * Nodes sharing a state (assignment + scheduled gates) are kept on a Pareto
 * front of per-node depth vectors (and SWAP counts when those are part of the
 * objective); dominated nodes are discarded. Open nodes are expanded
 * best-first by a weighted admissible lower bound, so the first complete node
 * popped is optimal. A beam width turns the search into a heuristic.
 */

#include "qmap/bounds.hpp"
#include "qmap/circuit.hpp"
#include "qmap/hardware.hpp"
#include "qmap/rational.hpp"
#include "qmap/schedule.hpp"

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace qmap {

enum class SearchEventKind { Incumbent, Progress, Finished };

struct SearchEvent {
    SearchEventKind kind;
    std::size_t nodes_expanded = 0;
    Rational value;  ///< incumbent objective (Incumbent/Finished), best open bound (Progress)
    double elapsed_s = 0.0;
};

struct SolverConfig {
    Rational w_depth{1};
    Rational w_swaps{0};
    bool layered = false;
    std::optional<std::size_t> beam_width;  ///< unset: exact search
    std::optional<double> time_limit_s;
    std::optional<std::size_t> node_limit;  ///< max expansions; deterministic alternative to a time limit
    Time swap_duration = kDefaultSwapDuration;
    bool track_swaps_in_front = false;  ///< forced on when w_swaps > 0
    bool pareto_pruning = true;         ///< off: plain tree search (testing)
    std::function<void(const SearchEvent&)> on_event;
    std::size_t progress_interval = 100000;

    static SolverConfig depth() { return {}; }
    static SolverConfig swaps() {
        SolverConfig c;
        c.w_depth = 0;
        c.w_swaps = 1;
        return c;
    }
};

enum class SolveStatus { Optimal, Incumbent, NoSolution };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Incumbent: return "incumbent";
        case SolveStatus::NoSolution: return "no_solution";
    }
    return "unknown";
}

struct SolveStats {
    std::size_t nodes_expanded = 0;
    std::size_t nodes_inserted = 0;
    std::size_t nodes_pruned = 0;
    std::size_t fronts_replaced = 0;
    std::size_t beam_restarts = 0;
    bool limit_hit = false;
    double wall_time_s = 0.0;
};

struct SolveResult {
    std::optional<Schedule> schedule;
    Rational objective_value;
    Rational root_bound;
    bool proven_optimal = false;
    SolveStatus status = SolveStatus::NoSolution;
    SolveStats stats;
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct NodeInfo {
    NodeId parent = kNoNode;
    GateIndex gate = kSwap;  ///< meaningless for the root
    Edge edge;
    Time start = 0;
    std::uint32_t scheduled = 0;  ///< circuit gates scheduled along the chain
    std::int64_t bound = 0;       ///< weighted lower bound, scaled to an integer
    std::uint64_t order = 0;      ///< creation order, final tie-break
    bool open = false;            ///< unexpanded and still on its front
    bool in_front = false;
};

/**
 * Search tree with node arena, Pareto store and open set. solve() drives it;
 * the pieces are public so expansion and insertion can be tested directly.
 */
class SearchTree {
public:
    SearchTree(const Circuit& circuit, const HardwareGraph& graph, SolverConfig config)
        : circuit_(&circuit),
          graph_(&graph),
          info_(circuit),
          config_(std::move(config)),
          bounds_(info_, graph, config_.swap_duration),
          num_nodes_(static_cast<std::size_t>(graph.num_nodes())),
          num_qubits_(static_cast<std::size_t>(circuit.num_qubits())),
          fronts_(64, KeyHash{this}, KeyEq{this}) {
        if (circuit.num_qubits() > graph.num_nodes()) {
            throw std::invalid_argument("circuit has more virtual qubits (" + std::to_string(circuit.num_qubits()) +
                                        ") than the hardware has nodes (" + std::to_string(graph.num_nodes()) + ")");
        }
        if (config_.w_depth < 0 || config_.w_swaps < 0 || (config_.w_depth == 0 && config_.w_swaps == 0)) {
            throw std::invalid_argument("objective weights must be non-negative and not both zero");
        }
        if (config_.beam_width && *config_.beam_width == 0) {
            throw std::invalid_argument("beam width must be at least 1");
        }
        if (config_.w_swaps > 0) {
            config_.track_swaps_in_front = true;
        }
        scale_ = std::lcm(config_.w_depth.den, config_.w_swaps.den);
        weight_depth_ = config_.w_depth.num * (scale_ / config_.w_depth.den);
        weight_swaps_ = config_.w_swaps.num * (scale_ / config_.w_swaps.den);
    }

    SearchTree(const SearchTree&) = delete;
    SearchTree& operator=(const SearchTree&) = delete;

    // -- node access ---------------------------------------------------------

    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
    [[nodiscard]] const NodeInfo& info(NodeId id) const { return nodes_[id]; }
    [[nodiscard]] const PrecedenceInfo& precedence() const noexcept { return info_; }
    [[nodiscard]] const SolverConfig& config() const noexcept { return config_; }

    [[nodiscard]] StateView state(NodeId id) const {
        return {std::span<const Time>(depth_.data() + id * num_nodes_, num_nodes_),
                std::span<const Node>(assignment_.data() + id * num_qubits_, num_qubits_),
                std::span<const std::size_t>(progress_.data() + id * num_qubits_, num_qubits_), swaps_[id]};
    }

    [[nodiscard]] bool is_complete(NodeId id) const { return nodes_[id].scheduled == circuit_->size(); }

    [[nodiscard]] Time makespan(NodeId id) const {
        auto s = state(id);
        return s.depth.empty() ? 0 : *std::max_element(s.depth.begin(), s.depth.end());
    }

    /// Weighted bound as an exact rational.
    [[nodiscard]] Rational bound_value(NodeId id) const { return Rational(nodes_[id].bound, scale_); }
    [[nodiscard]] Rational objective_value(NodeId id) const { return bound_value(id); }

    [[nodiscard]] Time depth_bound(NodeId id) const { return bounds_.depth_bound(state(id)); }
    [[nodiscard]] std::int64_t swap_bound(NodeId id) const { return bounds_.swap_bound(state(id)); }

    // -- construction --------------------------------------------------------

    NodeId make_root() {
        auto s = NodeState::initial(graph_->num_nodes(), circuit_->num_qubits());
        NodeId id = add_node(s, NodeInfo{});
        return id;
    }

    /// Appends a node with an explicit state (testing hook). The bound is computed.
    NodeId add_node(const NodeState& s, NodeInfo meta) {
        auto id = static_cast<NodeId>(nodes_.size());
        depth_.insert(depth_.end(), s.depth.begin(), s.depth.end());
        assignment_.insert(assignment_.end(), s.assignment.begin(), s.assignment.end());
        progress_.insert(progress_.end(), s.progress.begin(), s.progress.end());
        swaps_.push_back(s.swaps);
        meta.order = next_order_++;
        meta.open = meta.in_front = false;
        nodes_.push_back(meta);
        nodes_[id].bound = evaluate(id);
        return id;
    }

    /// Creates the child of @p parent that places @p gate (or a SWAP) on @p edge,
    /// with edge.v / edge.w receiving the gate's first / second qubit.
    NodeId make_child(NodeId parent, GateIndex gate, Edge edge) {
        auto id = static_cast<NodeId>(nodes_.size());
        depth_.resize(depth_.size() + num_nodes_);
        assignment_.resize(assignment_.size() + num_qubits_);
        progress_.resize(progress_.size() + num_qubits_);
        std::copy_n(depth_.begin() + parent * num_nodes_, num_nodes_, depth_.begin() + id * num_nodes_);
        std::copy_n(assignment_.begin() + parent * num_qubits_, num_qubits_, assignment_.begin() + id * num_qubits_);
        std::copy_n(progress_.begin() + parent * num_qubits_, num_qubits_, progress_.begin() + id * num_qubits_);
        swaps_.push_back(swaps_[parent]);

        Time* depth = depth_.data() + id * num_nodes_;
        Node* assign = assignment_.data() + id * num_qubits_;
        std::size_t* progress = progress_.data() + id * num_qubits_;
        const auto v = static_cast<std::size_t>(edge.v);
        const auto w = static_cast<std::size_t>(edge.w);

        NodeInfo meta;
        meta.parent = parent;
        meta.gate = gate;
        meta.edge = edge;
        meta.scheduled = nodes_[parent].scheduled;
        meta.start = std::max(depth[v], depth[w]);
        Time duration = 0;
        if (gate == kSwap) {
            duration = config_.swap_duration;
            for (std::size_t q = 0; q < num_qubits_; ++q) {
                if (assign[q] == edge.v) {
                    assign[q] = edge.w;
                } else if (assign[q] == edge.w) {
                    assign[q] = edge.v;
                }
            }
            ++swaps_[id];
        } else {
            const auto& g = (*circuit_)[gate];
            duration = g.duration;
            assign[static_cast<std::size_t>(g.p)] = edge.v;
            assign[static_cast<std::size_t>(g.q)] = edge.w;
            ++progress[static_cast<std::size_t>(g.p)];
            ++progress[static_cast<std::size_t>(g.q)];
            ++meta.scheduled;
        }
        depth[v] = depth[w] = meta.start + duration;
        meta.order = next_order_++;
        nodes_.push_back(meta);
        nodes_[id].bound = evaluate(id);
        return id;
    }

    // -- Pareto store --------------------------------------------------------

    /// True when @p a is at least as good as @p b in every tracked dimension.
    [[nodiscard]] bool dominates(NodeId a, NodeId b) const {
        if (config_.track_swaps_in_front && swaps_[a] > swaps_[b]) {
            return false;
        }
        const Time* da = depth_.data() + a * num_nodes_;
        const Time* db = depth_.data() + b * num_nodes_;
        for (std::size_t v = 0; v < num_nodes_; ++v) {
            if (da[v] > db[v]) {
                return false;
            }
        }
        return true;
    }

    /**
     * Adds @p id to its state's front and the open set unless an existing front
     * member dominates it. Members it dominates are evicted from both.
     */
    bool try_insert(NodeId id) {
        if (config_.pareto_pruning) {
            auto [it, fresh] = fronts_.try_emplace(id);
            auto& front = it->second;
            if (!fresh) {
                for (NodeId other : front) {
                    if (dominates(other, id)) {
                        ++stats_.nodes_pruned;
                        return false;
                    }
                }
                std::erase_if(front, [&](NodeId other) {
                    if (dominates(id, other)) {
                        nodes_[other].in_front = false;
                        nodes_[other].open = false;
                        ++stats_.fronts_replaced;
                        return true;
                    }
                    return false;
                });
            }
            front.push_back(id);
        }
        nodes_[id].in_front = true;
        nodes_[id].open = true;
        open_.push(entry(id));
        ++stats_.nodes_inserted;
        return true;
    }

    /// No front holds two members where one dominates the other.
    [[nodiscard]] bool fronts_are_antichains() const {
        for (const auto& [key, front] : fronts_) {
            for (NodeId a : front) {
                for (NodeId b : front) {
                    if (a != b && dominates(a, b)) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

    [[nodiscard]] std::size_t front_size(NodeId id) const {
        auto it = fronts_.find(id);
        return it == fronts_.end() ? 0 : it->second.size();
    }

    // -- expansion -----------------------------------------------------------

    /// Candidate gates for expansion: minimal unscheduled gates, restricted to
    /// the lowest unfinished layer in layered mode.
    [[nodiscard]] std::vector<GateIndex> schedulable_gates(NodeId id) const {
        auto gates = info_.minimal_unscheduled(state(id).progress);
        if (config_.layered && !gates.empty()) {
            std::size_t lowest = info_.layer(gates.front());
            for (GateIndex g : gates) {
                lowest = std::min(lowest, info_.layer(g));
            }
            std::erase_if(gates, [&](GateIndex g) { return info_.layer(g) != lowest; });
        }
        return gates;
    }

    /// Generates the children of @p id, passes each through the incumbent cut and
    /// try_insert, and returns the accepted ones.
    std::vector<NodeId> expand(NodeId id) {
        std::vector<NodeId> accepted;
        nodes_[id].open = false;
        ++stats_.nodes_expanded;

        std::vector<int> occupant(num_nodes_, -1);
        {
            auto s = state(id);
            for (std::size_t q = 0; q < num_qubits_; ++q) {
                if (s.assignment[q] >= 0) {
                    occupant[static_cast<std::size_t>(s.assignment[q])] = static_cast<int>(q);
                }
            }
        }
        auto node_at = [&](Qubit q) { return assignment_[id * num_qubits_ + static_cast<std::size_t>(q)]; };
        auto free = [&](Node v) { return occupant[static_cast<std::size_t>(v)] < 0; };
        auto offer = [&](GateIndex gate, Edge edge) {
            NodeId child = make_child(id, gate, edge);
            if (consider(child)) {
                accepted.push_back(child);
            }
        };

        for (GateIndex g : schedulable_gates(id)) {
            const auto& gate = (*circuit_)[g];
            Node vp = node_at(gate.p);
            Node vq = node_at(gate.q);
            if (vp >= 0 && vq >= 0) {
                if (graph_->adjacent(vp, vq)) {
                    offer(g, {vp, vq});
                }
            } else if (vp >= 0) {
                for (Node w : graph_->neighbors(vp)) {
                    if (free(w)) {
                        offer(g, {vp, w});
                    }
                }
            } else if (vq >= 0) {
                for (Node v : graph_->neighbors(vq)) {
                    if (free(v)) {
                        offer(g, {v, vq});
                    }
                }
            } else {
                for (const Edge& e : graph_->edges()) {
                    if (free(e.v) && free(e.w)) {
                        offer(g, e);
                        offer(g, e.reversed());
                    }
                }
            }
        }
        for (const Edge& e : graph_->edges()) {
            if (!free(e.v) || !free(e.w)) {
                offer(kSwap, e);
            }
        }
        return accepted;
    }

    // -- search --------------------------------------------------------------

    SolveResult solve() {
        start_time_ = Clock::now();
        SolveResult result;
        NodeId root = make_root();
        result.root_bound = bound_value(root);
        if (config_.beam_width) {
            run_beam(root, *config_.beam_width, result);
        } else {
            run_best_first(root, result);
        }
        result.stats = stats_;
        result.stats.wall_time_s = elapsed();
        emit(SearchEventKind::Finished, result.objective_value);
        return result;
    }

    /// Operations along the parent chain of @p id, sorted by start time.
    [[nodiscard]] Schedule extract_schedule(NodeId id) const {
        Schedule schedule;
        schedule.swap_duration = config_.swap_duration;
        for (NodeId n = id; nodes_[n].parent != kNoNode; n = nodes_[n].parent) {
            const auto& meta = nodes_[n];
            ScheduledOp op;
            op.gate = meta.gate;
            op.edge = meta.edge;
            op.start = meta.start;
            op.duration = meta.gate == kSwap ? config_.swap_duration : (*circuit_)[meta.gate].duration;
            schedule.ops.push_back(op);
        }
        std::reverse(schedule.ops.begin(), schedule.ops.end());
        schedule.sort_by_start();
        return schedule;
    }

    [[nodiscard]] const SolveStats& stats() const noexcept { return stats_; }
    [[nodiscard]] std::size_t open_count() const {
        return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const NodeInfo& n) { return n.open; }));
    }

private:
    using Clock = std::chrono::steady_clock;

    struct OpenEntry {
        std::int64_t bound;
        std::uint32_t scheduled;
        std::uint64_t order;
        std::size_t swaps;
        NodeId id;
    };

    // Smaller bound first, then more scheduled gates, fewer SWAPs, older node.
    struct OpenLess {
        bool operator()(const OpenEntry& a, const OpenEntry& b) const {
            if (a.bound != b.bound) return a.bound < b.bound;
            if (a.scheduled != b.scheduled) return a.scheduled > b.scheduled;
            if (a.swaps != b.swaps) return a.swaps < b.swaps;
            return a.order < b.order;
        }
    };
    struct OpenGreater {
        bool operator()(const OpenEntry& a, const OpenEntry& b) const { return OpenLess{}(b, a); }
    };

    struct KeyHash {
        const SearchTree* tree;
        std::size_t operator()(NodeId id) const {
            std::uint64_t h = 1469598103934665603ull;
            auto mix = [&](std::uint64_t x) {
                h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            };
            const Node* a = tree->assignment_.data() + id * tree->num_qubits_;
            const std::size_t* p = tree->progress_.data() + id * tree->num_qubits_;
            for (std::size_t q = 0; q < tree->num_qubits_; ++q) {
                mix(static_cast<std::uint64_t>(a[q] + 1));
                mix(p[q]);
            }
            return static_cast<std::size_t>(h);
        }
    };
    struct KeyEq {
        const SearchTree* tree;
        bool operator()(NodeId x, NodeId y) const {
            const auto n = tree->num_qubits_;
            return std::equal(tree->assignment_.begin() + x * n, tree->assignment_.begin() + (x + 1) * n,
                              tree->assignment_.begin() + y * n) &&
                   std::equal(tree->progress_.begin() + x * n, tree->progress_.begin() + (x + 1) * n,
                              tree->progress_.begin() + y * n);
        }
    };

    [[nodiscard]] OpenEntry entry(NodeId id) const {
        const auto& n = nodes_[id];
        return {n.bound, n.scheduled, n.order, swaps_[id], id};
    }

    [[nodiscard]] std::int64_t evaluate(NodeId id) const {
        auto s = state(id);
        if (nodes_[id].scheduled == circuit_->size()) {
            return weight_depth_ * makespan(id) + weight_swaps_ * static_cast<std::int64_t>(s.swaps);
        }
        std::int64_t value = 0;
        if (weight_depth_ != 0) {
            value += weight_depth_ * bounds_.depth_bound(s);
        }
        if (weight_swaps_ != 0) {
            value += weight_swaps_ * bounds_.swap_bound(s);
        }
        return value;
    }

    // Incumbent bookkeeping and cut, then Pareto insertion. Rejected nodes are
    // dropped from the arena when they are its last element.
    bool consider(NodeId child) {
        const bool complete = is_complete(child);
        if (incumbent_ != kNoNode && nodes_[child].bound >= nodes_[incumbent_].bound) {
            ++stats_.nodes_pruned;
            discard_last(child);
            return false;
        }
        if (complete) {
            incumbent_ = child;
            emit(SearchEventKind::Incumbent, bound_value(child));
        }
        if (!try_insert(child)) {
            if (child != incumbent_) {
                discard_last(child);
            }
            return false;
        }
        return true;
    }

    void discard_last(NodeId id) {
        if (id + 1 != nodes_.size()) {
            return;
        }
        nodes_.pop_back();
        swaps_.pop_back();
        depth_.resize(depth_.size() - num_nodes_);
        assignment_.resize(assignment_.size() - num_qubits_);
        progress_.resize(progress_.size() - num_qubits_);
    }

    [[nodiscard]] double elapsed() const {
        return std::chrono::duration<double>(Clock::now() - start_time_).count();
    }

    bool limit_reached() {
        if (config_.node_limit && stats_.nodes_expanded >= *config_.node_limit) {
            stats_.limit_hit = true;
        } else if (config_.time_limit_s && (stats_.nodes_expanded & 63) == 0 && elapsed() > *config_.time_limit_s) {
            stats_.limit_hit = true;
        }
        return stats_.limit_hit;
    }

    void emit(SearchEventKind kind, Rational value) const {
        if (config_.on_event) {
            config_.on_event(SearchEvent{kind, stats_.nodes_expanded, value, elapsed()});
        }
    }

    void finish(NodeId goal, bool proven, SolveResult& result) const {
        result.schedule = extract_schedule(goal);
        result.objective_value = objective_value(goal);
        result.proven_optimal = proven;
        result.status = proven ? SolveStatus::Optimal : SolveStatus::Incumbent;
    }

    void run_best_first(NodeId root, SolveResult& result) {
        try_insert(root);
        while (!open_.empty()) {
            OpenEntry top = open_.top();
            open_.pop();
            if (!nodes_[top.id].open) {
                continue;
            }
            if (is_complete(top.id)) {
                nodes_[top.id].open = false;
                finish(top.id, true, result);
                return;
            }
            if (limit_reached()) {
                break;
            }
            expand(top.id);
            if (config_.progress_interval != 0 && stats_.nodes_expanded % config_.progress_interval == 0) {
                emit(SearchEventKind::Progress, bound_value(top.id));
            }
        }
        if (incumbent_ != kNoNode) {
            // Everything else was cut by the incumbent unless a limit stopped us.
            finish(incumbent_, !stats_.limit_hit, result);
        }
    }

    // Level-synchronous beam search: expand the whole frontier, keep the best
    // `width` children by the open-set order. If the beam dies without reaching
    // a complete node, restart with twice the width.
    void run_beam(NodeId root, std::size_t width, SolveResult& result) {
        for (;;) {
            std::vector<NodeId> frontier{root};
            try_insert(root);
            while (!frontier.empty() && !limit_reached()) {
                std::vector<NodeId> next;
                for (NodeId id : frontier) {
                    if (!nodes_[id].in_front || !nodes_[id].open) {
                        continue;
                    }
                    auto children = expand(id);
                    next.insert(next.end(), children.begin(), children.end());
                    if (limit_reached()) {
                        break;
                    }
                }
                std::erase_if(next, [&](NodeId c) {
                    return !nodes_[c].open || is_complete(c) ||
                           (incumbent_ != kNoNode && nodes_[c].bound >= nodes_[incumbent_].bound);
                });
                std::sort(next.begin(), next.end(),
                          [&](NodeId a, NodeId b) { return OpenLess{}(entry(a), entry(b)); });
                for (std::size_t k = width; k < next.size(); ++k) {
                    nodes_[next[k]].open = false;
                }
                if (next.size() > width) {
                    next.resize(width);
                }
                frontier = std::move(next);
            }
            if (incumbent_ != kNoNode) {
                finish(incumbent_, false, result);
                return;
            }
            if (stats_.limit_hit) {
                return;
            }
            ++stats_.beam_restarts;
            width *= 2;
            reset_search();
            root = make_root();
        }
    }

    void reset_search() {
        nodes_.clear();
        depth_.clear();
        assignment_.clear();
        progress_.clear();
        swaps_.clear();
        fronts_.clear();
        open_ = OpenQueue{};
        incumbent_ = kNoNode;
    }

    // Priority queue that lets the entry just pushed be refreshed in place.
    class OpenQueue {
    public:
        void push(const OpenEntry& e) {
            heap_.push_back(e);
            std::push_heap(heap_.begin(), heap_.end(), OpenGreater{});
        }
        [[nodiscard]] const OpenEntry& top() const { return heap_.front(); }
        void pop() {
            std::pop_heap(heap_.begin(), heap_.end(), OpenGreater{});
            heap_.pop_back();
        }
        [[nodiscard]] bool empty() const noexcept { return heap_.empty(); }

    private:
        std::vector<OpenEntry> heap_;
    };

    const Circuit* circuit_;
    const HardwareGraph* graph_;
    PrecedenceInfo info_;
    SolverConfig config_;
    BoundEvaluator bounds_;
    std::size_t num_nodes_;
    std::size_t num_qubits_;

    std::int64_t scale_ = 1;
    std::int64_t weight_depth_ = 1;
    std::int64_t weight_swaps_ = 0;

    std::vector<NodeInfo> nodes_;
    std::vector<Time> depth_;
    std::vector<Node> assignment_;
    std::vector<std::size_t> progress_;
    std::vector<std::size_t> swaps_;
    std::unordered_map<NodeId, std::vector<NodeId>, KeyHash, KeyEq> fronts_;
    OpenQueue open_;
    NodeId incumbent_ = kNoNode;
    std::uint64_t next_order_ = 0;
    SolveStats stats_;
    Clock::time_point start_time_ = Clock::now();
};

inline SolveResult solve(const Circuit& circuit, const HardwareGraph& graph, const SolverConfig& config) {
    SearchTree tree(circuit, graph, config);
    return tree.solve();
}

}  // namespace qmap
