#pragma once

/**
 * @file bounds.hpp
 * @brief Admissible lower bounds on the objective reachable from a search state.
 *
 * Depth bound h_D = max(h_Q, h_G):
 *   - h_Q ("qubit bound"): for every virtual qubit, its current depth plus the
 *     tail time of its first unscheduled gate (or just its depth if finished).
 *   - h_G ("gate bound"): for the first unscheduled common gate of every pair
 *     of placed qubits, the earliest start reachable by moving both qubits
 *     towards each other along some chordless path, plus the gate's tail time.
 *
 * SWAP bound h_S: SWAPs so far plus, over unscheduled gates whose qubits are
 * both placed, the largest (distance - 1).
 */

#include "qmap/circuit.hpp"
#include "qmap/hardware.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace qmap {

/// Read-only view of the state carried by a search node.
struct StateView {
    std::span<const Time> depth;             ///< per hardware node: end of last op touching it
    std::span<const Node> assignment;        ///< per virtual qubit: node, or -1 if not placed yet
    std::span<const std::size_t> progress;   ///< per virtual qubit: number of scheduled gates on it
    std::size_t swaps = 0;
};

/// Owning counterpart of StateView.
struct NodeState {
    std::vector<Time> depth;
    std::vector<Node> assignment;
    std::vector<std::size_t> progress;
    std::size_t swaps = 0;

    [[nodiscard]] StateView view() const { return {depth, assignment, progress, swaps}; }

    static NodeState initial(int num_nodes, int num_qubits) {
        NodeState s;
        s.depth.assign(static_cast<std::size_t>(num_nodes), 0);
        s.assignment.assign(static_cast<std::size_t>(num_qubits), -1);
        s.progress.assign(static_cast<std::size_t>(num_qubits), 0);
        return s;
    }
};

class BoundEvaluator {
public:
    BoundEvaluator(const PrecedenceInfo& info, const HardwareGraph& graph, Time swap_duration)
        : info_(&info),
          graph_(&graph),
          swap_duration_(swap_duration),
          stamp_(static_cast<std::size_t>(info.num_qubits()), 0) {
        const auto v = static_cast<std::size_t>(graph.num_nodes());
        paths_.assign(v * v, nullptr);
    }

    [[nodiscard]] Time qubit_bound(const StateView& s) const {
        Time best = 0;
        for (Qubit q = 0; q < info_->num_qubits(); ++q) {
            const auto qi = static_cast<std::size_t>(q);
            Time dq = placed_depth(s, q);
            auto seq = info_->per_qubit(q);
            if (s.progress[qi] < seq.size()) {
                dq += info_->delta(seq[s.progress[qi]]);
            }
            best = std::max(best, dq);
        }
        return best;
    }

    /// 0 when no unscheduled gate has both qubits placed.
    [[nodiscard]] Time gate_bound(const StateView& s) const {
        Time best = 0;
        for_each_placed_pair(s, [&](Qubit p, Qubit q, GateIndex g) {
            const PathSet& set = paths(s.assignment[static_cast<std::size_t>(p)],
                                       s.assignment[static_cast<std::size_t>(q)]);
            if (set.truncated) {
                return;
            }
            Time earliest = std::numeric_limits<Time>::max();
            for (const auto& path : set.paths) {
                earliest = std::min(earliest, earliest_start_along(s, g, p, q, path));
            }
            if (!set.paths.empty()) {
                best = std::max(best, info_->delta(g) + earliest);
            }
        });
        return best;
    }

    [[nodiscard]] Time depth_bound(const StateView& s) const { return std::max(qubit_bound(s), gate_bound(s)); }

    [[nodiscard]] std::int64_t swap_bound(const StateView& s) const {
        std::int64_t extra = 0;
        for_each_placed_pair(s, [&](Qubit p, Qubit q, GateIndex) {
            int d = graph_->distance(s.assignment[static_cast<std::size_t>(p)], s.assignment[static_cast<std::size_t>(q)]);
            extra = std::max<std::int64_t>(extra, d - 1);
        });
        return static_cast<std::int64_t>(s.swaps) + extra;
    }

    /**
     * Lower bound on the start of gate @p g when qubit @p p walks from the first
     * node of @p path and @p q from the last, meeting on one of the path's edges.
     * Minimum over the meeting edge of the max of four families of terms.
     */
    [[nodiscard]] Time earliest_start_along(const StateView& s, GateIndex g, Qubit p, Qubit q,
                                            std::span<const Node> path) const {
        const auto len = path.size();
        const Time ds = swap_duration_;
        const Time lead_p = placed_depth(s, p) + gates_before(s, p, g);
        const Time lead_q = placed_depth(s, q) + gates_before(s, q, g);
        constexpr Time kLow = std::numeric_limits<Time>::min() / 4;

        // With 1-based positions k on the path and meeting edge (j, j+1):
        //   left(j)  = max_{2<=k<=j}     D(k) + (j+1-k) ds = (j+1) ds + max (D(k) - k ds)
        //   right(j) = max_{j+1<=k<=len-1} D(k) + (k-j) ds = -j ds   + max (D(k) + k ds)
        right_.assign(len + 1, kLow);
        for (std::size_t j = len - 1; j-- > 1;) {
            std::size_t k = j + 1;
            Time term = s.depth[static_cast<std::size_t>(path[k - 1])] + static_cast<Time>(k) * ds;
            right_[j] = std::max(right_[j + 1], term);
        }
        Time best = std::numeric_limits<Time>::max();
        Time left_max = kLow;
        for (std::size_t j = 1; j + 1 <= len; ++j) {
            if (j >= 2) {
                left_max = std::max(left_max, s.depth[static_cast<std::size_t>(path[j - 1])] - static_cast<Time>(j) * ds);
            }
            const auto jj = static_cast<Time>(j);
            const auto n = static_cast<Time>(len);
            Time h = std::max(lead_p + (jj - 1) * ds, lead_q + (n - jj - 1) * ds);
            if (left_max > kLow) {
                h = std::max(h, left_max + (jj + 1) * ds);
            }
            if (right_[j] > kLow) {
                h = std::max(h, right_[j] - jj * ds);
            }
            best = std::min(best, h);
        }
        return best;
    }

    [[nodiscard]] Time swap_duration() const noexcept { return swap_duration_; }

    /// Calls f(p, q, g) once per unordered pair of placed qubits that still share
    /// an unscheduled gate, with g their first such gate and p < q.
    template <typename F>
    void for_each_placed_pair(const StateView& s, F&& f) const {
        for (Qubit p = 0; p < info_->num_qubits(); ++p) {
            const auto pi = static_cast<std::size_t>(p);
            if (s.assignment[pi] < 0) {
                continue;
            }
            ++epoch_;
            auto seq = info_->per_qubit(p);
            for (std::size_t k = s.progress[pi]; k < seq.size(); ++k) {
                GateIndex g = seq[k];
                auto [a, b] = info_->qubits(g);
                Qubit q = a == p ? b : a;
                const auto qi = static_cast<std::size_t>(q);
                if (s.assignment[qi] < 0 || stamp_[qi] == epoch_) {
                    continue;
                }
                stamp_[qi] = epoch_;
                if (p < q) {
                    f(p, q, g);
                }
            }
        }
    }

private:
    [[nodiscard]] Time placed_depth(const StateView& s, Qubit q) const {
        Node v = s.assignment[static_cast<std::size_t>(q)];
        return v < 0 ? 0 : s.depth[static_cast<std::size_t>(v)];
    }

    // Durations of the unscheduled gates on q that precede g.
    [[nodiscard]] Time gates_before(const StateView& s, Qubit q, GateIndex g) const {
        return info_->remaining_from(q, s.progress[static_cast<std::size_t>(q)]) - info_->remaining_time(q, g);
    }

    [[nodiscard]] const PathSet& paths(Node v, Node w) const {
        auto& slot = paths_[static_cast<std::size_t>(v) * static_cast<std::size_t>(graph_->num_nodes()) +
                            static_cast<std::size_t>(w)];
        if (slot == nullptr) {
            slot = &graph_->minimal_paths(v, w);
        }
        return *slot;
    }

    const PrecedenceInfo* info_;
    const HardwareGraph* graph_;
    Time swap_duration_;
    mutable std::vector<const PathSet*> paths_;
    mutable std::vector<std::uint64_t> stamp_;
    mutable std::uint64_t epoch_ = 0;
    mutable std::vector<Time> right_;
};

inline Time bound_depth(const StateView& s, const PrecedenceInfo& info, const HardwareGraph& graph,
                        Time swap_duration) {
    return BoundEvaluator(info, graph, swap_duration).depth_bound(s);
}

inline std::int64_t bound_swaps(const StateView& s, const PrecedenceInfo& info, const HardwareGraph& graph) {
    return BoundEvaluator(info, graph, 0).swap_bound(s);
}

}  // namespace qmap
