#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force reference solver for tiny instances.
 *
 * Enumerates every sequence of gate placements and SWAPs (each op scheduled
 * as early as possible), depth first, with at most max_swaps SWAPs. The only
 * pruning is a cut against the incumbent using a per-qubit work bound. It
 * shares nothing with the branch-and-bound beyond the data types, so the two
 * can be compared.
 */

#include "qmap/circuit.hpp"
#include "qmap/hardware.hpp"
#include "qmap/schedule.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmap {

enum class Objective { Depth, Swaps };

inline const char* to_string(Objective o) { return o == Objective::Depth ? "depth" : "swaps"; }

inline Objective parse_objective(std::string_view text) {
    if (text == "depth") return Objective::Depth;
    if (text == "swaps") return Objective::Swaps;
    throw std::invalid_argument("unknown objective \"" + std::string(text) + "\" (expected depth or swaps)");
}

struct OracleConfig {
    std::size_t max_swaps = 2;
    Objective objective = Objective::Depth;
    Time swap_duration = kDefaultSwapDuration;
};

enum class OracleStatus { Optimal, CapExhausted, Infeasible };

inline const char* to_string(OracleStatus s) {
    switch (s) {
        case OracleStatus::Optimal: return "optimal";
        case OracleStatus::CapExhausted: return "cap_exhausted";
        case OracleStatus::Infeasible: return "infeasible";
    }
    return "unknown";
}

struct OracleResult {
    OracleStatus status = OracleStatus::Infeasible;
    std::int64_t value = 0;  ///< makespan or SWAP count of the witness
    std::optional<Schedule> witness;
    /// Some SWAP child was refused by the cap while it could still beat the
    /// returned value. When false the value is optimal without any cap.
    bool cap_binding = false;
    std::size_t cap = 0;
    std::uint64_t nodes = 0;
};

namespace detail {

class OracleSearch {
public:
    OracleSearch(const Circuit& circuit, const HardwareGraph& graph, const OracleConfig& config)
        : circuit_(circuit),
          graph_(graph),
          config_(config),
          n_(static_cast<std::size_t>(circuit.num_qubits())),
          nodes_count_(static_cast<std::size_t>(graph.num_nodes())),
          depth_(nodes_count_, 0),
          occupant_(nodes_count_, -1),
          where_(n_, -1),
          done_(circuit.size(), 0),
          work_left_(n_, 0) {
        for (const auto& g : circuit) {
            work_left_[static_cast<std::size_t>(g.p)] += g.duration;
            work_left_[static_cast<std::size_t>(g.q)] += g.duration;
        }
    }

    OracleResult run() {
        dfs();
        OracleResult r;
        r.cap = config_.max_swaps;
        r.nodes = visited_;
        if (best_) {
            r.value = best_value_;
            r.witness = best_;
            r.cap_binding = blocked_bound_ < best_value_;
            r.status = r.cap_binding ? OracleStatus::CapExhausted : OracleStatus::Optimal;
        } else {
            r.cap_binding = blocked_bound_ < kInf;
            r.status = r.cap_binding ? OracleStatus::CapExhausted : OracleStatus::Infeasible;
        }
        return r;
    }

private:
    static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

    // A gate is ready when every earlier gate sharing one of its qubits is done.
    [[nodiscard]] bool ready(GateIndex i) const {
        if (done_[i]) {
            return false;
        }
        const auto& g = circuit_[i];
        for (GateIndex k = 0; k < i; ++k) {
            if (!done_[k] && (circuit_[k].acts_on(g.p) || circuit_[k].acts_on(g.q))) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] std::int64_t lower_bound() const {
        if (config_.objective == Objective::Swaps) {
            return static_cast<std::int64_t>(swaps_);
        }
        Time lb = *std::max_element(depth_.begin(), depth_.end());
        for (std::size_t q = 0; q < n_; ++q) {
            Time at = where_[q] < 0 ? 0 : depth_[static_cast<std::size_t>(where_[q])];
            lb = std::max(lb, at + work_left_[q]);
        }
        return lb;
    }

    void dfs() {
        ++visited_;
        if (remaining_ == 0) {
            std::int64_t value = config_.objective == Objective::Swaps
                                     ? static_cast<std::int64_t>(swaps_)
                                     : *std::max_element(depth_.begin(), depth_.end());
            if (value < best_value_) {
                best_value_ = value;
                Schedule s;
                s.swap_duration = config_.swap_duration;
                s.ops = ops_;
                s.sort_by_start();
                best_ = std::move(s);
            }
            return;
        }
        if (lower_bound() >= best_value_) {
            return;
        }

        for (GateIndex i = 0; i < circuit_.size(); ++i) {
            if (!ready(i)) {
                continue;
            }
            const auto& g = circuit_[i];
            Node a = where_[static_cast<std::size_t>(g.p)];
            Node b = where_[static_cast<std::size_t>(g.q)];
            for (Node v = 0; v < graph_.num_nodes(); ++v) {
                for (Node w : graph_.neighbors(v)) {
                    bool p_ok = a == v || (a < 0 && occupant_[static_cast<std::size_t>(v)] < 0);
                    bool q_ok = b == w || (b < 0 && occupant_[static_cast<std::size_t>(w)] < 0);
                    if (p_ok && q_ok) {
                        place_gate(i, v, w);
                    }
                }
            }
        }

        for (const Edge& e : graph_.edges()) {
            if (occupant_[static_cast<std::size_t>(e.v)] < 0 && occupant_[static_cast<std::size_t>(e.w)] < 0) {
                continue;
            }
            if (swaps_ >= config_.max_swaps) {
                blocked_bound_ = std::min(blocked_bound_, swap_child_bound(e));
                continue;
            }
            apply_swap(e);
        }
    }

    void place_gate(GateIndex i, Node v, Node w) {
        const auto& g = circuit_[i];
        const auto vi = static_cast<std::size_t>(v);
        const auto wi = static_cast<std::size_t>(w);
        const Node old_p = where_[static_cast<std::size_t>(g.p)];
        const Node old_q = where_[static_cast<std::size_t>(g.q)];
        const Time dv = depth_[vi];
        const Time dw = depth_[wi];
        const Time start = std::max(dv, dw);

        where_[static_cast<std::size_t>(g.p)] = v;
        where_[static_cast<std::size_t>(g.q)] = w;
        occupant_[vi] = g.p;
        occupant_[wi] = g.q;
        depth_[vi] = depth_[wi] = start + g.duration;
        work_left_[static_cast<std::size_t>(g.p)] -= g.duration;
        work_left_[static_cast<std::size_t>(g.q)] -= g.duration;
        done_[i] = 1;
        --remaining_;
        ops_.push_back({i, {v, w}, start, g.duration});

        dfs();

        ops_.pop_back();
        ++remaining_;
        done_[i] = 0;
        work_left_[static_cast<std::size_t>(g.p)] += g.duration;
        work_left_[static_cast<std::size_t>(g.q)] += g.duration;
        depth_[vi] = dv;
        depth_[wi] = dw;
        if (old_p < 0) {
            occupant_[vi] = -1;
        }
        if (old_q < 0) {
            occupant_[wi] = -1;
        }
        where_[static_cast<std::size_t>(g.p)] = old_p;
        where_[static_cast<std::size_t>(g.q)] = old_q;
    }

    void exchange(const Edge& e) {
        const auto vi = static_cast<std::size_t>(e.v);
        const auto wi = static_cast<std::size_t>(e.w);
        std::swap(occupant_[vi], occupant_[wi]);
        if (occupant_[vi] >= 0) where_[static_cast<std::size_t>(occupant_[vi])] = e.v;
        if (occupant_[wi] >= 0) where_[static_cast<std::size_t>(occupant_[wi])] = e.w;
    }

    void apply_swap(const Edge& e) {
        const auto vi = static_cast<std::size_t>(e.v);
        const auto wi = static_cast<std::size_t>(e.w);
        const Time dv = depth_[vi];
        const Time dw = depth_[wi];
        const Time start = std::max(dv, dw);
        exchange(e);
        depth_[vi] = depth_[wi] = start + config_.swap_duration;
        ++swaps_;
        ops_.push_back({kSwap, e, start, config_.swap_duration});

        dfs();

        ops_.pop_back();
        --swaps_;
        depth_[vi] = dv;
        depth_[wi] = dw;
        exchange(e);
    }

    [[nodiscard]] std::int64_t swap_child_bound(const Edge& e) {
        if (config_.objective == Objective::Swaps) {
            return static_cast<std::int64_t>(swaps_) + 1;
        }
        const auto vi = static_cast<std::size_t>(e.v);
        const auto wi = static_cast<std::size_t>(e.w);
        const Time dv = depth_[vi];
        const Time dw = depth_[wi];
        exchange(e);
        depth_[vi] = depth_[wi] = std::max(dv, dw) + config_.swap_duration;
        std::int64_t lb = lower_bound();
        depth_[vi] = dv;
        depth_[wi] = dw;
        exchange(e);
        return lb;
    }

    const Circuit& circuit_;
    const HardwareGraph& graph_;
    OracleConfig config_;
    std::size_t n_;
    std::size_t nodes_count_;
    std::vector<Time> depth_;
    std::vector<int> occupant_;
    std::vector<Node> where_;
    std::vector<char> done_;
    std::vector<Time> work_left_;
    std::size_t remaining_ = circuit_.size();
    std::size_t swaps_ = 0;
    std::vector<ScheduledOp> ops_;
    std::optional<Schedule> best_;
    std::int64_t best_value_ = kInf;
    std::int64_t blocked_bound_ = kInf;
    std::uint64_t visited_ = 0;
};

}  // namespace detail

/// Exact optimum among schedules with at most config.max_swaps SWAPs.
inline OracleResult exhaustive_solve(const Circuit& circuit, const HardwareGraph& graph, const OracleConfig& config) {
    if (circuit.num_qubits() > graph.num_nodes()) {
        throw std::invalid_argument("circuit has more virtual qubits than the hardware has nodes");
    }
    if (circuit.empty()) {
        OracleResult r;
        r.status = OracleStatus::Optimal;
        r.witness = Schedule{{}, config.swap_duration};
        r.cap = config.max_swaps;
        return r;
    }
    return detail::OracleSearch(circuit, graph, config).run();
}

/**
 * Raises the SWAP cap from @p first_cap until the cap no longer binds, i.e.
 * every refused SWAP branch was already no better than the value found.
 * Stops with CapExhausted past @p last_cap.
 */
inline OracleResult exhaustive_solve_uncapped(const Circuit& circuit, const HardwareGraph& graph, OracleConfig config,
                                              std::size_t first_cap = 0, std::size_t last_cap = 8) {
    OracleResult r;
    for (std::size_t cap = first_cap; cap <= last_cap; ++cap) {
        config.max_swaps = cap;
        r = exhaustive_solve(circuit, graph, config);
        if (!r.cap_binding) {
            return r;
        }
    }
    return r;
}

}  // namespace qmap
