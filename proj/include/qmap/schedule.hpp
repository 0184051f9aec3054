#pragma once

/**
 * @file schedule.hpp
 * @brief Compiled schedules: placed gates and SWAPs with start times.
 *
 * validate() replays a schedule against a circuit and a hardware graph. It
 * tracks which virtual qubit sits on each physical node; a node that no gate
 * has touched yet holds an anonymous "hole" that remembers its original node.
 * The first gate on a virtual qubit binds it to the hole it lands on, which
 * yields the initial assignment even when SWAPs moved the hole beforehand.
 */

#include "qmap/circuit.hpp"
#include "qmap/hardware.hpp"
#include "qmap/json_io.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qmap {

inline constexpr GateIndex kSwap = std::numeric_limits<GateIndex>::max();
inline constexpr Time kDefaultSwapDuration = 15;

struct ScheduledOp {
    GateIndex gate = kSwap;  ///< circuit gate index, or kSwap
    Edge edge;
    Time start = 0;
    Time duration = 0;

    [[nodiscard]] bool is_swap() const noexcept { return gate == kSwap; }
    [[nodiscard]] Time end() const noexcept { return start + duration; }
};

struct Schedule {
    std::vector<ScheduledOp> ops;
    Time swap_duration = kDefaultSwapDuration;

    /// Orders ops by start time, keeping list order among equal starts.
    void sort_by_start() {
        std::stable_sort(ops.begin(), ops.end(),
                         [](const ScheduledOp& a, const ScheduledOp& b) { return a.start < b.start; });
    }
};

struct Metrics {
    Time depth = 0;
    std::size_t swaps = 0;
    Time unweighted_depth = 0;

    friend bool operator==(const Metrics&, const Metrics&) = default;
};

/**
 * depth: makespan. swaps: number of SWAP ops. unweighted_depth: makespan after
 * re-timing the ops greedily in start order with every gate lasting one unit
 * and every SWAP lasting @p swap_unit_cost units.
 */
inline Metrics metrics(const Schedule& schedule, Time swap_unit_cost = 1) {
    Metrics m;
    std::vector<std::size_t> order(schedule.ops.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return schedule.ops[a].start < schedule.ops[b].start;
    });
    std::vector<Time> free_at;
    for (std::size_t k : order) {
        const auto& op = schedule.ops[k];
        m.depth = std::max(m.depth, op.end());
        if (op.is_swap()) {
            ++m.swaps;
        }
        auto needed = static_cast<std::size_t>(std::max(op.edge.v, op.edge.w)) + 1;
        if (free_at.size() < needed) {
            free_at.resize(needed, 0);
        }
        auto& fv = free_at[static_cast<std::size_t>(op.edge.v)];
        auto& fw = free_at[static_cast<std::size_t>(op.edge.w)];
        Time end = std::max(fv, fw) + (op.is_swap() ? swap_unit_cost : 1);
        fv = fw = end;
        m.unweighted_depth = std::max(m.unweighted_depth, end);
    }
    return m;
}

enum class ViolationKind { Assignment, Routing, Precedence, Overlap };

inline const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Assignment: return "assignment";
        case ViolationKind::Routing: return "routing";
        case ViolationKind::Precedence: return "precedence";
        case ViolationKind::Overlap: return "overlap";
    }
    return "unknown";
}

struct Violation {
    ViolationKind kind;
    std::size_t op_index;  ///< index into Schedule::ops; ops.size() for a missing gate
    std::string message;
};

struct ValidationResult {
    std::optional<Violation> violation;
    /// Initial physical node of every virtual qubit (-1 if never used).
    std::vector<Node> initial_assignment;
    /// Node of every virtual qubit after the last op (-1 if never used).
    std::vector<Node> final_assignment;
    Metrics metrics;

    [[nodiscard]] bool ok() const noexcept { return !violation.has_value(); }
};

inline ValidationResult validate(const Schedule& schedule, const Circuit& circuit, const HardwareGraph& graph) {
    ValidationResult result;
    const auto n = static_cast<std::size_t>(circuit.num_qubits());
    const auto num_nodes = static_cast<std::size_t>(graph.num_nodes());
    PrecedenceInfo info(circuit);

    // holder[v] >= 0: virtual qubit; holder[v] < 0: hole that started on node -holder[v]-1.
    std::vector<int> holder(num_nodes);
    for (std::size_t v = 0; v < num_nodes; ++v) {
        holder[v] = -static_cast<int>(v) - 1;
    }
    std::vector<Node> position(n, -1);
    result.initial_assignment.assign(n, -1);
    std::vector<Time> free_at(num_nodes, 0);
    std::vector<char> done(circuit.size(), 0);
    std::vector<Time> finished(circuit.size(), 0);

    std::vector<std::size_t> order(schedule.ops.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return schedule.ops[a].start < schedule.ops[b].start;
    });

    auto fail = [&](ViolationKind kind, std::size_t index, std::string message) {
        result.violation = Violation{kind, index, std::move(message)};
        return result;
    };
    auto label = [](Node v) { return std::to_string(v + 1); };

    for (std::size_t k : order) {
        const auto& op = schedule.ops[k];
        const Edge e = op.edge;
        if (!graph.has_edge(e)) {
            return fail(ViolationKind::Assignment, k,
                        "edge (" + label(e.v) + "," + label(e.w) + ") does not exist in the hardware graph");
        }
        if (op.start < 0) {
            return fail(ViolationKind::Assignment, k, "negative start time");
        }
        if (!op.is_swap() && op.gate >= circuit.size()) {
            return fail(ViolationKind::Assignment, k, "unknown gate id " + std::to_string(op.gate + 1));
        }
        const Time duration = op.is_swap() ? schedule.swap_duration : circuit[op.gate].duration;
        const auto v = static_cast<std::size_t>(e.v);
        const auto w = static_cast<std::size_t>(e.w);

        if (!op.is_swap()) {
            const GateIndex g = op.gate;
            if (done[g]) {
                return fail(ViolationKind::Precedence, k, "gate " + std::to_string(g + 1) + " executed twice");
            }
            for (GateIndex prev : info.pred(g)) {
                if (prev == PrecedenceInfo::kNone) {
                    continue;
                }
                if (!done[prev] || finished[prev] > op.start) {
                    return fail(ViolationKind::Precedence, k,
                                "gate " + std::to_string(g + 1) + " starts before gate " + std::to_string(prev + 1) +
                                    " has finished");
                }
            }
        }
        if (free_at[v] > op.start || free_at[w] > op.start) {
            return fail(ViolationKind::Overlap, k,
                        "edge (" + label(e.v) + "," + label(e.w) + ") is busy at time " + std::to_string(op.start));
        }

        if (op.is_swap()) {
            std::swap(holder[v], holder[w]);
            if (holder[v] >= 0) {
                position[static_cast<std::size_t>(holder[v])] = e.v;
            }
            if (holder[w] >= 0) {
                position[static_cast<std::size_t>(holder[w])] = e.w;
            }
        } else {
            const auto& gate = circuit[op.gate];
            auto fits = [&](std::size_t node, Qubit qubit) {
                return holder[node] == qubit || (holder[node] < 0 && position[static_cast<std::size_t>(qubit)] < 0);
            };
            Qubit on_v = gate.p;
            Qubit on_w = gate.q;
            if (!(fits(v, on_v) && fits(w, on_w))) {
                std::swap(on_v, on_w);
                if (!(fits(v, on_v) && fits(w, on_w))) {
                    return fail(ViolationKind::Routing, k,
                                "physical qubits " + label(e.v) + " and " + label(e.w) +
                                    " do not contain the correct virtual qubits " + std::to_string(gate.p + 1) +
                                    " and " + std::to_string(gate.q + 1));
                }
            }
            for (auto [node, qubit] : {std::pair{v, on_v}, std::pair{w, on_w}}) {
                if (holder[node] < 0) {
                    result.initial_assignment[static_cast<std::size_t>(qubit)] = -holder[node] - 1;
                    holder[node] = qubit;
                    position[static_cast<std::size_t>(qubit)] = static_cast<Node>(node);
                }
            }
            done[op.gate] = 1;
            finished[op.gate] = op.start + duration;
        }
        free_at[v] = free_at[w] = op.start + duration;
    }

    for (GateIndex g = 0; g < circuit.size(); ++g) {
        if (!done[g]) {
            return fail(ViolationKind::Precedence, schedule.ops.size(),
                        "gate " + std::to_string(g + 1) + " is never executed");
        }
    }
    result.final_assignment = position;
    Schedule timed = schedule;
    for (auto& op : timed.ops) {
        op.duration = op.is_swap() ? schedule.swap_duration : circuit[op.gate].duration;
    }
    result.metrics = metrics(timed);
    return result;
}

// ---------------------------------------------------------------------------
// Schedule file format
//
//   { "swap_duration": 15,
//     "ops": [ { "gate": 1, "edge": [1, 2], "t": 0 },
//              { "gate": 0, "edge": [2, 3], "t": 2 } ] }
//
// "gate" is the 1-based circuit gate id, or 0 for a SWAP. Durations are
// recovered from the circuit and swap_duration.
// ---------------------------------------------------------------------------

inline Schedule parse_schedule(std::string_view text, const Circuit& circuit) {
    detail::JsonDocument doc(text, "schedule");
    const auto& root = doc.root();
    doc.reject_unknown_keys(root, {"swap_duration", "ops"}, {});
    Schedule schedule;
    schedule.swap_duration = doc.integer(doc.require(root, "swap_duration", {}), "swap_duration", {});
    if (schedule.swap_duration < 0) {
        doc.fail("negative swap_duration", {});
    }
    const auto& ops = doc.array(root, "ops", {});
    for (std::size_t k = 0; k < ops.size(); ++k) {
        auto at = doc.element_position("ops", k);
        const auto& o = ops[k];
        if (!o.is_object()) {
            doc.fail("op must be an object", at);
        }
        doc.reject_unknown_keys(o, {"gate", "edge", "t"}, at);
        auto id = doc.integer(doc.require(o, "gate", at), "gate", at);
        auto [v, w] = doc.integer_pair(doc.require(o, "edge", at), "edge", at);
        auto t = doc.integer(doc.require(o, "t", at), "t", at);
        if (id < 0 || static_cast<std::size_t>(id) > circuit.size()) {
            doc.fail("gate id " + std::to_string(id) + " out of range", at);
        }
        if (v < 1 || w < 1 || v > std::numeric_limits<int>::max() || w > std::numeric_limits<int>::max()) {
            doc.fail("edge node out of range", at);
        }
        if (t < 0) {
            doc.fail("negative start time", at);
        }
        ScheduledOp op;
        op.gate = id == 0 ? kSwap : static_cast<GateIndex>(id - 1);
        op.edge = {static_cast<Node>(v - 1), static_cast<Node>(w - 1)};
        op.start = t;
        op.duration = op.is_swap() ? schedule.swap_duration : circuit[op.gate].duration;
        schedule.ops.push_back(op);
    }
    return schedule;
}

inline std::string write_schedule(const Schedule& schedule) {
    std::string out = "{\n  \"swap_duration\": " + std::to_string(schedule.swap_duration) + ",\n  \"ops\": [";
    for (std::size_t i = 0; i < schedule.ops.size(); ++i) {
        const auto& op = schedule.ops[i];
        out += i == 0 ? "\n" : ",\n";
        out += "    {\"gate\": " + std::to_string(op.is_swap() ? 0 : op.gate + 1) + ", \"edge\": [" +
               std::to_string(op.edge.v + 1) + ", " + std::to_string(op.edge.w + 1) +
               "], \"t\": " + std::to_string(op.start) + "}";
    }
    out += schedule.ops.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

}  // namespace qmap
