#pragma once

/**
 * @file circuit.hpp
 * @brief Two-qubit gate circuits and their static precedence analysis.
 *
 * A circuit is an ordered list of two-qubit gates over virtual qubits. Gates
 * sharing a qubit are totally ordered by their position in the list; the
 * transitive closure of that relation is the circuit's partial order.
 *
 * Indices are 0-based in the C++ API. Circuit files use 1-based qubit ids and
 * gate ids are the 1-based position of a gate in the file.
 */

#include "qmap/json_io.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qmap {

using Qubit = int;
using Time = std::int64_t;
using GateIndex = std::size_t;

inline constexpr Time kDefaultGateDuration = 4;

struct GateSpec {
    Qubit p = 0;
    Qubit q = 0;
    Time duration = kDefaultGateDuration;

    [[nodiscard]] bool acts_on(Qubit qubit) const noexcept { return p == qubit || q == qubit; }
    [[nodiscard]] Qubit partner(Qubit qubit) const noexcept { return qubit == p ? q : p; }
};

/**
 * @brief An ordered sequence of two-qubit gates on @c num_qubits virtual qubits.
 *
 * Invariants (enforced by add_gate): p != q, both qubits in range, duration >= 0.
 */
class Circuit {
public:
    Circuit() = default;
    explicit Circuit(int num_qubits) : num_qubits_(num_qubits) {
        if (num_qubits < 0) {
            throw std::invalid_argument("circuit: negative qubit count");
        }
    }

    Circuit(int num_qubits, std::initializer_list<GateSpec> gates) : Circuit(num_qubits) {
        for (const auto& g : gates) {
            add_gate(g);
        }
    }

    void add_gate(GateSpec gate) {
        if (gate.p == gate.q) {
            throw std::invalid_argument("circuit: degenerate gate on qubit " + std::to_string(gate.p + 1));
        }
        if (gate.p < 0 || gate.q < 0 || gate.p >= num_qubits_ || gate.q >= num_qubits_) {
            throw std::out_of_range("circuit: qubit id out of range");
        }
        if (gate.duration < 0) {
            throw std::invalid_argument("circuit: negative duration");
        }
        gates_.push_back(gate);
    }

    [[nodiscard]] int num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
    [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }
    [[nodiscard]] const GateSpec& operator[](GateIndex i) const { return gates_[i]; }
    [[nodiscard]] std::span<const GateSpec> gates() const noexcept { return gates_; }

    [[nodiscard]] auto begin() const noexcept { return gates_.begin(); }
    [[nodiscard]] auto end() const noexcept { return gates_.end(); }

    friend bool operator==(const Circuit& a, const Circuit& b) {
        if (a.num_qubits_ != b.num_qubits_ || a.gates_.size() != b.gates_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.gates_.size(); ++i) {
            const auto& x = a.gates_[i];
            const auto& y = b.gates_[i];
            if (x.p != y.p || x.q != y.q || x.duration != y.duration) {
                return false;
            }
        }
        return true;
    }

private:
    int num_qubits_ = 0;
    std::vector<GateSpec> gates_;
};

/**
 * @brief Static precedence data derived from a circuit.
 *
 * - per-qubit gate sequences
 * - immediate predecessors/successors (previous/next gate on each qubit)
 * - tail time delta(i): shortest time from the start of gate i to the end of
 *   the whole circuit with unlimited connectivity
 * - layer index L(i)
 * - suffix sums of durations per qubit, for remaining-time queries
 */
class PrecedenceInfo {
public:
    static constexpr GateIndex kNone = std::numeric_limits<GateIndex>::max();

    explicit PrecedenceInfo(const Circuit& circuit)
        : num_gates_(circuit.size()),
          per_qubit_(static_cast<std::size_t>(circuit.num_qubits())),
          suffix_(static_cast<std::size_t>(circuit.num_qubits())),
          position_(circuit.size()),
          pred_(circuit.size(), {kNone, kNone}),
          succ_(circuit.size(), {kNone, kNone}),
          delta_(circuit.size(), 0),
          layer_(circuit.size(), 0),
          duration_(circuit.size(), 0),
          qubits_(circuit.size()) {
        for (GateIndex i = 0; i < circuit.size(); ++i) {
            const auto& g = circuit[i];
            duration_[i] = g.duration;
            qubits_[i] = {g.p, g.q};
            for (int side = 0; side < 2; ++side) {
                auto& seq = per_qubit_[static_cast<std::size_t>(qubits_[i][side])];
                position_[i][side] = seq.size();
                if (!seq.empty()) {
                    GateIndex prev = seq.back();
                    pred_[i][side] = prev;
                    succ_[prev][side_of(prev, qubits_[i][side])] = i;
                }
                seq.push_back(i);
            }
        }

        for (std::size_t q = 0; q < per_qubit_.size(); ++q) {
            const auto& seq = per_qubit_[q];
            auto& suffix = suffix_[q];
            suffix.assign(seq.size() + 1, 0);
            for (std::size_t k = seq.size(); k-- > 0;) {
                suffix[k] = suffix[k + 1] + duration_[seq[k]];
            }
        }

        // Successors always have larger indices, so one reverse pass suffices.
        for (GateIndex i = num_gates_; i-- > 0;) {
            Time tail = 0;
            for (GateIndex s : succ_[i]) {
                if (s != kNone) {
                    tail = std::max(tail, delta_[s]);
                }
            }
            delta_[i] = duration_[i] + tail;
        }

        std::size_t num_layers = 0;
        for (GateIndex i = 0; i < num_gates_; ++i) {
            std::size_t layer = 0;
            for (GateIndex p : pred_[i]) {
                if (p != kNone) {
                    layer = std::max(layer, layer_[p] + 1);
                }
            }
            layer_[i] = layer;
            num_layers = std::max(num_layers, layer + 1);
        }
        layer_size_.assign(num_layers, 0);
        for (GateIndex i = 0; i < num_gates_; ++i) {
            ++layer_size_[layer_[i]];
        }
    }

    [[nodiscard]] std::size_t num_gates() const noexcept { return num_gates_; }
    [[nodiscard]] int num_qubits() const noexcept { return static_cast<int>(per_qubit_.size()); }

    /// Gates acting on @p q, in circuit order.
    [[nodiscard]] std::span<const GateIndex> per_qubit(Qubit q) const {
        return per_qubit_[static_cast<std::size_t>(q)];
    }

    [[nodiscard]] std::array<Qubit, 2> qubits(GateIndex i) const { return qubits_[i]; }
    [[nodiscard]] Time duration(GateIndex i) const { return duration_[i]; }

    /// Position of gate @p i within per_qubit(q). @p q must be one of the gate's qubits.
    [[nodiscard]] std::size_t position(GateIndex i, Qubit q) const { return position_[i][side_of(i, q)]; }

    /// Previous gate on each of the gate's two qubits (kNone if none).
    [[nodiscard]] std::array<GateIndex, 2> pred(GateIndex i) const { return pred_[i]; }
    [[nodiscard]] std::array<GateIndex, 2> succ(GateIndex i) const { return succ_[i]; }

    [[nodiscard]] Time delta(GateIndex i) const { return delta_[i]; }
    [[nodiscard]] std::span<const Time> delta() const noexcept { return delta_; }
    [[nodiscard]] std::size_t layer(GateIndex i) const { return layer_[i]; }
    [[nodiscard]] std::span<const std::size_t> layers() const noexcept { return layer_; }
    [[nodiscard]] std::size_t num_layers() const noexcept { return layer_size_.size(); }
    [[nodiscard]] std::size_t layer_size(std::size_t l) const { return layer_size_[l]; }

    /// Sum of durations of the gates on @p q from position @p k onward.
    [[nodiscard]] Time remaining_from(Qubit q, std::size_t k) const {
        return suffix_[static_cast<std::size_t>(q)][k];
    }

    /// Remaining execution time on @p q from gate @p i (inclusive).
    [[nodiscard]] Time remaining_time(Qubit q, GateIndex i) const {
        if (i >= num_gates_ || (qubits_[i][0] != q && qubits_[i][1] != q)) {
            throw std::invalid_argument("remaining_time: gate does not act on the qubit");
        }
        return remaining_from(q, position(i, q));
    }

    /**
     * Gates that are first unscheduled on both their qubits, given the number
     * of already scheduled gates per qubit. Returned in increasing index order.
     */
    [[nodiscard]] std::vector<GateIndex> minimal_unscheduled(std::span<const std::size_t> progress) const {
        std::vector<GateIndex> out;
        for (std::size_t q = 0; q < per_qubit_.size(); ++q) {
            const auto& seq = per_qubit_[q];
            if (progress[q] >= seq.size()) {
                continue;
            }
            GateIndex g = seq[progress[q]];
            if (qubits_[g][0] != static_cast<Qubit>(q)) {
                continue;
            }
            auto other = static_cast<std::size_t>(qubits_[g][1]);
            if (progress[other] < per_qubit_[other].size() && per_qubit_[other][progress[other]] == g) {
                out.push_back(g);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    [[nodiscard]] int side_of(GateIndex i, Qubit q) const { return qubits_[i][0] == q ? 0 : 1; }

    std::size_t num_gates_;
    std::vector<std::vector<GateIndex>> per_qubit_;
    std::vector<std::vector<Time>> suffix_;
    std::vector<std::array<std::size_t, 2>> position_;
    std::vector<std::array<GateIndex, 2>> pred_;
    std::vector<std::array<GateIndex, 2>> succ_;
    std::vector<Time> delta_;
    std::vector<std::size_t> layer_;
    std::vector<std::size_t> layer_size_;
    std::vector<Time> duration_;
    std::vector<std::array<Qubit, 2>> qubits_;
};

inline PrecedenceInfo analyze(const Circuit& circuit) { return PrecedenceInfo(circuit); }

// ---------------------------------------------------------------------------
// Circuit file format
//
//   { "num_qubits": 4,
//     "gates": [ { "q": [1, 2], "d": 2 }, { "q": [3, 4] } ] }
//
// Qubit ids are 1-based; "d" is optional and defaults to 4. Unknown fields
// are rejected.
// ---------------------------------------------------------------------------

inline Circuit parse_circuit(std::string_view text) {
    detail::JsonDocument doc(text, "circuit");
    const auto& root = doc.root();
    doc.reject_unknown_keys(root, {"num_qubits", "gates"}, {});
    auto n = doc.integer(doc.require(root, "num_qubits", {}), "num_qubits", {});
    if (n < 0 || n > std::numeric_limits<int>::max()) {
        doc.fail("num_qubits out of range", {});
    }
    Circuit circuit(static_cast<int>(n));
    const auto& gates = doc.array(root, "gates", {});
    for (std::size_t k = 0; k < gates.size(); ++k) {
        auto at = doc.element_position("gates", k);
        const auto& g = gates[k];
        if (!g.is_object()) {
            doc.fail("gate must be an object", at);
        }
        doc.reject_unknown_keys(g, {"q", "d"}, at);
        auto [p, q] = doc.integer_pair(doc.require(g, "q", at), "q", at);
        Time d = kDefaultGateDuration;
        if (auto it = g.find("d"); it != g.end()) {
            d = doc.integer(*it, "d", at);
        }
        if (p == q) {
            doc.fail("degenerate gate (" + std::to_string(p) + "," + std::to_string(q) + ")", at);
        }
        if (p < 1 || q < 1 || p > n || q > n) {
            doc.fail("qubit id out of range in gate " + std::to_string(k + 1), at);
        }
        if (d < 0) {
            doc.fail("negative duration in gate " + std::to_string(k + 1), at);
        }
        circuit.add_gate({static_cast<Qubit>(p - 1), static_cast<Qubit>(q - 1), d});
    }
    return circuit;
}

inline std::string write_circuit(const Circuit& circuit) {
    std::string out = "{\n  \"num_qubits\": " + std::to_string(circuit.num_qubits()) + ",\n  \"gates\": [";
    for (std::size_t i = 0; i < circuit.size(); ++i) {
        const auto& g = circuit[i];
        out += i == 0 ? "\n" : ",\n";
        out += "    {\"q\": [" + std::to_string(g.p + 1) + ", " + std::to_string(g.q + 1) +
               "], \"d\": " + std::to_string(g.duration) + "}";
    }
    out += circuit.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

}  // namespace qmap
