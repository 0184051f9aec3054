#pragma once

/**
 * @file bench.hpp
 * @brief Random instances, the layered vs. non-layered experiment matrix, and
 * result aggregation.
 *
 * Randomness comes from std::mt19937_64 (whose output sequence is fixed by the
 * C++ standard) with bounded draws done by rejection sampling here rather than
 * through std::uniform_int_distribution, whose algorithm differs between
 * standard libraries. A seed therefore names the same circuit everywhere.
 */

#include "qmap/circuit.hpp"
#include "qmap/hardware.hpp"
#include "qmap/json_io.hpp"
#include "qmap/oracle.hpp"
#include "qmap/schedule.hpp"
#include "qmap/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

namespace qmap {

// ---------------------------------------------------------------------------
// Generator
// ---------------------------------------------------------------------------

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) {
            throw std::invalid_argument("Rng::below: empty range");
        }
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x = 0;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 engine_;
};

inline constexpr Time kEcrDuration = 4;
inline constexpr Time kSingleQubitDuration = 1;

/// Single-qubit gates available to the generator; all last one time unit.
enum class SingleQubitGate { Id, Rz, Sx, X };

struct RawOp {
    Qubit a = 0;
    Qubit b = -1;  ///< -1 for a single-qubit op
    Time duration = kSingleQubitDuration;

    [[nodiscard]] bool two_qubit() const noexcept { return b >= 0; }
};

/// How single-qubit time on the two wires combines into the next two-qubit gate.
enum class FoldRule { Sum, Max };

inline FoldRule parse_fold_rule(std::string_view text) {
    if (text == "sum") return FoldRule::Sum;
    if (text == "max") return FoldRule::Max;
    throw std::invalid_argument("unknown fold rule \"" + std::string(text) + "\" (expected sum or max)");
}

/**
 * Turns a mixed op list into a two-qubit circuit. Each wire accumulates the
 * durations of its single-qubit ops since its last two-qubit gate; the next
 * two-qubit gate absorbs both accumulations. Single-qubit ops after a wire's
 * last two-qubit gate are dropped.
 */
inline Circuit fold_single_qubit_ops(std::span<const RawOp> ops, int num_qubits, FoldRule rule = FoldRule::Sum) {
    Circuit circuit(num_qubits);
    std::vector<Time> pending(static_cast<std::size_t>(num_qubits), 0);
    for (const auto& op : ops) {
        if (op.a < 0 || op.a >= num_qubits || op.b >= num_qubits) {
            throw std::out_of_range("raw op qubit out of range");
        }
        auto& pa = pending[static_cast<std::size_t>(op.a)];
        if (!op.two_qubit()) {
            pa += op.duration;
            continue;
        }
        auto& pb = pending[static_cast<std::size_t>(op.b)];
        Time extra = rule == FoldRule::Sum ? pa + pb : std::max(pa, pb);
        circuit.add_gate({op.a, op.b, op.duration + extra});
        pa = pb = 0;
    }
    return circuit;
}

struct InstanceSpec {
    TopologySpec topology;
    int num_qubits = 4;
    int depth_param = 6;  ///< number of two-qubit rounds
    std::uint64_t seed = 0;
    FoldRule fold = FoldRule::Sum;

    [[nodiscard]] std::string id() const {
        std::ostringstream out;
        out << topology.label() << "/q" << num_qubits << "/d" << depth_param << "/s" << seed;
        return out.str();
    }
};

/// Raw op stream: per round, 0-2 single-qubit ops on each of two random
/// distinct qubits, then an ECR between them.
inline std::vector<RawOp> random_raw_ops(const InstanceSpec& spec) {
    if (spec.num_qubits < 2) {
        throw std::invalid_argument("random circuit needs at least 2 qubits");
    }
    if (spec.depth_param < 1) {
        throw std::invalid_argument("depth parameter must be at least 1");
    }
    Rng rng(spec.seed);
    const auto n = static_cast<std::uint64_t>(spec.num_qubits);
    std::vector<RawOp> ops;
    for (int round = 0; round < spec.depth_param; ++round) {
        auto p = static_cast<Qubit>(rng.below(n));
        auto q = static_cast<Qubit>(rng.below(n - 1));
        if (q >= p) {
            ++q;
        }
        for (Qubit wire : {p, q}) {
            auto singles = rng.below(3);
            for (std::uint64_t k = 0; k < singles; ++k) {
                rng.below(4);  // which of the single-qubit gates; all share one duration
                ops.push_back({wire, -1, kSingleQubitDuration});
            }
        }
        ops.push_back({p, q, kEcrDuration});
    }
    return ops;
}

inline Circuit gen_random_circuit(const InstanceSpec& spec) {
    auto ops = random_raw_ops(spec);
    return fold_single_qubit_ops(ops, spec.num_qubits, spec.fold);
}

/// Hardware size used for a circuit with @p qubits on a topology family.
/// Grids are 2 x (qubits/2); an odd count has no grid.
inline std::optional<TopologySpec> topology_for(TopologyKind kind, int qubits) {
    switch (kind) {
        case TopologyKind::Linear: return TopologySpec{kind, 1, qubits, qubits};
        case TopologyKind::Y:
            if (qubits < 4) return std::nullopt;
            return TopologySpec{kind, 1, qubits, qubits};
        case TopologyKind::Grid:
            if (qubits % 2 != 0) return std::nullopt;
            return TopologySpec{kind, 2, qubits / 2, qubits};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Matrix and result rows
// ---------------------------------------------------------------------------

struct MatrixSpec {
    std::vector<TopologyKind> topologies{TopologyKind::Linear, TopologyKind::Y};
    std::vector<int> qubits{4, 5};
    std::vector<int> depth_params{6, 10};
    std::size_t seeds = 20;
    std::uint64_t base_seed = 1;
    std::vector<Objective> objectives{Objective::Depth, Objective::Swaps};
    std::optional<double> time_limit_s = 10.0;
    std::optional<std::size_t> node_limit;
    Time swap_duration = kDefaultSwapDuration;
    std::size_t jobs = 1;
    FoldRule fold = FoldRule::Sum;

    /// Instances in matrix order: topology, qubits, depth parameter, seed.
    [[nodiscard]] std::vector<InstanceSpec> instances() const {
        std::vector<InstanceSpec> out;
        for (auto kind : topologies) {
            for (int q : qubits) {
                auto topo = topology_for(kind, q);
                if (!topo) {
                    continue;
                }
                for (int d : depth_params) {
                    for (std::size_t s = 0; s < seeds; ++s) {
                        out.push_back({*topo, q, d, base_seed + s, fold});
                    }
                }
            }
        }
        return out;
    }
};

/**
 * Matrix file (JSON). Every key is optional:
 *
 *   { "topologies": ["linear", "grid", "y"], "qubits": [4, 5], "depth_params": [6, 10],
 *     "seeds": 20, "base_seed": 1, "objectives": ["depth", "swaps"],
 *     "time_limit": 10, "node_limit": 200000, "swap_duration": 15, "jobs": 4,
 *     "fold": "sum" }
 *
 * "time_limit": null disables the wall-clock limit.
 */
inline MatrixSpec parse_matrix(std::string_view text) {
    detail::JsonDocument doc(text, "matrix");
    const auto& root = doc.root();
    doc.reject_unknown_keys(root,
                            {"topologies", "qubits", "depth_params", "seeds", "base_seed", "objectives", "time_limit",
                             "node_limit", "swap_duration", "jobs", "fold"},
                            {});
    MatrixSpec m;
    auto strings = [&](const char* key) {
        std::vector<std::string> out;
        for (const auto& v : doc.array(root, key, {})) {
            if (!v.is_string()) {
                doc.fail(std::string("\"") + key + "\" must hold strings", {});
            }
            out.push_back(v.get<std::string>());
        }
        return out;
    };
    auto positive_ints = [&](const char* key) {
        std::vector<int> out;
        for (const auto& v : doc.array(root, key, {})) {
            auto x = doc.integer(v, key, {});
            if (x < 1 || x > 64) {
                doc.fail(std::string("\"") + key + "\" entries must be in 1..64", {});
            }
            out.push_back(static_cast<int>(x));
        }
        return out;
    };
    auto count = [&](const char* key) {
        auto x = doc.integer(root.at(key), key, {});
        if (x < 0) {
            doc.fail(std::string("\"") + key + "\" must be non-negative", {});
        }
        return static_cast<std::size_t>(x);
    };
    try {
        if (root.contains("topologies")) {
            m.topologies.clear();
            for (const auto& s : strings("topologies")) {
                if (s == "linear") m.topologies.push_back(TopologyKind::Linear);
                else if (s == "grid") m.topologies.push_back(TopologyKind::Grid);
                else if (s == "y") m.topologies.push_back(TopologyKind::Y);
                else doc.fail("unknown topology family \"" + s + "\"", {});
            }
        }
        if (root.contains("qubits")) m.qubits = positive_ints("qubits");
        if (root.contains("depth_params")) m.depth_params = positive_ints("depth_params");
        if (root.contains("seeds")) m.seeds = count("seeds");
        if (root.contains("base_seed")) m.base_seed = static_cast<std::uint64_t>(count("base_seed"));
        if (root.contains("objectives")) {
            m.objectives.clear();
            for (const auto& s : strings("objectives")) {
                m.objectives.push_back(parse_objective(s));
            }
        }
        if (root.contains("time_limit")) {
            const auto& t = root.at("time_limit");
            if (t.is_null()) {
                m.time_limit_s.reset();
            } else if (t.is_number() && t.get<double>() > 0) {
                m.time_limit_s = t.get<double>();
            } else {
                doc.fail("\"time_limit\" must be a positive number or null", {});
            }
        }
        if (root.contains("node_limit")) {
            if (root.at("node_limit").is_null()) m.node_limit.reset();
            else m.node_limit = count("node_limit");
        }
        if (root.contains("swap_duration")) m.swap_duration = static_cast<Time>(count("swap_duration"));
        if (root.contains("jobs")) m.jobs = std::max<std::size_t>(1, count("jobs"));
        if (root.contains("fold")) {
            if (!root.at("fold").is_string()) doc.fail("\"fold\" must be a string", {});
            m.fold = parse_fold_rule(root.at("fold").get<std::string>());
        }
    } catch (const std::invalid_argument& e) {
        doc.fail(e.what(), {});
    }
    return m;
}

enum class Mode { NonLayered, Layered };

inline const char* to_string(Mode m) { return m == Mode::Layered ? "layered" : "non-layered"; }

struct ResultRow {
    std::string instance_id;
    std::string topology;
    int qubits = 0;
    int depth_param = 0;
    std::uint64_t seed = 0;
    std::string mode;       ///< "layered" | "non-layered"
    std::string objective;  ///< "depth" | "swaps"
    Time depth = 0;
    std::int64_t swaps = 0;
    Time unweighted_depth = 0;
    std::string status;  ///< optimal | incumbent | timeout | error
    double wall_time_ms = 0.0;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline constexpr std::string_view kCsvHeader =
    "instance_id,topology,qubits,depth_param,seed,mode,objective,depth,swaps,unweighted_depth,status,wall_time_ms";

inline std::string csv_line(const ResultRow& r) {
    std::ostringstream out;
    out << r.instance_id << ',' << r.topology << ',' << r.qubits << ',' << r.depth_param << ',' << r.seed << ','
        << r.mode << ',' << r.objective << ',' << r.depth << ',' << r.swaps << ',' << r.unweighted_depth << ','
        << r.status << ',';
    out.setf(std::ios::fixed);
    out.precision(3);
    out << r.wall_time_ms;
    return out.str();
}

inline void write_csv(std::ostream& out, std::span<const ResultRow> rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << csv_line(r) << '\n';
    }
}

inline std::vector<ResultRow> read_csv(std::string_view text) {
    std::vector<ResultRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& msg) { throw ParseError("results csv: " + msg, line_no, 1); };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line_no == 1) {
            if (line != kCsvHeader) {
                fail("unexpected header");
            }
            continue;
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::string cell;
        std::istringstream cells(line);
        while (std::getline(cells, cell, ',')) {
            f.push_back(cell);
        }
        if (f.size() != 12) {
            fail("expected 12 fields, found " + std::to_string(f.size()));
        }
        try {
            ResultRow r;
            r.instance_id = f[0];
            r.topology = f[1];
            r.qubits = std::stoi(f[2]);
            r.depth_param = std::stoi(f[3]);
            r.seed = std::stoull(f[4]);
            r.mode = f[5];
            r.objective = f[6];
            r.depth = std::stoll(f[7]);
            r.swaps = std::stoll(f[8]);
            r.unweighted_depth = std::stoll(f[9]);
            r.status = f[10];
            r.wall_time_ms = std::stod(f[11]);
            if (r.mode != "layered" && r.mode != "non-layered") {
                fail("unknown mode \"" + r.mode + "\"");
            }
            rows.push_back(std::move(r));
        } catch (const std::logic_error&) {
            fail("malformed number");
        }
    }
    if (line_no == 0) {
        fail("empty file");
    }
    return rows;
}

inline SolverConfig solver_config_for(Objective objective, Mode mode, const MatrixSpec& m) {
    SolverConfig c = objective == Objective::Depth ? SolverConfig::depth() : SolverConfig::swaps();
    c.layered = mode == Mode::Layered;
    c.time_limit_s = m.time_limit_s;
    c.node_limit = m.node_limit;
    c.swap_duration = m.swap_duration;
    return c;
}

inline ResultRow run_instance(const InstanceSpec& spec, Objective objective, Mode mode, const MatrixSpec& m) {
    ResultRow row;
    row.instance_id = spec.id();
    row.topology = spec.topology.label();
    row.qubits = spec.num_qubits;
    row.depth_param = spec.depth_param;
    row.seed = spec.seed;
    row.mode = to_string(mode);
    row.objective = to_string(objective);
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto circuit = gen_random_circuit(spec);
        auto graph = build_topology(spec.topology);
        auto result = solve(circuit, graph, solver_config_for(objective, mode, m));
        if (result.schedule) {
            auto met = metrics(*result.schedule);
            row.depth = met.depth;
            row.swaps = static_cast<std::int64_t>(met.swaps);
            row.unweighted_depth = met.unweighted_depth;
        }
        switch (result.status) {
            case SolveStatus::Optimal: row.status = "optimal"; break;
            case SolveStatus::Incumbent: row.status = "incumbent"; break;
            case SolveStatus::NoSolution: row.status = result.stats.limit_hit ? "timeout" : "error"; break;
        }
    } catch (const std::exception&) {
        row.status = "error";
    }
    row.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

/**
 * Solves every instance x objective x {non-layered, layered}. Rows come out in
 * matrix order whatever the thread count; @p sink (if set) receives each row
 * as soon as all rows before it are done.
 */
inline std::vector<ResultRow> run_matrix(const MatrixSpec& m,
                                         const std::function<void(const ResultRow&)>& sink = {}) {
    struct Task {
        const InstanceSpec* spec;
        Objective objective;
        Mode mode;
    };
    const auto instances = m.instances();
    std::vector<Task> tasks;
    for (const auto& inst : instances) {
        for (auto obj : m.objectives) {
            for (auto mode : {Mode::NonLayered, Mode::Layered}) {
                tasks.push_back({&inst, obj, mode});
            }
        }
    }

    std::vector<std::optional<ResultRow>> slots(tasks.size());
    std::vector<ResultRow> rows;
    rows.reserve(tasks.size());
    std::mutex mutex;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++) {
            auto row = run_instance(*tasks[k].spec, tasks[k].objective, tasks[k].mode, m);
            std::lock_guard lock(mutex);
            slots[k] = std::move(row);
            while (rows.size() < slots.size() && slots[rows.size()]) {
                rows.push_back(std::move(*slots[rows.size()]));
                if (sink) {
                    sink(rows.back());
                }
            }
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(m.jobs, tasks.size()));
    std::vector<std::jthread> pool;
    for (std::size_t j = 1; j < jobs; ++j) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();
    return rows;
}

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

enum class Metric { Depth, Swaps, Unweighted };

inline Metric parse_metric(std::string_view text) {
    if (text == "depth") return Metric::Depth;
    if (text == "swaps") return Metric::Swaps;
    if (text == "unweighted") return Metric::Unweighted;
    throw std::invalid_argument("unknown metric \"" + std::string(text) + "\" (expected depth, swaps or unweighted)");
}

inline std::int64_t metric_value(const ResultRow& r, Metric m) {
    switch (m) {
        case Metric::Depth: return r.depth;
        case Metric::Swaps: return r.swaps;
        case Metric::Unweighted: return r.unweighted_depth;
    }
    return 0;
}

struct PairedValue {
    std::string instance_id;
    std::string objective;
    std::int64_t non_layered = 0;
    std::int64_t layered = 0;
};

/// Instance/objective pairs where both modes finished optimally, sorted by
/// instance id then objective.
inline std::vector<PairedValue> paired_optimal(std::span<const ResultRow> rows, Metric metric) {
    std::map<std::pair<std::string, std::string>, std::pair<const ResultRow*, const ResultRow*>> by_key;
    for (const auto& r : rows) {
        auto& slot = by_key[{r.instance_id, r.objective}];
        (r.mode == "layered" ? slot.second : slot.first) = &r;
    }
    std::vector<PairedValue> out;
    for (const auto& [key, pair] : by_key) {
        auto [nl, l] = pair;
        if (nl && l && nl->status == "optimal" && l->status == "optimal") {
            out.push_back({key.first, key.second, metric_value(*nl, metric), metric_value(*l, metric)});
        }
    }
    return out;
}

struct RmdSummary {
    std::size_t pairs = 0;          ///< N: instance/objective keys seen
    std::size_t solved = 0;         ///< N_S: both modes optimal, y_L != 0
    std::size_t equal = 0;          ///< N_eq
    std::size_t zero_layered = 0;   ///< pairs excluded because y_L = 0
    std::size_t negative = 0;       ///< pairs with y_NL > y_L
    double rmd = 0.0;               ///< percent
    double rmd_neq = 0.0;           ///< percent, over disagreeing pairs
};

inline RmdSummary rmd(std::span<const ResultRow> rows, Metric metric) {
    RmdSummary s;
    {
        std::vector<std::pair<std::string, std::string>> keys;
        for (const auto& r : rows) keys.emplace_back(r.instance_id, r.objective);
        std::sort(keys.begin(), keys.end());
        s.pairs = static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
    }
    double sum = 0.0;
    for (const auto& p : paired_optimal(rows, metric)) {
        if (p.layered == 0) {
            ++s.zero_layered;
            continue;
        }
        ++s.solved;
        double dev = static_cast<double>(p.layered - p.non_layered) / static_cast<double>(p.layered);
        sum += dev;
        if (p.layered == p.non_layered) {
            ++s.equal;
        }
        if (p.non_layered > p.layered) {
            ++s.negative;
        }
    }
    if (s.solved > 0) {
        s.rmd = 100.0 * sum / static_cast<double>(s.solved);
    }
    if (s.solved > s.equal) {
        s.rmd_neq = 100.0 * sum / static_cast<double>(s.solved - s.equal);
    }
    return s;
}

/// Two-column parity data: non-layered value, layered value.
inline void parity_export(std::ostream& out, std::span<const ResultRow> rows, Metric metric) {
    out << "non_layered,layered\n";
    for (const auto& p : paired_optimal(rows, metric)) {
        out << p.non_layered << ',' << p.layered << '\n';
    }
}

}  // namespace qmap
