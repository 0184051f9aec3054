#pragma once

// Command-line front end. dispatch() takes the output streams as parameters so
// tests can drive it without a subprocess.

#include "qmap/qmap.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qmap::cli {

enum ExitCode : int {
    kSuccess = 0,
    kNoSolution = 1,
    kIncumbentOnly = 2,
    kViolation = 3,
    kUsage = 4,
    kInternal = 5,
};

/// Bad input the user can fix (missing file, malformed document, bad flag value).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size()))) {
        throw UsageError("cannot write " + path);
    }
}

struct GlobalOptions {
    int verbosity = 0;
    std::string format = "human";
    std::optional<std::uint64_t> seed;

    [[nodiscard]] bool structured() const { return format == "structured"; }
};

struct GraphSource {
    std::string graph_file;
    std::string topology;

    void add_to(CLI::App* cmd) {
        auto* g = cmd->add_option("--graph", graph_file, "Hardware graph file (JSON)");
        auto* t = cmd->add_option("--topology", topology, "Built-in topology: linear:N, grid:RxC or y:N");
        g->excludes(t);
    }

    [[nodiscard]] HardwareGraph load() const {
        if (!graph_file.empty()) {
            return parse_graph(read_file(graph_file));
        }
        if (!topology.empty()) {
            return build_topology(topology);
        }
        throw UsageError("one of --graph or --topology is required");
    }
};

class Dispatcher {
public:
    Dispatcher(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(int argc, const char* const* argv) {
        CLI::App app{"Exact qubit mapping and routing by branch and bound", "qmap"};
        app.require_subcommand(1);
        app.add_flag("-v,--verbose", global_.verbosity, "More diagnostics on stderr (repeatable)");
        app.add_option("--format", global_.format, "Output format")
            ->check(CLI::IsMember({"human", "structured"}))
            ->capture_default_str();
        app.add_option("--seed", global_seed_, "Seed override for gen and bench");

        add_solve(app);
        add_validate(app);
        add_oracle(app);
        add_gen(app);
        add_bench(app);
        add_report(app);

        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp&) {
            CLI::App* target = &app;
            while (!target->get_subcommands().empty()) {
                target = target->get_subcommands().front();
            }
            out_ << target->help();
            return kSuccess;
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) {
                return kSuccess;
            }
            err_ << "error: " << e.what() << "\n";
            return kUsage;
        }
        if (global_seed_) {
            global_.seed = *global_seed_;
        }
        try {
            return action_();
        } catch (const UsageError& e) {
            err_ << "error: " << e.what() << "\n";
            return kUsage;
        } catch (const ParseError& e) {
            err_ << "error: " << e.what() << "\n";
            return kUsage;
        } catch (const std::invalid_argument& e) {
            err_ << "error: " << e.what() << "\n";
            return kUsage;
        } catch (const std::out_of_range& e) {
            err_ << "error: " << e.what() << "\n";
            return kUsage;
        } catch (const std::exception& e) {
            err_ << "internal error: " << e.what() << "\n";
            return kInternal;
        }
    }

private:
    using json = nlohmann::json;

    void emit(const json& record) { out_ << record.dump() << "\n"; }

    void log(int level, const std::string& msg) {
        if (global_.verbosity >= level) {
            err_ << msg << "\n";
        }
    }

    // -- solve ---------------------------------------------------------------

    struct SolveArgs {
        std::string circuit, out, stats, objective = "depth", w_depth = "1", w_swaps = "0";
        GraphSource graph;
        bool layered = false;
        std::optional<std::size_t> beam_width, node_limit;
        std::optional<double> time_limit;
        Time swap_duration = kDefaultSwapDuration;
    } solve_;

    void add_solve(CLI::App& app) {
        auto* cmd = app.add_subcommand("solve", "Find a minimum-cost schedule");
        cmd->add_option("--circuit", solve_.circuit, "Circuit file (JSON)")->required();
        solve_.graph.add_to(cmd);
        cmd->add_option("--objective", solve_.objective, "depth, swaps, or combined (uses the weights)")
            ->check(CLI::IsMember({"depth", "swaps", "combined"}))
            ->capture_default_str();
        cmd->add_option("--w-depth", solve_.w_depth, "Depth weight for --objective combined (e.g. 1, 0.5, 3/4)")
            ->capture_default_str();
        cmd->add_option("--w-swaps", solve_.w_swaps, "SWAP-count weight for --objective combined")->capture_default_str();
        cmd->add_flag("--layered", solve_.layered, "Forbid starting a layer before the previous one is scheduled");
        cmd->add_option("--beam-width", solve_.beam_width, "Keep only the best B nodes per level (heuristic)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--time-limit", solve_.time_limit, "Wall-clock limit in seconds")->check(CLI::PositiveNumber);
        cmd->add_option("--node-limit", solve_.node_limit, "Maximum node expansions")->check(CLI::PositiveNumber);
        cmd->add_option("--swap-duration", solve_.swap_duration, "SWAP duration")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->add_option("--out", solve_.out, "Schedule output file")->required();
        cmd->add_option("--stats", solve_.stats, "Statistics output file (JSON)");
        cmd->callback([this] { action_ = [this] { return do_solve(); }; });
    }

    int do_solve() {
        auto circuit = parse_circuit(read_file(solve_.circuit));
        auto graph = solve_.graph.load();
        SolverConfig config;
        if (solve_.objective == "depth") {
            config = SolverConfig::depth();
        } else if (solve_.objective == "swaps") {
            config = SolverConfig::swaps();
        } else {
            config.w_depth = Rational::parse(solve_.w_depth);
            config.w_swaps = Rational::parse(solve_.w_swaps);
        }
        config.layered = solve_.layered;
        config.beam_width = solve_.beam_width;
        config.time_limit_s = solve_.time_limit;
        config.node_limit = solve_.node_limit;
        config.swap_duration = solve_.swap_duration;
        if (global_.structured()) {
            config.on_event = [this](const SearchEvent& e) {
                if (e.kind == SearchEventKind::Finished) {
                    return;
                }
                emit({{"event", e.kind == SearchEventKind::Incumbent ? "incumbent" : "progress"},
                      {"nodes_expanded", e.nodes_expanded},
                      {"value", e.value.to_string()},
                      {"elapsed_s", e.elapsed_s}});
            };
        } else if (global_.verbosity > 0) {
            config.on_event = [this](const SearchEvent& e) {
                if (e.kind == SearchEventKind::Incumbent) {
                    log(1, "incumbent " + e.value.to_string() + " after " + std::to_string(e.nodes_expanded) +
                               " expansions");
                }
            };
        }

        auto result = solve(circuit, graph, config);

        json stats = {{"status", to_string(result.status)},
                      {"objective_value", result.objective_value.to_string()},
                      {"root_bound", result.root_bound.to_string()},
                      {"proven_optimal", result.proven_optimal},
                      {"nodes_expanded", result.stats.nodes_expanded},
                      {"nodes_inserted", result.stats.nodes_inserted},
                      {"nodes_pruned", result.stats.nodes_pruned},
                      {"fronts_replaced", result.stats.fronts_replaced},
                      {"beam_restarts", result.stats.beam_restarts},
                      {"limit_hit", result.stats.limit_hit},
                      {"wall_time_s", result.stats.wall_time_s}};
        if (result.schedule) {
            auto m = metrics(*result.schedule);
            stats["depth"] = m.depth;
            stats["swaps"] = m.swaps;
            stats["unweighted_depth"] = m.unweighted_depth;
            write_file(solve_.out, write_schedule(*result.schedule));
        }
        if (!solve_.stats.empty()) {
            write_file(solve_.stats, stats.dump(2) + "\n");
        }
        if (global_.structured()) {
            json record = stats;
            record["event"] = "result";
            emit(record);
        } else {
            out_ << "status: " << to_string(result.status) << "\n";
            if (result.schedule) {
                out_ << "objective: " << result.objective_value.to_string() << "\n"
                     << "depth: " << stats["depth"] << "  swaps: " << stats["swaps"]
                     << "  unweighted depth: " << stats["unweighted_depth"] << "\n";
            }
            out_ << "nodes expanded: " << result.stats.nodes_expanded << "\n";
        }
        switch (result.status) {
            case SolveStatus::Optimal: return kSuccess;
            case SolveStatus::Incumbent: return kIncumbentOnly;
            case SolveStatus::NoSolution: break;
        }
        err_ << (result.stats.limit_hit ? "limit reached before any schedule was found\n" : "no schedule exists\n");
        return kNoSolution;
    }

    // -- validate ------------------------------------------------------------

    struct ValidateArgs {
        std::string circuit, schedule;
        GraphSource graph;
        Time swap_unit_cost = 1;
    } validate_;

    void add_validate(CLI::App& app) {
        auto* cmd = app.add_subcommand("validate", "Check a schedule against a circuit and a hardware graph");
        cmd->add_option("--circuit", validate_.circuit, "Circuit file (JSON)")->required();
        validate_.graph.add_to(cmd);
        cmd->add_option("--schedule", validate_.schedule, "Schedule file (JSON)")->required();
        cmd->add_option("--swap-unit-cost", validate_.swap_unit_cost, "SWAP length in the unweighted depth")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->callback([this] { action_ = [this] { return do_validate(); }; });
    }

    int do_validate() {
        auto circuit = parse_circuit(read_file(validate_.circuit));
        auto graph = validate_.graph.load();
        auto schedule = parse_schedule(read_file(validate_.schedule), circuit);
        auto r = validate(schedule, circuit, graph);
        if (!r.ok()) {
            const auto& v = *r.violation;
            if (global_.structured()) {
                emit({{"event", "violation"},
                      {"category", to_string(v.kind)},
                      {"op_index", v.op_index},
                      {"message", v.message}});
            } else {
                out_ << "invalid: " << to_string(v.kind) << " violation at op " << v.op_index + 1 << ": "
                     << v.message << "\n";
            }
            return kViolation;
        }
        auto m = metrics(schedule, validate_.swap_unit_cost);
        std::vector<int> initial;
        for (Node v : r.initial_assignment) {
            initial.push_back(v < 0 ? 0 : v + 1);
        }
        if (global_.structured()) {
            emit({{"event", "valid"},
                  {"depth", m.depth},
                  {"swaps", m.swaps},
                  {"unweighted_depth", m.unweighted_depth},
                  {"initial_assignment", initial}});
        } else {
            out_ << "valid\ndepth: " << m.depth << "  swaps: " << m.swaps << "  unweighted depth: " << m.unweighted_depth
                 << "\ninitial assignment:";
            for (std::size_t q = 0; q < initial.size(); ++q) {
                out_ << " q" << q + 1 << "->" << (initial[q] == 0 ? std::string("-") : std::to_string(initial[q]));
            }
            out_ << "\n";
        }
        return kSuccess;
    }

    // -- oracle --------------------------------------------------------------

    struct OracleArgs {
        std::string circuit, objective = "depth", out;
        GraphSource graph;
        std::size_t max_swaps = 2;
        bool widen = false;
        Time swap_duration = kDefaultSwapDuration;
    } oracle_;

    void add_oracle(CLI::App& app) {
        auto* cmd = app.add_subcommand("oracle", "Brute-force optimum for tiny instances");
        cmd->add_option("--circuit", oracle_.circuit, "Circuit file (JSON)")->required();
        oracle_.graph.add_to(cmd);
        cmd->add_option("--objective", oracle_.objective, "depth or swaps")
            ->check(CLI::IsMember({"depth", "swaps"}))
            ->capture_default_str();
        cmd->add_option("--max-swaps", oracle_.max_swaps, "Cap on SWAPs per schedule")->capture_default_str();
        cmd->add_flag("--widen", oracle_.widen, "Raise the cap from --max-swaps until it no longer binds");
        cmd->add_option("--swap-duration", oracle_.swap_duration, "SWAP duration")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->add_option("--out", oracle_.out, "Write the witness schedule here");
        cmd->callback([this] { action_ = [this] { return do_oracle(); }; });
    }

    int do_oracle() {
        auto circuit = parse_circuit(read_file(oracle_.circuit));
        auto graph = oracle_.graph.load();
        OracleConfig config{oracle_.max_swaps, parse_objective(oracle_.objective), oracle_.swap_duration};
        auto r = oracle_.widen ? exhaustive_solve_uncapped(circuit, graph, config, oracle_.max_swaps,
                                                           oracle_.max_swaps + 8)
                               : exhaustive_solve(circuit, graph, config);
        if (r.witness && !oracle_.out.empty()) {
            write_file(oracle_.out, write_schedule(*r.witness));
        }
        if (global_.structured()) {
            json record = {{"event", "result"}, {"status", to_string(r.status)}, {"cap", r.cap}, {"nodes", r.nodes}};
            if (r.witness) {
                record["value"] = r.value;
            }
            emit(record);
        } else {
            out_ << "status: " << to_string(r.status) << " (swap cap " << r.cap << ")\n";
            if (r.witness) {
                out_ << oracle_.objective << ": " << r.value << "\n";
            }
        }
        switch (r.status) {
            case OracleStatus::Optimal: return kSuccess;
            case OracleStatus::CapExhausted: return r.witness ? kIncumbentOnly : kNoSolution;
            case OracleStatus::Infeasible: break;
        }
        return kNoSolution;
    }

    // -- gen -----------------------------------------------------------------

    struct GenArgs {
        std::string topology = "linear:4", out, fold = "sum";
        int qubits = 4;
        int depth_param = 6;
        std::optional<std::uint64_t> seed;
    } gen_;

    void add_gen(CLI::App& app) {
        auto* cmd = app.add_subcommand("gen", "Generate a seeded random circuit");
        cmd->add_option("--topology", gen_.topology, "Target topology (checked against --qubits)")->capture_default_str();
        cmd->add_option("--qubits", gen_.qubits, "Number of virtual qubits")->capture_default_str();
        cmd->add_option("--depth-param", gen_.depth_param, "Number of two-qubit rounds")->capture_default_str();
        cmd->add_option("--seed", gen_.seed, "Generator seed (default: global --seed, else 1)");
        cmd->add_option("--fold", gen_.fold, "Single-qubit folding rule")
            ->check(CLI::IsMember({"sum", "max"}))
            ->capture_default_str();
        cmd->add_option("--out", gen_.out, "Circuit output file")->required();
        cmd->callback([this] { action_ = [this] { return do_gen(); }; });
    }

    int do_gen() {
        InstanceSpec spec;
        spec.topology = parse_topology(gen_.topology);
        spec.num_qubits = gen_.qubits;
        spec.depth_param = gen_.depth_param;
        spec.seed = gen_.seed.value_or(global_.seed.value_or(1));
        spec.fold = parse_fold_rule(gen_.fold);
        if (spec.num_qubits > spec.topology.size) {
            throw UsageError("--qubits exceeds the node count of " + spec.topology.label());
        }
        auto circuit = gen_random_circuit(spec);
        write_file(gen_.out, write_circuit(circuit));
        if (global_.structured()) {
            emit({{"event", "generated"}, {"instance_id", spec.id()}, {"gates", circuit.size()}});
        } else {
            out_ << spec.id() << ": " << circuit.size() << " gates\n";
        }
        return kSuccess;
    }

    // -- bench ---------------------------------------------------------------

    struct BenchArgs {
        std::string matrix, out;
        std::optional<std::size_t> jobs, node_limit;
        std::optional<double> time_limit;
    } bench_;

    void add_bench(CLI::App& app) {
        auto* cmd = app.add_subcommand("bench", "Run the layered vs. non-layered experiment matrix");
        cmd->add_option("--matrix", bench_.matrix, "Matrix file (JSON)")->required();
        cmd->add_option("--out", bench_.out, "Results CSV")->required();
        cmd->add_option("--jobs", bench_.jobs, "Concurrent solves (overrides the matrix file)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--time-limit", bench_.time_limit, "Per-solve limit in seconds (overrides the matrix file)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--node-limit", bench_.node_limit, "Per-solve expansion limit (overrides the matrix file)")
            ->check(CLI::PositiveNumber);
        cmd->callback([this] { action_ = [this] { return do_bench(); }; });
    }

    int do_bench() {
        auto m = parse_matrix(read_file(bench_.matrix));
        if (bench_.jobs) m.jobs = *bench_.jobs;
        if (bench_.time_limit) m.time_limit_s = bench_.time_limit;
        if (bench_.node_limit) m.node_limit = bench_.node_limit;
        if (global_.seed) m.base_seed = *global_.seed;

        std::ofstream csv(bench_.out, std::ios::binary);
        if (!csv) {
            throw UsageError("cannot write " + bench_.out);
        }
        csv << kCsvHeader << '\n' << std::flush;
        std::size_t done = 0;
        auto rows = run_matrix(m, [&](const ResultRow& row) {
            csv << csv_line(row) << '\n' << std::flush;
            ++done;
            if (global_.structured()) {
                emit({{"event", "row"}, {"index", done}, {"instance_id", row.instance_id}, {"mode", row.mode},
                      {"objective", row.objective}, {"status", row.status}});
            } else {
                log(1, std::to_string(done) + " " + row.instance_id + " " + row.mode + " " + row.objective + " " +
                           row.status);
            }
        });
        std::size_t optimal = 0;
        for (const auto& r : rows) {
            optimal += r.status == "optimal" ? 1 : 0;
        }
        if (global_.structured()) {
            emit({{"event", "result"}, {"rows", rows.size()}, {"optimal", optimal}});
        } else {
            out_ << rows.size() << " rows (" << optimal << " optimal) written to " << bench_.out << "\n";
        }
        return kSuccess;
    }

    // -- report --------------------------------------------------------------

    struct ReportArgs {
        std::string in, metric = "depth", objective, parity;
        bool rmd = false;
    } report_;

    void add_report(CLI::App& app) {
        auto* cmd = app.add_subcommand("report", "Aggregate a results CSV");
        cmd->add_option("--in", report_.in, "Results CSV from bench")->required();
        cmd->add_option("--metric", report_.metric, "depth, swaps or unweighted")
            ->check(CLI::IsMember({"depth", "swaps", "unweighted"}))
            ->capture_default_str();
        cmd->add_option("--objective", report_.objective, "Only rows solved for this objective")
            ->check(CLI::IsMember({"depth", "swaps"}));
        cmd->add_flag("--rmd", report_.rmd, "Print relative mean deviation of layered vs. non-layered");
        cmd->add_option("--parity", report_.parity, "Write non-layered/layered value pairs to this CSV");
        cmd->callback([this] { action_ = [this] { return do_report(); }; });
    }

    int do_report() {
        auto rows = read_csv(read_file(report_.in));
        if (!report_.objective.empty()) {
            std::erase_if(rows, [&](const ResultRow& r) { return r.objective != report_.objective; });
        }
        auto metric = parse_metric(report_.metric);
        if (!report_.parity.empty()) {
            std::ostringstream parity;
            parity_export(parity, rows, metric);
            write_file(report_.parity, parity.str());
        }
        if (report_.rmd || report_.parity.empty()) {
            auto s = rmd(rows, metric);
            if (global_.structured()) {
                emit({{"event", "rmd"}, {"metric", report_.metric}, {"N", s.pairs}, {"N_S", s.solved},
                      {"N_eq", s.equal}, {"excluded_zero", s.zero_layered}, {"negative", s.negative},
                      {"rmd_percent", s.rmd}, {"rmd_neq_percent", s.rmd_neq}});
            } else {
                std::ostringstream line;
                line.setf(std::ios::fixed);
                line.precision(2);
                line << "metric " << report_.metric << ": N=" << s.pairs << " N_S=" << s.solved << " N_eq=" << s.equal
                     << " RMD=" << s.rmd << "% RMD_neq=" << s.rmd_neq << "%";
                if (s.zero_layered > 0) {
                    line << " (" << s.zero_layered << " pairs with layered value 0 excluded)";
                }
                out_ << line.str() << "\n";
            }
        }
        return kSuccess;
    }

    std::ostream& out_;
    std::ostream& err_;
    GlobalOptions global_;
    std::optional<std::uint64_t> global_seed_;
    std::function<int()> action_;
};

inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return Dispatcher(out, err).run(argc, argv);
}

}  // namespace qmap::cli
