// Solves the four-qubit example circuit on a 4-node line, prints the schedule
// and compares it with the brute-force optimum.

#include "qmap/qmap.hpp"

#include <iostream>

int main() {
    using namespace qmap;

    Circuit circuit(4, {{0, 1, 2}, {2, 3, 3}, {3, 0, 1}});
    HardwareGraph line = linear_topology(4);

    for (auto [name, config] : {std::pair{"depth", SolverConfig::depth()}, std::pair{"swaps", SolverConfig::swaps()}}) {
        SolveResult result = solve(circuit, line, config);
        auto check = validate(*result.schedule, circuit, line);
        auto oracle = exhaustive_solve_uncapped(
            circuit, line, {0, name == std::string_view("depth") ? Objective::Depth : Objective::Swaps});

        std::cout << name << " objective: " << result.objective_value.to_string() << " ("
                  << to_string(result.status) << ", oracle " << oracle.value << ", "
                  << result.stats.nodes_expanded << " expansions)\n";
        std::cout << "  valid: " << (check.ok() ? "yes" : "no") << ", depth " << check.metrics.depth << ", swaps "
                  << check.metrics.swaps << "\n";
        for (const auto& op : result.schedule->ops) {
            std::cout << "  t=" << op.start << "  " << (op.is_swap() ? "SWAP" : "g" + std::to_string(op.gate + 1))
                      << " on (" << op.edge.v + 1 << "," << op.edge.w + 1 << ")\n";
        }
    }
}
