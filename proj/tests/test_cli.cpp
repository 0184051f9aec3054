#include "../tools/qmap_cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const fs::path kSamples{QMAP_SAMPLES_DIR};

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run qmap_run(std::vector<std::string> args) {
    args.insert(args.begin(), "qmap");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = qmap::cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qmap_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    static std::string sample(const std::string& name) { return (kSamples / "worked_example" / name).string(); }

    fs::path dir_;
};

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_F(Cli, ValidateWorkedExampleSchedules) {
    auto s1 = qmap_run({"validate", "--circuit", sample("circuit.json"), "--graph", sample("linear4.json"),
                        "--schedule", sample("s1.json")});
    EXPECT_EQ(s1.code, 3);
    EXPECT_NE(s1.out.find("assignment"), std::string::npos);
    EXPECT_NE(s1.out.find("edge (4,1) does not exist in the hardware graph"), std::string::npos);

    auto s2 = qmap_run({"validate", "--circuit", sample("circuit.json"), "--topology", "linear:4", "--schedule",
                        sample("s2.json")});
    EXPECT_EQ(s2.code, 3);
    EXPECT_NE(s2.out.find("routing"), std::string::npos);

    auto s3 = qmap_run({"validate", "--circuit", sample("circuit.json"), "--topology", "linear:4", "--schedule",
                        sample("s3.json")});
    EXPECT_EQ(s3.code, 0);
    EXPECT_NE(s3.out.find("15"), std::string::npos);

    auto structured = qmap_run({"--format", "structured", "validate", "--circuit", sample("circuit.json"),
                                "--topology", "linear:4", "--schedule", sample("s1.json")});
    EXPECT_EQ(structured.code, 3);
    auto j = nlohmann::json::parse(structured.out.substr(0, structured.out.find('\n')));
    EXPECT_EQ(j.at("category"), "assignment");
}

TEST_F(Cli, SolveWritesValidSchedule) {
    auto r = qmap_run({"solve", "--circuit", sample("circuit.json"), "--topology", "linear:4", "--out",
                       path("sched.json"), "--stats", path("stats.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto stats = nlohmann::json::parse(slurp(path("stats.json")));
    EXPECT_EQ(stats.at("status"), "optimal");
    auto v = qmap_run({"validate", "--circuit", sample("circuit.json"), "--topology", "linear:4", "--schedule",
                       path("sched.json")});
    EXPECT_EQ(v.code, 0) << v.out;

    auto structured = qmap_run({"--format", "structured", "solve", "--circuit", sample("circuit.json"),
                                "--topology", "linear:4", "--objective", "combined", "--w-depth", "1", "--w-swaps",
                                "1/2", "--out", path("sched2.json")});
    ASSERT_EQ(structured.code, 0) << structured.err;
    std::istringstream lines(structured.out);
    std::string line, last;
    while (std::getline(lines, line)) {
        auto j = nlohmann::json::parse(line);
        EXPECT_TRUE(j.contains("event"));
        last = line;
    }
    EXPECT_EQ(nlohmann::json::parse(last).at("event"), "result");
}

TEST_F(Cli, SolveUnderNodeLimitReportsIncumbentOrNothing) {
    ASSERT_EQ(qmap_run({"gen", "--qubits", "5", "--topology", "linear:5", "--depth-param", "12", "--seed", "3",
                        "--out", path("c.json")})
                  .code,
              0);
    auto r = qmap_run({"solve", "--circuit", path("c.json"), "--topology", "linear:5", "--node-limit", "2", "--out",
                       path("s.json")});
    EXPECT_TRUE(r.code == 1 || r.code == 2) << r.code;
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(qmap_run({"frobnicate"}).code, 4);
    EXPECT_EQ(qmap_run({}).code, 4);
    EXPECT_EQ(qmap_run({"solve", "--bogus"}).code, 4);
    EXPECT_EQ(qmap_run({"solve", "--circuit", sample("circuit.json"), "--out", path("x.json")}).code, 4);
    EXPECT_EQ(qmap_run({"solve", "--circuit", sample("circuit.json"), "--topology", "ring:4", "--out",
                        path("x.json")})
                  .code,
              4);
    EXPECT_EQ(qmap_run({"solve", "--circuit", path("missing.json"), "--topology", "linear:4", "--out",
                        path("x.json")})
                  .code,
              4);
    std::ofstream(path("bad.json")) << "{\"num_qubits\": 2, \"gates\": [[1, 1]]}";
    auto bad = qmap_run({"solve", "--circuit", path("bad.json"), "--topology", "linear:4", "--out", path("x.json")});
    EXPECT_EQ(bad.code, 4);
    EXPECT_FALSE(bad.err.empty());
}

TEST_F(Cli, HelpListsFlags) {
    std::vector<std::pair<std::string, std::vector<std::string>>> expected{
        {"solve", {"--circuit", "--graph", "--topology", "--objective", "--layered", "--beam-width", "--time-limit"}},
        {"validate", {"--schedule", "--swap-unit-cost"}},
        {"oracle", {"--max-swaps", "--widen"}},
        {"gen", {"--qubits", "--depth-param", "--seed", "--fold"}},
        {"bench", {"--matrix", "--jobs"}},
        {"report", {"--metric", "--rmd", "--parity"}},
    };
    for (const auto& [cmd, flags] : expected) {
        auto r = qmap_run({cmd, "--help"});
        EXPECT_EQ(r.code, 0);
        for (const auto& f : flags) EXPECT_NE(r.out.find(f), std::string::npos) << cmd << " " << f;
    }
    auto top = qmap_run({"--help"});
    EXPECT_EQ(top.code, 0);
    EXPECT_NE(top.out.find("bench"), std::string::npos);
}

TEST_F(Cli, OracleMatchesSolver) {
    auto r = qmap_run({"--format", "structured", "oracle", "--circuit", sample("circuit.json"), "--topology",
                       "linear:4", "--out", path("w.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
    EXPECT_EQ(j.at("value"), 4);
    EXPECT_EQ(qmap_run({"validate", "--circuit", sample("circuit.json"), "--topology", "linear:4", "--schedule",
                        path("w.json")})
                  .code,
              0);
}

TEST_F(Cli, GenIsDeterministic) {
    ASSERT_EQ(qmap_run({"gen", "--qubits", "4", "--depth-param", "8", "--seed", "11", "--out", path("a.json")}).code,
              0);
    ASSERT_EQ(qmap_run({"--seed", "11", "gen", "--qubits", "4", "--depth-param", "8", "--out", path("b.json")}).code,
              0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    auto c = qmap::parse_circuit(slurp(path("a.json")));
    EXPECT_EQ(c.size(), 8u);
    EXPECT_EQ(qmap_run({"gen", "--qubits", "5", "--topology", "linear:4", "--out", path("c.json")}).code, 4);
}

TEST_F(Cli, BenchThenReport) {
    std::ofstream(path("m.json")) << R"({"topologies": ["linear"], "qubits": [4], "depth_params": [4],
        "seeds": 3, "objectives": ["depth"], "time_limit": null, "node_limit": 100000})";
    auto b = qmap_run({"bench", "--matrix", path("m.json"), "--out", path("r.csv")});
    ASSERT_EQ(b.code, 0) << b.err;
    auto rows = qmap::read_csv(slurp(path("r.csv")));
    EXPECT_EQ(rows.size(), 6u);

    auto rep = qmap_run({"report", "--in", path("r.csv"), "--rmd", "--parity", path("p.csv")});
    ASSERT_EQ(rep.code, 0) << rep.err;
    EXPECT_NE(rep.out.find("RMD"), std::string::npos);
    auto parity = slurp(path("p.csv"));
    EXPECT_EQ(std::count(parity.begin(), parity.end(), '\n'), 4);
}
