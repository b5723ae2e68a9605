#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
};

Result run_cli(const std::string& args) {
    const std::string cmd = std::string(RFSWARM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("rfswarm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    fs::path write_config(const std::string& name, const std::string& text) {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }
    static std::string config(const std::string& name) { return (fs::path(RFSWARM_CONFIG_DIR) / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, RunWritesLogsForBaseCase) {
    const fs::path out = dir_ / "out";
    const Result r = run_cli("run --config " + config("base.ini") + " --out " + out.string() + " --emit-intensity --quiet");
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(first_line(out / "base_1.csv"), "step,robot,node,reward_size,estimated_count,detected_count");
    EXPECT_EQ(first_line(out / "base_1_encounters.csv"), "step,robot_a,robot_b,node");
    EXPECT_EQ(first_line(out / "base_1_rewards.csv"), "robot,origin,sequence,x,y,weight");
    const std::string steps = slurp(out / "base_1.csv");
    EXPECT_EQ(std::count(steps.begin(), steps.end(), '\n'), 1 + 300 * 3);
    for (int robot = 0; robot < 3; ++robot) {
        EXPECT_EQ(first_line(out / ("base_1_intensity_r" + std::to_string(robot) + ".csv")), "x,y,intensity");
    }
    const auto j = nlohmann::json::parse(slurp(out / "base_1_summary.json"));
    for (const char* key : {"mean_inter_arrival_steps", "mean_reward_pct", "convergence_step", "position_rmse_m"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
}

TEST_F(Cli, HorizonOneRun) {
    const fs::path cfg = write_config("h1.ini", "[scenario]\nname = tiny\n[run]\nhorizon = 1\nseed = 3\n");
    const Result r = run_cli("run --config " + cfg.string() + " --out " + dir_.string() +
                             " --log-measurements --dump-chain");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("tiny: seed 3"), std::string::npos);
    const std::string steps = slurp(dir_ / "tiny_3.csv");
    EXPECT_EQ(std::count(steps.begin(), steps.end(), '\n'), 1 + 3);
    EXPECT_EQ(first_line(dir_ / "tiny_3_measurements.csv"), "step,robot,x,y,is_clutter");
    EXPECT_EQ(first_line(dir_ / "tiny_grid.csv"), "node,x,y");
    EXPECT_EQ(first_line(dir_ / "tiny_matrix.csv"), "row,col,value");
}

TEST_F(Cli, SeedOverrideNamesFiles) {
    const fs::path cfg = write_config("s.ini", "[scenario]\nname = s\n[run]\nhorizon = 5\n");
    ASSERT_EQ(run_cli("run --config " + cfg.string() + " --seed 77 -q --out " + dir_.string()).code, 0);
    EXPECT_TRUE(fs::exists(dir_ / "s_77.csv"));
}

TEST_F(Cli, UnwritableOutputDirectory) {
    const fs::path blocker = dir_ / "blocker";
    std::ofstream(blocker) << "x";
    EXPECT_EQ(run_cli("run --config " + config("base.ini") + " -q --out " + (blocker / "sub").string()).code, 6);
}

TEST_F(Cli, ConfigErrorsHaveDistinctCodes) {
    EXPECT_EQ(run_cli("run --config " + (dir_ / "missing.ini").string()).code, 2);
    const fs::path bad = write_config("bad.ini", "[sensor]\ndetection_probability = lots\n");
    EXPECT_EQ(run_cli("run --config " + bad.string()).code, 3);
    const fs::path invalid = write_config("invalid.ini", "[sensor]\nfov_radius_m = -0.6\n");
    EXPECT_EQ(run_cli("run --config " + invalid.string()).code, 4);
    EXPECT_EQ(run_cli("run").code, 1);
    EXPECT_EQ(run_cli("frobnicate").code, 1);
}

TEST_F(Cli, MonteCarloOutputs) {
    const fs::path cfg = write_config("mc.ini", "[scenario]\nname = mc\n[run]\nhorizon = 50\nruns = 4\n[targets]\npositions = 2.1 2.9\n");
    ASSERT_EQ(run_cli("montecarlo --config " + cfg.string() + " --seed 10 -q --out " + dir_.string()).code, 0);
    const std::string runs = slurp(dir_ / "mc_10_runs.csv");
    EXPECT_EQ(first_line(dir_ / "mc_10_runs.csv"),
              "seed,renewals,mean_inter_arrival_steps,convergence_step,position_rmse_m");
    EXPECT_EQ(std::count(runs.begin(), runs.end(), '\n'), 1 + 4);
    const auto j = nlohmann::json::parse(slurp(dir_ / "mc_10_summary.json"));
    EXPECT_EQ(j["runs"].get<int>(), 4);
    ASSERT_EQ(run_cli("montecarlo --config " + cfg.string() + " --seed 10 --runs 2 -q --out " + dir_.string()).code, 0);
    EXPECT_EQ(nlohmann::json::parse(slurp(dir_ / "mc_10_summary.json"))["runs"].get<int>(), 2);
}

TEST_F(Cli, OracleOnThreeNodePath) {
    const fs::path cfg = write_config("path.ini", "[grid]\nkind = path\npath_nodes = 3\n[robots]\ncount = 2\n");
    const Result r = run_cli("oracle --config " + cfg.string() + " --start 1,1");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto pi = j["stationary"].get<std::vector<double>>();
    ASSERT_EQ(pi.size(), 3u);
    EXPECT_NEAR(pi[0], 2.0 / 7.0, 1e-12);
    EXPECT_NEAR(pi[1], 3.0 / 7.0, 1e-12);
    EXPECT_NEAR(pi[2], 2.0 / 7.0, 1e-12);
    EXPECT_EQ(j["expected_meeting_time"].get<double>(), 0.0);
    EXPECT_NEAR(j["mean_inter_arrival_steps"].get<double>(), 49.0 / 17.0, 1e-9);

    const Result apart = run_cli("oracle --config " + cfg.string() + " --start 0,2");
    ASSERT_EQ(apart.code, 0);
    EXPECT_GT(nlohmann::json::parse(apart.out)["expected_meeting_time"].get<double>(), 0.0);
}

TEST_F(Cli, OracleRejectsLargeCompositeChain) {
    const fs::path cfg = write_config("big.ini", "[robots]\ncount = 3\n");
    EXPECT_EQ(run_cli("oracle --config " + cfg.string()).code, 5);
}

TEST_F(Cli, RepeatedRunsAreByteIdentical) {
    const fs::path a = dir_ / "a";
    const fs::path b = dir_ / "b";
    for (const fs::path& out : {a, b}) {
        ASSERT_EQ(run_cli("run --config " + config("base.ini") + " --seed 42 -q --emit-intensity --out " + out.string()).code, 0);
        ASSERT_EQ(run_cli("montecarlo --config " + config("base.ini") + " --runs 5 --seed 42 -q --out " + out.string()).code, 0);
    }
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path().filename();
        ++compared;
    }
    EXPECT_GE(compared, 7u);
}
