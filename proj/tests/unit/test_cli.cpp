#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "pdpp/dickman.hpp"
#include "pdpp/io.hpp"
#include "pdpp/tabulated.hpp"

namespace fs = std::filesystem;
using namespace pdpp;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(PDPP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("pdpp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    fs::path dir;
};

} // namespace

TEST_F(Cli, DickmanTableRoundTrip) {
    ASSERT_EQ(run("dickman --alpha 0.3 --theta 1 --s-max 6 --step 0.0625 --out " + path("rho.csv")), 0);
    const LoadedTable t = load_table(path("rho.csv"));
    EXPECT_EQ(t.header.alpha, 0.3);
    EXPECT_EQ(t.header.theta, 1.0);
    EXPECT_NEAR(t.table.grid_end(), 6.0, 1e-12);
    for (double s : {0.5, 2.0, 3.25, 5.5}) EXPECT_NEAR(t.table(s), rho({0.3, 1.0}, s), 1e-9) << s;
    const CsvTable raw = read_csv(path("rho.csv"));
    EXPECT_EQ(raw.columns, (std::vector<std::string>{"s", "rho"}));
}

TEST_F(Cli, SeededSamplesAreReproducible) {
    const std::string common = "sample --alpha 0.4 --theta 1 --mode top-m --m 3 --n 200 --seed 17 --out ";
    ASSERT_EQ(run(common + path("a.csv")), 0);
    ASSERT_EQ(run(common + path("b.csv") + " --workers 2"), 0);
    EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
    const CsvTable t = read_csv(path("a.csv"));
    EXPECT_EQ(t.rows.size(), 600u);
    EXPECT_TRUE(fs::exists(header_path_for(path("a.csv"))));
}

TEST_F(Cli, SampleModes) {
    EXPECT_EQ(run("sample --alpha 0 --theta 2 --mode sticks --n 5 --count 10 --seed 1 --out " + path("s.csv")), 0);
    EXPECT_EQ(read_csv(path("s.csv")).rows.size(), 50u);
    EXPECT_EQ(run("sample --alpha 0.5 --theta 1 --mode hp --p 2 --n 100 --seed 1 --format json --out " + path("h.json")), 0);
    EXPECT_EQ(nlohmann::json::parse(slurp(dir / "h.json"))["table"]["rows"].size(), 100u);
    EXPECT_EQ(run(R"(sample --alpha 0.3 --theta 1 --mode mean --n 2000 --seed 3 --nu '{"kind":"discrete","atoms":[[0,0.5],[1,0.5]]}' --out )" +
                  path("m.csv")),
              0);
}

TEST_F(Cli, InvalidInputExitCodes) {
    EXPECT_EQ(run("dickman --alpha 1 --theta 1"), 2);
    EXPECT_EQ(run("dickman --alpha 0.5 --theta -0.6"), 2);
    EXPECT_EQ(run("dickman --alpha 0.5 --theta 1 --method renewal"), 2);
    EXPECT_EQ(run("sample --alpha 0.5 --theta 1 --mode hp --p 0.5"), 2);
    EXPECT_EQ(run("sample --alpha 0.5 --theta 1 --n -3"), 2);
    EXPECT_EQ(run("sample --alpha 0.5 --theta 1 --mode mean --nu '{\"kind\":\"bogus\"}'"), 2);
    EXPECT_EQ(run("verify --suite nothing"), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, ConfigFile) {
    std::ofstream(path("bad.toml")) << "[verify]\nsuite = \"core\"\nbudget = \"quick\"\nmax-replicates = -5\n";
    EXPECT_EQ(run("--config " + path("bad.toml") + " verify"), 2);
    std::ofstream(path("good.toml")) << "[verify]\nsuite = \"core\"\nbudget = \"quick\"\n";
    EXPECT_EQ(run("--config " + path("good.toml") + " verify --quiet --out " + path("v.json")), 0);
    const auto j = nlohmann::json::parse(slurp(dir / "v.json"));
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(j["budget"], "quick");
}
