#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "genus2/config.hpp"
#include "genus2/elliptic.hpp"

using namespace genus2;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args, const std::string& env = "")
{
    std::string cmd = env + " " + GENUS2_CLI_PATH + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json run_json(const std::string& args, const std::string& env = "")
{
    CliRun r = run(args, env);
    EXPECT_EQ(r.code, 0) << args;
    return json::parse(r.out);
}

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "genus2_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST(Config, TextRoundTrip)
{
    RunConfig c;
    c.set("command", "z2");
    c.set("tau", "0.3+1.1i");
    c.set("chi", "0.002");
    c.set("K", "17");
    c.set("lattice", "A2");
    RunConfig d;
    d.apply_text(c.to_text());
    EXPECT_EQ(c, d);
    EXPECT_FALSE(d.rho.has_value());
}

TEST(Config, JsonRoundTrip)
{
    RunConfig c;
    c.set("w", "0.5-0.25i");
    c.set("mode", "exact");
    c.set("steps", "3");
    EXPECT_EQ(RunConfig::from_json(json::parse(c.to_json().dump())), c);
}

TEST(Config, RejectsBadValues)
{
    RunConfig c;
    EXPECT_THROW(c.set("K", "1.5"), std::invalid_argument);
    EXPECT_THROW(c.set("suite", "nope"), std::invalid_argument);
    EXPECT_THROW(c.set("colour", "red"), std::invalid_argument);
    EXPECT_THROW(c.apply_text("tau 1i"), std::invalid_argument);
    c.set("K", "0");
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Config, RhoAndChiAreExclusive)
{
    RunConfig c;
    c.set("chi", "0.01");
    EXPECT_FALSE(c.rho.has_value());
    EXPECT_NEAR(std::abs(c.rho_value() + c.w * c.w * 0.01), 0.0, 1e-15);
    c.set("rho", "0.02");
    EXPECT_FALSE(c.chi.has_value());
}

TEST(Cli, OmegaReport)
{
    json j = run_json("omega --K 12");
    EXPECT_EQ(j["tool"], "genus2");
    EXPECT_EQ(j["command"], "omega");
    EXPECT_EQ(j["config"]["K"], 12);
    const json& r = j["result"];
    EXPECT_TRUE(r["in_H2"].get<bool>());
    EXPECT_EQ(r["branch_tag"], 0);
    cplx o12 = complex_from_json(r["omega"][0][1]), o21 = complex_from_json(r["omega"][1][0]);
    EXPECT_EQ(o12, o21);
    EXPECT_LT(r["spectral_radius"].get<double>(), 1.0);
}

TEST(Cli, GenusOneLimitOfZ2)
{
    json j = run_json("z2 --rho 0 --tau 0.2+1.1i");
    cplx z = complex_from_json(j["result"]["value"]);
    Torus t(cplx(0.2, 1.1));
    EXPECT_LT(std::abs(z - 1.0 / t.eta()), 1e-13);
}

TEST(Cli, NegativeLiteralWithEquals)
{
    json j = run_json("omega --rho=-0.01+0.002i");
    EXPECT_EQ(complex_from_json(j["config"]["rho"]), cplx(-0.01, 0.002));
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("omega --rho 1.0").code, 1);
    EXPECT_EQ(run("omega --tau 0-1i").code, 1);
    EXPECT_EQ(run("omega --K abc").code, 1);
    EXPECT_EQ(run("omega --rho 0.01 --chi 0.01").code, 1);
    EXPECT_EQ(run("theta --mode exact").code, 1);
    EXPECT_EQ(run("compare").code, 1);
    EXPECT_EQ(run("nosuch").code, 1);
    EXPECT_EQ(run("verify --suite oracle").code, 0);
}

TEST(Cli, EmptySweepPrintsHeader)
{
    CliRun r = run("sweep --steps 0");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "index,tau_re,tau_im,w_re,w_im,rho_re,rho_im,z_re,z_im,abs_z,tail_bound,spectral_radius,jump,status\n");
}

TEST(Cli, SweepRowsAndCsvFile)
{
    auto path = scratch("ray.csv");
    CliRun r = run("sweep --steps 3 --rho-to 0.03 --csv " + path.string());
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        if (n > 0) EXPECT_NE(line.find(",ok"), std::string::npos) << line;
        ++n;
    }
    EXPECT_EQ(n, 4);
}

TEST(Cli, ConfigFileAndFlagPrecedence)
{
    auto path = scratch("run.cfg");
    std::ofstream(path) << "# test config\ntau = 0+1.3i\nK = 14\nrho = 0.008\n";
    json j = run_json("omega --config " + path.string() + " --K 10");
    EXPECT_EQ(j["config"]["K"], 10);
    EXPECT_EQ(complex_from_json(j["config"]["tau"]), cplx(0, 1.3));
    EXPECT_EQ(complex_from_json(j["config"]["rho"]), cplx(0.008, 0));
}

TEST(Cli, EnvironmentDefaultK)
{
    EXPECT_EQ(run_json("omega", "GENUS2_DEFAULT_K=9")["config"]["K"], 9);
    EXPECT_EQ(run_json("omega --K 11", "GENUS2_DEFAULT_K=9")["config"]["K"], 11);
}

TEST(Cli, LatticeByNameAndPath)
{
    json a = run_json("theta --lattice A2");
    json b = run_json(std::string("theta --lattice ") + GENUS2_DATA_DIR + "/lattices/A2.json");
    EXPECT_EQ(a["result"], b["result"]);
    EXPECT_EQ(run("theta --lattice missing").code, 1);
}

TEST(Cli, ReportsAreDeterministic)
{
    auto strip = [](json j) {
        j.erase("generated_at");
        return j;
    };
    EXPECT_EQ(strip(run_json("zlattice --lattice 2I2")), strip(run_json("zlattice --lattice 2I2")));
    EXPECT_EQ(strip(run_json("compare --chi 1e-4 --w 0.3")), strip(run_json("compare --chi 1e-4 --w 0.3")));
}

TEST(Cli, CompareExactSeries)
{
    json j = run_json("compare --chi 0.001 --mode exact");
    const json& c = j["result"]["catalan_series"];
    ASSERT_EQ(c.size(), 11u);
    EXPECT_EQ(c[0], "0");
    EXPECT_EQ(c[1], "1");
    EXPECT_EQ(c[2], "2");
    EXPECT_EQ(c[3], "5");
    EXPECT_EQ(c[10], "16796");
}

TEST(Cli, VerifyJsonReport)
{
    auto path = scratch("verify.json");
    EXPECT_EQ(run("verify --suite modular --output " + path.string()).code, 0);
    json j = json::parse(std::ifstream(path));
    EXPECT_TRUE(j["result"]["pass"].get<bool>());
    ASSERT_EQ(j["result"]["criteria"].size(), 1u);
    for (const auto& c : j["result"]["criteria"][0]["checks"]) {
        EXPECT_TRUE(c.contains("residual"));
        EXPECT_TRUE(c.contains("tolerance"));
        EXPECT_TRUE(c.contains("gamma"));
    }
}

TEST(Cli, ReportsCarrySchemaRequiredKeys)
{
    json schema = json::parse(std::ifstream(std::string(GENUS2_DATA_DIR) + "/../docs/report.schema.json"));
    const json& defs = schema["$defs"];
    auto has_required = [&](const json& value, const std::string& def) {
        for (const auto& k : defs[def]["required"]) EXPECT_TRUE(value.contains(k.get<std::string>())) << def << " " << k;
    };
    std::vector<std::pair<std::string, std::string>> cases{{"omega", "omega"},
                                                           {"z2", "z2"},
                                                           {"theta --lattice A2", "theta"},
                                                           {"zlattice", "zlattice"},
                                                           {"compare --chi 0.001", "compare"}};
    for (const auto& [args, def] : cases) {
        json j = run_json(args);
        for (const auto& k : schema["required"]) EXPECT_TRUE(j.contains(k.get<std::string>())) << args;
        has_required(j["config"], "config");
        has_required(j["result"], def);
    }
}
