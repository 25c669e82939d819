#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "support.hpp"

using nlohmann::json;
using testsupport::cli_path;
using testsupport::run_command;

namespace {
namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / tag;
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};
}  // namespace

TEST_CASE("help and argument errors") {
    CHECK(run_command(cli_path() + " --help").exit_code == 0);
    CHECK(run_command(cli_path() + " 2>/dev/null").exit_code == 2);
    CHECK(run_command(cli_path() + " analyze 2>/dev/null").exit_code == 2);
    CHECK(run_command(cli_path() +
                      " analyze --metric schwarzschild_m1 --grid 50 2>/dev/null")
              .exit_code == 2);
    CHECK(run_command(cli_path() +
                      " analyze --metric schwarzschild_m1 --format bogus 2>/dev/null")
              .exit_code == 2);
    CHECK(run_command(cli_path() + " analyze --metric no_such_metric_xyz 2>/dev/null")
              .exit_code == 2);
}

TEST_CASE("analyze: json output, determinism, table format") {
    const std::string cmd =
        cli_path() + " analyze --metric schwarzschild_m1 --grid 2000 --format json";
    auto first = run_command(cmd);
    REQUIRE(first.exit_code == 0);
    json j = json::parse(first.output);
    CHECK(j["type"] == "analyze");
    CHECK(j["metric"] == "schwarzschild_m1");
    CHECK(std::abs(j["r_horizon"].get<double>() - 0.5) <= 1e-9);
    CHECK(std::abs(j["adm_mass"].get<double>() - 1.0) <= 1e-6);
    CHECK(j["nonneg_scalar"] == true);

    auto second = run_command(cmd);
    CHECK(second.exit_code == 0);
    CHECK(first.output == second.output);

    auto table = run_command(cli_path() + " analyze --metric schwarzschild_m1 --grid 2000");
    CHECK(table.exit_code == 0);
    CHECK(table.output.find("r_horizon:") != std::string::npos);
    CHECK(table.output.find("nonneg_scalar: yes") != std::string::npos);

    auto shell = run_command(
        cli_path() + " analyze --metric dip_metric_nonneg --grid 2000 --format json");
    CHECK(shell.exit_code == 0);
    CHECK(json::parse(shell.output)["nonneg_scalar"] == true);
}

TEST_CASE("config diagnostics and metric failures map to distinct exit codes") {
    TempDir dir("cmclab_cli_cfg");

    {
        std::ofstream cfg(dir.path / "bad_key.cfg");
        cfg << "kind = schwarzschild\nmass = 1\nbanana = 7\n";
    }
    auto bad = run_command(cli_path() + " analyze --metric " +
                           (dir.path / "bad_key.cfg").string() + " 2>&1");
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("banana") != std::string::npos);
    CHECK(bad.output.find("bad_key.cfg:3") != std::string::npos);

    {
        std::ofstream cfg(dir.path / "no_horizon.cfg");
        cfg << "kind = analytic\nmass = 1\nr_min = 2\nr_cutoff = 10000\n";
    }
    auto none = run_command(cli_path() + " analyze --metric " +
                            (dir.path / "no_horizon.cfg").string() + " 2>/dev/null");
    CHECK(none.exit_code == 3);
}

TEST_CASE("foliate writes deterministic csv and json artifacts") {
    TempDir dir("cmclab_cli_foliate");
    const std::string cmd = cli_path() +
                            " foliate --metric dip_metric --grid 2000 --format json --out " +
                            dir.path.string();
    auto run1 = run_command(cmd);
    REQUIRE(run1.exit_code == 0);

    fs::path csv = dir.path / "dip_metric_foliation.csv";
    fs::path js = dir.path / "dip_metric_foliation.json";
    REQUIRE(fs::exists(csv));
    REQUIRE(fs::exists(js));

    std::string json_text = slurp(js);
    CHECK(run1.output == json_text);

    json parsed = json::parse(json_text);
    CHECK(parsed["type"] == "foliate");
    CHECK(parsed["metric"] == "dip_metric");
    CHECK(parsed["plateaus"].size() == 1);

    std::string csv_text = slurp(csv);
    CHECK(csv_text.rfind("r,H,u,plateau_flag\n", 0) == 0);

    auto run2 = run_command(cmd);
    CHECK(run2.exit_code == 0);
    CHECK(slurp(csv) == csv_text);
    CHECK(slurp(js) == json_text);

    // Table format reports the artifacts instead of dumping JSON.
    auto table = run_command(cli_path() +
                             " foliate --metric schwarzschild_m1 --grid 2000 --out " +
                             dir.path.string());
    CHECK(table.exit_code == 0);
    CHECK(table.output.find("plateaus: 0") != std::string::npos);
}

TEST_CASE("foliate with explicit h targets attaches per-target checks") {
    TempDir dir("cmclab_cli_foliate_h");
    auto got = run_command(cli_path() +
                           " foliate --metric schwarzschild_m1 --grid 2000 --format json"
                           " --h 0.3 --h 0.2 --out " +
                           dir.path.string());
    REQUIRE(got.exit_code == 0);
    json parsed = json::parse(got.output);
    int jh = 0, sub = 0, bv = 0;
    for (const auto& check : parsed["checks"]) {
        std::string name = check["name"];
        if (name == "jh_minimizer") ++jh;
        if (name == "subsolution") ++sub;
        if (name == "bv_norm") ++bv;
        CHECK((check["skipped"] == true || check["passed"] == true));
    }
    CHECK(jh == 2);
    CHECK(sub == 2);
    CHECK(bv == 1);
}

TEST_CASE("foliate rejects out-of-range targets before writing anything") {
    TempDir dir("cmclab_cli_foliate_bad");
    auto got = run_command(cli_path() +
                           " foliate --metric schwarzschild_m1 --grid 2000 --h 0.5 --out " +
                           dir.path.string() + " 2>/dev/null");
    CHECK(got.exit_code == 4);
    CHECK(fs::is_empty(dir.path));
}

TEST_CASE("verify: byte-identical runs, optional artifact, stderr timing") {
    const std::string cmd =
        cli_path() + " verify --metric schwarzschild_m1 --grid 1200 2>/dev/null";
    auto first = run_command(cmd);
    REQUIRE(first.exit_code == 0);
    auto second = run_command(cmd);
    CHECK(second.exit_code == 0);
    CHECK(first.output == second.output);

    json parsed = json::parse(first.output);
    CHECK(parsed["type"] == "verify");
    CHECK(parsed["overall"] == true);
    CHECK(first.output.find("wall") == std::string::npos);

    // The timing line goes to stderr only.
    auto err_only = run_command(cli_path() +
                                " verify --metric schwarzschild_m1 --grid 1200 2>&1 1>/dev/null");
    CHECK(err_only.output.find("verify wall time:") != std::string::npos);

    // With an output directory from the environment, the document also
    // lands on disk, identical to stdout.
    TempDir dir("cmclab_cli_verify");
    auto with_env = run_command("CMCLAB_OUT_DIR=" + dir.path.string() + " " + cmd);
    CHECK(with_env.exit_code == 0);
    fs::path artifact = dir.path / "schwarzschild_m1_verify.json";
    REQUIRE(fs::exists(artifact));
    CHECK(slurp(artifact) == with_env.output);

    auto table = run_command(cli_path() +
                             " verify --metric schwarzschild_m1 --grid 1200 --format table"
                             " 2>/dev/null");
    CHECK(table.exit_code == 0);
    CHECK(table.output.find("overall: pass") != std::string::npos);
}
