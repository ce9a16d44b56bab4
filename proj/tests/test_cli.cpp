#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ace/esri_ascii.hpp"
#include "ace/terrain.hpp"
#include "test_util.hpp"

#ifndef ACE_CLI_PATH
#error "ACE_CLI_PATH must point at the built CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    const std::string out_file = "cli_stdout_tmp.txt";
    const std::string cmd =
        std::string(ACE_CLI_PATH) + " " + args + " > " + out_file + " 2> cli_stderr_tmp.txt";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.stdout_text = ss.str();
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_canonical_rover(const std::string& path) {
    std::ofstream out(path);
    out << ace::rover_model_to_text(ace::test::canonical_params());
}

}  // namespace

TEST_CASE("evaluate exit codes follow the contract") {
    write_canonical_rover("cli_rover.rover");

    // Flat terrain: safe, clearance equals the nominal value.
    ace::Dem flat(120, 120, 0.1, -6.0, -6.0, 0.0);
    ace::write_esri_ascii(flat, "cli_flat.asc");
    const RunResult safe = run_cli(
        "evaluate --dem cli_flat.asc --rover cli_rover.rover --pose 0,0,0");
    CHECK(safe.exit_code == 0);
    const auto j = nlohmann::json::parse(safe.stdout_text);
    CHECK(j["verdict"]["overall"] == "safe");
    CHECK(j["state_bounds"]["clearance"]["lo"].get<double>() == doctest::Approx(0.6));
    CHECK(j["manifest"]["command"] == "evaluate");

    // 0.5 m rock under the pan center: clearance 0.1 < 0.15 -> unsafe.
    ace::Dem rock = flat;
    rock.set(rock.row_of(0.0), rock.col_of(0.0), -0.5);
    ace::write_esri_ascii(rock, "cli_rock.asc");
    const RunResult unsafe = run_cli(
        "evaluate --dem cli_rock.asc --rover cli_rover.rover --pose 0,0,0");
    CHECK(unsafe.exit_code == 1);
    const auto ju = nlohmann::json::parse(unsafe.stdout_text);
    CHECK(ju["verdict"]["overall"] == "unsafe");
    CHECK(!ju["verdict"]["clearance"]["pass"].get<bool>());

    // Pose off the map: unevaluatable.
    const RunResult off = run_cli(
        "evaluate --dem cli_flat.asc --rover cli_rover.rover --pose 50,0,0");
    CHECK(off.exit_code == 2);

    // Usage and IO errors stay above 2.
    CHECK(run_cli("evaluate --rover cli_rover.rover --pose 0,0,0").exit_code == 3);
    CHECK(run_cli("evaluate --dem missing.asc --rover cli_rover.rover --pose 0,0,0")
              .exit_code == 4);

    // Identical invocations produce identical output.
    const RunResult again = run_cli(
        "evaluate --dem cli_flat.asc --rover cli_rover.rover --pose 0,0,0");
    CHECK(again.stdout_text == safe.stdout_text);
}

TEST_CASE("gen-terrain is deterministic and writes a metadata sidecar") {
    const RunResult a = run_cli(
        "gen-terrain --type rock-field --cfa 0.10 --extent-x 20 --extent-y 15 "
        "--seed 7 --out cli_rocks_a.asc");
    REQUIRE(a.exit_code == 0);
    const RunResult b = run_cli(
        "gen-terrain --type rock-field --cfa 0.10 --extent-x 20 --extent-y 15 "
        "--seed 7 --out cli_rocks_b.asc");
    REQUIRE(b.exit_code == 0);
    CHECK(slurp("cli_rocks_a.asc") == slurp("cli_rocks_b.asc"));

    const auto meta = nlohmann::json::parse(slurp("cli_rocks_a.asc.meta.json"));
    CHECK(meta["generator"] == "rock-field");
    CHECK(meta["seed"] == 7);
    CHECK(meta["achieved_cfa"].get<double>() == doctest::Approx(0.10).epsilon(0.06));
    CHECK(meta["manifest"]["tool_version"].is_string());

    // A different seed changes the field.
    const RunResult c = run_cli(
        "gen-terrain --type rock-field --cfa 0.10 --extent-x 20 --extent-y 15 "
        "--seed 8 --out cli_rocks_c.asc");
    REQUIRE(c.exit_code == 0);
    CHECK(slurp("cli_rocks_a.asc") != slurp("cli_rocks_c.asc"));
}

TEST_CASE("sweep emits a containment-checked CSV with a manifest sidecar") {
    std::ofstream out("cli_bench.rover");
    out << ace::rover_model_to_text(ace::test::benchmark_params());
    out.close();
    const RunResult r = run_cli(
        "sweep --rover cli_bench.rover --a-min -0.06 --a-max 0.06 --steps 7 "
        "--out cli_sweep.csv");
    REQUIRE(r.exit_code == 0);
    std::ifstream csv("cli_sweep.csv");
    std::string header;
    REQUIRE(std::getline(csv, header));
    CHECK(header.rfind("a,evaluatable,clearance_lo", 0) == 0);
    int rows = 0;
    std::string line;
    while (std::getline(csv, line)) {
        ++rows;
        // truth_in_bounds is the second-to-last column.
        const auto pos = line.rfind(',');
        const auto pos2 = line.rfind(',', pos - 1);
        CHECK(line.substr(pos2 + 1, pos - pos2 - 1) == "1");
    }
    CHECK(rows == 7);
    CHECK(nlohmann::json::parse(slurp("cli_sweep.csv.manifest.json"))["command"] ==
          "sweep");
}

TEST_CASE("drive replays a bump crossing with contained truth") {
    const RunResult g = run_cli(
        "gen-terrain --type bump --bump-height 0.2 --bump-x 0 --bump-y 0 "
        "--bump-radius 1.2 --extent-x 16 --extent-y 10 --resolution 0.05 "
        "--out cli_bump.asc");
    REQUIRE(g.exit_code == 0);
    const RunResult r = run_cli(
        "drive --dem cli_bump.asc --rover cli_rover.rover "
        "--waypoints '-4,0;4,0' --step 0.5 --out cli_drive.csv");
    REQUIRE(r.exit_code == 0);
    std::ifstream csv("cli_drive.csv");
    std::string header;
    REQUIRE(std::getline(csv, header));
    int rows = 0, contained = 0;
    std::string line;
    while (std::getline(csv, line)) {
        ++rows;
        const auto pos = line.rfind(',');
        const auto pos2 = line.rfind(',', pos - 1);
        if (line.substr(pos2 + 1, pos - pos2 - 1) == "1") ++contained;
    }
    CHECK(rows == 17);
    CHECK(contained == rows);
}

TEST_CASE("timing smoke run reports the latency comparison") {
    const RunResult r = run_cli("timing --rover cli_bench.rover --poses 60");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.stdout_text);
    CHECK(j["ace"]["flat"]["mean_us"].get<double>() > 0.0);
    CHECK(j["ace"]["cfa20"]["mean_us"].get<double>() > 0.0);
    CHECK(j["planefit_200pt"]["flat"]["mean_us"].get<double>() > 0.0);
    CHECK(j["speedup_vs_planefit"].get<double>() > 0.0);
}
