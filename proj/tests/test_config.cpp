#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tcsim/run.hpp"

using namespace tcsim;

namespace {

std::filesystem::path temp_base(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream stream(line);
    std::string cell;
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    return cells;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("empty document yields the reference defaults") {
    const RunConfig cfg = parse_config("");
    CHECK(cfg.mode == RunMode::spectrum);
    CHECK(cfg.params.omega_c == 1.0);
    CHECK(cfg.params.omega_e == 1.0);
    CHECK(cfg.params.gamma_c == doctest::Approx(0.03));
    CHECK(cfg.params.gamma_e == doctest::Approx(0.0003));
    CHECK(cfg.params.g_col == doctest::Approx(0.03));
    CHECK(cfg.params.omega_drive_amp == doctest::Approx(0.25 * 0.03));
    CHECK(cfg.truncation.automatic);
    CHECK(cfg.n_list == std::vector<int>{1});
}

TEST_CASE("negative rate is rejected by name") {
    try {
        parse_config(R"({"params": {"gamma_e": -1.0}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("gamma_e") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected by name") {
    try {
        parse_config(R"({"gamma_q": 1.0})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("gamma_q") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config(R"({"params": {"bogus": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"grid": {"start": 1, "stop": 2, "step": 3}})"), ConfigError);
}

TEST_CASE("malformed documents fail with parse context") {
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
}

TEST_CASE("serialize/parse round trip") {
    const std::string doc = R"({
      "mode": "drive-sweep",
      "params": {"gamma_c": 0.05, "gamma_c_rad": 0.04, "g_col": 0.02, "omega_drive_amp": 0.001},
      "grid": {"start": 1e-5, "stop": 0.2, "count": 31, "spacing": "log"},
      "n_list": [1, 3],
      "truncation": 12,
      "tail_tol": 1e-7,
      "include_classical": false,
      "frame": "direct",
      "out": "some/base",
      "threads": 3
    })";
    const RunConfig cfg = parse_config(doc);
    CHECK(cfg.grid_set);
    const RunConfig reparsed = parse_config(serialize_config(cfg));
    CHECK(cfg == reparsed);

    const RunConfig defaults = parse_config("{}");
    CHECK(defaults == parse_config(serialize_config(defaults)));
}

TEST_CASE("critical-table mode requires a scan block") {
    CHECK_THROWS_AS(parse_config(R"({"mode": "critical-table"})"), ConfigError);
    const RunConfig cfg = parse_config(
        R"({"mode": "critical-table", "scan": {"parameter": "gamma_e", "values": [0.0003]}})");
    CHECK(cfg.scan == CriticalScan::gamma_e);
    CHECK(cfg.scan_values == std::vector<double>{0.0003});
}

TEST_CASE("two-row sweep writes a three-line CSV") {
    SweepSpec spec;
    spec.mode = SweepMode::drive;
    spec.params = baseline_params(1);
    spec.grid = GridSpec{0.001, 0.002, 2, GridSpacing::linear};
    spec.n_list = {1};
    const SweepResult result = run_sweep(spec, 1);

    const auto base = temp_base("tcsim_test_two_row");
    emit_results(result, output_paths(base.string()));
    const auto lines = read_lines(base.string() + ".csv");
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].rfind("omega_drive_amp,n_emitters,cavity_pop", 0) == 0);
}

TEST_CASE("CSV values round-trip at full double precision") {
    SweepSpec spec;
    spec.mode = SweepMode::drive;
    spec.params = baseline_params(1);
    spec.grid = GridSpec{1e-4, 7.0e-3, 4, GridSpacing::log};
    spec.n_list = {1};
    const SweepResult result = run_sweep(spec, 1);

    const auto base = temp_base("tcsim_test_roundtrip");
    emit_results(result, output_paths(base.string()));
    const auto lines = read_lines(base.string() + ".csv");
    REQUIRE(lines.size() == result.rows.size() + 1);
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto cells = split_csv(lines[i + 1]);
        REQUIRE(cells.size() >= 5);
        CHECK(std::strtod(cells[0].c_str(), nullptr) == result.rows[i].sweep_value);
        CHECK(std::strtod(cells[2].c_str(), nullptr) == result.rows[i].obs.cavity_pop);
        CHECK(std::strtod(cells[3].c_str(), nullptr) == result.rows[i].obs.ensemble_pop);
    }
}

TEST_CASE("diagonals mode emits rho_nG columns in index order") {
    SweepSpec spec;
    spec.mode = SweepMode::diagonals;
    spec.params = baseline_params(1);
    spec.grid = GridSpec{0.001, 0.003, 2, GridSpacing::linear};
    spec.n_list = {1};
    const SweepResult result = run_sweep(spec, 1);

    const auto base = temp_base("tcsim_test_diagonals");
    emit_results(result, output_paths(base.string()));
    const auto header = split_csv(read_lines(base.string() + ".csv")[0]);
    int first_diag = -1;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "rho_0G") first_diag = static_cast<int>(c);
    }
    REQUIRE(first_diag >= 0);
    for (std::size_t k = 1; first_diag + k < header.size(); ++k) {
        CHECK(header[first_diag + k] == "rho_" + std::to_string(k) + "G");
    }
}

TEST_CASE("exit codes distinguish config, solve, and io failures") {
    CHECK(run_config_text(R"({"params": {"gamma_c": -2}})") == exit_config_error);
    CHECK(run_config_text(R"({"nonsense": true})") == exit_config_error);

    // unwritable output path
    const std::string io_doc =
        R"({"mode": "classical", "out": "/nonexistent_dir_tcsim/out"})";
    CHECK(run_config_text(io_doc) == exit_io_error);

    // tiny healthy classical run
    const auto base = temp_base("tcsim_test_classical");
    const std::string ok_doc = std::string(R"({"mode": "classical", "grid": {"start": 0.99, )") +
                               R"("stop": 1.01, "count": 3, "spacing": "linear"}, "out": ")" +
                               base.string() + R"("})";
    CHECK(run_config_text(ok_doc) == exit_ok);
    CHECK(std::filesystem::exists(base.string() + ".csv"));
    CHECK(std::filesystem::exists(base.string() + ".json"));
}

}  // TEST_SUITE
