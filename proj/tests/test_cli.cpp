// test_cli.cpp - configuration schema, overrides, report formats and exit codes
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "licore/cli/commands.hpp"
#include "licore/errors.hpp"
#include "licore/units.hpp"

using namespace licore;
using namespace licore::cli;
using nlohmann::json;

namespace {

const std::filesystem::path fixtures = LICORE_FIXTURE_DIR;

json weak_doc() {
    return json::parse(R"({
        "atom": {"g_thz": 0.01, "detuning_thz": 10.4},
        "hot_bath": {"temperature_k": 500.0, "g0_thz": 0.05}
    })");
}

struct Captured {
    int code;
    std::string out;
    std::string err;
};

Captured run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("config: defaults and unit conversion") {
    const auto rc = RunConfig::from_json(weak_doc());
    CHECK(rc.atom.omega0_thz == 377.0);
    CHECK(rc.cold_bath.temperature_k == 0.0);
    const auto d = rc.drive();
    CHECK(d.omega0() == doctest::Approx(units::freq_from_thz(377.0)).epsilon(1e-15));
    CHECK(d.detuning() == doctest::Approx(units::freq_from_thz(10.4)).epsilon(1e-12));
    CHECK(d.g() == doctest::Approx(units::freq_from_thz(0.01)).epsilon(1e-15));
    const auto hot = rc.hot_spectrum();
    CHECK(evaluate(hot, 1.0) == doctest::Approx(units::freq_from_thz(0.05)).epsilon(1e-15));
    CHECK(temperature(hot) == doctest::Approx(units::temp_from_kelvin(500.0)).epsilon(1e-15));
    const auto cell = rc.cell_config();
    CHECK(cell.alpha_per_mm == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("config: nu and detuning give the same drive") {
    auto a = weak_doc();
    auto b = weak_doc();
    b["atom"].erase("detuning_thz");
    b["atom"]["nu_thz"] = 377.0 - 10.4;
    CHECK(RunConfig::from_json(a).drive().nu() == doctest::Approx(RunConfig::from_json(b).drive().nu()).epsilon(1e-15));
}

TEST_CASE("config: schema violations name the key") {
    const auto message = [](const json& doc) {
        try {
            RunConfig::from_json(doc);
        } catch (const InvalidInput& e) {
            return std::string(e.what());
        }
        return std::string("accepted");
    };
    auto doc = weak_doc();
    doc["atom"]["colour"] = "red";
    CHECK(message(doc).find("atom.colour") != std::string::npos);

    doc = weak_doc();
    doc["extras"] = json::object();
    CHECK(message(doc).find("'extras'") != std::string::npos);

    doc = weak_doc();
    doc["atom"]["g_thz"] = "strong";
    CHECK(message(doc).find("atom.g_thz") != std::string::npos);

    doc = weak_doc();
    doc["atom"]["nu_thz"] = 366.0;
    CHECK(message(doc).find("not both") != std::string::npos);

    doc = weak_doc();
    doc["cell"] = {{"absorption_length_mm", 9.0}, {"alpha_per_mm", 0.1}};
    CHECK(message(doc).find("not both") != std::string::npos);

    doc = weak_doc();
    doc["hot_bath"]["temperature_k"] = -1.0;
    CHECK(message(doc).find("hot_bath.temperature_k") != std::string::npos);

    doc = weak_doc();
    doc["scan"] = {{"calibrate", true}};
    CHECK(message(doc).find("dataset_csv") != std::string::npos);
}

TEST_CASE("config: required fields are checked per view") {
    const auto rc = RunConfig::from_json(json::object());
    CHECK_THROWS_AS(rc.drive(), InvalidInput);
    CHECK_THROWS_AS(rc.hot_spectrum(), InvalidInput);
    CHECK_THROWS_AS(rc.detuning_grid(), InvalidInput);
    CHECK_NOTHROW(rc.cell_config());
}

TEST_CASE("config: relative paths resolve against the config directory") {
    auto doc = weak_doc();
    doc["scan"] = {{"dataset_csv", "absorption.csv"}};
    const auto rc = RunConfig::from_json(doc, "/data/runs");
    CHECK(rc.scan.dataset_csv->string() == "/data/runs/absorption.csv");
    doc["scan"]["dataset_csv"] = "/abs/a.csv";
    CHECK(RunConfig::from_json(doc, "/data/runs").scan.dataset_csv->string() == "/abs/a.csv");
}

TEST_CASE("detuning grid") {
    auto doc = weak_doc();
    doc["scan"] = {{"delta_min_thz", -1.0}, {"delta_max_thz", 1.0}, {"delta_step_thz", 0.1}};
    const auto grid = RunConfig::from_json(doc).detuning_grid();
    REQUIRE(grid.size() == 21);
    CHECK(units::freq_to_thz(grid.front()) == doctest::Approx(-1.0));
    CHECK(units::freq_to_thz(grid.back()) == doctest::Approx(1.0));
    CHECK(std::abs(units::freq_to_thz(grid[10])) < 1e-15);

    doc["scan"]["delta_max_thz"] = -2.0;
    CHECK_THROWS_AS(RunConfig::from_json(doc).detuning_grid(), InvalidInput);
    doc["scan"] = {{"deltas_thz", json::array()}};
    CHECK_THROWS_AS(RunConfig::from_json(doc).detuning_grid(), InvalidInput);
    doc["scan"] = {{"deltas_thz", {3.0, -1.0}}};
    CHECK(RunConfig::from_json(doc).detuning_grid().size() == 2);
    doc["scan"] = {{"delta_min_thz", 0.0}, {"delta_max_thz", 1.0}, {"delta_step_thz", 0.0}};
    CHECK_THROWS_AS(RunConfig::from_json(doc).detuning_grid(), InvalidInput);
}

TEST_CASE("overrides") {
    json doc = json::object();
    apply_override(doc, "atom.g_thz=0.02");
    apply_override(doc, "hot_bath.spectrum_csv=table.csv");
    apply_override(doc, "scan.deltas_thz=[1, 2.5]");
    apply_override(doc, "scan.calibrate=false");
    CHECK(doc["atom"]["g_thz"].get<double>() == 0.02);
    CHECK(doc["hot_bath"]["spectrum_csv"].get<std::string>() == "table.csv");
    CHECK(doc["scan"]["deltas_thz"].size() == 2);
    CHECK(doc["scan"]["calibrate"].is_boolean());
    apply_override(doc, "atom.g_thz=0.03");
    CHECK(doc["atom"]["g_thz"].get<double>() == 0.03);

    CHECK_THROWS_AS(apply_override(doc, "atom.g_thz"), InvalidInput);
    CHECK_THROWS_AS(apply_override(doc, "=1"), InvalidInput);
    CHECK_THROWS_AS(apply_override(doc, "atom..g=1"), InvalidInput);
    CHECK_THROWS_AS(apply_override(doc, "atom.g_thz.x=1"), InvalidInput);
}

TEST_CASE("report formats") {
    Report r;
    r.add_meta("stamp", "now");
    Table t{"t", {"x", "label", "flag", "missing"}, {}};
    t.add_row({1.0 / 3.0, Cell{std::string("a,b")}, true, Cell{}});
    t.add_row({std::nan(""), Cell{std::string("plain")}, false, -std::numeric_limits<double>::infinity()});
    r.tables.push_back(t);

    std::ostringstream csv;
    write_csv(csv, r, true);
    CHECK(csv.str() == "# stamp: now\nx,label,flag,missing\n0.333333333333,\"a,b\",true,\nnan,plain,false,-inf\n");

    std::ostringstream bare;
    write_csv(bare, r, false);
    CHECK(bare.str().find("stamp") == std::string::npos);

    const auto j = to_json(r, true);
    CHECK(j["metadata"]["stamp"] == "now");
    CHECK(j["tables"]["t"][0]["x"].get<double>() == 0.333333333333);
    CHECK(j["tables"]["t"][1]["x"].is_null());
    CHECK(j["tables"]["t"][1]["missing"].is_null());
    CHECK(j["tables"]["t"][0]["missing"].is_null());
    CHECK(!to_json(r, false).contains("metadata"));

    std::ostringstream table;
    write_table(table, r, false);
    CHECK(table.str().find("0.3333 ") != std::string::npos);

    CHECK(format_machine(123456789.0123456) == "123456789.012");
    CHECK(format_human(2.0 / 3.0) == "0.6667");
    CHECK_THROWS_AS(parse_format("xml"), InvalidInput);
    CHECK_THROWS_AS(t.add_row({1.0}), std::logic_error);
}

TEST_CASE("commands: weak drive agreement") {
    const auto rc = RunConfig::from_json(weak_doc());
    const auto ss = cmd_steady_state(rc);
    const auto& rows = ss.tables.at(0).rows;
    REQUIRE(rows.size() == 2);
    CHECK(std::get<double>(rows[0][5]) <= 1e-3);

    const auto cur = cmd_currents(rc);
    for (const auto& row : cur.tables.at(0).rows) {
        CHECK(std::get<std::string>(row[5]) == "cooling");
        CHECK(std::get<double>(row[7]) <= 1e-10);
    }
    const auto& mirror = cur.tables.at(1).rows;
    REQUIRE(mirror.size() == 2);
    CHECK(std::get<double>(mirror[0][3]) <= 1e-12);
    CHECK(std::get<double>(mirror[1][3]) <= 1e-2);
}

TEST_CASE("commands: tmin edge cases") {
    auto doc = weak_doc();
    doc["atom"]["g_thz"] = 0.0;
    const auto zero = cmd_tmin(RunConfig::from_json(doc));
    CHECK(std::get<bool>(zero.tables.at(0).rows.at(0)[8]));
    CHECK(std::get<double>(zero.tables.at(0).rows.at(0)[0]) == 0.0);

    doc = weak_doc();
    doc["atom"]["detuning_thz"] = -10.4;
    CHECK_THROWS_AS(cmd_tmin(RunConfig::from_json(doc)), NumericalDomainError);

    doc = weak_doc();
    doc["atom"]["g_thz"] = 0.01;
    doc["atom"]["detuning_thz"] = 10.0;
    const auto t = cmd_tmin(RunConfig::from_json(doc));
    const auto& row = t.tables.at(0).rows.at(0);
    CHECK(std::get<double>(row[2]) <= 0.1);
    CHECK(std::get<bool>(row[7]));
}

TEST_CASE("run: exit codes") {
    const std::string cfg = (fixtures / "weak_red.json").string();
    CHECK(run_cli({"steady-state", "--config", cfg, "--format", "csv"}).code == Ok);
    CHECK(run_cli({"--help"}).code == Ok);
    CHECK(run_cli({}).code == ConfigError);
    CHECK(run_cli({"steady-state", "--format", "xml", "--config", cfg}).code == ConfigError);
    CHECK(run_cli({"steady-state", "--config", cfg, "--set", "atom.bogus=1"}).code == ConfigError);
    CHECK(run_cli({"steady-state", "--config", "/nonexistent/config.json"}).code == IoFailure);
    CHECK(run_cli({"tmin", "--config", cfg, "--set", "atom.detuning_thz=-5"}).code == DomainError);
    CHECK(run_cli({"scan", "--config", cfg, "--set", "scan.deltas_thz=[]"}).code == ConfigError);
    CHECK(run_cli({"scan", "--config", (fixtures / "scan.json").string(), "--set",
                   "scan.dataset_csv=missing.csv"}).code == IoFailure);
    const auto bad = run_cli({"steady-state", "--config", cfg, "--set", "atom.bogus=1"});
    CHECK(bad.err.find("atom.bogus") != std::string::npos);
}

TEST_CASE("run: repeated runs are byte-identical without metadata") {
    const std::string cfg = (fixtures / "weak_red.json").string();
    for (const char* fmt : {"csv", "json"}) {
        const auto a = run_cli({"currents", "--config", cfg, "--format", fmt, "--no-metadata"});
        const auto b = run_cli({"currents", "--config", cfg, "--format", fmt, "--no-metadata"});
        CHECK(a.code == Ok);
        CHECK(a.out == b.out);
        CHECK(a.out.find("generated_utc") == std::string::npos);
    }
}

TEST_CASE("run: scan writes csv, json and plot data") {
    const auto dir = std::filesystem::temp_directory_path() / "licore_test_cli_scan";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto out = dir / "result.csv";
    const auto r = run_cli({"scan", "--config", (fixtures / "scan.json").string(), "--out", out.string(),
                            "--emit-plot-data", "--jobs", "2"});
    REQUIRE(r.code == Ok);
    std::ifstream csv(out);
    std::string line;
    while (std::getline(csv, line) && line.rfind("#", 0) == 0) {
    }
    CHECK(line == "delta_thz,j_hot_watt,j_hot_exp_watt,p_abs_watt,eta,regime,model");
    CHECK(std::filesystem::exists(dir / "result.json"));
    CHECK(std::filesystem::exists(dir / "result.plot.dat"));
    const auto doc = json::parse(std::ifstream(dir / "result.json"));
    CHECK(doc["tables"]["scan"].size() == 21);
    std::filesystem::remove_all(dir);
}
