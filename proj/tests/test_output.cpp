#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coldplasma/criteria.hpp"
#include "coldplasma/output.hpp"
#include "test_fixtures.hpp"

using namespace coldplasma;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

size_t count_of(const std::string& hay, const std::string& needle) {
    size_t n = 0, pos = 0;
    while ((pos = hay.find(needle, pos)) != std::string::npos) {
        ++n;
        pos += needle.size();
    }
    return n;
}

const Trajectory& short_run() {
    static const Trajectory traj = [] {
        SimConfig cfg;
        cfg.n = 256;
        cfg.t_end = 0.5;
        const Grid g = make_grid(cfg.half_width, cfg.n);
        auto [rho0, u0] = cptest::well_data(g, 1.0);
        return run(cfg, rho0, u0);
    }();
    return traj;
}

}  // namespace

TEST_SUITE("output") {

TEST_CASE("format_double re-parses to the identical value") {
    for (double x : {0.1, 1.0 / 3.0, -0.0, 1e-300, 6.02e23, 0.009765625, -2.71828e-7}) {
        const std::string s = format_double(x);
        char* end = nullptr;
        const double back = std::strtod(s.c_str(), &end);
        CHECK(*end == '\0');
        CHECK(back == x);
    }
}

TEST_CASE("snapshot time labels always carry a decimal point") {
    CHECK(time_label(2.0) == "2.0");
    CHECK(time_label(1.5) == "1.5");
    CHECK(time_label(0.0) == "0.0");
    CHECK(time_label(3.3) == "3.3");
    CHECK(time_label(-0.25) == "-0.25");
}

TEST_CASE("equilibrium energy.csv has an identically zero H column") {
    SimConfig cfg;
    cfg.n = 64;
    cfg.t_end = 0.1;
    const Trajectory traj = run(cfg, Field(64, 1.0), Field(64, 0.0));
    const std::string dir = "out_test_eq";
    std::filesystem::create_directories(dir);
    emit_energy_csv(traj, dir);

    std::ifstream in(dir + "/energy.csv");
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "t,H,drift");
    int rows = 0;
    while (std::getline(in, line)) {
        const size_t c1 = line.find(',');
        const size_t c2 = line.find(',', c1 + 1);
        CHECK(line.substr(c1 + 1, c2 - c1 - 1) == "0");
        ++rows;
    }
    CHECK(rows == 11);
    std::filesystem::remove_all(dir);
}

TEST_CASE("csv values round-trip and files are newline-terminated") {
    const std::string dir = "out_test_rt";
    std::filesystem::create_directories(dir);
    const Trajectory& traj = short_run();
    emit_energy_csv(traj, dir);
    const std::string text = slurp(dir + "/energy.csv");
    CHECK(text.back() == '\n');

    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    size_t row = 0;
    while (std::getline(in, line)) {
        const size_t c1 = line.find(',');
        const size_t c2 = line.find(',', c1 + 1);
        const double t = std::strtod(line.substr(0, c1).c_str(), nullptr);
        const double H = std::strtod(line.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr);
        CHECK(t == traj.energies[row].first);
        CHECK(H == traj.energies[row].second);
        ++row;
    }
    CHECK(row == traj.energies.size());
    std::filesystem::remove_all(dir);
}

TEST_CASE("emission is deterministic byte for byte") {
    const std::string d1 = "out_test_d1", d2 = "out_test_d2";
    std::filesystem::create_directories(d1);
    std::filesystem::create_directories(d2);
    const Trajectory& traj = short_run();
    const std::vector<double> snaps{0.0, 0.5};
    emit_energy_csv(traj, d1);
    emit_energy_csv(traj, d2);
    emit_snapshot_csvs(traj, snaps, d1);
    emit_snapshot_csvs(traj, snaps, d2);
    emit_plots(traj, snaps, Panel4::vB, d1);
    emit_plots(traj, snaps, Panel4::vB, d2);
    for (const char* f : {"energy.csv", "fields_t0.0.csv", "fields_t0.5.csv", "snapshots.svg"})
        CHECK(slurp(d1 + "/" + f) == slurp(d2 + "/" + f));
    std::filesystem::remove_all(d1);
    std::filesystem::remove_all(d2);
}

TEST_CASE("snapshot csv carries the six documented columns") {
    const std::string dir = "out_test_snap";
    std::filesystem::create_directories(dir);
    const auto paths = emit_snapshot_csvs(short_run(), {0.5}, dir);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].find("fields_t0.5.csv") != std::string::npos);
    std::ifstream in(paths[0]);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header == "x,rho,u,v,B,vB");
    std::filesystem::remove_all(dir);
}

TEST_CASE("criteria csv flags columns are 0/1") {
    const std::string dir = "out_test_crit";
    std::filesystem::create_directories(dir);
    const Grid g = make_grid(10.0, 256);
    auto [rho0, u0] = cptest::well_data(g, 7.0);
    const BlowupCriteriaReport rep = evaluate(rho0, u0, g);
    emit_criteria_csv(rep, rho0, derivative(u0, g), g, dir);
    const std::string text = slurp(dir + "/criteria.csv");
    CHECK(text.rfind("x,rho0,du0,flag_i,flag_ii,flag_iii\n", 0) == 0);
    CHECK(count_of(text, "\n") == 257);  // header + one row per node
    std::filesystem::remove_all(dir);
}

TEST_CASE("svg figure: four panels, one polyline per snapshot per panel") {
    const std::string dir = "out_test_svg";
    std::filesystem::create_directories(dir);
    const std::vector<double> snaps{0.0, 0.25, 0.5};
    const std::string path = emit_plots(short_run(), snaps, Panel4::v, dir);
    const std::string svg = slurp(path);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(count_of(svg, "<svg") == 1);
    CHECK(count_of(svg, "</svg>") == 1);
    CHECK(count_of(svg, "<polyline") == 4 * snaps.size());
    CHECK(count_of(svg, ">v</text>") == 1);   // fourth panel selectable
    CHECK(count_of(svg, "href") == 0);        // self-contained
    CHECK(svg.find("version='1.1'") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("write failures surface the path") {
    CHECK_THROWS_AS(emit_energy_csv(short_run(), "no_such_dir_xyz"), OutputError);
}

TEST_CASE("narrow-well snapshot at t = 2 peaks near the origin") {
    const std::string dir = "out_test_peak";
    std::filesystem::create_directories(dir);
    const Trajectory& traj = cptest::narrow_well_run();
    const auto paths = emit_snapshot_csvs(traj, {2.0}, dir);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].find("fields_t2.0.csv") != std::string::npos);

    std::ifstream in(paths[0]);
    std::string line;
    std::getline(in, line);  // header
    double best_rho = 0.0, best_x = -10.0;
    while (std::getline(in, line)) {
        const size_t c1 = line.find(',');
        const size_t c2 = line.find(',', c1 + 1);
        const double x = std::strtod(line.substr(0, c1).c_str(), nullptr);
        const double rho = std::strtod(line.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr);
        if (rho > best_rho) {
            best_rho = rho;
            best_x = x;
        }
    }
    CHECK(best_rho > 1.5);
    CHECK(std::abs(best_x) <= 0.5);
    std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
