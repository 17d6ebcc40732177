#include <cstdio>
#include <filesystem>
#include <string>

#include <doctest.h>

#include "torusgmc/errors.hpp"
#include "torusgmc/pipeline.hpp"

using namespace gmc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("torusgmc-pipe-" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

RunConfig tiny_config(const fs::path& out) {
    RunConfig cfg;
    cfg.dim = 1;
    cfg.gamma = 0.5;
    cfg.grid_log2 = 8;
    cfg.levels = 4;
    cfg.replicas = 4;
    cfg.seed = 11;
    cfg.out = out;
    return cfg;
}

}  // namespace

TEST_CASE("per-dimension defaults validate") {
    for (int d : {1, 2, 3}) {
        auto cfg = default_config(d);
        CHECK(cfg.dim == d);
        CHECK_NOTHROW(validate(cfg));
        CHECK(cfg.levels <= cfg.grid_log2 - 3);
    }
}

TEST_CASE("validate rejects out-of-range parameters") {
    auto cfg = default_config(1);
    auto bad = cfg;
    bad.gamma = 1.5;  // >= sqrt(2)
    CHECK_THROWS_AS(validate(bad), GammaOutOfRange);
    bad = cfg;
    bad.levels = bad.grid_log2;  // deeper than the grid resolves
    CHECK_THROWS_AS(validate(bad), Error);
    bad = cfg;
    bad.replicas = 0;
    CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("config json round trip") {
    auto cfg = default_config(2);
    cfg.shell_lo = 4;
    cfg.shell_hi = 6;
    cfg.tau = 0.5;
    auto j = config_json(cfg);
    auto back = config_from_json(j);
    CHECK(back.dim == cfg.dim);
    CHECK(back.gamma == cfg.gamma);
    CHECK(back.grid_log2 == cfg.grid_log2);
    CHECK(back.levels == cfg.levels);
    CHECK(back.replicas == cfg.replicas);
    CHECK(back.seed == cfg.seed);
    REQUIRE(back.shell_lo.has_value());
    CHECK(*back.shell_lo == 4);
    REQUIRE(back.tau.has_value());
    CHECK(*back.tau == 0.5);
}

TEST_CASE("simulate then analyze on a small run") {
    TempDir tmp;
    auto cfg = tiny_config(tmp.path / "run");
    simulate(cfg);
    CHECK(fs::exists(cfg.out / "config.json"));
    CHECK(fs::exists(cfg.out / "kernels.json"));
    CHECK(fs::exists(cfg.out / "replica_0003.json"));
    auto verdict = analyze(cfg.out);
    CHECK(verdict.contains("fourier_sup"));
    CHECK(verdict.contains("correlation"));
    CHECK(verdict.contains("predicted_dimension"));
    CHECK(verdict.contains("verdicts"));
    CHECK(fs::exists(cfg.out / "estimates.json"));
    double mass = verdict["mean_final_mass"].get<double>();
    CHECK(mass > 0.5);
    CHECK(mass < 2.0);
}

TEST_CASE("artifacts are reproducible run to run") {
    TempDir tmp;
    auto a = tiny_config(tmp.path / "a");
    auto b = tiny_config(tmp.path / "b");
    simulate(a);
    simulate(b);
    for (const char* f : {"replica_0000.json", "replica_0002.json",
                          "spectrum_replica0.csv"})
        CHECK(read_text(a.out / f) == read_text(b.out / f));
}

TEST_CASE("report merges analyzed runs") {
    TempDir tmp;
    auto cfg = tiny_config(tmp.path / "run");
    simulate(cfg);
    analyze(cfg.out);
    auto rep = report({cfg.out});
    REQUIRE(rep.contains("rows"));
    CHECK(rep["rows"].size() == 1);
    CHECK(rep["rows"][0].contains("predicted"));
}

TEST_CASE("certificate sweeps pass on small grids") {
    auto cfg = tiny_config("");
    cfg.grid_log2 = 9;
    cfg.levels = 5;
    auto k = kernel_check(cfg);
    CHECK(k["pass"] == true);
    auto p = pou_check(cfg);
    CHECK(p["pass"] == true);
}
