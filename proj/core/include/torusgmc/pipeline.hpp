#pragma once

#include <filesystem>
#include <optional>

#include "torusgmc/io.hpp"

namespace gmc {

struct RunConfig {
    int dim = 1;
    double gamma = 0.5;
    int grid_log2 = 12;
    int levels = 9;
    int replicas = 64;
    std::uint64_t seed = 1;
    std::optional<double> tau;  // FL decay target; default D/2
    std::optional<double> p;    // FL moment power; default from fl_window
    std::optional<double> q;    // FL summability; default from fl_window
    std::optional<int> shell_lo, shell_hi;  // regression-range override
    DimMethod mode = DimMethod::fourier_sup;
    std::filesystem::path out;
};

// Minutes-scale defaults per ambient dimension (d = 3 is trend-only).
RunConfig default_config(int dim);

// Enforces 0 < gamma < sqrt(2d), levels <= grid_log2 - 3, replicas >= 1.
void validate(const RunConfig& cfg);

double resolved_tau(const RunConfig& cfg);
nlohmann::json config_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

// Worker-pool width: GMC_WORKERS if set, else hardware concurrency,
// capped by the replica count.
int worker_count(int replicas);

// Everything retained per replica: mass trajectory, final-level shell
// statistics, dyadic-cube energies (scales 1..log2M-3), and the FL norm of
// each level's checkpoint.
struct ReplicaSummary {
    std::uint32_t replica = 0;
    std::vector<double> mass_path;
    ShellStats shells;
    std::vector<double> cube_energies;
    std::vector<double> fl_norms;  // one per level 1..m
};

ReplicaSummary run_replica(const std::vector<GridKernel>& kernels,
                           const RunConfig& cfg, std::uint32_t replica,
                           Fft& fft);

// Runs the replica ensemble over the worker pool and writes the artifact
// tree (config echo, per-replica summaries, kernel certificates, one
// spectrum CSV). Results do not depend on scheduling.
void simulate(const RunConfig& cfg);

// Pure function of the artifact directory: estimates and verdicts as JSON,
// also written to dir/estimates.json and dir/regression.csv.
nlohmann::json analyze(const std::filesystem::path& dir);

// Merges analyzed runs into a predicted-vs-estimated table.
nlohmann::json report(const std::vector<std::filesystem::path>& dirs);

// Certificate sweeps used by the check subcommands; "pass" is the overall
// verdict and "first_failure" names the first failed check.
nlohmann::json kernel_check(const RunConfig& cfg);
nlohmann::json pou_check(const RunConfig& cfg);

}  // namespace gmc
