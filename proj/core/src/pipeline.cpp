#include "torusgmc/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <thread>

#include "torusgmc/errors.hpp"

namespace gmc {

using nlohmann::json;

RunConfig default_config(int dim) {
    RunConfig cfg;
    cfg.dim = dim;
    switch (dim) {
        case 1: cfg.grid_log2 = 12; cfg.levels = 9; cfg.replicas = 64; break;
        case 2: cfg.grid_log2 = 9; cfg.levels = 6; cfg.replicas = 32; break;
        case 3: cfg.grid_log2 = 6; cfg.levels = 3; cfg.replicas = 16; break;
        default: throw Error("default_config: dim must be 1, 2, or 3");
    }
    return cfg;
}

void validate(const RunConfig& cfg) {
    if (cfg.dim < 1 || cfg.dim > kMaxDim)
        throw Error("config: dim out of range");
    const double gamma_max = std::sqrt(2.0 * cfg.dim);
    if (!(cfg.gamma > 0.0) || !(cfg.gamma < gamma_max))
        throw GammaOutOfRange("config: gamma must lie in (0, " +
                              std::to_string(gamma_max) + ")");
    if (cfg.grid_log2 < 3 || cfg.grid_log2 > 24)
        throw Error("config: grid_log2 out of range");
    if (cfg.levels < 1 || cfg.levels > cfg.grid_log2 - 3)
        throw ScaleUnresolvable(cfg.levels, 1 << cfg.grid_log2,
                                "config: levels must satisfy m <= log2(M)-3");
    if (cfg.replicas < 1) throw Error("config: replicas must be >= 1");
    if (cfg.tau && !(*cfg.tau > 0.0)) throw Error("config: tau must be > 0");
    if (cfg.q && *cfg.q < 1.0) throw Error("config: q must be >= 1");
}

double resolved_tau(const RunConfig& cfg) {
    if (cfg.tau) return *cfg.tau;
    return 0.5 * predicted_dimension(cfg.gamma, cfg.dim);
}

json config_json(const RunConfig& cfg) {
    json j{{"dim", cfg.dim},
           {"gamma", cfg.gamma},
           {"grid_log2", cfg.grid_log2},
           {"levels", cfg.levels},
           {"replicas", cfg.replicas},
           {"seed", cfg.seed},
           {"mode", cfg.mode == DimMethod::fourier_sup ? "sup" : "mean"}};
    if (cfg.tau) j["tau"] = *cfg.tau;
    if (cfg.p) j["p"] = *cfg.p;
    if (cfg.q) j["q"] = *cfg.q;
    if (cfg.shell_lo) j["shell_lo"] = *cfg.shell_lo;
    if (cfg.shell_hi) j["shell_hi"] = *cfg.shell_hi;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    cfg.dim = j.at("dim").get<int>();
    cfg.gamma = j.at("gamma").get<double>();
    cfg.grid_log2 = j.at("grid_log2").get<int>();
    cfg.levels = j.at("levels").get<int>();
    cfg.replicas = j.at("replicas").get<int>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("mode"))
        cfg.mode = j["mode"] == "mean" ? DimMethod::fourier_mean
                                       : DimMethod::fourier_sup;
    if (j.contains("tau")) cfg.tau = j["tau"].get<double>();
    if (j.contains("p")) cfg.p = j["p"].get<double>();
    if (j.contains("q")) cfg.q = j["q"].get<double>();
    if (j.contains("shell_lo")) cfg.shell_lo = j["shell_lo"].get<int>();
    if (j.contains("shell_hi")) cfg.shell_hi = j["shell_hi"].get<int>();
    validate(cfg);
    return cfg;
}

int worker_count(int replicas) {
    int n = 0;
    if (const char* env = std::getenv("GMC_WORKERS")) n = std::atoi(env);
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return std::min(n, replicas);
}

ReplicaSummary run_replica(const std::vector<GridKernel>& kernels,
                           const RunConfig& cfg, std::uint32_t replica,
                           Fft& fft) {
    std::vector<int> checkpoints(static_cast<std::size_t>(cfg.levels));
    for (int m = 1; m <= cfg.levels; ++m)
        checkpoints[static_cast<std::size_t>(m - 1)] = m;
    CascadeResult res = run_cascade(kernels, cfg.gamma, cfg.levels, cfg.seed,
                                    replica, checkpoints, fft);

    const double tau = resolved_tau(cfg);
    FlWindow w = fl_window(cfg.gamma, cfg.dim, tau);
    const double q = cfg.q.value_or(w.q);

    ReplicaSummary sum;
    sum.replica = replica;
    sum.mass_path = res.mass_path;
    for (const auto& state : res.checkpoints) {
        SpectrumTable spec = spectrum(state, fft);
        sum.fl_norms.push_back(fl_norm(spec, 0.5 * tau, q));
        if (state.level == cfg.levels) sum.shells = shell_stats(spec);
    }
    const int k_max = cfg.grid_log2 - 3;
    for (int k = 1; k <= k_max; ++k)
        sum.cube_energies.push_back(cube_energy(res.final_state, k));
    return sum;
}

namespace {

json summary_json(const ReplicaSummary& s) {
    return json{{"replica", s.replica},
                {"mass_path", s.mass_path},
                {"shells",
                 {{"sup_power", s.shells.sup_power},
                  {"mean_power", s.shells.mean_power},
                  {"counts", s.shells.counts}}},
                {"cube_energies", s.cube_energies},
                {"fl_norms", s.fl_norms}};
}

ReplicaSummary summary_from_json(const json& j) {
    ReplicaSummary s;
    s.replica = j.at("replica").get<std::uint32_t>();
    s.mass_path = j.at("mass_path").get<std::vector<double>>();
    const json& sh = j.at("shells");
    s.shells.sup_power = sh.at("sup_power").get<std::vector<double>>();
    s.shells.mean_power = sh.at("mean_power").get<std::vector<double>>();
    s.shells.counts = sh.at("counts").get<std::vector<std::size_t>>();
    s.shells.shells.resize(s.shells.sup_power.size());
    for (std::size_t k = 0; k < s.shells.shells.size(); ++k)
        s.shells.shells[k] = static_cast<int>(k);
    s.cube_energies = j.at("cube_energies").get<std::vector<double>>();
    s.fl_norms = j.at("fl_norms").get<std::vector<double>>();
    return s;
}

std::string replica_file(std::uint32_t r) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "replica_%04u.json", r);
    return buf;
}

}  // namespace

void simulate(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.out.empty()) throw Error("simulate: output directory not set");
    std::filesystem::create_directories(cfg.out);

    const GridSpec grid(cfg.dim, 1 << cfg.grid_log2);
    Fft main_fft(grid);
    RadialProfile phi = RadialProfile::build_phi(cfg.dim, 64);
    RadialProfile q = RadialProfile::build_q(cfg.dim, 64);
    const std::vector<GridKernel> kernels =
        build_kernels(phi, q, grid, cfg.levels, main_fft);

    write_json(cfg.out / "config.json", config_json(cfg));
    json certs = json::array();
    for (const auto& k : kernels) certs.push_back(kernel_certificate(k));
    write_json(cfg.out / "kernels.json", json{{"certificates", certs}});

    std::vector<ReplicaSummary> results(
        static_cast<std::size_t>(cfg.replicas));
    std::atomic<std::uint32_t> next{1};
    auto worker = [&](Fft& fft) {
        for (;;) {
            std::uint32_t r = next.fetch_add(1);
            if (r >= static_cast<std::uint32_t>(cfg.replicas)) return;
            results[r] = run_replica(kernels, cfg, r, fft);
        }
    };

    // replica 0 runs on the main thread so its final state is at hand for
    // the spectrum export; ordering never affects results
    {
        std::vector<int> cp{cfg.levels};
        CascadeResult res = run_cascade(kernels, cfg.gamma, cfg.levels,
                                        cfg.seed, 0, cp, main_fft);
        SpectrumTable spec = spectrum(res.final_state, main_fft);
        write_text(cfg.out / "spectrum_replica0.csv", spectrum_csv(spec));
    }
    results[0] = run_replica(kernels, cfg, 0, main_fft);

    const int n_workers = worker_count(cfg.replicas - 1);
    std::vector<std::unique_ptr<Fft>> ffts;
    std::vector<std::thread> pool;
    for (int t = 0; t < n_workers; ++t)
        ffts.push_back(std::make_unique<Fft>(grid));
    for (int t = 0; t < n_workers; ++t)
        pool.emplace_back(worker, std::ref(*ffts[static_cast<std::size_t>(t)]));
    for (auto& th : pool) th.join();

    for (const auto& s : results)
        write_json(cfg.out / replica_file(s.replica), summary_json(s));
}

json analyze(const std::filesystem::path& dir) {
    const RunConfig cfg = config_from_json(read_json(dir / "config.json"));
    std::vector<ReplicaSummary> results;
    for (int r = 0; r < cfg.replicas; ++r)
        results.push_back(summary_from_json(
            read_json(dir / replica_file(static_cast<std::uint32_t>(r)))));

    std::vector<ShellStats> ensemble;
    std::vector<std::vector<double>> energies;
    std::vector<std::vector<double>> fl_per_level(
        static_cast<std::size_t>(cfg.levels));
    for (const auto& s : results) {
        ensemble.push_back(s.shells);
        energies.push_back(s.cube_energies);
        for (std::size_t m = 0; m < fl_per_level.size(); ++m)
            fl_per_level[m].push_back(s.fl_norms[m]);
    }

    // Default regression window: low shells are pre-asymptotic
    // (smooth-envelope transient), and the cascade creates structure only
    // down to scale 2^-m, so shells at |n| >= 2^levels sit past the
    // resolution cutoff and decay artificially. Keep at least 3 shells.
    const int n_shells = static_cast<int>(ensemble.front().shells.size());
    int hi_default = std::min(cfg.levels - 1, n_shells - 1);
    int lo_default = std::clamp(std::min(4, hi_default - 2), 0, hi_default);
    const int shell_lo = cfg.shell_lo.value_or(lo_default);
    const int shell_hi = cfg.shell_hi.value_or(hi_default);
    DimEstimate sup = estimate_fourier_dim(ensemble, DimMethod::fourier_sup,
                                           cfg.dim, shell_lo, shell_hi);
    DimEstimate mean = estimate_fourier_dim(ensemble, DimMethod::fourier_mean,
                                            cfg.dim, shell_lo, shell_hi);
    DimEstimate corr = correlation_dim_from_energies(energies, 1, cfg.dim);

    const double tau = resolved_tau(cfg);
    FlWindow w = fl_window(cfg.gamma, cfg.dim, tau);
    FlTrendReport trend = fl_moment_trend(fl_per_level, cfg.p.value_or(w.p));

    const double predicted = predicted_dimension(cfg.gamma, cfg.dim);
    const DimEstimate& headline =
        cfg.mode == DimMethod::fourier_mean ? mean : sup;

    double mass_mean = 0.0;
    for (const auto& s : results) mass_mean += s.mass_path.back();
    mass_mean /= static_cast<double>(results.size());

    json est{{"config", config_json(cfg)},
             {"predicted_dimension", predicted},
             {"fourier_sup", dim_estimate_json(sup)},
             {"fourier_mean", dim_estimate_json(mean)},
             {"correlation", dim_estimate_json(corr)},
             {"fl_window", {{"p", cfg.p.value_or(w.p)},
                            {"q", cfg.q.value_or(w.q)},
                            {"tau", tau},
                            {"feasible", w.feasible}}},
             {"fl_trend", {{"level_means", trend.level_means},
                           {"early_max", trend.early_max},
                           {"late_mean", trend.late_mean},
                           {"bounded", trend.bounded}}},
             {"mean_final_mass", mass_mean},
             {"verdicts",
              {{"fourier_abs_error", std::abs(headline.dimension - predicted)},
               {"correlation_abs_error", std::abs(corr.dimension - predicted)},
               {"fourier_vs_correlation",
                std::abs(headline.dimension - corr.dimension)},
               {"fl_bounded", trend.bounded}}}};
    write_json(dir / "estimates.json", est);

    std::string csv = "shell,log2_mean_sup_power,log2_mean_mean_power\n";
    {
        std::ostringstream row;
        row.precision(17);
        const std::size_t n_shells = ensemble.front().shells.size();
        for (std::size_t k = 0; k < n_shells; ++k) {
            double ms = 0.0, mm = 0.0;
            for (const auto& st : ensemble) {
                ms += st.sup_power[k];
                mm += st.mean_power[k];
            }
            ms /= static_cast<double>(ensemble.size());
            mm /= static_cast<double>(ensemble.size());
            row << k << "," << std::log2(std::max(ms, 1e-300)) << ","
                << std::log2(std::max(mm, 1e-300)) << "\n";
        }
        csv += row.str();
    }
    write_text(dir / "regression.csv", csv);
    return est;
}

json report(const std::vector<std::filesystem::path>& dirs) {
    json rows = json::array();
    for (const auto& dir : dirs) {
        json est = read_json(dir / "estimates.json");
        rows.push_back(
            {{"dir", dir.string()},
             {"dim", est["config"]["dim"]},
             {"gamma", est["config"]["gamma"]},
             {"predicted", est["predicted_dimension"]},
             {"fourier_sup", est["fourier_sup"]["dimension"]},
             {"fourier_mean", est["fourier_mean"]["dimension"]},
             {"correlation", est["correlation"]["dimension"]},
             {"fl_bounded", est["fl_trend"]["bounded"]}});
    }
    return json{{"rows", rows}};
}

namespace {

struct CheckList {
    json checks = json::array();
    bool pass = true;
    std::string first_failure;

    void add(const std::string& name, bool ok, double value) {
        checks.push_back({{"name", name}, {"pass", ok}, {"value", value}});
        if (!ok && pass) {
            pass = false;
            first_failure = name;
        }
    }

    json finish() const {
        json j{{"checks", checks}, {"pass", pass}};
        if (!pass) j["first_failure"] = first_failure;
        return j;
    }
};

}  // namespace

json kernel_check(const RunConfig& cfg) {
    validate(cfg);
    const GridSpec grid(cfg.dim, 1 << cfg.grid_log2);
    Fft fft(grid);
    RadialProfile phi = RadialProfile::build_phi(cfg.dim, 64);
    RadialProfile q = RadialProfile::build_q(cfg.dim, 64);
    const std::vector<GridKernel> kernels =
        build_kernels(phi, q, grid, cfg.levels, fft);

    CheckList cl;
    const double log2c = std::log(2.0);
    for (const auto& k : kernels) {
        json cert = kernel_certificate(k);
        std::string tag = "level" + std::to_string(k.level);
        cl.add(tag + "/support", cert["far_field_max"].get<double>() <= 1e-12,
               cert["far_field_max"].get<double>());
        cl.add(tag + "/clamp", k.clamped_fraction <= 1e-6, k.clamped_fraction);
        double min_eig = cert["min_eigenvalue"].get<double>();
        cl.add(tag + "/eigenvalues", min_eig >= 0.0, min_eig);
        if (k.level >= 2) {
            double dev = std::abs(k.sigma2 - log2c);
            // the mollification deficit is an eps^2 Laplacian correction,
            // one term per axis, hence the factor of d
            double tol = 0.3 * cfg.dim /
                             (static_cast<double>(k.level) * k.level) +
                         5e-3;
            cl.add(tag + "/variance_limit", dev <= tol, dev);
        }
    }
    for (int j = 1; j <= std::min(cfg.levels, 10); ++j) {
        double dev = std::abs(eval_L(phi, j, 0.0) - log2c);
        cl.add("L" + std::to_string(j) + "/zero_value", dev <= 1e-10, dev);
    }
    std::optional<LogSumReport> ls;
    if (cfg.levels >= 4) {
        ls = kernel_log_sum_check(kernels, grid);
        cl.add("log_sum/max_deviation", ls->max_deviation <= 0.02,
               ls->max_deviation);
    }

    // derivative moments: E[|D^a psi_j|^2] scales exactly like 2^{2j|a|}
    // (the mollification scale is below 2^-j, so it cannot add growth);
    // check the sharp normalization stays within a constant band, which
    // implies every looser envelope bound a fortiori
    for (int order = 1; order <= cfg.dim; ++order) {
        double lo = 1e300, hi = 0.0;
        std::vector<int> alpha(static_cast<std::size_t>(cfg.dim), 0);
        alpha[0] = order;
        for (const auto& k : kernels) {
            if (k.level < 3) continue;
            double denom = std::pow(2.0, 2.0 * k.level * order);
            double ratio = derivative_second_moment(k, alpha) / denom;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        if (hi > 0.0)
            cl.add("derivative_moment/order" + std::to_string(order) +
                       "_spread",
                   hi / lo <= 50.0, hi / lo);
    }
    json out = cl.finish();
    if (ls)
        out["log_sum"] = {{"octaves", ls->octaves},
                          {"sums", ls->sums},
                          {"increments", ls->increments}};
    return out;
}

json pou_check(const RunConfig& cfg) {
    validate(cfg);
    const GridSpec grid(cfg.dim, 1 << cfg.grid_log2);
    Fft fft(grid);
    CheckList cl;
    json certs = json::array();
    std::map<int, double> first_order_ratio;
    const int k_hi = std::min(6, cfg.grid_log2 - 3);
    for (int k = 2; k <= k_hi; ++k) {
        PouFamily pou = build_pou(k, grid, fft);
        certs.push_back(pou_certificate(pou));
        std::string tag = "scale" + std::to_string(k);
        cl.add(tag + "/partition", pou.partition_max_deviation <= 1e-12,
               pou.partition_max_deviation);
        cl.add(tag + "/support_tail", pou.support_tail <= 1e-12,
               pou.support_tail);
        first_order_ratio[k] = pou.derivative_ratio[1];
    }
    // first-order certificate ratio stable across k in {3,4,5}
    if (first_order_ratio.count(3) && first_order_ratio.count(5)) {
        double lo = 1e300, hi = 0.0;
        for (int k = 3; k <= 5; ++k) {
            lo = std::min(lo, first_order_ratio[k]);
            hi = std::max(hi, first_order_ratio[k]);
        }
        cl.add("derivative_ratio/stability", hi / lo <= 1.1, hi / lo);
    }
    json out = cl.finish();
    out["certificates"] = certs;
    return out;
}

}  // namespace gmc
