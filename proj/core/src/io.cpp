#include "torusgmc/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "torusgmc/errors.hpp"

namespace gmc {

using nlohmann::json;

void write_text(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path.string());
    out << body;
    if (!out) throw Error("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open for reading: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_json(const std::filesystem::path& path, const json& j) {
    json wrapped = j;
    wrapped["schema"] = kSchemaVersion;
    write_text(path, wrapped.dump(2) + "\n");
}

json read_json(const std::filesystem::path& path) {
    json j = json::parse(read_text(path));
    if (!j.contains("schema") || j["schema"].get<int>() != kSchemaVersion)
        throw SchemaMismatch("schema version mismatch in " + path.string() +
                             ": expected " + std::to_string(kSchemaVersion));
    return j;
}

std::string kernel_csv(const GridKernel& k) {
    std::ostringstream out;
    out.precision(17);
    for (int a = 0; a < k.grid.dim(); ++a) out << "offset" << a << ",";
    out << "distance,value\n";
    MultiIndex idx;
    for (std::size_t i = 0; i < k.grid.size(); ++i) {
        k.grid.unflatten(i, idx);
        for (int a = 0; a < k.grid.dim(); ++a) out << k.grid.freq(idx[a]) << ",";
        out << k.grid.torus_distance(i) << "," << k.real_samples[i] << "\n";
    }
    return out.str();
}

json kernel_certificate(const GridKernel& k) {
    double min_eig = 0.0, far_field = 0.0;
    for (double v : k.eigenvalues) min_eig = std::min(min_eig, v);
    for (std::size_t i = 0; i < k.grid.size(); ++i)
        if (k.grid.torus_distance(i) >= k.support_radius)
            far_field = std::max(far_field, std::abs(k.real_samples[i]));
    return json{{"level", k.level},
                {"sigma2", k.sigma2},
                {"epsilon", k.epsilon},
                {"support_radius", k.support_radius},
                {"clamped_fraction", k.clamped_fraction},
                {"min_eigenvalue", min_eig},
                {"far_field_max", far_field},
                {"support_ok", far_field <= 1e-12}};
}

std::string spectrum_csv(const SpectrumTable& spec) {
    std::ostringstream out;
    out.precision(17);
    for (int a = 0; a < spec.grid.dim(); ++a) out << "n" << a << ",";
    out << "abs_n,re,im,power\n";
    MultiIndex idx;
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        spec.grid.unflatten(i, idx);
        bool keep = true;
        for (int a = 0; a < spec.grid.dim(); ++a)
            if (std::abs(spec.grid.freq(idx[a])) >= spec.alias_limit)
                keep = false;
        if (!keep) continue;
        for (int a = 0; a < spec.grid.dim(); ++a)
            out << spec.grid.freq(idx[a]) << ",";
        out << std::sqrt(spec.grid.freq_norm2(i)) << ","
            << spec.coeff[i].real() << "," << spec.coeff[i].imag() << ","
            << std::norm(spec.coeff[i]) << "\n";
    }
    return out.str();
}

std::string localized_coeffs_csv(const std::vector<LocalizedCoeffs>& coeffs) {
    std::ostringstream out;
    out.precision(17);
    out << "scale,cube,freq,re,im\n";
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
        const auto& lc = coeffs[c];
        for (std::size_t t = 0; t < lc.freqs.size(); ++t) {
            out << lc.scale << "," << c << ",";
            for (std::size_t a = 0; a < lc.freqs[t].size(); ++a)
                out << (a ? ";" : "") << lc.freqs[t][a];
            out << "," << lc.values[t].real() << "," << lc.values[t].imag()
                << "\n";
        }
    }
    return out.str();
}

json decoupling_json(const DecouplingReport& rep) {
    json rows = json::array();
    for (std::size_t t = 0; t < rep.freqs.size(); ++t)
        rows.push_back({{"n", rep.freqs[t]},
                        {"lhs_re", rep.lhs[t].real()},
                        {"lhs_im", rep.lhs[t].imag()},
                        {"rhs_re", rep.rhs[t].real()},
                        {"rhs_im", rep.rhs[t].imag()}});
    return json{{"rows", rows}, {"max_rel_error", rep.max_rel_error}};
}

json pou_certificate(const PouFamily& pou) {
    json ratios = json::object();
    for (const auto& [order, ratio] : pou.derivative_ratio)
        ratios[std::to_string(order)] = ratio;
    return json{{"scale", pou.scale},
                {"cubes_per_axis", pou.cubes_per_axis},
                {"partition_max_deviation", pou.partition_max_deviation},
                {"support_tail", pou.support_tail},
                {"derivative_ratio", ratios}};
}

json dim_estimate_json(const DimEstimate& est) {
    static const char* names[] = {"fourier_sup", "fourier_mean", "correlation"};
    return json{{"method", names[static_cast<int>(est.method)]},
                {"slope", est.slope},
                {"dimension", est.dimension},
                {"stderr", est.stderr_},
                {"shell_lo", est.shell_lo},
                {"shell_hi", est.shell_hi},
                {"replicas", est.replicas}};
}

namespace {

constexpr char kFieldMagic[4] = {'G', 'M', 'C', 'F'};

void put_u32(unsigned char* p, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
    return v;
}

}  // namespace

void write_field(const std::filesystem::path& path, const FieldSample& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path.string());
    unsigned char header[32] = {};
    std::memcpy(header, kFieldMagic, 4);
    put_u32(header + 4, static_cast<std::uint32_t>(kSchemaVersion));
    put_u32(header + 8, static_cast<std::uint32_t>(field.grid.dim()));
    put_u32(header + 12, static_cast<std::uint32_t>(field.grid.points()));
    put_u32(header + 16, static_cast<std::uint32_t>(field.level));
    out.write(reinterpret_cast<const char*>(header), sizeof(header));
    // doubles are IEEE binary64 little-endian on every supported target
    static_assert(std::endian::native == std::endian::little);
    out.write(reinterpret_cast<const char*>(field.values.data()),
              static_cast<std::streamsize>(field.values.size() *
                                           sizeof(double)));
    if (!out) throw Error("write failed: " + path.string());
}

FieldSample read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open for reading: " + path.string());
    unsigned char header[32];
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    if (!in || std::memcmp(header, kFieldMagic, 4) != 0)
        throw SchemaMismatch("bad field file header: " + path.string());
    if (get_u32(header + 4) != static_cast<std::uint32_t>(kSchemaVersion))
        throw SchemaMismatch("field file schema mismatch: " + path.string());
    int d = static_cast<int>(get_u32(header + 8));
    int m = static_cast<int>(get_u32(header + 12));
    GridSpec grid(d, m);
    FieldSample field{.level = static_cast<int>(get_u32(header + 16)),
                      .grid = grid,
                      .values = std::vector<double>(grid.size()),
                      .seed_path = {}};
    static_assert(std::endian::native == std::endian::little);
    in.read(reinterpret_cast<char*>(field.values.data()),
            static_cast<std::streamsize>(field.values.size() * sizeof(double)));
    if (!in) throw Error("truncated field file: " + path.string());
    return field;
}

}  // namespace gmc
