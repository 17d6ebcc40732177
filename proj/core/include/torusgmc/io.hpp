#pragma once

#include <filesystem>
#include <string>

#include "torusgmc/analysis.hpp"
#include "torusgmc/kernel.hpp"
#include "torusgmc/measure.hpp"
#include "torusgmc/pou.hpp"
#include "torusgmc/sampler.hpp"

#include <json.hpp>

namespace gmc {

// Artifact schema version. Readers refuse files written under a different
// version instead of guessing.
inline constexpr int kSchemaVersion = 1;

void write_text(const std::filesystem::path& path, const std::string& body);
std::string read_text(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
// Throws SchemaMismatch when the embedded "schema" field differs from
// kSchemaVersion.
nlohmann::json read_json(const std::filesystem::path& path);

// CSV: per-axis offset index, torus distance, kernel value.
std::string kernel_csv(const GridKernel& k);
// Certificate: level, grid variance, clamped spectral mass, far-field check.
nlohmann::json kernel_certificate(const GridKernel& k);

// CSV: per-axis frequency, |n|, Re mu^, Im mu^, |mu^|^2 (below alias guard).
std::string spectrum_csv(const SpectrumTable& spec);

// CSV: scale k, flattened cube index, per-axis frequency, Re D, Im D.
std::string localized_coeffs_csv(const std::vector<LocalizedCoeffs>& coeffs);

nlohmann::json decoupling_json(const DecouplingReport& rep);
nlohmann::json pou_certificate(const PouFamily& pou);
nlohmann::json dim_estimate_json(const DimEstimate& est);

// Raw field dump: 32-byte header (magic "GMCF", u32 version, d, M, level,
// 12 zero bytes), then row-major little-endian binary64 samples.
void write_field(const std::filesystem::path& path, const FieldSample& field);
FieldSample read_field(const std::filesystem::path& path);

}  // namespace gmc
