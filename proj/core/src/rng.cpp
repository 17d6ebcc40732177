#include "torusgmc/rng.hpp"

#include <cmath>

namespace gmc::rng {

std::uint64_t mix64(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t word(const SeedPath& path, std::uint64_t counter,
                   std::uint32_t lane) {
    std::uint64_t h = mix64(path.seed ^ 0x6a09e667f3bcc909ULL);
    h = mix64(h ^ (static_cast<std::uint64_t>(path.replica) << 32 |
                   path.level));
    h = mix64(h ^ counter);
    h = mix64(h ^ (0xbb67ae8584caa73bULL + lane));
    return h;
}

std::array<double, 2> normal_pair(const SeedPath& path,
                                  std::uint64_t counter) {
    // uniforms in (0,1]; u1 bounded away from 0 for the log
    const double scale = 1.0 / 18446744073709551616.0;  // 2^-64
    double u1 = (static_cast<double>(word(path, counter, 0)) + 1.0) * scale;
    double u2 = static_cast<double>(word(path, counter, 1)) * scale;
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace gmc::rng
