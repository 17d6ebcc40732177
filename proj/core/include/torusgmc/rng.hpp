#pragma once

#include <array>
#include <cstdint>

namespace gmc {

// Identifies one random field draw: all randomness is a pure function of
// (seed, replica, level), so replicas and levels parallelize with no
// dependence on scheduling.
struct SeedPath {
    std::uint64_t seed = 0;
    std::uint32_t replica = 0;
    std::uint32_t level = 0;
};

// Counter-based generator: a stateless mix of (SeedPath, counter) into
// uniform 64-bit words, then Box-Muller. Distinct counters give independent
// draws; identical inputs give bit-identical outputs.
namespace rng {

std::uint64_t mix64(std::uint64_t x);
std::uint64_t word(const SeedPath& path, std::uint64_t counter,
                  std::uint32_t lane);

// two standard normals for lattice counter `counter`
std::array<double, 2> normal_pair(const SeedPath& path, std::uint64_t counter);

}  // namespace rng
}  // namespace gmc
