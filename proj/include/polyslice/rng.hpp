#pragma once

#include <array>
#include <cstdint>

namespace polyslice::rng {

// Philox-4x32-10 counter-based generator (Salmon et al., SC 2011).
// Pure function of (key, counter): any sample can be drawn independently
// of the others, so parallel or out-of-order evaluation reproduces the
// sequential stream bit for bit.
std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter, std::array<uint32_t, 2> key);

// One stream = (seed, stream) pair; block index advances the counter.
// Distinct `purpose` constants keep independent subsystems (Monte Carlo
// draws, sweep direction sampling, ...) on disjoint streams.
struct Stream {
    uint64_t seed = 0;
    uint64_t stream = 0;
    uint32_t purpose = 0;
    uint64_t block = 0;

    // Four uniforms in (0,1) at 32-bit resolution.
    std::array<double, 4> next_uniform4();
    // Four independent standard normals (Box-Muller pairs).
    std::array<double, 4> next_normal4();
    // Uniform point on S^3 in R^4.
    std::array<double, 4> next_s3();
};

}  // namespace polyslice::rng
