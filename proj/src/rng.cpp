#include "polyslice/rng.hpp"

#include <cmath>

namespace polyslice::rng {

namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<uint32_t, 4>& c, const std::array<uint32_t, 2>& k)
{
    const uint64_t p0 = static_cast<uint64_t>(kPhiloxM0) * c[0];
    const uint64_t p1 = static_cast<uint64_t>(kPhiloxM1) * c[2];
    c = {static_cast<uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<uint32_t>(p1),
         static_cast<uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<uint32_t>(p0)};
}

}  // namespace

std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter, std::array<uint32_t, 2> key)
{
    for (int r = 0; r < 10; ++r) {
        philox_round(counter, key);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return counter;
}

std::array<double, 4> Stream::next_uniform4()
{
    const std::array<uint32_t, 2> key{static_cast<uint32_t>(seed),
                                      static_cast<uint32_t>(seed >> 32)};
    const std::array<uint32_t, 4> ctr{static_cast<uint32_t>(stream),
                                      static_cast<uint32_t>(stream >> 32),
                                      static_cast<uint32_t>(block), purpose};
    ++block;
    const auto r = philox4x32(ctr, key);
    std::array<double, 4> u;
    for (int i = 0; i < 4; ++i) u[i] = (r[i] + 0.5) * 0x1p-32;
    return u;
}

std::array<double, 4> Stream::next_normal4()
{
    const auto u = next_uniform4();
    const double r0 = std::sqrt(-2.0 * std::log(u[0]));
    const double r1 = std::sqrt(-2.0 * std::log(u[2]));
    const double t0 = 2.0 * M_PI * u[1];
    const double t1 = 2.0 * M_PI * u[3];
    return {r0 * std::cos(t0), r0 * std::sin(t0), r1 * std::cos(t1), r1 * std::sin(t1)};
}

std::array<double, 4> Stream::next_s3()
{
    for (;;) {
        const auto g = next_normal4();
        const double n2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3];
        if (n2 > 1e-24) {
            const double inv = 1.0 / std::sqrt(n2);
            return {g[0] * inv, g[1] * inv, g[2] * inv, g[3] * inv};
        }
        // all-zero draw is measure-zero but floating-point possible; redraw
    }
}

}  // namespace polyslice::rng
