#pragma once

#include <cstdint>
#include <random>

namespace tomo {

/// SplitMix64 finaliser. Used to derive independent stream seeds from a master
/// seed and an index, so per-setting and per-trial streams do not depend on the
/// order in which they are consumed.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit Mersenne twister.
/// Both pieces are fully specified, so draws are identical on every platform.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace tomo
