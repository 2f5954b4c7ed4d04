#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace gbv {

inline constexpr std::uint64_t kDefaultSeed = 0x42D;

/// Seeded generator for test sequences. Uses mt19937_64 (whose output is
/// fixed by the standard) and converts bits to doubles by hand, since the
/// standard distributions are implementation-defined.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on the closed unit disk.
    std::complex<double> unit_disk() {
        const double r = std::sqrt(uniform());
        const double theta = 2.0 * std::numbers::pi * uniform();
        return std::polar(r, theta);
    }

    std::vector<std::complex<double>> unit_disk_sequence(std::size_t n) {
        std::vector<std::complex<double>> v(n);
        for (auto& z : v) z = unit_disk();
        return v;
    }

    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

private:
    std::mt19937_64 engine_;
};

} // namespace gbv
