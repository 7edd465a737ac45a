#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace fcdtt {

// Deterministic splittable RNG (splitmix64 core). The standard library
// distributions are implementation-defined, so everything that must be
// reproducible across toolchains draws from this.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Derive an independent named stream without disturbing this one.
    Rng stream(std::string_view name) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return Rng(mix(state_, h));
    }

    Rng stream(std::uint64_t index) const {
        return Rng(mix(state_, 0x9e3779b97f4a7c15ULL + index));
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller (uncached; determinism over speed).
    double normal() {
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    // Laplace(0, scale) via inverse CDF.
    double laplace(double scale) {
        double u = uniform() - 0.5;
        return -scale * std::copysign(std::log(1.0 - 2.0 * std::fabs(u)), -u);
    }

    std::uint64_t uniform_index(std::uint64_t n) {
        // Rejection sampling for an unbiased bounded draw.
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    template <typename T>
    void shuffle(std::vector<T> &items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(items[i - 1], items[j]);
        }
    }

  private:
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace fcdtt
