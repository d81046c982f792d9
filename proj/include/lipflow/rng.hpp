#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lipflow {

/// Deterministic sampling helper. Doubles are built from raw bits rather
/// than std::uniform_real_distribution so streams do not depend on the
/// standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0,1).
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1p-53; }

    double uniform(double lo, double hi) { return lo + unit() * (hi - lo); }

    /// Uniform integer in [lo, hi].
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Derives an independent stream for a named property from a master
    /// seed, so suite order never changes any property's samples.
    static std::uint64_t stream_seed(std::uint64_t master, std::string_view name) {
        std::uint64_t h = 1469598103934665603ULL ^ master;
        for (char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
        return h;
    }

private:
    std::mt19937_64 gen_;
};

} // namespace lipflow
