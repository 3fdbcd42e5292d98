#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace remd {

/// Counter-based deterministic random stream.
///
/// The generator is splitmix64 applied to (seed + golden-ratio increments);
/// it is stateless apart from a 64-bit counter, so any run is reproducible
/// from (seed, draw index) alone, in any language:
///
///   z = seed + (counter+1) * 0x9E3779B97F4A7C15
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   out = z ^ (z >> 31)
///
/// Uniform doubles take the top 53 bits; normals use the Box-Muller
/// transform on consecutive uniform pairs (sine branch then cosine branch).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal draw (Box-Muller; one transform yields two values).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0,1] so the log is finite.
        double u1 = 1.0 - uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;  // 2*pi*u2
        spare_ = r * std::cos(a);
        have_spare_ = true;
        return r * std::sin(a);
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// FNV-1a hash of a purpose string, used to derive independent sub-seeds.
inline std::uint64_t hash_purpose(const std::string& purpose) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : purpose) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Derives the sub-seed for (seed, purpose): one splitmix64 round applied to
/// seed XOR fnv1a(purpose). All randomness in the artifact flows from a
/// single root seed through this function.
inline std::uint64_t derive_seed(std::uint64_t seed, const std::string& purpose) {
    std::uint64_t z = (seed ^ hash_purpose(purpose)) + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace remd
