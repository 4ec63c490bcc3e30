#ifndef AIA_RANDOM_HH_
#define AIA_RANDOM_HH_

#include <cstddef>
#include <cstdint>
#include <random>

namespace aia {

std::uint64_t splitmix64(std::uint64_t x);

/**
 * Mersenne Twister seeded with splitmix64(seed). Bounded draws use rejection
 * sampling instead of the standard distributions so that sequences are the
 * same across standard library implementations.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n); n must be positive.
    std::size_t below(std::size_t n);
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

} // namespace aia

#endif // AIA_RANDOM_HH_
