#ifndef CBETA_RNG_HPP
#define CBETA_RNG_HPP

#include <cstdint>

namespace cbeta {

// Salt used to derive the per-index coefficient sub-streams.  Equal to the
// splitmix64 increment (the 64-bit golden ratio), so that stream j of a seed
// never collides with the raw draw sequence of the same seed.
inline constexpr std::uint64_t kIndexStreamSalt = 0x9E3779B97F4A7C15ULL;

// Salt used to derive per-replica sub-seeds inside the Monte Carlo engine.
inline constexpr std::uint64_t kReplicaStreamSalt = 0xD1B54A32D192ED03ULL;

//! Finalizing 64-bit avalanche (the splitmix64 mixer).  Bijective, so
//! distinct inputs always map to distinct sub-seeds.
constexpr std::uint64_t avalanche64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

//! Sub-seed of coefficient stream `index` under `seed`.  Stream j feeds
//! exactly the j-th coefficient draw, so the draw for index j does not depend
//! on how many other indices are consumed.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return avalanche64(seed ^ (index * kIndexStreamSalt));
}

//! Sub-seed of Monte Carlo replica `r` under `master_seed`.  Replica results
//! are pure functions of this value, which makes runs independent of thread
//! scheduling.
constexpr std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t r) noexcept {
    return avalanche64(master_seed ^ (r * kReplicaStreamSalt));
}

//! splitmix64 generator.  Small state, full 2^64 period, and cheap to create,
//! which is what the per-index sub-stream scheme needs (one generator per
//! coefficient).
class SplitMix64 {
  public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next_u64() noexcept {
        state_ += kIndexStreamSalt;
        return avalanche64(state_);
    }

    //! Uniform double in [0, 1), 53 random bits.
    constexpr double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    //! Uniform double in (0, 1]; safe to pass to log().
    constexpr double next_double_open0() noexcept {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

} // namespace cbeta

#endif // CBETA_RNG_HPP
