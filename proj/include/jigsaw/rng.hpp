#ifndef JIGSAW_RNG_HPP
#define JIGSAW_RNG_HPP

#include <cstdint>

namespace jigsaw {

namespace detail {

constexpr std::uint64_t kWeylGamma = 0x9E3779B97F4A7C15ULL;

// Stafford's "mix13" finalizer. Together with the Weyl increment below this
// is the splitmix64 generator; pure 64-bit integer arithmetic, so output
// streams are identical on every platform.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Derives an independent stream seed from a master seed and a tag. Used for
// the red/blue colour streams and for per-trial seeds in the harness.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return detail::mix64(seed ^ detail::mix64(tag * detail::kWeylGamma + 0x5851F42D4C957F2DULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a,
                                    std::uint64_t tag_b) {
  return derive_seed(derive_seed(seed, tag_a), tag_b ^ 0xD1342543DE82EF95ULL);
}

// Counter-based splitmix64. Output i of a stream with base b is
// mix64(b + (i+1)*kWeylGamma); the class just keeps the running counter.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : state_(detail::mix64(seed)) {}
  CounterRng(std::uint64_t seed, std::uint64_t stream_tag)
      : state_(detail::mix64(derive_seed(seed, stream_tag))) {}

  std::uint64_t next_u64() {
    state_ += detail::kWeylGamma;
    return detail::mix64(state_);
  }

  // Uniform double in (0, 1]; never returns 0, so logarithms are safe.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

private:
  std::uint64_t state_;
};

}  // namespace jigsaw

#endif
