// Counter-based RNG (Philox4x32-10). Every (seed, sample, stream) triple names
// an independent substream, so ensembles can be filled in any order or from
// any number of threads and still reproduce bit-exactly.
#pragma once

#include <array>
#include <cstdint>

namespace lattice {

// One 10-round Philox4x32 block; exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& ctr,
                                        const std::array<std::uint32_t, 2>& key);

// Stream ids keep draws for different purposes out of each other's counters.
enum class Stream : std::uint32_t {
  InitQ = 0,
  InitP = 1,
  Times = 2,
  Mcmc = 3,
  Jitter = 4,
  Bootstrap = 5,
  Shift = 6,
  Probe = 7,
  Misc = 8,
};

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint32_t sample, Stream stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        base_{0, 0, sample, static_cast<std::uint32_t>(stream)} {}

  std::uint64_t next_u64() {
    if (have_half_) {
      have_half_ = false;
      return half_;
    }
    const auto out = next_block();
    half_ = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
    have_half_ = true;
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  }

  // Uniform in (0, 1]; never returns 0 so log() is safe.
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  double gaussian();

 private:
  std::array<std::uint32_t, 4> next_block() {
    std::array<std::uint32_t, 4> ctr = base_;
    ctr[0] = static_cast<std::uint32_t>(counter_);
    ctr[1] = static_cast<std::uint32_t>(counter_ >> 32);
    ++counter_;
    return philox4x32(ctr, key_);
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> base_;
  std::uint64_t counter_ = 0;
  std::uint64_t half_ = 0;
  bool have_half_ = false;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace lattice
