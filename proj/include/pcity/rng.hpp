#ifndef PCITY_RNG_HPP
#define PCITY_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace pcity {

// Counter-based stream: Philox4x32-10 keyed by the master seed, with the
// counter made of (position, stream index). Two streams with the same
// (seed, index) produce identical sequences; different indices never share a
// counter block.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }
  // Number of 64-bit words drawn so far.
  std::uint64_t position() const { return position_; }

  std::uint64_t next_u64();
  result_type operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  // Uniform on the open interval (0,1), 53-bit resolution.
  double uniform();
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double exponential(double rate);
  double normal();
  std::uint64_t poisson(double mean);

  // Child stream for nested replication; distinct (tag, index) pairs give
  // distinct streams.
  RngStream derive(std::uint64_t tag, std::uint64_t index) const;

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t position_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

// Stream index for replicate `replicate` of experiment component `tag`.
std::uint64_t stream_id(std::uint64_t tag, std::uint64_t group, std::uint64_t replicate);

}  // namespace pcity

#endif
