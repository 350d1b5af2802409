#ifndef PCITY_ACCEPTANCE_HPP
#define PCITY_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace pcity::acceptance {

enum class Check {
  within,    // |value - target| <= tolerance
  above,     // value > target
  below,     // value < target
  info,      // reported, never decides the outcome
};

struct Metric {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  Check check = Check::within;
  bool pass = false;
};

Metric within(std::string name, double value, double target, double tolerance);
Metric above(std::string name, double value, double bound);
Metric below(std::string name, double value, double bound);
Metric info(std::string name, double value, double target = 0.0, double tolerance = 0.0);

struct Outcome {
  int id = 0;
  std::string title;
  std::vector<Metric> metrics;
  std::string csv;  // raw replicate data; compared byte for byte by the determinism criterion
  std::string error;
  double seconds = 0.0;

  bool pass() const;
};

inline constexpr int kCriterionCount = 18;
inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct Options {
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
};

const char* title(int id);
bool is_monte_carlo(int id);
// Never throws; failures inside a criterion are reported in Outcome::error.
Outcome run(int id, const Options& options);

// `PASS 05 <title> | name=value (target +- tol) ...` on one line.
std::string summary_line(const Outcome& outcome);

}  // namespace pcity::acceptance

#endif
