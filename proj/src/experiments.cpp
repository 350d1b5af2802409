#include "pcity/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pcity/errors.hpp"
#include "pcity/line_process.hpp"
#include "pcity/parallel.hpp"
#include "pcity/rng.hpp"

namespace pcity::experiments {

using geom::Point;
using std::numbers::pi;

namespace {

enum Tag : std::uint64_t {
  kHitting = 1,
  kIntersections = 2,
  kSeparation = 3,
  kLateral = 4,
  kExcess = 5,
  kGrowth = 6,
  kXiJumps = 7,
  kXiEndpoints = 8,
  kTau = 9,
  kDiskDistance = 10,
  kDiskLength = 13,
};

Point uniform_in_unit_disk(RngStream& rng) {
  const double r = std::sqrt(rng.uniform());
  const double a = 2.0 * pi * rng.uniform();
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace

std::vector<double> hitting_counts(double length, std::size_t patterns, std::uint64_t seed, unsigned threads) {
  if (!(length > 0.0)) throw DomainError("segment length must be positive");
  const geom::Segment seg({-0.5 * length, 0.0}, {0.5 * length, 0.0});
  std::vector<double> out(patterns);
  parallel_for(patterns, threads, [&](std::size_t i) {
    RngStream rng(seed, stream_id(kHitting, 0, i));
    const auto pat = lines::sample_pattern(lines::DiskWindow({0.0, 0.0}, 0.5 * length), rng);
    out[i] = static_cast<double>(
        std::count_if(pat.lines.begin(), pat.lines.end(), [&](const geom::Line& l) { return geom::crosses(l, seg); }));
  });
  return out;
}

std::vector<double> intersection_counts(std::size_t patterns, std::uint64_t seed, unsigned threads) {
  std::vector<double> out(patterns);
  parallel_for(patterns, threads, [&](std::size_t i) {
    RngStream rng(seed, stream_id(kIntersections, 0, i));
    // Every line meeting the unit square meets its circumscribed disk.
    const auto pat = lines::sample_pattern(lines::DiskWindow({0.5, 0.5}, std::sqrt(0.5)), rng);
    const auto& ls = pat.lines;
    std::size_t count = 0;
    for (std::size_t a = 0; a < ls.size(); ++a) {
      for (std::size_t b = a + 1; b < ls.size(); ++b) {
        const auto p = geom::intersect(ls[a], ls[b]);
        if (p && p->x >= 0.0 && p->x < 1.0 && p->y >= 0.0 && p->y < 1.0) ++count;
      }
    }
    out[i] = static_cast<double>(count);
  });
  return out;
}

SeparationTrial separation_trial(Point a, Point b, Point o, std::size_t replicates, std::uint64_t seed,
                                 std::uint64_t group) {
  SeparationTrial t{a, b, o, replicates, 0, routes::separation_probability(a, b, o)};
  // A separating line meets the triangle (o, a, b), hence this disk.
  const Point lo{std::min({a.x, b.x, o.x}), std::min({a.y, b.y, o.y})};
  const Point hi{std::max({a.x, b.x, o.x}), std::max({a.y, b.y, o.y})};
  const Point c = geom::midpoint(lo, hi);
  const double radius = std::max({geom::distance(c, a), geom::distance(c, b), geom::distance(c, o)}) + 1e-9;
  const geom::Segment seg(a, b);
  for (std::size_t i = 0; i < replicates; ++i) {
    RngStream rng(seed, stream_id(kSeparation, group, i));
    const auto pat = lines::sample_pattern(lines::DiskWindow(c, radius), rng);
    const bool sep = std::any_of(pat.lines.begin(), pat.lines.end(),
                                 [&](const geom::Line& l) { return geom::separates(l, o, seg); });
    if (!sep) ++t.unseparated;
  }
  return t;
}

std::vector<routes::LateralDisplacement> lateral_samples(double n, std::size_t replicates, std::uint64_t seed,
                                                         unsigned threads) {
  std::vector<routes::LateralDisplacement> out(replicates);
  const auto group = static_cast<std::uint64_t>(std::llround(n));
  parallel_for(replicates, threads, [&](std::size_t i) {
    RngStream rng(seed, stream_id(kLateral, group, i));
    out[i] = routes::max_lateral_displacement(routes::build_cell({0.0, 0.0}, {n, 0.0}, rng));
  });
  return out;
}

std::vector<double> excess_samples(double n, std::size_t replicates, std::uint64_t seed, unsigned threads) {
  std::vector<double> out(replicates);
  const auto group = static_cast<std::uint64_t>(std::llround(n));
  parallel_for(replicates, threads, [&](std::size_t i) {
    RngStream rng(seed, stream_id(kExcess, group, i));
    const auto rp = routes::semi_perimeter_routes(routes::build_cell({0.0, 0.0}, {n, 0.0}, rng));
    out[i] = 0.5 * (rp.upper.excess + rp.lower.excess);
  });
  return out;
}

std::vector<std::vector<double>> growth_sigma(std::span<const double> levels, std::size_t replicates,
                                              growth::Initial initial, std::uint64_t seed, unsigned threads) {
  std::vector<std::vector<double>> out(replicates);
  parallel_for(replicates, threads, [&](std::size_t i) {
    RngStream rng(seed, stream_id(kGrowth, static_cast<std::uint64_t>(initial), i));
    out[i] = growth::simulate_sigma_levels(levels, initial, rng);
  });
  return out;
}

std::vector<double> xi_jump_samples(std::size_t count, std::uint64_t seed) {
  RngStream rng(seed, stream_id(kXiJumps, 0, 0));
  std::vector<double> out(count);
  for (auto& x : out) x = growth::xi_jump_from_mark(rng.exponential(1.0));
  return out;
}

std::vector<double> xi_endpoints(double t, std::size_t replicates, std::uint64_t seed, unsigned threads) {
  std::vector<double> out(replicates);
  parallel_for(replicates, threads, [&](std::size_t i) {
    RngStream rng(seed, stream_id(kXiEndpoints, 0, i));
    out[i] = growth::simulate_subordinators(t, rng).xi_at(t);
  });
  return out;
}

std::vector<TauCheck> tau_identity(std::span<const double> levels, std::size_t paths, std::uint64_t seed) {
  if (levels.empty()) throw DomainError("tau_identity needs at least one level");
  const double top = *std::max_element(levels.begin(), levels.end());
  std::vector<TauCheck> out(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) out[k].level = levels[k];
  for (std::size_t i = 0; i < paths; ++i) {
    RngStream rng(seed, stream_id(kTau, 0, i));
    const auto path = growth::simulate_subordinators_to_integral(top, rng);
    for (auto& c : out) {
      const double tau = growth::tau_first_passage(path, c.level);
      const double rep = growth::tau_representation(c.level, tau, path.xi_at(tau));
      c.max_abs_error = std::max(c.max_abs_error, std::fabs(rep - tau));
      c.mean_tau += tau / static_cast<double>(paths);
      ++c.paths;
    }
  }
  return out;
}

std::vector<double> disk_distances(std::size_t pairs, std::uint64_t seed, unsigned threads) {
  constexpr std::size_t kBlock = 10000;
  std::vector<double> out(pairs);
  const std::size_t blocks = (pairs + kBlock - 1) / kBlock;
  parallel_for(blocks, threads, [&](std::size_t b) {
    RngStream rng(seed, stream_id(kDiskDistance, 0, b));
    for (std::size_t i = b * kBlock; i < std::min(pairs, (b + 1) * kBlock); ++i) {
      const Point p = uniform_in_unit_disk(rng);
      const Point q = uniform_in_unit_disk(rng);
      out[i] = geom::distance(p, q);
    }
  });
  return out;
}

std::vector<double> disk_network_lengths(std::size_t patterns, std::uint64_t seed) {
  std::vector<double> out(patterns);
  for (std::size_t i = 0; i < patterns; ++i) {
    RngStream rng(seed, stream_id(kDiskLength, 0, i));
    const auto pat = lines::sample_pattern(lines::DiskWindow({0.0, 0.0}, 1.0), rng);
    double total = 0.0;
    for (const auto& l : pat.lines) total += 2.0 * std::sqrt(std::max(0.0, 1.0 - l.r() * l.r()));
    out[i] = total;
  }
  return out;
}

}  // namespace pcity::experiments
