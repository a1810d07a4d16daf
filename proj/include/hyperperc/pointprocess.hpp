#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hyperperc/hypgeo.hpp"
#include "hyperperc/rng.hpp"

namespace hyperperc {

enum class Color : std::uint8_t { White, Black };

/// Poisson sample in a hyperbolic ball with independent Bernoulli(p) colors.
struct ColoredPointSet {
  std::vector<geo::HPoint> nuclei;
  std::vector<Color> colors;
  double lambda = 1.0;
  double p = 0.5;
  double radius = 0.0;
  std::uint64_t seed = 0;

  std::size_t size() const { return nuclei.size(); }
  std::size_t count(Color c) const;
};

/// Poisson(lambda * ball_area(R)) points, radius by inverse CDF
/// rho = arcosh(1 + U (cosh R - 1)), angle uniform.
/// Throws Error{CapExceeded} for R above `radius_cap`, Error{Config} for
/// nonpositive lambda or R.
std::vector<geo::HPoint> sample_poisson_ball(double lambda, double R, rng::Stream stream,
                                             double radius_cap = geo::kDefaultRadiusCap);

/// Independent White marks with probability p, drawn from the counter of each
/// point's index so that colors are coupled across p for a fixed seed.
ColoredPointSet color(std::vector<geo::HPoint> points, double p, rng::Stream stream);

/// Convenience: sample then color from lanes of the same seed.
ColoredPointSet sample_colored(double lambda, double p, double R, std::uint64_t seed,
                               double radius_cap = geo::kDefaultRadiusCap);

/// Radial CDF of the sampler, (cosh rho - 1) / (cosh R - 1).
double radial_cdf(double rho, double R);

// `#hpp v1 lambda=<f> p=<f> R=<f> seed=<u64>` then `rho theta W|B` per line.
void write_points(std::ostream& out, const ColoredPointSet& set);
ColoredPointSet read_points(std::istream& in);
std::string format_double(double x);

}  // namespace hyperperc
