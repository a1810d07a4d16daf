#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hyperperc/densities.hpp"
#include "hyperperc/error.hpp"
#include "hyperperc/rng.hpp"

using namespace hyperperc;

namespace {

bool within(double value, double target, double se, double k = 3.0) { return std::abs(value - target) <= k * se; }

}  // namespace

TEST_CASE("exact identities give -1") {
  for (double lambda : {0.3, 1.0, 2.5}) {
    const double DF = lambda, DV = 2 * lambda + 1 / geo::kPi, DE = 3 * lambda + 3 / (2 * geo::kPi);
    CHECK(2 * geo::kPi * (DF - DE + DV) == doctest::Approx(-1.0).epsilon(1e-14));
  }
}

TEST_CASE("edge density is 3/2 of the vertex density") {
  const VoronoiComplex cx = delaunay(sample_colored(1.0, 0.5, 7.0, 12));
  const DensityEstimate e = estimate_densities(cx, Window{7, 5});
  CHECK(e.D_E_hat == 1.5 * e.D_V_hat);
}

TEST_CASE("lambda = 1 desk run") {
  const DensityEstimate e = estimate_densities(1.0, Window{7, 5}, 50, 42);
  CHECK(e.replicas + e.discarded == 50);
  CHECK(e.D_E_hat == doctest::Approx(1.5 * e.D_V_hat).epsilon(1e-14));
  CHECK(within(e.D_V_hat, 2.0 + 1.0 / geo::kPi, e.D_V_se));
  CHECK(2.0 + 1.0 / geo::kPi == doctest::Approx(2.31831).epsilon(1e-5));
  CHECK(within(e.D_F_hat_count, 1.0, e.D_F_count_se));
  CHECK(within(e.D_F_hat_inverse_area, 1.0, e.D_F_inverse_area_se));
  CHECK(face_estimators_agree(e));
  const EulerCheck ec = euler_check(e);
  CHECK(within(ec.value, -1.0, ec.se));
}

TEST_CASE("lambda = 0.3 Euler check") {
  const EulerCheck ec = euler_check(estimate_densities(0.3, Window{7, 5}, 50, 43));
  CHECK(within(ec.value, -1.0, ec.se));
}

TEST_CASE("vertex density is isometry invariant") {
  const Window w{7, 5};
  const int reps = 20;
  std::vector<double> plain, moved;
  const geo::Isometry g = geo::Isometry::translation(geo::HPoint(0.5, 1.0)) * geo::Isometry::rotation(0.7);
  for (int rep = 0; rep < reps; ++rep) {
    ColoredPointSet s = sample_colored(1.0, 0.5, 7.5, rng::derive_key(3, 3, rep));
    plain.push_back(estimate_densities(delaunay(s), w).D_V_hat);
    for (auto& x : s.nuclei) x = g.apply(x);
    // The moved sample still covers B(7); keep the usual interior margin.
    s.radius = 7.0;
    moved.push_back(estimate_densities(delaunay(s), w).D_V_hat);
  }
  auto mean_se = [&](const std::vector<double>& xs) {
    double m = 0, v = 0;
    for (double x : xs) m += x / xs.size();
    for (double x : xs) v += (x - m) * (x - m) / (xs.size() - 1);
    return std::pair{m, std::sqrt(v / xs.size())};
  };
  const auto [m1, s1] = mean_se(plain);
  const auto [m2, s2] = mean_se(moved);
  CHECK(std::abs(m1 - m2) <= 3.0 * std::hypot(s1, s2));
}

TEST_CASE("Euler bias shrinks as the window grows") {
  double prev_bias = 1e9, prev_se = 0.0;
  for (double Rw : {3.0, 4.0, 5.0}) {
    const EulerCheck ec = euler_check(estimate_densities(1.0, Window{Rw + 2, Rw}, 40, 44));
    const double bias = std::abs(ec.value + 1.0);
    CHECK(bias <= prev_bias + 2.0 * std::hypot(ec.se, prev_se));
    prev_bias = bias;
    prev_se = ec.se;
  }
}

TEST_CASE("window checks and output") {
  CHECK_THROWS_AS(Window(5, 5).validate(), Error);
  // Three nuclei around the origin: every cell is unbounded.
  ColoredPointSet s;
  for (int k = 0; k < 3; ++k) s.nuclei.emplace_back(1.0, 2 * geo::kPi * k / 3);
  s.colors.assign(3, Color::White);
  s.radius = 2.0;
  try {
    count_window(delaunay(s), Window{2.0, 1.0});
    FAIL("expected OriginNotInterior");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OriginNotInterior);
  }
  std::ostringstream out;
  write_density_csv(out, {estimate_densities(1.0, Window{6, 4}, 3, 1)});
  CHECK(out.str().rfind("lambda,R,Rw,replicas,DV,DV_se,DE,DF_count,DF_inv,euler,euler_se,seed\n", 0) == 0);
}
