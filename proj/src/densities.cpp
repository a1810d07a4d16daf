#include "hyperperc/densities.hpp"

#include <cmath>
#include <ostream>

#include "hyperperc/error.hpp"
#include "hyperperc/pointprocess.hpp"
#include "hyperperc/rng.hpp"

namespace hyperperc {

namespace {

constexpr std::uint64_t kDensityExperiment = rng::experiment_id("densities");

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe out;
  if (xs.empty()) return out;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) out.mean += x;
  out.mean /= n;
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.se = std::sqrt(ss / (n - 1.0) / n);
  return out;
}

DensityCounts count_window_impl(const VoronoiComplex& complex, const Window& window, bool throw_on_origin) {
  window.validate();
  DensityCounts c;
  c.area = geo::ball_area(window.window_radius);
  for (const VoronoiVertex& v : complex.voronoi_vertices) {
    if (v.position.rho <= window.window_radius) {
      ++c.vertices;
      c.degree_sum += 3;  // every Voronoi vertex of a Poisson tiling has degree 3
    }
  }
  for (const geo::HPoint& x : complex.points.nuclei)
    if (x.rho <= window.window_radius) ++c.nuclei;
  const int o = complex.origin_cell();
  if (o >= 0 && complex.interior_mask[o]) {
    c.origin_area = geo::polygon_area(cell_polygon(complex, o));
  } else if (throw_on_origin) {
    throw Error(ErrorKind::OriginNotInterior, "the cell containing the origin is not interior");
  }
  return c;
}

DensityEstimate combine(double lambda, const Window& window, std::uint64_t seed,
                        const std::vector<DensityCounts>& counts) {
  DensityEstimate est;
  est.lambda = lambda;
  est.window = window;
  est.seed = seed;
  est.replicas = static_cast<int>(counts.size());
  std::vector<double> dv, de, df, inv;
  for (const DensityCounts& c : counts) {
    dv.push_back(static_cast<double>(c.vertices) / c.area);
    de.push_back(0.5 * static_cast<double>(c.degree_sum) / c.area);
    df.push_back(static_cast<double>(c.nuclei) / c.area);
    est.euler_samples.push_back(geo::kTwoPi * (df.back() - de.back() + dv.back()));
    if (c.origin_area) {
      est.A_o_samples.push_back(*c.origin_area);
      inv.push_back(1.0 / *c.origin_area);
    } else {
      ++est.discarded;
    }
  }
  const MeanSe v = mean_se(dv), e = mean_se(de), f = mean_se(df), i = mean_se(inv);
  est.D_V_hat = v.mean;
  est.D_V_se = v.se;
  est.D_E_hat = e.mean;
  est.D_E_se = e.se;
  est.D_F_hat_count = f.mean;
  est.D_F_count_se = f.se;
  est.D_F_hat_inverse_area = i.mean;
  est.D_F_inverse_area_se = i.se;
  return est;
}

}  // namespace

DensityCounts count_window(const VoronoiComplex& complex, const Window& window) {
  return count_window_impl(complex, window, true);
}

DensityEstimate estimate_densities(const VoronoiComplex& complex, const Window& window) {
  return combine(complex.points.lambda, window, complex.points.seed, {count_window_impl(complex, window, true)});
}

DensityEstimate estimate_densities(double lambda, const Window& window, int replicas, std::uint64_t seed,
                                   Execution execution) {
  window.validate();
  if (!(lambda > 0.0)) throw Error(ErrorKind::Config, "lambda must be positive");
  if (replicas < 1) throw Error(ErrorKind::Config, "need at least one replica");
  const auto counts = map_replicas(replicas, execution, [&](int r) {
    const std::uint64_t key = rng::derive_key(seed, kDensityExperiment, static_cast<std::uint64_t>(r));
    const VoronoiComplex cx = delaunay(sample_colored(lambda, 0.5, window.sample_radius, key));
    return count_window_impl(cx, window, false);
  });
  return combine(lambda, window, seed, counts);
}

EulerCheck euler_check(const DensityEstimate& estimate) {
  if (estimate.euler_samples.empty()) {
    // Built by hand from densities alone: no replica spread to propagate.
    return {geo::kTwoPi * (estimate.D_F_hat_count - estimate.D_E_hat + estimate.D_V_hat), 0.0};
  }
  const MeanSe m = mean_se(estimate.euler_samples);
  return {m.mean, m.se};
}

bool face_estimators_agree(const DensityEstimate& estimate, double sigmas) {
  const double se = std::hypot(estimate.D_F_count_se, estimate.D_F_inverse_area_se);
  return std::abs(estimate.D_F_hat_count - estimate.D_F_hat_inverse_area) <= sigmas * se;
}

void write_density_csv(std::ostream& out, const std::vector<DensityEstimate>& rows) {
  out << kDensityCsvHeader << '\n';
  for (const DensityEstimate& d : rows) {
    const EulerCheck e = euler_check(d);
    out << format_double(d.lambda) << ',' << format_double(d.window.sample_radius) << ','
        << format_double(d.window.window_radius) << ',' << d.replicas << ',' << format_double(d.D_V_hat) << ','
        << format_double(d.D_V_se) << ',' << format_double(d.D_E_hat) << ',' << format_double(d.D_F_hat_count)
        << ',' << format_double(d.D_F_hat_inverse_area) << ',' << format_double(e.value) << ','
        << format_double(e.se) << ',' << d.seed << '\n';
  }
}

}  // namespace hyperperc
