#pragma once

// Vertex, edge and face densities of Poisson-Voronoi tilings, estimated by
// counting inside a window, plus the Euler-type combination of the three.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hyperperc/hypvoronoi.hpp"
#include "hyperperc/parallel.hpp"

namespace hyperperc {

/// Raw counts from one complex.
struct DensityCounts {
  long vertices = 0;    // Voronoi vertices inside the window
  long degree_sum = 0;  // their degrees
  long nuclei = 0;      // nuclei inside the window
  double area = 0.0;    // window area
  std::optional<double> origin_area;  // area of the cell containing the origin
};

/// Throws Error{OriginNotInterior} when the origin's cell is not interior;
/// `origin_area` is then left empty by the non-throwing overload.
DensityCounts count_window(const VoronoiComplex& complex, const Window& window);

struct DensityEstimate {
  double lambda = 0.0;
  Window window;
  int replicas = 0;  // replicas used
  int discarded = 0;  // replicas without an interior origin cell (no A_o sample)
  std::uint64_t seed = 0;

  double D_V_hat = 0.0;
  double D_V_se = 0.0;
  double D_E_hat = 0.0;
  double D_E_se = 0.0;
  double D_F_hat_count = 0.0;
  double D_F_count_se = 0.0;
  double D_F_hat_inverse_area = 0.0;
  double D_F_inverse_area_se = 0.0;
  std::vector<double> A_o_samples;
  /// Per-replica 2*pi*(F - E + V)/area, kept for the Euler check's error bar.
  std::vector<double> euler_samples;
};

/// Single complex (one replica).
DensityEstimate estimate_densities(const VoronoiComplex& complex, const Window& window);

/// Independent replicas at intensity lambda, sampled out to window.sample_radius.
DensityEstimate estimate_densities(double lambda, const Window& window, int replicas, std::uint64_t seed,
                                   Execution execution = Execution::Parallel);

struct EulerCheck {
  double value = 0.0;  // 2*pi*(D_F - D_E + D_V), D_F by counting
  double se = 0.0;
};

EulerCheck euler_check(const DensityEstimate& estimate);

/// Whether the two face-density estimators agree within `sigmas` combined
/// standard errors.
bool face_estimators_agree(const DensityEstimate& estimate, double sigmas = 4.0);

inline constexpr const char* kDensityCsvHeader = "lambda,R,Rw,replicas,DV,DV_se,DE,DF_count,DF_inv,euler,euler_se,seed";
void write_density_csv(std::ostream& out, const std::vector<DensityEstimate>& rows);

}  // namespace hyperperc
