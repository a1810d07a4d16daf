#pragma once

// Phase classification of sweep results, and the p_c(lambda) curve with the
// checks it must pass: the upper bound 1/2 - 1/(4 lambda pi + 2), positivity,
// and the sandwich between adjacent intensities.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hyperperc/sweep.hpp"

namespace hyperperc {

enum class Phase { WUnique, BUnique, BothMany, SubcriticalAmbiguous };

const char* to_string(Phase phase);
Phase phase_from_string(const std::string& name);

/// Finite-size calibration knobs (overridable from the config).
struct PhaseThresholds {
  double unique = 0.9;      // uniqueness frequency for a *-unique label
  double reach = 0.9;       // reach frequency for a *-unique label
  double many_reach = 0.5;  // both colors must reach this often for both-many
  double many_k = 2.0;      // and have at least this mean k
};

struct PhaseRow {
  double p = 0.0;
  double lambda = 0.0;
  double R = 0.0;
  int replicas = 0;
  double reach_w = 0.0;
  double reach_b = 0.0;
  double kw = 0.0;
  double kb = 0.0;
  double unique_w = 0.0;
  double unique_b = 0.0;
  Phase phase = Phase::SubcriticalAmbiguous;
  std::uint64_t seed = 0;
};

struct PhaseTable {
  std::vector<PhaseRow> rows;
};

Phase classify(const SweepRow& row, const PhaseThresholds& thresholds = {});

/// One row per grid point, read at the largest window of the sweep.
void append_phase_rows(PhaseTable& table, const SweepResult& sweep, const PhaseThresholds& thresholds = {});

inline constexpr const char* kPhaseCsvHeader = "p,lambda,R,replicas,reach_w,reach_b,kw,kb,unique_w,unique_b,phase,seed";
void write_phase_csv(std::ostream& out, const PhaseTable& table);
PhaseTable read_phase_csv(std::istream& in);

/// 1/2 - 1/(4 lambda pi + 2).
double pc_upper_bound(double lambda);
/// 1/2 - lambda^(-2/3), reported for comparison only.
double pc_asymptotic_guess(double lambda);

struct PcCurveRow {
  double lambda = 0.0;
  CriticalEstimate pc;
  double bound = 0.0;
  bool below_bound = false;  // pc.hi <= bound + slack
  bool positive = false;     // pc.lo >= slack
  double guess = 0.0;
};

/// For adjacent lambda < lambda': pc(l) l/l' <= pc(l') <= 1 - (1 - pc(l)) l/l',
/// evaluated with the CI ends that make each side easiest to satisfy.
struct SandwichCheck {
  double lambda = 0.0;
  double lambda_next = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool holds = false;
};

struct PcCurve {
  std::vector<PcCurveRow> rows;  // ascending lambda
  std::vector<SandwichCheck> sandwich;
  /// No adjacent pair decreases in lambda beyond the CIs.
  bool monotone = true;
  int replicas = 0;
  std::uint64_t seed = 0;

  bool all_checks_pass() const;
};

inline constexpr double kBoundSlack = 0.02;

/// Fills bound, flags, sandwich and monotone from the estimates in `rows`.
void check_pc_curve(PcCurve& curve, double slack = kBoundSlack);

PcCurve estimate_pc_curve(std::vector<double> lambdas, const VoronoiModel& base, const std::vector<double>& radii,
                          const std::vector<double>& grid, int replicas, std::uint64_t seed,
                          int bootstrap = kDefaultBootstrap, double slack = kBoundSlack,
                          Execution execution = Execution::Parallel);

inline constexpr const char* kPcCsvHeader = "lambda,pc,pc_lo,pc_hi,bound,below_bound,positive,guess,replicas,seed";
void write_pc_csv(std::ostream& out, const PcCurve& curve);

}  // namespace hyperperc
