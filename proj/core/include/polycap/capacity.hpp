#pragma once

#include <optional>
#include <vector>

#include "polycap/bie.hpp"

namespace polycap {

struct CapacityRequest {
  PolycircularCondenser condenser;
  int n = 256;
  int grading_p = 3;
  SolverOptions solver;
  /// Override the condenser's auxiliary points; when neither is present a
  /// deterministic, validated default is chosen.
  std::optional<Complex> alpha;
  std::optional<std::vector<Complex>> alpha_k;
};

struct CapacityResult {
  double capacity = 0.0;
  std::vector<double> a;
  double c = 0.0;
  double h_dev = 0.0;            // max within-component deviation of any h_k
  double condition_number = 0.0;
  int n = 0;
  int grading_p = 0;
  double seconds = 0.0;
  Complex alpha;
  std::vector<Complex> alpha_k;
  SolveDiagnostics diag;  // of the last density solve
};

/// Full pipeline: validate, discretize, solve the m densities, build the
/// coefficient system, return 2*pi * sum(a_k).
CapacityResult compute_capacity(const CapacityRequest& request);

/// Deterministic auxiliary-point defaults: alpha_k is the mean of the
/// hole's arc midpoints (circle center for a circle), alpha maximizes
/// clearance over a candidate grid between the outer centroid and the
/// outer boundary.  Both are verified by winding numbers.
Complex default_alpha(const PolycircularCondenser& condenser);
std::vector<Complex> default_alpha_k(const PolycircularCondenser& condenser);

struct SweepRow {
  int n = 0;
  double capacity = 0.0;
  std::optional<double> error;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double reference = 0.0;
  bool reference_supplied = false;
  /// Least-squares slope of log(error) vs log(n); absent with fewer than
  /// two error entries.
  std::optional<double> order;
};

/// Capacity for each n in ascending order.  Without a supplied reference
/// the largest-n result is used (its own error entry is then omitted).
SweepResult convergence_sweep(const CapacityRequest& base,
                              const std::vector<int>& n_list,
                              std::optional<double> reference = std::nullopt);

struct MobiusRow {
  Complex a;
  double capacity = 0.0;
  double deviation = 0.0;  // |capacity - capacity(a=0)|
};

/// Applies T_a for each a and recomputes the capacity with the mapped
/// auxiliary points.  The outer component must be the unit circle.
std::vector<MobiusRow> mobius_invariance_report(const CapacityRequest& base,
                                                const std::vector<Complex>& a_list);

struct BoundsRow {
  double s = 0.0;
  double perimeter = 0.0;  // hyperbolic
  double capacity = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Lens family r fixed, s over `s_grid`: capacity of (unit disk, lens)
/// against the perimeter-based bounds.  s == r rows use the smooth disk
/// limit.
std::vector<BoundsRow> lens_bounds_table(double r, const std::vector<double>& s_grid,
                                         int n, const SolverOptions& solver = {});

}  // namespace polycap
