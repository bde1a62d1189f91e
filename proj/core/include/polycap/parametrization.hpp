#pragma once

#include <vector>

#include "polycap/geometry.hpp"

namespace polycap {

/// 2*pi-periodic parametrization zeta of one boundary component.  Arc i of
/// an l-piece chain occupies [2*pi*i/l, 2*pi*(i+1)/l]; at a corner the
/// derivative takes its one-sided value from the left.
struct ComponentParametrization {
  const BoundaryComponent* component = nullptr;
  std::vector<double> corner_params;  // sorted t-values where arcs join
  bool smooth = false;                // true iff a single full circle

  explicit ComponentParametrization(const BoundaryComponent& comp);

  Complex zeta(double t) const;
  Complex dzeta(double t) const;
  Complex d2zeta(double t) const;
};

/// Value of the corner-graded substitution delta and its first two
/// derivatives at one point.
struct GradingTriple {
  double delta;
  double d1;
  double d2;
};

/// Kress-type graded substitution on [0, 2*pi]: each inter-corner
/// subinterval is mapped onto itself, corners are fixed, and delta' has a
/// zero of order p-1 at every corner.  With no corners it is the identity.
GradingTriple grading_delta(double t, const std::vector<double>& corners, int p);

/// The normalized substitution w on [0, 1]: w = v^p / (v^p + v(1-s)^p) with
/// v(s) = (1/p - 1/2)(1-2s)^3 + (2s-1)/p + 1/2.
GradingTriple kress_w(double s, int p);

/// Graded-mesh node set for the whole boundary.  Nodes are stored
/// component-major: node j*n + i is node i of component j (j = 0 outer).
struct DiscreteBoundary {
  int n = 0;             // nodes per component
  int num_components = 0;  // m + 1
  int grading_p = 3;
  std::vector<double> t;       // local parameter of each node, in (0, 2*pi)
  std::vector<Complex> eta;    // eta(t) = zeta(delta(t))
  std::vector<Complex> etap;   // eta'
  std::vector<Complex> etapp;  // eta''
  std::vector<double> deltap;  // delta'(t), 1 on smooth components
  std::vector<std::vector<double>> corner_params;  // per component

  int total_nodes() const { return n * num_components; }
  int component_of(int node) const { return node / n; }
};

/// Midpoint-offset equispaced grid t_i = (i + 1/2) * 2*pi/n per component,
/// graded through delta on components with corners.  Requires n even and
/// n >= 4 * (max corner count).
DiscreteBoundary discretize(const PolycircularCondenser& condenser, int n,
                            int grading_p = 3);

}  // namespace polycap
