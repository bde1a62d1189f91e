#pragma once

#include "polycap/geometry.hpp"

namespace polycap {

/// Arithmetic-geometric mean of a, b > 0, iterated to machine fixed point.
double agm(double a, double b);

/// Complete elliptic integral of the first kind K(r), 0 <= r < 1, via
/// K(r) = pi / (2 agm(1, sqrt(1 - r^2))).
double ellip_K(double r);

/// Groetzsch-type function mu(r) = (pi/2) K(r') / K(r), r' = sqrt(1 - r^2),
/// for 0 < r < 1.
double mu_grotzsch(double r);

/// Capacity of the annulus q < |z| < 1: 2*pi / log(1/q).
double cap_annulus(double q);

/// Capacity of the condenser (unit disk, [-r, r]): 2*pi / mu(2r/(1 + r^2)).
double cap_disk_segment(double r);

/// Upper bound on cap(D, E) in terms of the hyperbolic perimeter L of E:
/// 2*pi / log(sqrt(1 + (2*pi/L)^2) + 2*pi/L).
double bound_upper(double L);

/// Lower bound for convex E: 2*pi / mu(tanh(L/4)).
double bound_lower(double L);

/// Hyperbolic length of the component in the unit disk, the integral of
/// 2|zeta'| / (1 - |zeta|^2), refined to 1e-12 relative.  The component
/// must lie strictly inside the disk.
double hyperbolic_perimeter(const BoundaryComponent& comp);

}  // namespace polycap
