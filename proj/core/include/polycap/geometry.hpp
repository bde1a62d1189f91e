#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "polycap/errors.hpp"

namespace polycap {

using Complex = std::complex<double>;

/// One boundary piece: a circular arc, a line segment, or a full circle.
///
/// Arcs are stored in center/radius/angle form so that derivatives of the
/// local parametrization are analytic.  Three-point input is a constructor
/// only (arc_from_three_points).
struct CircularArc {
  enum class Kind { Arc, Segment, FullCircle };

  Kind kind = Kind::Segment;

  // Arc, FullCircle
  Complex center{0.0, 0.0};
  double radius = 0.0;

  // Arc: sweep = theta_end - theta_start, sign encodes direction,
  // 0 < |sweep| < 2*pi.
  double theta_start = 0.0;
  double theta_end = 0.0;

  // Segment and Arc: exact endpoints as given at construction, so a
  // serialize/parse cycle reproduces them bit for bit.
  Complex a{0.0, 0.0};
  Complex b{0.0, 0.0};

  // FullCircle
  bool ccw = true;

  double sweep() const { return theta_end - theta_start; }
  Complex start() const;
  Complex end() const;
};

/// A closed chain of arcs/segments (or a single full circle).
/// Construction enforces cyclic endpoint closure to 1e-12.
struct BoundaryComponent {
  std::vector<CircularArc> arcs;

  BoundaryComponent() = default;
  explicit BoundaryComponent(std::vector<CircularArc> pieces);

  /// Number of corner points: the number of arcs for a chain, 0 for a
  /// single full circle.
  int corner_count() const;
  bool is_full_circle() const;
};

/// Condenser (G, E) with polycircular boundary: outer component Gamma_0
/// traversed counterclockwise and holes Gamma_1..Gamma_m traversed
/// clockwise.  alpha is an auxiliary point in the domain, alpha_k[k] a
/// point enclosed by hole k; both optional (resolved by the solver when
/// absent).
struct PolycircularCondenser {
  BoundaryComponent outer;
  std::vector<BoundaryComponent> holes;
  std::optional<Complex> alpha;
  std::optional<std::vector<Complex>> alpha_k;

  int num_holes() const { return static_cast<int>(holes.size()); }
};

// --- arc constructors ------------------------------------------------------

/// Unique arc from z1 to z2 through zmid.  Collinear input (perpendicular
/// distance of zmid below 1e-12 * |z2 - z1|) yields the segment [z1, z2];
/// zmid must then lie strictly between the endpoints.
CircularArc arc_from_three_points(Complex z1, Complex zmid, Complex z2);

/// Arc from a to b on the circle about `center`, traversed CCW iff `ccw`.
/// Radii must agree to 1e-10 relative; a == b is rejected.
CircularArc arc_from_endpoints_center(Complex a, Complex b, Complex center,
                                      bool ccw);

CircularArc segment(Complex a, Complex b);
CircularArc full_circle(Complex center, double radius, bool ccw);

/// Arc with start/end swapped and direction reversed.
CircularArc arc_reversed(const CircularArc& arc);

// --- local parametrization on [0, 1] ---------------------------------------

Complex arc_eval(const CircularArc& arc, double sigma);
Complex arc_deriv(const CircularArc& arc, double sigma);
Complex arc_deriv2(const CircularArc& arc, double sigma);

// --- global queries --------------------------------------------------------

/// Integer winding number of the (closed) component about z, by summed
/// signed angle increments.  Throws PointOnBoundary if z is within `tol`
/// of the sampled curve.
int winding_number(const BoundaryComponent& comp, Complex z,
                   double tol = 1e-9);

/// Signed area enclosed by the component (positive for CCW traversal).
double signed_area(const BoundaryComponent& comp);

/// Interior angles of the domain lying to the left of the traversal, one
/// per corner, each in (0, 2*pi).  Empty for a full circle.
std::vector<double> corner_angles(const BoundaryComponent& comp);

/// Points sampled along the component, `per_arc` per piece, in traversal
/// order.
std::vector<Complex> sample_points(const BoundaryComponent& comp,
                                   int per_arc = 64);

// --- validation ------------------------------------------------------------

struct Violation {
  enum class Code {
    OpenChain,
    SelfIntersection,
    Cusp,
    Orientation,
    HoleOutsideOuter,
    HolesOverlap,
    BadAlpha,
    BadAlphaK,
    NonFinite,
  };
  Code code;
  int component = -1;  // 0 = outer, k >= 1 = hole k-1, -1 = condenser-level
  std::string message;
};

struct ValidateOptions {
  double min_corner_angle = 0.017453292519943295;  // 1 degree
  double closure_tol = 1e-12;
};

/// Checks all condenser invariants; an empty result means valid.
std::vector<Violation> validate(const PolycircularCondenser& condenser,
                                const ValidateOptions& options = {});

/// Opt-in repair: flips any component whose only defect is its
/// orientation.  Everything else is left untouched.
PolycircularCondenser normalized_orientation(PolycircularCondenser condenser);

// --- Moebius transformation ------------------------------------------------

/// T_a(z) = (z - a) / (1 - conj(a) z), the disk automorphism.
Complex mobius_point(Complex a, Complex z);

/// Applies T_a to the whole condenser.  Each arc is rebuilt from the
/// images of three of its points; segments may become arcs and vice
/// versa.  a = 0 is the exact identity.
PolycircularCondenser mobius_apply(Complex a,
                                   const PolycircularCondenser& condenser);

// --- builders --------------------------------------------------------------

BoundaryComponent make_circle(Complex center, double radius, bool ccw);

/// Lens hole bordered by the arc r -> -is -> -r and the arc -r -> is -> r
/// (clockwise).  Requires 0 < s <= r < 1; s == r degenerates to the full
/// circle of radius r.
BoundaryComponent make_lens(double r, double s);

/// Four-lens hole set: the first-quadrant lens plus its rotations by
/// pi/2, pi, and 3*pi/2.
std::vector<BoundaryComponent> make_four_lens();

/// Jagged nine-piece test boundary (three hair-spike arc pairs on top of a
/// three-segment box); its two valley corners have interior domain angles
/// of roughly 8 degrees.  The vertex/arc pairing is exposed as data in the
/// implementation.
BoundaryComponent make_bart();

/// Two-arc crescent with endpoints +-0.2, through 0.6i and 0.1i
/// (clockwise).  Used by the Moebius-invariance experiment.
BoundaryComponent make_mobius_e();

}  // namespace polycap
