#include "polycap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace polycap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double mod_2pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

// Circumcenter of three non-collinear points via the 2x2 linear system
// 2 (z2 - z1) . c = |z2|^2 - |z1|^2, 2 (z3 - z1) . c = |z3|^2 - |z1|^2.
Complex circumcenter(Complex z1, Complex z2, Complex z3) {
  const double ax = z2.real() - z1.real(), ay = z2.imag() - z1.imag();
  const double bx = z3.real() - z1.real(), by = z3.imag() - z1.imag();
  const double ra = 0.5 * (std::norm(z2) - std::norm(z1));
  const double rb = 0.5 * (std::norm(z3) - std::norm(z1));
  const double det = ax * by - ay * bx;
  if (det == 0.0) throw InvalidGeometry("circumcenter: collinear points");
  return {(ra * by - rb * ay) / det, (ax * rb - bx * ra) / det};
}

}  // namespace

Complex CircularArc::start() const {
  switch (kind) {
    case Kind::Segment:
      return a;
    case Kind::FullCircle:
      return center + Complex(radius, 0.0);
    case Kind::Arc:
      return a;
  }
  return {};
}

Complex CircularArc::end() const {
  switch (kind) {
    case Kind::Segment:
      return b;
    case Kind::FullCircle:
      return center + Complex(radius, 0.0);
    case Kind::Arc:
      return b;
  }
  return {};
}

BoundaryComponent::BoundaryComponent(std::vector<CircularArc> pieces)
    : arcs(std::move(pieces)) {
  if (arcs.empty()) throw InvalidGeometry("component: no arcs");
  for (const auto& arc : arcs) {
    if (arc.kind == CircularArc::Kind::FullCircle && arcs.size() > 1)
      throw InvalidGeometry("component: a full circle must be the only piece");
  }
  if (arcs.size() >= 1 && arcs[0].kind != CircularArc::Kind::FullCircle) {
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const Complex e = arcs[i].end();
      const Complex s = arcs[(i + 1) % arcs.size()].start();
      if (std::abs(e - s) > 1e-12)
        throw InvalidGeometry("component: chain not closed at joint " +
                              std::to_string(i));
    }
  }
}

int BoundaryComponent::corner_count() const {
  return is_full_circle() ? 0 : static_cast<int>(arcs.size());
}

bool BoundaryComponent::is_full_circle() const {
  return arcs.size() == 1 && arcs[0].kind == CircularArc::Kind::FullCircle;
}

CircularArc segment(Complex a, Complex b) {
  if (!finite(a) || !finite(b)) throw InvalidGeometry("segment: non-finite endpoint");
  if (a == b) throw InvalidGeometry("segment: coincident endpoints");
  CircularArc arc;
  arc.kind = CircularArc::Kind::Segment;
  arc.a = a;
  arc.b = b;
  return arc;
}

CircularArc full_circle(Complex center, double radius, bool ccw) {
  if (!finite(center) || !std::isfinite(radius) || radius <= 0.0)
    throw InvalidGeometry("full_circle: need finite center and radius > 0");
  CircularArc arc;
  arc.kind = CircularArc::Kind::FullCircle;
  arc.center = center;
  arc.radius = radius;
  arc.ccw = ccw;
  return arc;
}

CircularArc arc_from_three_points(Complex z1, Complex zmid, Complex z2) {
  if (!finite(z1) || !finite(zmid) || !finite(z2))
    throw InvalidGeometry("arc_from_three_points: non-finite input");
  if (z1 == zmid || z1 == z2 || zmid == z2)
    throw InvalidGeometry("arc_from_three_points: coincident points");

  const Complex chord = z2 - z1;
  const double len = std::abs(chord);
  // Perpendicular distance of zmid from the line z1-z2.
  const double dist =
      std::abs((zmid - z1).real() * chord.imag() - (zmid - z1).imag() * chord.real()) / len;
  if (dist < 1e-12 * len) {
    const double t = ((zmid - z1).real() * chord.real() + (zmid - z1).imag() * chord.imag()) /
                     (len * len);
    if (t <= 0.0 || t >= 1.0)
      throw InvalidGeometry("arc_from_three_points: collinear with zmid outside [z1, z2]");
    return segment(z1, z2);
  }

  const Complex c = circumcenter(z1, zmid, z2);
  const double radius = std::abs(z1 - c);
  const double t1 = std::arg(z1 - c);
  const double tm = std::arg(zmid - c);
  const double t2 = std::arg(z2 - c);

  // CCW sweep from z1 to z2; take it iff zmid is passed on the way.
  const double sweep_ccw = mod_2pi(t2 - t1) == 0.0 ? kTwoPi : mod_2pi(t2 - t1);
  const double mid_off = mod_2pi(tm - t1);
  const double sweep = (mid_off < sweep_ccw) ? sweep_ccw : sweep_ccw - kTwoPi;

  CircularArc arc;
  arc.kind = CircularArc::Kind::Arc;
  arc.center = c;
  arc.radius = radius;
  arc.theta_start = t1;
  arc.theta_end = t1 + sweep;
  arc.a = z1;
  arc.b = z2;
  return arc;
}

CircularArc arc_from_endpoints_center(Complex a, Complex b, Complex center,
                                      bool ccw) {
  if (!finite(a) || !finite(b) || !finite(center))
    throw InvalidGeometry("arc_from_endpoints_center: non-finite input");
  const double ra = std::abs(a - center);
  const double rb = std::abs(b - center);
  if (ra == 0.0 || std::abs(ra - rb) > 1e-10 * std::max(ra, rb))
    throw InvalidGeometry("arc_from_endpoints_center: unequal radii");
  if (a == b)
    throw InvalidGeometry("arc_from_endpoints_center: zero sweep");

  const double ta = std::arg(a - center);
  const double tb = std::arg(b - center);
  const double sweep_ccw = mod_2pi(tb - ta);
  if (sweep_ccw == 0.0)
    throw InvalidGeometry("arc_from_endpoints_center: zero sweep");

  CircularArc arc;
  arc.kind = CircularArc::Kind::Arc;
  arc.center = center;
  arc.radius = ra;
  arc.theta_start = ta;
  arc.theta_end = ta + (ccw ? sweep_ccw : sweep_ccw - kTwoPi);
  arc.a = a;
  arc.b = b;
  return arc;
}

CircularArc arc_reversed(const CircularArc& arc) {
  CircularArc r = arc;
  switch (arc.kind) {
    case CircularArc::Kind::Segment:
      std::swap(r.a, r.b);
      break;
    case CircularArc::Kind::FullCircle:
      r.ccw = !arc.ccw;
      break;
    case CircularArc::Kind::Arc:
      r.theta_start = arc.theta_end;
      r.theta_end = arc.theta_start;
      std::swap(r.a, r.b);
      break;
  }
  return r;
}

Complex arc_eval(const CircularArc& arc, double sigma) {
  switch (arc.kind) {
    case CircularArc::Kind::Segment:
      return arc.a + sigma * (arc.b - arc.a);
    case CircularArc::Kind::FullCircle: {
      const double s = arc.ccw ? kTwoPi * sigma : -kTwoPi * sigma;
      return arc.center + arc.radius * std::polar(1.0, s);
    }
    case CircularArc::Kind::Arc:
      return arc.center +
             arc.radius * std::polar(1.0, arc.theta_start + sigma * arc.sweep());
  }
  return {};
}

Complex arc_deriv(const CircularArc& arc, double sigma) {
  switch (arc.kind) {
    case CircularArc::Kind::Segment:
      return arc.b - arc.a;
    case CircularArc::Kind::FullCircle: {
      const double w = arc.ccw ? kTwoPi : -kTwoPi;
      return Complex(0.0, w) * arc.radius * std::polar(1.0, w * sigma);
    }
    case CircularArc::Kind::Arc: {
      const double w = arc.sweep();
      return Complex(0.0, w) * arc.radius *
             std::polar(1.0, arc.theta_start + sigma * w);
    }
  }
  return {};
}

Complex arc_deriv2(const CircularArc& arc, double sigma) {
  switch (arc.kind) {
    case CircularArc::Kind::Segment:
      return {0.0, 0.0};
    case CircularArc::Kind::FullCircle: {
      const double w = arc.ccw ? kTwoPi : -kTwoPi;
      return -w * w * arc.radius * std::polar(1.0, w * sigma);
    }
    case CircularArc::Kind::Arc: {
      const double w = arc.sweep();
      return -w * w * arc.radius *
             std::polar(1.0, arc.theta_start + sigma * w);
    }
  }
  return {};
}

std::vector<Complex> sample_points(const BoundaryComponent& comp, int per_arc) {
  std::vector<Complex> pts;
  pts.reserve(comp.arcs.size() * static_cast<std::size_t>(per_arc));
  for (const auto& arc : comp.arcs)
    for (int i = 0; i < per_arc; ++i)
      pts.push_back(arc_eval(arc, static_cast<double>(i) / per_arc));
  return pts;
}

int winding_number(const BoundaryComponent& comp, Complex z, double tol) {
  int per_arc = 64;
  for (;; per_arc *= 2) {
    const auto pts = sample_points(comp, per_arc);
    double total = 0.0;
    double max_step = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Complex u = pts[i] - z;
      const Complex v = pts[(i + 1) % pts.size()] - z;
      if (std::abs(u) < tol) throw PointOnBoundary("winding_number: point on boundary");
      const double step = std::arg(v / u);
      max_step = std::max(max_step, std::abs(step));
      total += step;
    }
    if (max_step < 1.0 || per_arc >= 4096)
      return static_cast<int>(std::lround(total / kTwoPi));
  }
}

double signed_area(const BoundaryComponent& comp) {
  // (1/2) contour integral of Im(conj(z) dz), Gauss-Legendre per piece.
  static const double gl_x[8] = {0.01985507175123188, 0.10166676129318664,
                                 0.2372337950418355,  0.40828267875217505,
                                 0.5917173212478249,  0.7627662049581645,
                                 0.8983332387068134,  0.9801449282487681};
  static const double gl_w[8] = {0.05061426814518813, 0.11119051722668724,
                                 0.15685332293894363, 0.18134189168918098,
                                 0.18134189168918098, 0.15685332293894363,
                                 0.11119051722668724, 0.05061426814518813};
  double area = 0.0;
  for (const auto& arc : comp.arcs) {
    const int panels = arc.kind == CircularArc::Kind::Segment ? 1 : 16;
    for (int p = 0; p < panels; ++p)
      for (int q = 0; q < 8; ++q) {
        const double s = (p + gl_x[q]) / panels;
        const Complex z = arc_eval(arc, s);
        const Complex dz = arc_deriv(arc, s);
        area += gl_w[q] / panels * (z.real() * dz.imag() - z.imag() * dz.real());
      }
  }
  return 0.5 * area;
}

std::vector<double> corner_angles(const BoundaryComponent& comp) {
  std::vector<double> angles;
  if (comp.is_full_circle()) return angles;
  const std::size_t l = comp.arcs.size();
  for (std::size_t i = 0; i < l; ++i) {
    const Complex u = arc_deriv(comp.arcs[i], 1.0);
    const Complex v = arc_deriv(comp.arcs[(i + 1) % l], 0.0);
    // Angle of the domain on the left of the traversal: pi minus the turn.
    double angle = std::numbers::pi - std::arg(v / u);
    if (angle < 0.0) angle += kTwoPi;
    if (angle >= kTwoPi) angle -= kTwoPi;
    angles.push_back(angle);
  }
  return angles;
}

namespace {

bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
  auto cross = [](Complex u, Complex v) {
    return u.real() * v.imag() - u.imag() * v.real();
  };
  const double d1 = cross(p2 - p1, q1 - p1);
  const double d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1);
  const double d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

// Numerical Jordan check on a sampled polyline.
bool self_intersects(const std::vector<Complex>& pts) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the wrap
      if (segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]))
        return true;
    }
  }
  return false;
}

bool polylines_cross(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (segments_intersect(a[i], a[(i + 1) % a.size()], b[j],
                             b[(j + 1) % b.size()]))
        return true;
  return false;
}

std::string comp_name(int idx) {
  return idx == 0 ? std::string("outer") : "hole " + std::to_string(idx - 1);
}

}  // namespace

std::vector<Violation> validate(const PolycircularCondenser& condenser,
                                const ValidateOptions& options) {
  std::vector<Violation> out;
  const int m = condenser.num_holes();

  std::vector<const BoundaryComponent*> comps{&condenser.outer};
  for (const auto& h : condenser.holes) comps.push_back(&h);

  std::vector<std::vector<Complex>> samples;
  for (int ci = 0; ci < m + 1; ++ci) {
    const auto& comp = *comps[ci];

    for (const auto& arc : comp.arcs) {
      const bool ok = finite(arc.center) && finite(arc.a) && finite(arc.b) &&
                      std::isfinite(arc.radius) && std::isfinite(arc.theta_start) &&
                      std::isfinite(arc.theta_end);
      if (!ok)
        out.push_back({Violation::Code::NonFinite, ci,
                       comp_name(ci) + ": non-finite arc data"});
    }

    if (!comp.is_full_circle()) {
      for (std::size_t i = 0; i < comp.arcs.size(); ++i) {
        const Complex e = comp.arcs[i].end();
        const Complex s = comp.arcs[(i + 1) % comp.arcs.size()].start();
        if (std::abs(e - s) > options.closure_tol)
          out.push_back({Violation::Code::OpenChain, ci,
                         comp_name(ci) + ": chain open at joint " + std::to_string(i)});
      }
      const auto angles = corner_angles(comp);
      for (std::size_t i = 0; i < angles.size(); ++i) {
        if (angles[i] < options.min_corner_angle ||
            angles[i] > kTwoPi - options.min_corner_angle)
          out.push_back({Violation::Code::Cusp, ci,
                         comp_name(ci) + ": cusp-like corner " + std::to_string(i) +
                             " (angle " + std::to_string(angles[i]) + " rad)"});
      }
    }

    samples.push_back(sample_points(comp, 96));
    if (self_intersects(samples.back()))
      out.push_back({Violation::Code::SelfIntersection, ci,
                     comp_name(ci) + ": self-intersection detected"});

    const double area = signed_area(comp);
    if (ci == 0 && area <= 0.0)
      out.push_back({Violation::Code::Orientation, ci,
                     "outer: must be traversed counterclockwise"});
    if (ci > 0 && area >= 0.0)
      out.push_back({Violation::Code::Orientation, ci,
                     comp_name(ci) + ": must be traversed clockwise"});
  }

  // Containment and disjointness, via winding numbers of sampled points.
  auto winding_safe = [](const BoundaryComponent& c, Complex z) -> std::optional<int> {
    try {
      return winding_number(c, z);
    } catch (const PointOnBoundary&) {
      return std::nullopt;
    }
  };

  for (int k = 1; k <= m; ++k) {
    bool inside = true;
    for (std::size_t i = 0; i < samples[k].size(); i += 8) {
      const auto w = winding_safe(condenser.outer, samples[k][i]);
      if (!w || *w != 1) {
        inside = false;
        break;
      }
    }
    if (!inside)
      out.push_back({Violation::Code::HoleOutsideOuter, k,
                     comp_name(k) + ": not strictly inside the outer component"});
    for (int j = k + 1; j <= m; ++j) {
      bool overlap = polylines_cross(samples[k], samples[j]);
      if (!overlap) {
        const auto w = winding_safe(condenser.holes[j - 1], samples[k][0]);
        overlap = !w || *w != 0;
      }
      if (overlap)
        out.push_back({Violation::Code::HolesOverlap, k,
                       comp_name(k) + " and " + comp_name(j) + " overlap"});
    }
  }

  if (condenser.alpha) {
    const Complex alpha = *condenser.alpha;
    bool ok = finite(alpha);
    if (ok) {
      try {
        ok = winding_number(condenser.outer, alpha) == 1;
        for (int k = 1; ok && k <= m; ++k)
          ok = winding_number(condenser.holes[k - 1], alpha) == 0;
      } catch (const PointOnBoundary&) {
        ok = false;
      }
    }
    if (!ok)
      out.push_back({Violation::Code::BadAlpha, -1,
                     "alpha is not an interior point of the domain"});
  }
  if (condenser.alpha_k) {
    if (static_cast<int>(condenser.alpha_k->size()) != m) {
      out.push_back({Violation::Code::BadAlphaK, -1,
                     "alpha_k must list one point per hole"});
    } else {
      for (int k = 0; k < m; ++k) {
        bool ok = finite((*condenser.alpha_k)[k]);
        if (ok) {
          try {
            ok = winding_number(condenser.holes[k], (*condenser.alpha_k)[k]) != 0;
          } catch (const PointOnBoundary&) {
            ok = false;
          }
        }
        if (!ok)
          out.push_back({Violation::Code::BadAlphaK, k + 1,
                         "alpha_k[" + std::to_string(k) + "] is not enclosed by its hole"});
      }
    }
  }

  return out;
}

PolycircularCondenser normalized_orientation(PolycircularCondenser condenser) {
  auto flip = [](BoundaryComponent& comp) {
    std::vector<CircularArc> rev;
    rev.reserve(comp.arcs.size());
    for (auto it = comp.arcs.rbegin(); it != comp.arcs.rend(); ++it)
      rev.push_back(arc_reversed(*it));
    comp.arcs = std::move(rev);
  };
  if (signed_area(condenser.outer) < 0.0) flip(condenser.outer);
  for (auto& hole : condenser.holes)
    if (signed_area(hole) > 0.0) flip(hole);
  return condenser;
}

Complex mobius_point(Complex a, Complex z) {
  return (z - a) / (1.0 - std::conj(a) * z);
}

PolycircularCondenser mobius_apply(Complex a,
                                   const PolycircularCondenser& condenser) {
  if (std::abs(a) >= 1.0)
    throw InvalidParameter("mobius_apply: |a| must be < 1");
  if (a == Complex{0.0, 0.0}) return condenser;

  auto map_arc = [&](const CircularArc& arc) -> CircularArc {
    if (arc.kind == CircularArc::Kind::FullCircle) {
      // A Moebius image of a circle not through the pole is a circle;
      // orientation is preserved.
      const Complex p0 = mobius_point(a, arc_eval(arc, 0.0));
      const Complex p1 = mobius_point(a, arc_eval(arc, 1.0 / 3.0));
      const Complex p2 = mobius_point(a, arc_eval(arc, 2.0 / 3.0));
      const Complex c = circumcenter(p0, p1, p2);
      return full_circle(c, std::abs(p0 - c), arc.ccw);
    }
    const Complex p0 = mobius_point(a, arc_eval(arc, 0.0));
    const Complex pm = mobius_point(a, arc_eval(arc, 0.5));
    const Complex p1 = mobius_point(a, arc_eval(arc, 1.0));
    return arc_from_three_points(p0, pm, p1);
  };

  auto map_comp = [&](const BoundaryComponent& comp) {
    std::vector<CircularArc> arcs;
    arcs.reserve(comp.arcs.size());
    for (const auto& arc : comp.arcs) arcs.push_back(map_arc(arc));
    return BoundaryComponent(std::move(arcs));
  };

  PolycircularCondenser out;
  out.outer = map_comp(condenser.outer);
  for (const auto& hole : condenser.holes) out.holes.push_back(map_comp(hole));
  if (condenser.alpha) out.alpha = mobius_point(a, *condenser.alpha);
  if (condenser.alpha_k) {
    std::vector<Complex> ak;
    for (const auto& z : *condenser.alpha_k) ak.push_back(mobius_point(a, z));
    out.alpha_k = std::move(ak);
  }
  return out;
}

BoundaryComponent make_circle(Complex center, double radius, bool ccw) {
  return BoundaryComponent({full_circle(center, radius, ccw)});
}

BoundaryComponent make_lens(double r, double s) {
  if (!(0.0 < s && s <= r && r < 1.0))
    throw InvalidParameter("make_lens: need 0 < s <= r < 1");
  if (s == r) return make_circle({0.0, 0.0}, r, /*ccw=*/false);
  // Clockwise: down through -is, back over +is.
  return BoundaryComponent({
      arc_from_three_points({r, 0.0}, {0.0, -s}, {-r, 0.0}),
      arc_from_three_points({-r, 0.0}, {0.0, s}, {r, 0.0}),
  });
}

std::vector<BoundaryComponent> make_four_lens() {
  const double d = 1.0 / std::numbers::sqrt2;
  const Complex p1{0.01, 0.7}, p2{0.7, 0.01};
  const Complex outer_mid = 0.7 * Complex{d, d};
  const Complex inner_mid = 0.3 * Complex{d, d};
  std::vector<BoundaryComponent> lenses;
  const Complex rot{0.0, 1.0};
  Complex w{1.0, 0.0};
  for (int k = 0; k < 4; ++k) {
    lenses.emplace_back(std::vector<CircularArc>{
        arc_from_three_points(w * p1, w * outer_mid, w * p2),
        arc_from_three_points(w * p2, w * inner_mid, w * p1),
    });
    w *= rot;
  }
  return lenses;
}

BoundaryComponent make_bart() {
  // Vertices of the boundary, in clockwise traversal order: down the right
  // side of the box, along the bottom, up the left side, then across the
  // three hair spikes.
  const Complex v1{3.0 / 9, 1.0 / 9}, v2{3.0 / 9, -3.0 / 9}, v3{-3.0 / 9, -3.0 / 9},
      v4{-3.0 / 9, 1.0 / 9}, v5{0.0, 4.0 / 9}, v6{-1.0 / 9, 1.0 / 9},
      v7{2.0 / 9, 4.0 / 9}, v8{1.0 / 9, 1.0 / 9}, v9{4.0 / 9, 4.0 / 9};
  // Left spike sides by an interior point, right spike sides by the circle
  // center; each center is at distance 5/9 from both of its endpoints.
  const Complex on1{-2.0 / 9, 3.0 / 9}, on2{0.0, 3.0 / 9}, on3{2.0 / 9, 3.0 / 9};
  const Complex c1{4.0 / 9, 1.0 / 9}, c2{6.0 / 9, 1.0 / 9}, c3{8.0 / 9, 1.0 / 9};
  return BoundaryComponent({
      segment(v1, v2),
      segment(v2, v3),
      segment(v3, v4),
      arc_from_three_points(v4, on1, v5),
      arc_from_endpoints_center(v5, v6, c1, /*ccw=*/true),
      arc_from_three_points(v6, on2, v7),
      arc_from_endpoints_center(v7, v8, c2, /*ccw=*/true),
      arc_from_three_points(v8, on3, v9),
      arc_from_endpoints_center(v9, v1, c3, /*ccw=*/true),
  });
}

BoundaryComponent make_mobius_e() {
  return BoundaryComponent({
      arc_from_three_points({-0.2, 0.0}, {0.0, 0.6}, {0.2, 0.0}),
      arc_from_three_points({0.2, 0.0}, {0.0, 0.1}, {-0.2, 0.0}),
  });
}

}  // namespace polycap
