#include "polycap/analytic.hpp"

#include <cmath>
#include <numbers>

#include "polycap/errors.hpp"

namespace polycap {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double agm(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("agm: arguments must be positive");
  for (int it = 0; it < 60; ++it) {
    const double am = 0.5 * (a + b);
    const double gm = std::sqrt(a * b);
    if (std::abs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() * am) break;
    a = am;
    b = gm;
  }
  return 0.5 * (a + b);
}

double ellip_K(double r) {
  if (!(r >= 0.0) || r >= 1.0) throw DomainError("ellip_K: need 0 <= r < 1");
  return kPi / (2.0 * agm(1.0, std::sqrt((1.0 - r) * (1.0 + r))));
}

double mu_grotzsch(double r) {
  if (!(r > 0.0) || r >= 1.0) throw DomainError("mu_grotzsch: need 0 < r < 1");
  // for tiny r the complementary modulus rounds to 1; use
  // mu(r) = log(4/r) + O(r^2), already exact to double there
  if (r < 1e-8) return std::log(4.0 / r);
  const double rp = std::sqrt((1.0 - r) * (1.0 + r));
  return kPi / 2.0 * ellip_K(rp) / ellip_K(r);
}

double cap_annulus(double q) {
  if (!(q > 0.0) || q >= 1.0) throw DomainError("cap_annulus: need 0 < q < 1");
  return kTwoPi / std::log(1.0 / q);
}

double cap_disk_segment(double r) {
  if (!(r > 0.0) || r >= 1.0) throw DomainError("cap_disk_segment: need 0 < r < 1");
  return kTwoPi / mu_grotzsch(2.0 * r / (1.0 + r * r));
}

double bound_upper(double L) {
  if (!(L > 0.0)) throw DomainError("bound_upper: need L > 0");
  const double x = kTwoPi / L;
  return kTwoPi / std::log(std::sqrt(1.0 + x * x) + x);
}

double bound_lower(double L) {
  if (!(L > 0.0)) throw DomainError("bound_lower: need L > 0");
  return kTwoPi / mu_grotzsch(std::tanh(L / 4.0));
}

double hyperbolic_perimeter(const BoundaryComponent& comp) {
  static const double gl_x[8] = {0.01985507175123188, 0.10166676129318664,
                                 0.2372337950418355,  0.40828267875217505,
                                 0.5917173212478249,  0.7627662049581645,
                                 0.8983332387068134,  0.9801449282487681};
  static const double gl_w[8] = {0.05061426814518813, 0.11119051722668724,
                                 0.15685332293894363, 0.18134189168918098,
                                 0.18134189168918098, 0.15685332293894363,
                                 0.11119051722668724, 0.05061426814518813};

  auto length_at = [&](int panels_per_arc) {
    double total = 0.0;
    for (const auto& arc : comp.arcs) {
      for (int p = 0; p < panels_per_arc; ++p)
        for (int q = 0; q < 8; ++q) {
          const double s = (p + gl_x[q]) / panels_per_arc;
          const Complex z = arc_eval(arc, s);
          const double r2 = std::norm(z);
          if (r2 >= 1.0 - 1e-14)
            throw DomainError("hyperbolic_perimeter: component touches the unit circle");
          total += gl_w[q] / panels_per_arc * 2.0 * std::abs(arc_deriv(arc, s)) /
                   (1.0 - r2);
        }
    }
    return total;
  };

  double prev = length_at(4);
  for (int panels = 8; panels <= 4096; panels *= 2) {
    const double cur = length_at(panels);
    if (std::abs(cur - prev) <= 1e-12 * std::abs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace polycap
