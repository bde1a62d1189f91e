#include "polycap/parametrization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace polycap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mod_2pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

}  // namespace

ComponentParametrization::ComponentParametrization(const BoundaryComponent& comp)
    : component(&comp), smooth(comp.is_full_circle()) {
  if (!smooth) {
    const std::size_t l = comp.arcs.size();
    for (std::size_t i = 0; i < l; ++i)
      corner_params.push_back(kTwoPi * static_cast<double>(i) / l);
  }
}

Complex ComponentParametrization::zeta(double t) const {
  const auto& arcs = component->arcs;
  if (smooth) return arc_eval(arcs[0], mod_2pi(t) / kTwoPi);
  const std::size_t l = arcs.size();
  const double u = mod_2pi(t) * l / kTwoPi;
  const std::size_t i = std::min(static_cast<std::size_t>(u), l - 1);
  return arc_eval(arcs[i], u - i);
}

Complex ComponentParametrization::dzeta(double t) const {
  const auto& arcs = component->arcs;
  if (smooth) return arc_deriv(arcs[0], mod_2pi(t) / kTwoPi) / kTwoPi;
  const std::size_t l = arcs.size();
  const double u = mod_2pi(t) * l / kTwoPi;
  std::size_t i = std::min(static_cast<std::size_t>(u), l - 1);
  double sigma = u - i;
  // One-sided value from the left at corner preimages.
  if (sigma == 0.0 && t > 0.0) {
    i = (i + l - 1) % l;
    sigma = 1.0;
  }
  return arc_deriv(arcs[i], sigma) * (l / kTwoPi);
}

Complex ComponentParametrization::d2zeta(double t) const {
  const auto& arcs = component->arcs;
  if (smooth) return arc_deriv2(arcs[0], mod_2pi(t) / kTwoPi) / (kTwoPi * kTwoPi);
  const std::size_t l = arcs.size();
  const double u = mod_2pi(t) * l / kTwoPi;
  std::size_t i = std::min(static_cast<std::size_t>(u), l - 1);
  double sigma = u - i;
  if (sigma == 0.0 && t > 0.0) {
    i = (i + l - 1) % l;
    sigma = 1.0;
  }
  const double scale = l / kTwoPi;
  return arc_deriv2(arcs[i], sigma) * (scale * scale);
}

GradingTriple kress_w(double s, int p) {
  const double c = 1.0 / p - 0.5;
  auto v = [&](double x) { return c * std::pow(1.0 - 2.0 * x, 3) + (2.0 * x - 1.0) / p + 0.5; };
  auto v1 = [&](double x) { return -6.0 * c * (1.0 - 2.0 * x) * (1.0 - 2.0 * x) + 2.0 / p; };
  auto v2 = [&](double x) { return 24.0 * c * (1.0 - 2.0 * x); };

  const double va = v(s), vb = v(1.0 - s);
  const double a = std::pow(va, p), b = std::pow(vb, p);
  const double ap = p * std::pow(va, p - 1) * v1(s);
  const double bp = -p * std::pow(vb, p - 1) * v1(1.0 - s);
  const double app = p * (p - 1) * std::pow(va, p - 2) * v1(s) * v1(s) +
                     p * std::pow(va, p - 1) * v2(s);
  const double bpp = p * (p - 1) * std::pow(vb, p - 2) * v1(1.0 - s) * v1(1.0 - s) +
                     p * std::pow(vb, p - 1) * v2(1.0 - s);

  const double d = a + b;
  const double num1 = ap * b - a * bp;
  GradingTriple out;
  out.delta = a / d;
  out.d1 = num1 / (d * d);
  out.d2 = ((app * b - a * bpp) * d - 2.0 * num1 * (ap + bp)) / (d * d * d);
  return out;
}

GradingTriple grading_delta(double t, const std::vector<double>& corners, int p) {
  if (p < 2) throw InvalidParameter("grading_delta: p must be >= 2");
  if (corners.empty()) return {mod_2pi(t), 1.0, 0.0};

  const double tr = mod_2pi(t);
  // Subinterval [corners[i], next] containing tr; wrap past the last corner.
  auto it = std::upper_bound(corners.begin(), corners.end(), tr);
  double lo, hi;
  if (it == corners.begin()) {
    lo = corners.back() - kTwoPi;
    hi = corners.front();
  } else {
    const std::size_t i = static_cast<std::size_t>(it - corners.begin()) - 1;
    lo = corners[i];
    hi = (i + 1 < corners.size()) ? corners[i + 1] : corners.front() + kTwoPi;
  }

  const double len = hi - lo;
  const GradingTriple w = kress_w((tr - lo) / len, p);
  return {lo + len * w.delta, w.d1, w.d2 / len};
}

DiscreteBoundary discretize(const PolycircularCondenser& condenser, int n,
                            int grading_p) {
  if (n < 4 || n % 2 != 0)
    throw InvalidParameter("discretize: n must be even and >= 4");
  if (grading_p < 2) throw InvalidParameter("discretize: grading_p must be >= 2");

  std::vector<const BoundaryComponent*> comps{&condenser.outer};
  for (const auto& h : condenser.holes) comps.push_back(&h);

  int max_corners = 0;
  for (const auto* c : comps) max_corners = std::max(max_corners, c->corner_count());
  if (n < 4 * max_corners)
    throw InvalidParameter("discretize: n must be >= 4 * max corner count");

  DiscreteBoundary db;
  db.n = n;
  db.num_components = static_cast<int>(comps.size());
  db.grading_p = grading_p;
  const int total = db.total_nodes();
  db.t.resize(total);
  db.eta.resize(total);
  db.etap.resize(total);
  db.etapp.resize(total);
  db.deltap.assign(total, 1.0);

  const double h = kTwoPi / n;
  for (int j = 0; j < db.num_components; ++j) {
    const ComponentParametrization par(*comps[j]);
    db.corner_params.push_back(par.corner_params);
    for (int i = 0; i < n; ++i) {
      const double ti = (i + 0.5) * h;
      for (double corner : par.corner_params)
        if (std::abs(ti - corner) < 1e-12)
          throw InvalidParameter(
              "discretize: node coincides with a corner; choose n divisible "
              "by the arc count");
      const int g = j * n + i;
      db.t[g] = ti;
      if (par.smooth) {
        db.eta[g] = par.zeta(ti);
        db.etap[g] = par.dzeta(ti);
        db.etapp[g] = par.d2zeta(ti);
      } else {
        const GradingTriple d = grading_delta(ti, par.corner_params, grading_p);
        const Complex zp = par.dzeta(d.delta);
        db.eta[g] = par.zeta(d.delta);
        db.etap[g] = zp * d.d1;
        db.etapp[g] = par.d2zeta(d.delta) * d.d1 * d.d1 + zp * d.d2;
        db.deltap[g] = d.d1;
      }
      if (db.etap[g] == Complex{0.0, 0.0})
        throw InvalidGeometry("discretize: vanishing eta' at node " +
                              std::to_string(g));
    }
  }
  return db;
}

}  // namespace polycap
