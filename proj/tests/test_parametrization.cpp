#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polycap/domain_io.hpp"
#include "polycap/parametrization.hpp"

using namespace polycap;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

TEST_CASE("grading fixes corners and subinterval midpoints") {
  const std::vector<double> corners{0.0, kPi};
  CHECK(grading_delta(0.0, corners, 3).delta == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(grading_delta(kPi, corners, 3).delta == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(grading_delta(0.0, corners, 3).d1 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(grading_delta(kPi, corners, 3).d1 == doctest::Approx(0.0).epsilon(1e-15));
  // odd symmetry: midpoints are fixed points
  CHECK(grading_delta(kPi / 2, corners, 3).delta ==
        doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(grading_delta(1.5 * kPi, corners, 3).delta ==
        doctest::Approx(1.5 * kPi).epsilon(1e-14));
}

TEST_CASE("grading matches quadrature of its own derivative") {
  const std::vector<double> corners{0.0, kPi};
  // integrate delta' by composite Simpson from 0 to t
  const double t = kPi / 4;
  const int steps = 4000;
  const double h = t / steps;
  double integral = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double x = i * h;
    integral += h / 6.0 *
                (grading_delta(x, corners, 3).d1 +
                 4.0 * grading_delta(x + h / 2, corners, 3).d1 +
                 grading_delta(x + h, corners, 3).d1);
  }
  CHECK(grading_delta(t, corners, 3).delta == doctest::Approx(integral).epsilon(1e-12));
}

TEST_CASE("grading is a bijection of each subinterval") {
  const std::vector<double> corners{0.0, 2.0, kPi, 5.0};
  for (double target : {0.3, 1.9, 2.5, 4.0, 5.5, 6.1}) {
    // invert by bisection inside the subinterval containing target
    double lo = 0.0, hi = kTwoPi;
    for (double c : corners) {
      if (c <= target) lo = std::max(lo, c);
      if (c >= target) hi = std::min(hi, c);
    }
    if (hi == lo) continue;
    if (hi < lo) hi = kTwoPi + corners.front();
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (grading_delta(mid, corners, 3).delta < target)
        lo = mid;
      else
        hi = mid;
    }
    CHECK(std::abs(grading_delta(0.5 * (lo + hi), corners, 3).delta - target) < 1e-10);
  }
}

TEST_CASE("grading derivatives match finite differences") {
  const std::vector<double> corners{0.0, kPi};
  const double h = 1e-6;
  for (double t : {0.4, 1.2, 2.8, 3.6, 5.9}) {
    const auto g = grading_delta(t, corners, 3);
    const auto gp = grading_delta(t + h, corners, 3);
    const auto gm = grading_delta(t - h, corners, 3);
    CHECK(g.d1 == doctest::Approx((gp.delta - gm.delta) / (2 * h)).epsilon(1e-7));
    CHECK(g.d2 == doctest::Approx((gp.d1 - gm.d1) / (2 * h)).epsilon(1e-5));
  }
}

TEST_CASE("grading order near a corner is p") {
  const std::vector<double> corners{0.0, kPi};
  for (int p : {2, 3, 4}) {
    // log-log slope of delta(t) - 0 against t as t -> 0+
    const double t1 = 1e-2, t2 = 1e-3;
    const double d1 = grading_delta(t1, corners, p).delta;
    const double d2 = grading_delta(t2, corners, p).delta;
    const double slope = std::log(d1 / d2) / std::log(t1 / t2);
    CHECK(std::abs(slope - p) < 0.1);
  }
}

TEST_CASE("discretize: unit circle, n = 4") {
  PolycircularCondenser c;
  c.outer = BoundaryComponent{{full_circle({0, 0}, 1.0, true)}};
  c.holes.push_back(BoundaryComponent{{full_circle({0, 0}, 0.5, false)}});
  const DiscreteBoundary db = discretize(c, 4, 3);
  CHECK(db.total_nodes() == 8);
  for (int i = 0; i < 4; ++i) {
    CHECK(db.t[i] == doctest::Approx((i + 0.5) * kPi / 2).epsilon(1e-15));
    CHECK(std::abs(db.etap[i]) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(db.eta[i] - std::polar(1.0, db.t[i])) < 1e-14);
  }
}

TEST_CASE("discretize: component bookkeeping") {
  const auto ann = builtin_domain("annulus-0.7");
  const DiscreteBoundary db = discretize(ann, 8, 3);
  CHECK(db.num_components == 2);
  CHECK(db.total_nodes() == 16);
  for (int i = 0; i < 16; ++i) CHECK(db.component_of(i) == i / 8);
}

TEST_CASE("discretize: graded lens nodes") {
  const auto lens = builtin_domain("lens-0.8-0.3");
  const DiscreteBoundary db = discretize(lens, 64, 3);
  const int off = 64;  // hole block
  // |eta'| is positive everywhere and minimal at the nodes nearest a corner
  double minv = 1e9;
  int argmin = -1;
  for (int i = 0; i < 64; ++i) {
    const double v = std::abs(db.etap[off + i]);
    CHECK(v > 0.0);
    if (v < minv) {
      minv = v;
      argmin = i;
    }
  }
  // corners sit at t = 0 and t = pi, i.e. between node 63|0 and 31|32
  const bool near_corner =
      argmin == 0 || argmin == 63 || argmin == 31 || argmin == 32;
  CHECK(near_corner);

  // offset grid keeps nodes away from corner preimages
  for (int i = 0; i < 64; ++i) {
    double dist = 1e9;
    for (double c : db.corner_params[1])
      dist = std::min({dist, std::abs(db.t[off + i] - c),
                       std::abs(db.t[off + i] - c - kTwoPi),
                       std::abs(db.t[off + i] - c + kTwoPi)});
    CHECK(dist >= kPi / 128);  // pi/(2n)
  }

  // chain rule against centered finite differences of eta
  const ComponentParametrization par(lens.holes[0]);
  const double h = 1e-6;
  for (int i : {5, 20, 40, 60}) {
    const double t = db.t[off + i];
    const auto dp = grading_delta(t + h, par.corner_params, 3);
    const auto dm = grading_delta(t - h, par.corner_params, 3);
    const Complex fd = (par.zeta(dp.delta) - par.zeta(dm.delta)) / (2 * h);
    CHECK(std::abs(fd - db.etap[off + i]) / std::abs(db.etap[off + i]) < 1e-6);
  }
}

TEST_CASE("discretize: argument checks") {
  const auto ann = builtin_domain("annulus-0.7");
  CHECK_THROWS_AS(discretize(ann, 7, 3), InvalidParameter);
  CHECK_THROWS_AS(discretize(ann, 2, 3), InvalidParameter);
  CHECK_THROWS_AS(discretize(ann, 8, 1), InvalidParameter);
  const auto bart = builtin_domain("bart");  // nine arcs
  CHECK_THROWS_AS(discretize(bart, 18, 3), InvalidParameter);
}

TEST_CASE("smooth components keep the identity grading") {
  const auto ann = builtin_domain("annulus-0.7");
  const DiscreteBoundary db = discretize(ann, 32, 3);
  for (int i = 0; i < db.total_nodes(); ++i) CHECK(db.deltap[i] == 1.0);
}
