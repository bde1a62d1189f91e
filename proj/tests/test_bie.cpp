#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polycap/bie.hpp"
#include "polycap/capacity.hpp"
#include "polycap/domain_io.hpp"

using namespace polycap;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

TEST_CASE("kernels on the unit circle with alpha = 0") {
  const auto ann = builtin_domain("annulus-0.7");
  const DiscreteBoundary db = discretize(ann, 64, 3);
  const NystromSystem sys(db, {0.0, 0.0});
  // On e^{it} both kernels collapse: N is the constant -1/(2 pi) and the
  // regularized M vanishes identically.
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      CHECK(std::abs(sys.kernel_N(i, j) + 1.0 / kTwoPi) < 1e-14);
      CHECK(std::abs(sys.kernel_M_regular(i, j)) < 1e-13);
    }
}

TEST_CASE("kernel N is continuous through the diagonal") {
  const auto ann = builtin_domain("annulus-0.7");
  const NystromSystem coarse(discretize(ann, 64, 3), {0.85, 0.0});
  const NystromSystem fine(discretize(ann, 512, 3), {0.85, 0.0});
  // off-diagonal value at the closest fine node pair approaches the
  // diagonal value at the same parameter
  CHECK(std::abs(fine.kernel_N(0, 1) - fine.kernel_N(0, 0)) <
        std::abs(coarse.kernel_N(0, 1) - coarse.kernel_N(0, 0)));
  CHECK(std::abs(fine.kernel_N(0, 1) - fine.kernel_N(0, 0)) < 5e-2);
}

TEST_CASE("cross-component kernel matches the direct formula") {
  const auto ann = builtin_domain("annulus-0.7");
  const DiscreteBoundary db = discretize(ann, 32, 3);
  const Complex alpha{0.85, 0.0};
  const NystromSystem sys(db, alpha);
  for (int i : {0, 7, 31})
    for (int j : {35, 40, 63}) {
      const Complex A = db.eta[i] - alpha;
      const Complex At = db.eta[j] - alpha;
      const Complex val = A / At * db.etap[j] / (db.eta[j] - db.eta[i]);
      CHECK(std::abs(sys.kernel_M_regular(i, j) - val.real() / kPi) < 1e-14);
      CHECK(std::abs(sys.kernel_N(i, j) - val.imag() / kPi) < 1e-14);
    }
}

TEST_CASE("operator identities on constants") {
  const auto lens = builtin_domain("lens-0.8-0.3");
  const DiscreteBoundary db = discretize(lens, 128, 3);
  const NystromSystem sys(db, {0.9, 0.0});
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(db.total_nodes());
  CHECK((sys.apply_N(ones).array() + 1.0).abs().maxCoeff() < 1e-13);
  CHECK(sys.apply_M(ones).array().abs().maxCoeff() < 1e-13);
}

TEST_CASE("M computes the discrete conjugate on the circle") {
  const auto ann = builtin_domain("annulus-0.7");
  const DiscreteBoundary db = discretize(ann, 64, 3);
  const NystromSystem sys(db, {0.0, 0.0});
  // support the input on the outer circle only so its rows stay pure
  for (int mode = 1; mode <= 5; ++mode) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(db.total_nodes());
    for (int i = 0; i < 64; ++i) f[i] = std::cos(mode * db.t[i]);
    const Eigen::VectorXd Mf = sys.apply_M(f);
    for (int i = 0; i < 64; ++i)
      CHECK(std::abs(Mf[i] + std::sin(mode * db.t[i])) < 1e-12);
  }
}

TEST_CASE("annulus density is constant per component") {
  const auto ann = builtin_domain("annulus-0.7");
  NystromSystem sys(discretize(ann, 64, 3), {0.85, 0.0});
  const Eigen::VectorXd mu = sys.solve_density(sys.gamma({0.0, 0.0}));
  for (int c = 0; c < 2; ++c) {
    const auto seg = mu.segment(c * 64, 64);
    CHECK((seg.array() - seg.mean()).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("density residual contract") {
  const auto lens = builtin_domain("lens-0.8-0.3");
  for (auto method : {SolverOptions::Method::Dense, SolverOptions::Method::Gmres}) {
    SolverOptions opts;
    opts.method = method;
    NystromSystem sys(discretize(lens, 128, 3), {0.9, 0.0}, opts);
    const Eigen::VectorXd g = sys.gamma({0.0, 0.0});
    SolveDiagnostics diag;
    const Eigen::VectorXd mu = sys.solve_density(g, &diag);
    const Eigen::VectorXd res = mu - sys.apply_N(mu) + sys.apply_M(g);
    CHECK(res.lpNorm<Eigen::Infinity>() < 1e-10);
    CHECK(diag.residual < 1e-10);
  }
}

TEST_CASE("dense and GMRES solvers agree") {
  const auto lens = builtin_domain("lens-0.8-0.3");
  CapacityRequest req;
  req.condenser = lens;
  req.n = 256;
  req.solver.method = SolverOptions::Method::Dense;
  const double dense = compute_capacity(req).capacity;
  req.solver.method = SolverOptions::Method::Gmres;
  const double gmres_cap = compute_capacity(req).capacity;
  CHECK(std::abs(dense - gmres_cap) < 1e-10);
}

TEST_CASE("h is piecewise constant on the annulus") {
  const auto ann = builtin_domain("annulus-0.7");
  NystromSystem sys(discretize(ann, 256, 3), {0.85, 0.0});
  const Eigen::VectorXd g = sys.gamma({0.0, 0.0});
  const Eigen::VectorXd mu = sys.solve_density(g);
  const auto h = sys.compute_h(mu, g);
  CHECK(h.max_dev < 1e-10);
  CHECK(h.h.allFinite());

  // with the exact potential log|z|/log q the first coefficient is
  // 1/log(1/q)
  Eigen::MatrixXd means(2, 1);
  means(0, 0) = h.mean[0];
  means(1, 0) = h.mean[1];
  const auto coef = solve_coefficients(means);
  CHECK(coef.a[0] == doctest::Approx(1.0 / std::log(1.0 / 0.7)).epsilon(1e-12));
  CHECK(capacity_from_coefficients(coef.a) ==
        doctest::Approx(17.615998583457760).epsilon(1e-12));
}

TEST_CASE("h deviation shrinks with n on smooth domains") {
  const auto ann = builtin_domain("annulus-0.7");
  double prev = 1e9;
  for (int n : {64, 128, 256}) {
    NystromSystem sys(discretize(ann, n, 3), {0.85, 0.0});
    const Eigen::VectorXd g = sys.gamma({0.0, 0.0});
    const auto h = sys.compute_h(sys.solve_density(g), g);
    // decays to rounding level; allow the floor once it is reached
    CHECK((h.max_dev < 2.0 * prev || h.max_dev < 1e-13));
    prev = h.max_dev;
  }
  CHECK(prev < 1e-12);
}

TEST_CASE("coefficient system") {
  // m = 1 closed form: a1 = 1/(h11 - h01), c = -h01 a1
  Eigen::MatrixXd means(2, 1);
  means(0, 0) = 0.25;
  means(1, 0) = 0.75;
  const auto coef = solve_coefficients(means);
  CHECK(coef.a[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(coef.c == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(coef.condition_number < 1e8);

  Eigen::MatrixXd singular(2, 1);
  singular(0, 0) = 0.5;
  singular(1, 0) = 0.5;  // identical rows
  CHECK_THROWS_AS(solve_coefficients(singular), SolverFailure);

  CHECK(capacity_from_coefficients({}) == 0.0);
  CHECK(capacity_from_coefficients({1.0, 1.0}) ==
        doctest::Approx(4 * kPi).epsilon(1e-15));
}

TEST_CASE("alpha on the boundary is rejected") {
  const auto ann = builtin_domain("annulus-0.7");
  const DiscreteBoundary db = discretize(ann, 16, 3);
  CHECK_THROWS_AS(NystromSystem(db, db.eta[0]), InvalidParameter);
}

TEST_CASE("smooth-domain capacity converges fast") {
  // multi-circle condenser against the closed-form annulus value
  const auto ann = builtin_domain("annulus-0.7");
  CapacityRequest req;
  req.condenser = ann;
  req.n = 256;
  CHECK(std::abs(compute_capacity(req).capacity - 17.615998583457760) < 1e-10);
}
