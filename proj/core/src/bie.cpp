#include "polycap/bie.hpp"

#include <cmath>
#include <numbers>

#include "polycap/errors.hpp"
#include "polycap/gmres.hpp"
#include "polycap/threading.hpp"

namespace polycap {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

NystromSystem::NystromSystem(DiscreteBoundary boundary, Complex alpha,
                             SolverOptions options)
    : db_(std::move(boundary)), alpha_(alpha), opts_(options) {
  const int total = db_.total_nodes();
  A_.resize(total);
  B_.resize(total);
  diag_N_.resize(total);
  diag_M_.resize(total);
  for (int i = 0; i < total; ++i) {
    A_[i] = db_.eta[i] - alpha_;
    if (A_[i] == Complex{0.0, 0.0})
      throw InvalidParameter("NystromSystem: alpha lies on the boundary");
    B_[i] = db_.etap[i] / A_[i];
    const Complex d = db_.etapp[i] / (2.0 * db_.etap[i]) - B_[i];
    diag_N_[i] = d.imag() / kPi;
    diag_M_[i] = d.real() / kPi;
  }
  cot_half_.resize(db_.n);
  for (int d = 1; d < db_.n; ++d)
    cot_half_[d] = 1.0 / std::tan(d * kPi / db_.n);
}

double NystromSystem::kernel_N(int i, int j) const {
  if (i == j) return diag_N_[i];
  const Complex d = db_.eta[j] - db_.eta[i];
  const double dn = std::norm(d);
  if (dn == 0.0)
    throw GeometryDegenerate("kernel_N: coincident boundary points");
  return (A_[i] * B_[j] * std::conj(d)).imag() / (kPi * dn);
}

double NystromSystem::kernel_M_regular(int i, int j) const {
  if (i == j) return diag_M_[i];
  const Complex d = db_.eta[j] - db_.eta[i];
  const double dn = std::norm(d);
  if (dn == 0.0)
    throw GeometryDegenerate("kernel_M_regular: coincident boundary points");
  double val = (A_[i] * B_[j] * std::conj(d)).real() / (kPi * dn);
  if (db_.component_of(i) == db_.component_of(j)) {
    const int delta = (((i - j) % db_.n) + db_.n) % db_.n;
    val += cot_half_[delta] / kTwoPi;
  }
  return val;
}

void NystromSystem::ensure_matrix() {
  if (Nw_) return;
  const int total = db_.total_nodes();
  Nw_.emplace(total, total);
  const double w = kTwoPi / db_.n;
  auto& Nw = *Nw_;
  parallel_for_rows(total, [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      double rowsum = 0.0;
      for (int j = 0; j < total; ++j) {
        Nw(i, j) = w * kernel_N(i, j);
        rowsum += Nw(i, j);
      }
      // The kernel integrates to -1 in its second argument, so the
      // quadrature defect can be folded into the diagonal.  This cancels
      // the large errors of rows near corners.
      Nw(i, i) += -1.0 - rowsum;
    }
  });
}

void NystromSystem::ensure_lu() {
  if (lu_) return;
  ensure_matrix();
  Eigen::MatrixXd IN = -*Nw_;
  IN.diagonal().array() += 1.0;
  lu_ = std::make_unique<Eigen::PartialPivLU<Eigen::MatrixXd>>(std::move(IN));
}

Eigen::VectorXd NystromSystem::apply_N_matrix_free(const Eigen::VectorXd& f) const {
  const int total = db_.total_nodes();
  Eigen::VectorXd out(total);
  const double w = kTwoPi / db_.n;
  parallel_for_rows(total, [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const Complex Ai = A_[i];
      const Complex ei = db_.eta[i];
      double acc = 0.0, rowsum = 0.0;
      for (int j = 0; j < total; ++j) {
        if (j == i) {
          acc += diag_N_[i] * f[j];
          rowsum += diag_N_[i];
          continue;
        }
        const Complex d = db_.eta[j] - ei;
        const double dn = std::norm(d);
        if (dn == 0.0)
          throw GeometryDegenerate("apply_N: coincident boundary points");
        const double val = (Ai * B_[j] * std::conj(d)).imag() / (kPi * dn);
        acc += val * f[j];
        rowsum += val;
      }
      // Row sums of the exact operator are -1; see ensure_matrix.
      out[i] = w * acc + (-1.0 - w * rowsum) * f[i];
    }
  });
  return out;
}

Eigen::VectorXd NystromSystem::apply_N(const Eigen::VectorXd& f) const {
  if (Nw_) return *Nw_ * f;
  return apply_N_matrix_free(f);
}

Eigen::VectorXd NystromSystem::apply_M(const Eigen::VectorXd& f) const {
  const int total = db_.total_nodes();
  const int n = db_.n;
  Eigen::VectorXd out(total);
  const double w = kTwoPi / n;
  parallel_for_rows(total, [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const Complex Ai = A_[i];
      const Complex ei = db_.eta[i];
      const int ci = db_.component_of(i);
      const int li = i - ci * n;
      double acc = 0.0, rowsum = 0.0;
      for (int j = 0; j < total; ++j) {
        double coeff;
        if (j == i) {
          coeff = w * diag_M_[i];
        } else {
          const Complex d = db_.eta[j] - ei;
          const double dn = std::norm(d);
          if (dn == 0.0)
            throw GeometryDegenerate("apply_M: coincident boundary points");
          double val = (Ai * B_[j] * std::conj(d)).real() / (kPi * dn);
          if (db_.component_of(j) == ci) {
            const int lj = j - ci * n;
            const int delta = (((li - lj) % n) + n) % n;
            // Regularized kernel under the trapezoidal rule; the cotangent
            // part is integrated by the alternate-point rule instead.
            val += cot_half_[delta] / kTwoPi;
            coeff = w * val;
            if ((delta & 1) != 0) coeff -= 2.0 / n * cot_half_[delta];
          } else {
            coeff = w * val;
          }
        }
        acc += coeff * f[j];
        rowsum += coeff;
      }
      // The exact operator annihilates constants; subtracting f(s) times
      // the row sum removes the corner-row quadrature defect.
      out[i] = acc - rowsum * f[i];
    }
  });
  return out;
}

Eigen::VectorXd NystromSystem::gamma(Complex alpha_k) const {
  const int total = db_.total_nodes();
  Eigen::VectorXd g(total);
  for (int i = 0; i < total; ++i) {
    const double r = std::abs(db_.eta[i] - alpha_k);
    if (r == 0.0)
      throw InvalidParameter("gamma: alpha_k lies on the boundary");
    g[i] = std::log(r);
  }
  return g;
}

Eigen::VectorXd NystromSystem::solve_density(const Eigen::VectorXd& gamma_k,
                                             SolveDiagnostics* diag) {
  const int total = db_.total_nodes();
  const Eigen::VectorXd rhs = -apply_M(gamma_k);

  SolverOptions::Method method = opts_.method;
  if (method == SolverOptions::Method::Auto)
    method = total <= opts_.dense_threshold ? SolverOptions::Method::Dense
                                            : SolverOptions::Method::Gmres;

  if (method == SolverOptions::Method::Dense) {
    if (total > opts_.storage_threshold)
      throw InvalidParameter("solve_density: dense solve beyond storage threshold");
    ensure_lu();
    Eigen::VectorXd mu = lu_->solve(rhs);
    if (diag) {
      diag->method = "dense";
      diag->iterations = 0;
      Eigen::VectorXd res = mu - *Nw_ * mu - rhs;
      diag->residual = res.norm() / rhs.norm();
    }
    return mu;
  }

  if (total <= opts_.storage_threshold) ensure_matrix();
  auto apply = [this](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    if (Nw_) return x - *Nw_ * x;
    return x - apply_N_matrix_free(x);
  };
  const GmresResult res = gmres(apply, rhs, opts_.restart, opts_.tol, opts_.maxit);
  if (!res.converged)
    throw SolverFailure("solve_density: GMRES did not converge (residual " +
                            std::to_string(res.residual) + ")",
                        res.residual);
  if (diag) {
    diag->method = "gmres";
    diag->iterations = res.iterations;
    diag->residual = res.residual;
  }
  return res.x;
}

NystromSystem::HResult NystromSystem::compute_h(const Eigen::VectorXd& mu,
                                                const Eigen::VectorXd& gamma_k) const {
  HResult out;
  out.h = 0.5 * (apply_M(mu) - gamma_k + apply_N(gamma_k));
  out.mean.resize(db_.num_components);
  for (int c = 0; c < db_.num_components; ++c) {
    const auto seg = out.h.segment(c * db_.n, db_.n);
    // Weighting by delta' integrates h in the ungraded parameter, which
    // suppresses the quadrature error at nodes adjacent to corners.  On
    // smooth components delta' = 1 and this is the plain mean.
    double num = 0.0, den = 0.0;
    for (int i = 0; i < db_.n; ++i) {
      const double w = db_.deltap[c * db_.n + i];
      num += w * seg[i];
      den += w;
    }
    out.mean[c] = num / den;
    out.max_dev = std::max(out.max_dev, (seg.array() - out.mean[c]).abs().maxCoeff());
  }
  return out;
}

CoefficientSolution solve_coefficients(const Eigen::MatrixXd& h_means) {
  const int m = static_cast<int>(h_means.cols());
  if (h_means.rows() != m + 1)
    throw InvalidParameter("solve_coefficients: h matrix must be (m+1) x m");
  if (!h_means.allFinite())
    throw SolverFailure("solve_coefficients: non-finite h matrix");

  Eigen::MatrixXd sys(m + 1, m + 1);
  sys.leftCols(m) = h_means;
  sys.col(m).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Ones(m + 1);
  rhs(0) = 0.0;

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (!(smin > 0.0) || !std::isfinite(smax / smin))
    throw SolverFailure("solve_coefficients: singular coefficient system");

  const Eigen::VectorXd sol = Eigen::PartialPivLU<Eigen::MatrixXd>(sys).solve(rhs);
  CoefficientSolution out;
  out.a.assign(sol.data(), sol.data() + m);
  out.c = sol(m);
  out.condition_number = smax / smin;
  return out;
}

double capacity_from_coefficients(const std::vector<double>& a) {
  double sum = 0.0;
  for (double ak : a) sum += ak;
  return kTwoPi * sum;
}

}  // namespace polycap
