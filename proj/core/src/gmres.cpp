#include "polycap/gmres.hpp"

#include <cmath>

namespace polycap {

// Arnoldi with modified Gram-Schmidt and Givens rotations applied to the
// Hessenberg matrix on the fly.
GmresResult gmres(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                  const Eigen::VectorXd& b, int restart, double tol, int maxit) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;

  const double bnorm = b.norm();
  GmresResult result;
  result.x = VectorXd::Zero(b.size());
  if (bnorm == 0.0) {
    result.converged = true;
    return result;
  }

  int total_iters = 0;
  while (total_iters < maxit) {
    VectorXd r = b - apply(result.x);
    double beta = r.norm();
    if (beta / bnorm <= tol) {
      result.converged = true;
      result.residual = beta / bnorm;
      return result;
    }

    const int m = std::min(restart, static_cast<int>(b.size()));
    MatrixXd V(b.size(), m + 1);
    MatrixXd H = MatrixXd::Zero(m + 1, m);
    VectorXd cs = VectorXd::Zero(m), sn = VectorXd::Zero(m);
    VectorXd g = VectorXd::Zero(m + 1);
    V.col(0) = r / beta;
    g(0) = beta;

    int k = 0;
    for (; k < m && total_iters < maxit; ++k, ++total_iters) {
      VectorXd w = apply(V.col(k));
      for (int i = 0; i <= k; ++i) {
        H(i, k) = V.col(i).dot(w);
        w -= H(i, k) * V.col(i);
      }
      H(k + 1, k) = w.norm();
      if (H(k + 1, k) > 0.0) V.col(k + 1) = w / H(k + 1, k);

      for (int i = 0; i < k; ++i) {
        const double t = cs(i) * H(i, k) + sn(i) * H(i + 1, k);
        H(i + 1, k) = -sn(i) * H(i, k) + cs(i) * H(i + 1, k);
        H(i, k) = t;
      }
      const double denom = std::hypot(H(k, k), H(k + 1, k));
      cs(k) = H(k, k) / denom;
      sn(k) = H(k + 1, k) / denom;
      H(k, k) = denom;
      H(k + 1, k) = 0.0;
      g(k + 1) = -sn(k) * g(k);
      g(k) = cs(k) * g(k);

      if (std::abs(g(k + 1)) / bnorm <= tol) {
        ++k;
        ++total_iters;
        break;
      }
    }

    VectorXd y = H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    result.x += V.leftCols(k) * y;
    result.iterations = total_iters;

    const double rel = (b - apply(result.x)).norm() / bnorm;
    result.residual = rel;
    if (rel <= tol) {
      result.converged = true;
      return result;
    }
  }
  return result;
}

}  // namespace polycap
