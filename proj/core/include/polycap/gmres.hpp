#pragma once

#include <Eigen/Dense>
#include <functional>

namespace polycap {

struct GmresResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double residual = 0.0;  // relative
  bool converged = false;
};

/// Restarted GMRES for a matrix-free operator.  `apply` maps x to A x;
/// convergence is on the relative residual ||b - A x|| / ||b||.  `maxit`
/// bounds the total number of inner iterations.
GmresResult gmres(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                  const Eigen::VectorXd& b, int restart = 50, double tol = 1e-12,
                  int maxit = 1000);

}  // namespace polycap
