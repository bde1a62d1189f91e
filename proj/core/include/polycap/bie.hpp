#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polycap/parametrization.hpp"

namespace polycap {

struct SolverOptions {
  enum class Method { Auto, Dense, Gmres };
  Method method = Method::Auto;
  /// Auto picks dense LU when the total node count is at most this.
  int dense_threshold = 2048;
  /// GMRES multiplies through a stored kernel matrix up to this many
  /// nodes, matrix-free beyond.
  int storage_threshold = 12000;
  int restart = 50;
  double tol = 1e-12;
  int maxit = 2000;
};

struct SolveDiagnostics {
  std::string method;  // "dense" or "gmres"
  int iterations = 0;
  double residual = 0.0;
};

/// Nystroem discretization of the boundary integral operators built from
/// the generalized Neumann kernel.  Holds the node data, the auxiliary
/// function A(t) = eta(t) - alpha, and (lazily) the assembled, weighted
/// kernel matrix or its LU factorization.
class NystromSystem {
 public:
  NystromSystem(DiscreteBoundary boundary, Complex alpha,
                SolverOptions options = {});

  const DiscreteBoundary& boundary() const { return db_; }
  Complex alpha() const { return alpha_; }
  const SolverOptions& options() const { return opts_; }

  /// Generalized Neumann kernel N(s_i, t_j), including its continuous
  /// diagonal limit.  Unweighted.
  double kernel_N(int i, int j) const;

  /// Regularized companion kernel: M1 = M + cot((s-t)/2)/(2*pi) for nodes
  /// on the same component (finite on the diagonal), plain M across
  /// components.
  double kernel_M_regular(int i, int j) const;

  /// Trapezoidal Nystroem application of the operator N.  Row sums are
  /// normalized to the exact value -1 through the diagonal, which cancels
  /// the quadrature defect of rows near corners.
  Eigen::VectorXd apply_N(const Eigen::VectorXd& f) const;

  /// Application of the singular operator M: periodic trapezoidal rule on
  /// the regular part plus the alternate-point (Wittich) rule on the
  /// cotangent part, normalized so constants are annihilated exactly.
  Eigen::VectorXd apply_M(const Eigen::VectorXd& f) const;

  /// gamma_k(t) = log|eta(t) - alpha_k| at all nodes.
  Eigen::VectorXd gamma(Complex alpha_k) const;

  /// Solves (I - N) mu = -M gamma_k.  The factorization / assembled
  /// matrix is cached across calls.
  Eigen::VectorXd solve_density(const Eigen::VectorXd& gamma_k,
                                SolveDiagnostics* diag = nullptr);

  struct HResult {
    Eigen::VectorXd h;          // per node
    std::vector<double> mean;   // per component
    double max_dev = 0.0;       // max within-component deviation
  };

  /// h = [M mu - (I - N) gamma] / 2, with component means and the
  /// piecewise-constancy witness.
  HResult compute_h(const Eigen::VectorXd& mu, const Eigen::VectorXd& gamma_k) const;

 private:
  void ensure_matrix();
  void ensure_lu();
  Eigen::VectorXd apply_N_matrix_free(const Eigen::VectorXd& f) const;

  DiscreteBoundary db_;
  Complex alpha_;
  SolverOptions opts_;
  std::vector<Complex> A_;  // eta - alpha
  std::vector<Complex> B_;  // eta' / A
  std::vector<double> diag_N_, diag_M_;
  std::vector<double> cot_half_;  // cot(d*pi/n), d = 1..n-1

  std::optional<Eigen::MatrixXd> Nw_;  // weighted kernel matrix (2*pi/n) N
  std::unique_ptr<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;
};

struct CoefficientSolution {
  std::vector<double> a;
  double c = 0.0;
  double condition_number = 0.0;
};

/// Solves the (m+1) x (m+1) system built from the component means
/// h_{p,k} (rows p = 0..m, columns k = 1..m, last column of ones) with
/// right-hand side (0, 1, ..., 1), by Gaussian elimination with partial
/// pivoting.  `h_means` is (m+1) x m.
CoefficientSolution solve_coefficients(const Eigen::MatrixXd& h_means);

/// cap = 2*pi * sum(a).
double capacity_from_coefficients(const std::vector<double>& a);

}  // namespace polycap
