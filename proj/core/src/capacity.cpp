#include "polycap/capacity.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "polycap/analytic.hpp"
#include "polycap/errors.hpp"

namespace polycap {

namespace {

Complex arc_midpoint(const CircularArc& arc) { return arc_eval(arc, 0.5); }

bool point_clear_of(const std::vector<std::vector<Complex>>& samples, Complex z,
                    double* clearance) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& comp : samples)
    for (const auto& p : comp) best = std::min(best, std::abs(p - z));
  *clearance = best;
  return best > 1e-6;
}

}  // namespace

std::vector<Complex> default_alpha_k(const PolycircularCondenser& condenser) {
  std::vector<Complex> out;
  for (const auto& hole : condenser.holes) {
    Complex candidate;
    if (hole.is_full_circle()) {
      candidate = hole.arcs[0].center;
    } else {
      Complex sum{0.0, 0.0};
      for (const auto& arc : hole.arcs) sum += arc_midpoint(arc);
      candidate = sum / static_cast<double>(hole.arcs.size());
    }
    bool enclosed = false;
    try {
      enclosed = winding_number(hole, candidate) != 0;
    } catch (const PointOnBoundary&) {
    }
    if (!enclosed)
      throw InvalidParameter(
          "default_alpha_k: no default interior point found for a hole; "
          "supply alpha_k explicitly");
    out.push_back(candidate);
  }
  return out;
}

Complex default_alpha(const PolycircularCondenser& condenser) {
  std::vector<std::vector<Complex>> samples{sample_points(condenser.outer, 32)};
  for (const auto& hole : condenser.holes) samples.push_back(sample_points(hole, 32));

  Complex centroid{0.0, 0.0};
  for (const auto& p : samples[0]) centroid += p;
  centroid /= static_cast<double>(samples[0].size());

  auto admissible = [&](Complex z) {
    try {
      if (winding_number(condenser.outer, z) != 1) return false;
      for (const auto& hole : condenser.holes)
        if (winding_number(hole, z) != 0) return false;
    } catch (const PointOnBoundary&) {
      return false;
    }
    return true;
  };

  Complex best{0.0, 0.0};
  double best_clearance = -1.0;
  const std::size_t stride = std::max<std::size_t>(1, samples[0].size() / 24);
  for (double lambda : {0.0, 0.25, 0.4, 0.55, 0.7, 0.8, 0.9, 0.95}) {
    for (std::size_t i = 0; i < samples[0].size(); i += stride) {
      const Complex z = centroid + lambda * (samples[0][i] - centroid);
      double clearance = 0.0;
      if (!point_clear_of(samples, z, &clearance)) continue;
      if (clearance > best_clearance && admissible(z)) {
        best_clearance = clearance;
        best = z;
      }
      if (lambda == 0.0) break;  // the centroid is one candidate
    }
  }
  if (best_clearance < 0.0)
    throw InvalidParameter(
        "default_alpha: no interior point found; supply alpha explicitly");
  return best;
}

CapacityResult compute_capacity(const CapacityRequest& request) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& condenser = request.condenser;
  const int m = condenser.num_holes();
  if (m < 1) throw InvalidParameter("compute_capacity: condenser needs at least one hole");

  const auto violations = validate(condenser);
  if (!violations.empty())
    throw InvalidGeometry("compute_capacity: invalid condenser: " +
                          violations.front().message);

  Complex alpha;
  if (request.alpha)
    alpha = *request.alpha;
  else if (condenser.alpha)
    alpha = *condenser.alpha;
  else
    alpha = default_alpha(condenser);

  std::vector<Complex> alpha_k;
  if (request.alpha_k)
    alpha_k = *request.alpha_k;
  else if (condenser.alpha_k)
    alpha_k = *condenser.alpha_k;
  else
    alpha_k = default_alpha_k(condenser);
  if (static_cast<int>(alpha_k.size()) != m)
    throw InvalidParameter("compute_capacity: alpha_k must list one point per hole");

  DiscreteBoundary db = discretize(condenser, request.n, request.grading_p);
  NystromSystem sys(std::move(db), alpha, request.solver);

  Eigen::MatrixXd h_means(m + 1, m);
  CapacityResult result;
  for (int k = 0; k < m; ++k) {
    const Eigen::VectorXd gk = sys.gamma(alpha_k[k]);
    const Eigen::VectorXd mu = sys.solve_density(gk, &result.diag);
    const auto h = sys.compute_h(mu, gk);
    for (int p = 0; p <= m; ++p) h_means(p, k) = h.mean[p];
    result.h_dev = std::max(result.h_dev, h.max_dev);
  }

  const CoefficientSolution coeff = solve_coefficients(h_means);
  result.capacity = capacity_from_coefficients(coeff.a);
  result.a = coeff.a;
  result.c = coeff.c;
  result.condition_number = coeff.condition_number;
  result.n = request.n;
  result.grading_p = request.grading_p;
  result.alpha = alpha;
  result.alpha_k = alpha_k;
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

SweepResult convergence_sweep(const CapacityRequest& base,
                              const std::vector<int>& n_list,
                              std::optional<double> reference) {
  if (n_list.empty()) throw InvalidParameter("convergence_sweep: empty n list");
  if (!std::is_sorted(n_list.begin(), n_list.end()))
    throw InvalidParameter("convergence_sweep: n list must be ascending");

  SweepResult out;
  std::vector<double> caps;
  for (int n : n_list) {
    CapacityRequest req = base;
    req.n = n;
    caps.push_back(compute_capacity(req).capacity);
  }

  out.reference_supplied = reference.has_value();
  out.reference = reference ? *reference : caps.back();

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    SweepRow row;
    row.n = n_list[i];
    row.capacity = caps[i];
    const bool is_self_reference = !out.reference_supplied && i + 1 == caps.size();
    if (!is_self_reference) {
      row.error = std::abs(caps[i] - out.reference);
      if (*row.error > 0.0) {
        const double x = std::log(static_cast<double>(n_list[i]));
        const double y = std::log(*row.error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
      }
    }
    out.rows.push_back(row);
  }
  if (cnt >= 2) out.order = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return out;
}

std::vector<MobiusRow> mobius_invariance_report(const CapacityRequest& base,
                                                const std::vector<Complex>& a_list) {
  const auto& outer = base.condenser.outer;
  const bool unit_outer = outer.is_full_circle() &&
                          std::abs(outer.arcs[0].center) < 1e-10 &&
                          std::abs(outer.arcs[0].radius - 1.0) < 1e-10;
  if (!unit_outer)
    throw InvalidParameter(
        "mobius_invariance_report: outer component must be the unit circle");
  for (Complex a : a_list)
    if (std::abs(a) >= 1.0)
      throw InvalidParameter("mobius_invariance_report: all |a| must be < 1");

  // Pin the auxiliary points on the condenser so T_a maps them along.
  CapacityRequest pinned = base;
  pinned.condenser.alpha = base.alpha ? *base.alpha
                           : base.condenser.alpha ? *base.condenser.alpha
                                                  : default_alpha(base.condenser);
  pinned.condenser.alpha_k = base.alpha_k ? *base.alpha_k
                             : base.condenser.alpha_k ? *base.condenser.alpha_k
                                                      : default_alpha_k(base.condenser);
  pinned.alpha.reset();
  pinned.alpha_k.reset();

  const double cap0 = compute_capacity(pinned).capacity;

  std::vector<MobiusRow> rows;
  for (Complex a : a_list) {
    MobiusRow row;
    row.a = a;
    if (a == Complex{0.0, 0.0}) {
      row.capacity = cap0;
      row.deviation = 0.0;
    } else {
      CapacityRequest req = pinned;
      req.condenser = mobius_apply(a, pinned.condenser);
      row.capacity = compute_capacity(req).capacity;
      row.deviation = std::abs(row.capacity - cap0);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<BoundsRow> lens_bounds_table(double r, const std::vector<double>& s_grid,
                                         int n, const SolverOptions& solver) {
  std::vector<BoundsRow> rows;
  for (double s : s_grid) {
    BoundsRow row;
    row.s = s;
    const BoundaryComponent lens = make_lens(r, s);
    row.perimeter = hyperbolic_perimeter(lens);
    row.lower = bound_lower(row.perimeter);
    row.upper = bound_upper(row.perimeter);

    CapacityRequest req;
    req.condenser.outer = make_circle({0.0, 0.0}, 1.0, true);
    req.condenser.holes.push_back(lens);
    req.condenser.alpha_k = std::vector<Complex>{{0.0, 0.0}};
    req.n = n;
    req.solver = solver;
    row.capacity = compute_capacity(req).capacity;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace polycap
