// polycap: conformal capacity of polycircular condensers from the command
// line.  Subcommands: cap, sweep, mobius, bounds, exact.
//
// Exit codes: 0 success, 2 validation or input error, 3 solver failure.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polycap/analytic.hpp"
#include "polycap/capacity.hpp"
#include "polycap/domain_io.hpp"
#include "polycap/threading.hpp"

namespace {

using polycap::Complex;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16g", v);
  return buf;
}

std::string fmt(Complex z) {
  if (z.imag() == 0.0) return fmt(z.real());
  std::string out = z.real() == 0.0 ? std::string() : fmt(z.real());
  if (z.imag() >= 0.0 && !out.empty()) out += '+';
  out += fmt(z.imag());
  out += 'i';
  return out;
}

Complex parse_point_flag(const std::string& text) {
  const auto comma = text.find(',');
  if (comma != std::string::npos)
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  return polycap::parse_complex(text);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (!item.empty()) out.push_back(polycap::parse_complex(item));
  return out;
}

// "start:end:step" inclusive grid.
std::vector<double> parse_grid(const std::string& text) {
  double start = 0, end = 0, step = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &end, &step) != 3 ||
      step <= 0.0)
    throw polycap::InvalidParameter("bad grid \"" + text + "\", expected start:end:step");
  std::vector<double> out;
  for (double s = start; s <= end + 1e-12; s += step) out.push_back(std::min(s, end));
  if (!out.empty() && out.back() < end - 1e-12) out.push_back(end);
  return out;
}

polycap::SolverOptions make_solver(const std::string& name, double tol) {
  polycap::SolverOptions opts;
  if (name == "dense")
    opts.method = polycap::SolverOptions::Method::Dense;
  else if (name == "gmres")
    opts.method = polycap::SolverOptions::Method::Gmres;
  opts.tol = tol;
  return opts;
}

int run_cap(const std::string& domain, int n, int grading_p,
            const std::string& alpha_flag, const std::string& solver, double tol,
            const std::string& out_format) {
  polycap::CapacityRequest req;
  req.condenser = polycap::load_domain(domain);
  req.n = n;
  req.grading_p = grading_p;
  req.solver = make_solver(solver, tol);
  if (!alpha_flag.empty()) req.alpha = parse_point_flag(alpha_flag);

  const polycap::CapacityResult res = polycap::compute_capacity(req);
  if (out_format == "json") {
    nlohmann::json j;
    j["capacity"] = res.capacity;
    j["a"] = res.a;
    j["c"] = res.c;
    j["h_dev"] = res.h_dev;
    j["condition_number"] = res.condition_number;
    j["n"] = res.n;
    j["grading_p"] = res.grading_p;
    j["alpha"] = {res.alpha.real(), res.alpha.imag()};
    nlohmann::json ak = nlohmann::json::array();
    for (const auto& z : res.alpha_k) ak.push_back({z.real(), z.imag()});
    j["alpha_k"] = std::move(ak);
    j["solver"] = {{"method", res.diag.method},
                   {"iterations", res.diag.iterations},
                   {"residual", res.diag.residual}};
    j["seconds"] = res.seconds;
    std::cout << polycap::canonical_dump(j);
  } else {
    std::cout << "capacity,c,h_dev,cond,n,grading_p,seconds\n"
              << fmt(res.capacity) << ',' << fmt(res.c) << ',' << fmt(res.h_dev)
              << ',' << fmt(res.condition_number) << ',' << res.n << ','
              << res.grading_p << ',' << fmt(res.seconds) << '\n';
  }
  return 0;
}

int run_sweep(const std::string& domain, const std::string& n_list_flag,
              std::optional<double> reference, int grading_p,
              const std::string& solver, double tol) {
  polycap::CapacityRequest req;
  req.condenser = polycap::load_domain(domain);
  req.grading_p = grading_p;
  req.solver = make_solver(solver, tol);

  const auto sweep =
      polycap::convergence_sweep(req, parse_int_list(n_list_flag), reference);
  std::cout << "n,capacity,error,slope\n";
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    const auto& row = sweep.rows[i];
    std::cout << row.n << ',' << fmt(row.capacity) << ','
              << (row.error ? fmt(*row.error) : std::string());
    std::cout << ',';
    if (i + 1 == sweep.rows.size() && sweep.order) std::cout << fmt(*sweep.order);
    std::cout << '\n';
  }
  return 0;
}

int run_mobius(const std::string& domain, const std::string& a_list_flag, int n,
               int grading_p, const std::string& solver, double tol) {
  polycap::CapacityRequest req;
  req.condenser = polycap::load_domain(domain);
  req.n = n;
  req.grading_p = grading_p;
  req.solver = make_solver(solver, tol);

  const auto rows =
      polycap::mobius_invariance_report(req, parse_complex_list(a_list_flag));
  std::cout << "a,capacity,deviation\n";
  for (const auto& row : rows)
    std::cout << fmt(row.a) << ',' << fmt(row.capacity) << ',' << fmt(row.deviation)
              << '\n';
  return 0;
}

int run_bounds(double r, const std::string& s_grid_flag, int n,
               const std::string& solver, double tol) {
  const auto rows = polycap::lens_bounds_table(r, parse_grid(s_grid_flag), n,
                                               make_solver(solver, tol));
  std::cout << "s,hyp_perimeter,capacity,lower,upper\n";
  for (const auto& row : rows)
    std::cout << fmt(row.s) << ',' << fmt(row.perimeter) << ',' << fmt(row.capacity)
              << ',' << fmt(row.lower) << ',' << fmt(row.upper) << '\n';
  return 0;
}

int run_exact(const std::string& what, double param) {
  double value = 0.0;
  if (what == "annulus" || what == "disk")
    value = polycap::cap_annulus(param);
  else if (what == "segment")
    value = polycap::cap_disk_segment(param);
  else if (what == "grotzsch")
    value = polycap::mu_grotzsch(param);
  else
    throw polycap::InvalidParameter("unknown --what \"" + what + "\"");
  std::cout << fmt(value) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conformal capacity of polycircular condensers"};
  app.require_subcommand(1);

  int threads = 0;
  if (const char* env = std::getenv("POLYCAP_THREADS")) threads = std::atoi(env);
  app.add_option("--threads", threads, "worker threads (0 = all cores)");

  std::string domain, alpha_flag, solver = "auto", out_format = "csv";
  std::string n_list_flag, a_list_flag, s_grid_flag = "0.05:0.8:0.05", what;
  int n = 256, grading_p = 3;
  double tol = 1e-12, reference = 0.0, r = 0.8, param = 0.0;
  bool have_reference = false;

  auto* cap = app.add_subcommand("cap", "capacity of one condenser");
  cap->add_option("--domain", domain, "domain file or builtin:NAME")->required();
  cap->add_option("--n", n, "nodes per boundary component")->required();
  cap->add_option("--grading-p", grading_p, "corner grading parameter");
  cap->add_option("--alpha", alpha_flag, "auxiliary point, X,Y or x+yi");
  cap->add_option("--solver", solver)->check(CLI::IsMember({"auto", "dense", "gmres"}));
  cap->add_option("--gmres-tol", tol, "GMRES relative tolerance");
  cap->add_option("--out", out_format)->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "convergence sweep over n");
  sweep->add_option("--domain", domain)->required();
  sweep->add_option("--n-list", n_list_flag, "comma-separated n values")->required();
  sweep->add_option("--reference", reference)->each([&](const std::string&) {
    have_reference = true;
  });
  sweep->add_option("--grading-p", grading_p);
  sweep->add_option("--solver", solver)->check(CLI::IsMember({"auto", "dense", "gmres"}));
  sweep->add_option("--gmres-tol", tol);

  auto* mobius = app.add_subcommand("mobius", "Moebius-invariance experiment");
  mobius->add_option("--domain", domain)->required();
  mobius->add_option("--a-list", a_list_flag, "semicolon-separated complex values")
      ->required();
  mobius->add_option("--n", n)->required();
  mobius->add_option("--grading-p", grading_p);
  mobius->add_option("--solver", solver)->check(CLI::IsMember({"auto", "dense", "gmres"}));
  mobius->add_option("--gmres-tol", tol);

  auto* bounds = app.add_subcommand("bounds", "lens capacities vs perimeter bounds");
  bounds->add_option("--r", r, "lens half-width");
  bounds->add_option("--s-grid", s_grid_flag, "start:end:step");
  bounds->add_option("--n", n)->required();
  bounds->add_option("--solver", solver)->check(CLI::IsMember({"auto", "dense", "gmres"}));
  bounds->add_option("--gmres-tol", tol);

  auto* exact = app.add_subcommand("exact", "closed-form capacities");
  exact->add_option("--what", what)
      ->required()
      ->check(CLI::IsMember({"annulus", "disk", "segment", "grotzsch"}));
  exact->add_option("--param", param)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << '\n';
    return 2;
  }

  polycap::set_threads(threads);

  try {
    if (*cap) return run_cap(domain, n, grading_p, alpha_flag, solver, tol, out_format);
    if (*sweep)
      return run_sweep(domain, n_list_flag,
                       have_reference ? std::optional<double>(reference) : std::nullopt,
                       grading_p, solver, tol);
    if (*mobius) return run_mobius(domain, a_list_flag, n, grading_p, solver, tol);
    if (*bounds) return run_bounds(r, s_grid_flag, n, solver, tol);
    if (*exact) return run_exact(what, param);
  } catch (const polycap::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
