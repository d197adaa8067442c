#include "flowcap/schemes.hpp"

#include <algorithm>
#include <cmath>

namespace flowcap {

FlowProgram lie_trotter_program(
    const std::vector<std::pair<double, VectorField>>& terms, double tau,
    long n) {
  if (terms.empty()) throw Error("lie_trotter: needs at least one term");
  if (!(tau >= 0)) throw Error("lie_trotter: tau must be >= 0");
  if (n < 1) throw Error("lie_trotter: n must be >= 1");
  for (const auto& [a, f] : terms)
    if (!(a > 0)) throw Error("lie_trotter: coefficients must be positive");

  FlowProgram program(terms.front().second.dim());
  const double dt = tau / static_cast<double>(n);
  for (long j = 0; j < n; ++j)
    for (const auto& [a, f] : terms) program.append(f, a * dt);
  return program;
}

Eigen::VectorXd lie_trotter(
    const std::vector<std::pair<double, VectorField>>& terms, double tau,
    long n, const Eigen::VectorXd& x, const IntegratorConfig& cfg) {
  return apply(lie_trotter_program(terms, tau, n), x, cfg);
}

FlowProgram commutator_scheme_program(const VectorField& f1,
                                      const VectorField& f2, double tau,
                                      long n) {
  if (f1.dim() != f2.dim())
    throw DimensionMismatch("commutator_scheme: field dimensions differ");
  if (!(tau >= 0)) throw Error("commutator_scheme: tau must be >= 0");
  if (n < 1) throw Error("commutator_scheme: n must be >= 1");

  FlowProgram program(f1.dim());
  const double s = std::sqrt(tau / static_cast<double>(n));
  for (long j = 0; j < n; ++j) {
    program.append(f1, s, LegDirection::Backward);
    program.append(f2, s, LegDirection::Backward);
    program.append(f1, s, LegDirection::Forward);
    program.append(f2, s, LegDirection::Forward);
  }
  return program;
}

Eigen::VectorXd commutator_scheme(const VectorField& f1, const VectorField& f2,
                                  double tau, long n, const Eigen::VectorXd& x,
                                  const IntegratorConfig& cfg) {
  return apply(commutator_scheme_program(f1, f2, tau, n), x, cfg);
}

GronwallBound gronwall_bound(const VectorField& f1, const Box& box, double tau,
                             double delta, int samples) {
  if (box.dim() != f1.dim())
    throw DimensionMismatch("gronwall_bound: box dimension mismatch");
  if (delta < 0) throw Error("gronwall_bound: delta must be >= 0");

  GronwallBound out;
  out.tau = tau;
  out.delta = delta;
  out.velocity = sup_norm_estimate(f1, box, samples);

  // The inflated domain depends on L, which is measured on the inflated
  // domain; iterate to a consistent pair (fixed point within a few rounds
  // for Lipschitz fields with bounded Jacobians).
  double lip = lipschitz_estimate(f1, box, samples);
  double radius = (out.velocity + 1.0) * tau * std::exp(lip * tau);
  for (int round = 0; round < 8; ++round) {
    const double next = lipschitz_estimate(f1, box.inflated(radius), samples);
    if (next <= lip * (1.0 + 1e-12) + 1e-15) {
      lip = std::max(lip, next);
      break;
    }
    lip = next;
    radius = (out.velocity + 1.0) * tau * std::exp(lip * tau);
  }
  out.lipschitz = lip;
  out.inflation_radius = (out.velocity + 1.0) * tau * std::exp(lip * tau);
  out.inflated_domain = box.inflated(out.inflation_radius);
  out.bound = lip > 0 ? delta * std::expm1(lip * tau) / lip : delta * tau;
  return out;
}

ConvergenceReport fit_convergence(const std::string& scheme_id,
                                  std::vector<std::pair<long, double>> runs,
                                  const std::string& reference) {
  std::sort(runs.begin(), runs.end());
  runs.erase(std::unique(runs.begin(), runs.end(),
                         [](const auto& a, const auto& b) {
                           return a.first == b.first;
                         }),
             runs.end());
  if (runs.size() < 4)
    throw Error("fit_convergence: needs >= 4 distinct n values");
  for (const auto& [n, e] : runs)
    if (!(e > 0))
      throw NonPositiveError(
          "fit_convergence: nonpositive error (exact schemes are not fitted)");

  ConvergenceReport report;
  report.scheme_id = scheme_id;
  report.reference = reference;
  for (const auto& [n, e] : runs) {
    report.n_values.push_back(n);
    report.errors.push_back(e);
  }
  report.monotone_decreasing = true;
  for (std::size_t i = 1; i < report.errors.size(); ++i)
    if (report.errors[i] > report.errors[i - 1])
      report.monotone_decreasing = false;

  // slope of log(e) against log(dt); dt proportional to 1/n, and the
  // constant factor tau drops out of the slope
  report.window_begin = runs.size() / 2;
  const std::size_t k = runs.size() - report.window_begin;
  Eigen::VectorXd z(k), y(k);
  for (std::size_t i = 0; i < k; ++i) {
    z[i] = -std::log(static_cast<double>(runs[report.window_begin + i].first));
    y[i] = std::log(runs[report.window_begin + i].second);
  }
  const double zbar = z.mean(), ybar = y.mean();
  const double szz = (z.array() - zbar).square().sum();
  const double szy = ((z.array() - zbar) * (y.array() - ybar)).sum();
  report.slope = szy / szz;
  if (k > 2) {
    const double ss_res =
        (y.array() - ybar - report.slope * (z.array() - zbar)).square().sum();
    report.slope_stderr =
        std::sqrt(ss_res / (static_cast<double>(k) - 2.0) / szz);
  }
  return report;
}

double sup_difference(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& a,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& b,
    const Box& box, int samples) {
  double worst = 0.0;
  for (const auto& x : box.sample_points(samples))
    worst = std::max(worst, (a(x) - b(x)).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace flowcap
