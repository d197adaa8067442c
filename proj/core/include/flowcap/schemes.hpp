#ifndef FLOWCAP_SCHEMES_HPP
#define FLOWCAP_SCHEMES_HPP

#include <Eigen/Core>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "flowcap/flow.hpp"

namespace flowcap {

/// Empirical convergence-order fit for one scheme run.
struct ConvergenceReport {
  std::string scheme_id;
  std::vector<long> n_values;       // sorted ascending
  std::vector<double> errors;       // sup errors matching n_values
  double slope = 0.0;               // d log(error) / d log(dt)
  double slope_stderr = 0.0;
  std::size_t window_begin = 0;     // asymptotic window = [window_begin, end)
  bool monotone_decreasing = false;
  std::string reference;
};

/// Quantities of the flow-deviation estimate: if |f1 - f2| < delta on the
/// inflated domain, then |phi_f1^tau - phi_f2^tau| <= bound on the base box.
struct GronwallBound {
  double lipschitz = 0.0;          // L, sampled on the inflated box
  double velocity = 0.0;           // V = max |f1| on the base box
  double tau = 0.0;
  double delta = 0.0;
  double inflation_radius = 0.0;   // (V + 1) tau e^{L tau}
  Box inflated_domain{Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1)};
  double bound = 0.0;              // delta (e^{L tau} - 1) / L
};

/// Splitting legs for phi_{sum a_i f_i}^tau with n cycles:
/// (phi_{f_m}^{a_m tau/n} o ... o phi_{f_1}^{a_1 tau/n})^n.
FlowProgram lie_trotter_program(
    const std::vector<std::pair<double, VectorField>>& terms, double tau,
    long n);

Eigen::VectorXd lie_trotter(
    const std::vector<std::pair<double, VectorField>>& terms, double tau,
    long n, const Eigen::VectorXd& x, const IntegratorConfig& cfg = {});

/// n-fold iterate of the four-flow commutator step
/// Psi_dt = phi_{f2}^{sqrt dt} o phi_{f1}^{sqrt dt} o phi_{-f2}^{sqrt dt} o
/// phi_{-f1}^{sqrt dt}, approximating phi_{[f1,f2]}^tau with O(sqrt dt) error.
FlowProgram commutator_scheme_program(const VectorField& f1,
                                      const VectorField& f2, double tau,
                                      long n);

Eigen::VectorXd commutator_scheme(const VectorField& f1, const VectorField& f2,
                                  double tau, long n, const Eigen::VectorXd& x,
                                  const IntegratorConfig& cfg = {});

/// Velocity bound, sampled Lipschitz constant, inflated domain and deviation
/// bound for fields delta-close to f1 on that domain.
GronwallBound gronwall_bound(const VectorField& f1, const Box& box, double tau,
                             double delta, int samples = 2048);

/// Least-squares slope of log(error) vs log(dt) over the asymptotic window
/// (the largest half of the n-values). Throws NonPositiveError when an exact
/// scheme produced a zero error.
ConvergenceReport fit_convergence(const std::string& scheme_id,
                                  std::vector<std::pair<long, double>> runs,
                                  const std::string& reference = "");

/// Sup-norm difference of two maps over the box's deterministic 64-point set.
double sup_difference(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& a,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& b,
    const Box& box, int samples = 64);

}  // namespace flowcap

#endif
