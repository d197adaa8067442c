#include "flowcap/flow.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "flowcap/matrix_exp.hpp"
#include "flowcap/rng.hpp"

namespace flowcap {

FlowProgram::FlowProgram(int dim, std::vector<Leg> legs) : dim_(dim) {
  for (auto& leg : legs) append(std::move(leg));
}

void FlowProgram::append(Leg leg) {
  if (leg.field.dim() != dim_)
    throw DimensionMismatch("FlowProgram: leg dimension mismatch");
  if (!(leg.duration >= 0))
    throw Error("FlowProgram: leg duration must be >= 0");
  legs_.push_back(std::move(leg));
}

void FlowProgram::append(VectorField field, double duration,
                         LegDirection direction) {
  append(Leg{std::move(field), duration, direction});
}

void FlowProgram::extend(const FlowProgram& other) {
  for (const auto& leg : other.legs()) append(leg);
}

double FlowProgram::total_duration() const {
  double t = 0.0;
  for (const auto& leg : legs_) t += leg.duration;
  return t;
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

Eigen::VectorXd flow_affine(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                            double tau, const Eigen::VectorXd& x) {
  auto [M, v] = affine_flow_matrix(A, b, tau);
  return M * x + v;
}

Eigen::VectorXd flow_relu(int sign, double tau, const Eigen::VectorXd& x) {
  if (!(tau >= 0)) throw Error("flow_relu: tau must be >= 0");
  const double scale = std::exp(sign > 0 ? tau : -tau);
  Eigen::VectorXd y = x;
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (y[i] > 0) y[i] *= scale;
  return y;
}

double flow_mobius_1d(double tau, double x) {
  if (tau * x >= 1.0)
    throw PoleReached("flow_mobius_1d: trajectory of x' = x^2 reaches the pole");
  return x / (1.0 - tau * x);
}

// ---------------------------------------------------------------------------
// RK4 oracle
// ---------------------------------------------------------------------------

namespace {

using Callable = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

Eigen::VectorXd rk4_integrate(const Callable& f, double tau,
                              const Eigen::VectorXd& x0,
                              const IntegratorConfig& cfg) {
  if (tau == 0.0) return x0;
  const long n =
      std::max<long>(1, static_cast<long>(std::ceil(
                            std::abs(tau) * cfg.steps_per_unit_time)));
  const double h = tau / static_cast<double>(n);
  Eigen::VectorXd x = x0;
  for (long i = 0; i < n; ++i) {
    if (x.norm() > cfg.blow_up_radius)
      throw BlowUpGuard("flow_numeric: state left the guard ball");
    const Eigen::VectorXd k1 = f(x);
    const Eigen::VectorXd k2 = f(x + 0.5 * h * k1);
    const Eigen::VectorXd k3 = f(x + 0.5 * h * k2);
    const Eigen::VectorXd k4 = f(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (x.norm() > cfg.blow_up_radius)
    throw BlowUpGuard("flow_numeric: state left the guard ball");
  return x;
}

}  // namespace

Eigen::VectorXd flow_numeric(const VectorField& f, double tau,
                             const Eigen::VectorXd& x,
                             const IntegratorConfig& cfg) {
  if (x.size() != f.dim())
    throw DimensionMismatch("flow_numeric: point dimension mismatch");
  return rk4_integrate([&f](const Eigen::VectorXd& p) { return eval_field(f, p); },
                       tau, x, cfg);
}

Eigen::VectorXd flow_numeric(const Callable& f, double tau,
                             const Eigen::VectorXd& x,
                             const IntegratorConfig& cfg) {
  return rk4_integrate(f, tau, x, cfg);
}

// ---------------------------------------------------------------------------
// Closed-form dispatch
// ---------------------------------------------------------------------------

namespace {

bool is_conjugation_pair(const VectorField& f) {
  const auto n = f.conj_outer().rows();
  return (f.conj_outer() * f.conj_inner() - Eigen::MatrixXd::Identity(n, n))
             .cwiseAbs()
             .maxCoeff() < 1e-12;
}

bool separable_closed_form(const Activation& act) {
  switch (act.type()) {
    case ActivationType::ReLU:
    case ActivationType::NegReLU:
    case ActivationType::LeakyReLU:
    case ActivationType::Quadratic1D:
      return true;
    case ActivationType::MonomialPower:
      return act.param0() == 2.0;
    default:
      return false;
  }
}

// Per-coordinate flow of the scalar activations above, signed tau.
double separable_coordinate_flow(const Activation& act, double tau, double v) {
  switch (act.type()) {
    case ActivationType::ReLU:
      return v > 0 ? std::exp(tau) * v : v;
    case ActivationType::NegReLU:
      return v > 0 ? std::exp(-tau) * v : v;
    case ActivationType::LeakyReLU:
      return v > 0 ? std::exp(tau) * v : std::exp(act.param0() * tau) * v;
    default:  // quadratic
      return flow_mobius_1d(tau, v);
  }
}

Eigen::VectorXd flow_closed(const VectorField& f, double tau,
                            const Eigen::VectorXd& x,
                            const IntegratorConfig& cfg);

Eigen::VectorXd flow_field_signed(const VectorField& f, double tau,
                                  const Eigen::VectorXd& x,
                                  const IntegratorConfig& cfg) {
  if (has_closed_form_flow(f)) return flow_closed(f, tau, x, cfg);
  return flow_numeric(f, tau, x, cfg);
}

Eigen::VectorXd flow_closed(const VectorField& f, double tau,
                            const Eigen::VectorXd& x,
                            const IntegratorConfig& cfg) {
  switch (f.kind()) {
    case FieldKind::Affine:
      return flow_affine(f.affine_matrix(), f.affine_offset(), tau, x);
    case FieldKind::Separable: {
      Eigen::VectorXd y = x;
      const auto& fl = f.flags();
      for (int i = 0; i < f.dim(); ++i)
        if (fl[i]) y[i] = separable_coordinate_flow(f.activation(), tau, x[i]);
      return y;
    }
    case FieldKind::Sum:
      // single term: phi_{c f}^tau = phi_f^{c tau}
      return flow_field_signed(f.terms()[0].second, f.terms()[0].first * tau,
                               x, cfg);
    case FieldKind::Conjugated: {
      // S = W^{-1}: phi^tau(x) = W^{-1}(phi_base^tau(W x + shift) - shift)
      const Eigen::VectorXd inner = f.conj_inner() * x + f.conj_shift();
      const Eigen::VectorXd out = flow_field_signed(f.base(), tau, inner, cfg);
      return f.conj_outer() * (out - f.conj_shift());
    }
    default:
      throw Error("flow_closed: no closed form for this kind");
  }
}

}  // namespace

bool has_closed_form_flow(const VectorField& f) {
  switch (f.kind()) {
    case FieldKind::Affine:
      return true;
    case FieldKind::Separable:
      return separable_closed_form(f.activation());
    case FieldKind::Sum:
      return f.terms().size() == 1 && has_closed_form_flow(f.terms()[0].second);
    case FieldKind::Conjugated:
      return is_conjugation_pair(f) && has_closed_form_flow(f.base());
    case FieldKind::Named:
      return false;
  }
  return false;
}

Eigen::VectorXd flow_field(const VectorField& f, double tau,
                           const Eigen::VectorXd& x,
                           const IntegratorConfig& cfg) {
  return flow_field_signed(f, tau, x, cfg);
}

Eigen::VectorXd apply(const FlowProgram& program, const Eigen::VectorXd& x,
                      const IntegratorConfig& cfg) {
  if (x.size() != program.dim())
    throw DimensionMismatch("apply: point dimension mismatch");
  Eigen::VectorXd y = x;
  for (std::size_t i = 0; i < program.legs().size(); ++i) {
    const Leg& leg = program.legs()[i];
    const double tau = leg.direction == LegDirection::Forward ? leg.duration
                                                              : -leg.duration;
    try {
      y = flow_field_signed(leg.field, tau, y, cfg);
    } catch (FlowDomainError& e) {
      if (e.leg_index < 0) e.leg_index = static_cast<int>(i);
      throw;
    }
  }
  return y;
}

FlowProgram invert(const FlowProgram& program) {
  FlowProgram inverse(program.dim());
  for (auto it = program.legs().rbegin(); it != program.legs().rend(); ++it) {
    Leg leg = *it;
    leg.direction = leg.direction == LegDirection::Forward
                        ? LegDirection::Backward
                        : LegDirection::Forward;
    inverse.append(std::move(leg));
  }
  return inverse;
}

Eigen::VectorXd conjugated_flow(const VectorField& f, const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& b, double tau,
                                const Eigen::VectorXd& x,
                                const IntegratorConfig& cfg) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  if (std::abs(lu.determinant()) < 1e-300)
    throw SingularMatrix("conjugated_flow: A must be invertible");
  const Eigen::VectorXd inner = A * x + b;
  return lu.solve(flow_field(f, tau, inner, cfg) - b);
}

Eigen::VectorXd scaled_shift_flow(const VectorField& f, double s, double a,
                                  const Eigen::VectorXd& b, double tau,
                                  const Eigen::VectorXd& x,
                                  const IntegratorConfig& cfg) {
  if (a == 0.0) throw Error("scaled_shift_flow: a must be nonzero");
  const Eigen::VectorXd inner = a * x + b;
  return (flow_field(f, a * s * tau, inner, cfg) - b) / a;
}

// ---------------------------------------------------------------------------
// Liouville determinant along the flow
// ---------------------------------------------------------------------------

namespace {

// One RK4 step of the (x, log det) augmented system for v = orient * f.
void rk4_augmented_step(const VectorField& f, double orient, double h,
                        Eigen::VectorXd& x, double& logdet) {
  const auto vf = [&](const Eigen::VectorXd& p) {
    return (orient * eval_field(f, p)).eval();
  };
  const auto dd = [&](const Eigen::VectorXd& p) {
    return orient * divergence(f, p);
  };
  const Eigen::VectorXd k1 = vf(x);
  const double l1 = dd(x);
  const Eigen::VectorXd x2 = x + 0.5 * h * k1;
  const Eigen::VectorXd k2 = vf(x2);
  const double l2 = dd(x2);
  const Eigen::VectorXd x3 = x + 0.5 * h * k2;
  const Eigen::VectorXd k3 = vf(x3);
  const double l3 = dd(x3);
  const Eigen::VectorXd x4 = x + h * k3;
  const Eigen::VectorXd k4 = vf(x4);
  const double l4 = dd(x4);
  x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  logdet += (h / 6.0) * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
}

void advance_augmented(const VectorField& f, double orient, double span,
                       Eigen::VectorXd& x, double& logdet,
                       const IntegratorConfig& cfg) {
  if (span <= 0.0) return;
  const long n = std::max<long>(
      1, static_cast<long>(std::ceil(span * cfg.steps_per_unit_time)));
  const double h = span / static_cast<double>(n);
  for (long i = 0; i < n; ++i) {
    if (x.norm() > cfg.blow_up_radius)
      throw BlowUpGuard("jacobian_det_along_flow: state left the guard ball");
    rk4_augmented_step(f, orient, h, x, logdet);
  }
}

}  // namespace

std::vector<double> jacobian_det_along_flow(const FlowProgram& program,
                                            const Eigen::VectorXd& x0,
                                            const std::vector<double>& t_grid,
                                            const IntegratorConfig& cfg) {
  if (x0.size() != program.dim())
    throw DimensionMismatch("jacobian_det_along_flow: point dimension");
  const double total = program.total_duration();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0 || t_grid[i] > total + 1e-12)
      throw Error("jacobian_det_along_flow: grid time outside program span");
    if (i > 0 && t_grid[i] < t_grid[i - 1])
      throw Error("jacobian_det_along_flow: grid times must be nondecreasing");
  }

  std::vector<double> dets;
  dets.reserve(t_grid.size());
  Eigen::VectorXd x = x0;
  double logdet = 0.0;
  double leg_start = 0.0;
  double local = 0.0;  // time already consumed inside the current leg
  std::size_t leg_i = 0;
  for (const double t : t_grid) {
    // advance legs until t falls within the current one
    while (leg_i < program.size() &&
           leg_start + program.legs()[leg_i].duration < t - 1e-15) {
      const Leg& leg = program.legs()[leg_i];
      const double orient = leg.direction == LegDirection::Forward ? 1.0 : -1.0;
      advance_augmented(leg.field, orient, leg.duration - local, x, logdet, cfg);
      leg_start += leg.duration;
      local = 0.0;
      ++leg_i;
    }
    if (leg_i < program.size()) {
      const Leg& leg = program.legs()[leg_i];
      const double orient = leg.direction == LegDirection::Forward ? 1.0 : -1.0;
      const double target_local = std::min(t - leg_start, leg.duration);
      advance_augmented(leg.field, orient, target_local - local, x, logdet, cfg);
      local = target_local;
    }
    dets.push_back(std::exp(logdet));
  }
  return dets;
}

// ---------------------------------------------------------------------------
// Monte Carlo volume comparison
// ---------------------------------------------------------------------------

Region Region::disk(Eigen::VectorXd center, double radius) {
  if (radius <= 0) throw Error("Region::disk: radius must be > 0");
  Region r;
  r.shape = Shape::Disk;
  r.center = std::move(center);
  r.radius = radius;
  return r;
}

Region Region::from_box(Box b) {
  Region r;
  r.shape = Shape::Box;
  r.box = std::move(b);
  return r;
}

int Region::dim() const {
  return shape == Shape::Disk ? static_cast<int>(center.size()) : box.dim();
}

Box Region::bounding_box() const {
  if (shape == Shape::Box) return box;
  Eigen::VectorXd r = Eigen::VectorXd::Constant(center.size(), radius);
  return Box(center - r, center + r);
}

bool Region::contains(const Eigen::VectorXd& x) const {
  if (shape == Shape::Box) return box.contains(x);
  return (x - center).norm() <= radius;
}

double Region::bounding_volume() const {
  return bounding_box().width().prod();
}

VolumeEstimate mc_volume(const std::function<double(const Eigen::VectorXd&)>& detj,
                         const Region& region, std::int64_t samples,
                         std::uint64_t seed) {
  if (samples < 2) throw Error("mc_volume: samples must be >= 2");
  const Box bb = region.bounding_box();
  const int d = bb.dim();
  const double vol = region.bounding_volume();
  double sum = 0.0, sum_sq = 0.0;
  Eigen::VectorXd u(d);
  for (std::int64_t i = 0; i < samples; ++i) {
    for (int k = 0; k < d; ++k)
      u[k] = counter_uniform(seed, static_cast<std::uint64_t>(i), k);
    const Eigen::VectorXd x = bb.map_unit(u);
    const double v = region.contains(x) ? detj(x) : 0.0;
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean) / (n - 1.0);
  return {vol * mean, vol * std::sqrt(var)};
}

std::pair<VolumeEstimate, VolumeEstimate> volume_comparison(
    const FlowProgram& program, const Region& r1, const Region& r2,
    std::int64_t samples, std::uint64_t seed, const IntegratorConfig& cfg) {
  const double total = program.total_duration();
  const std::vector<double> grid{total};
  const auto detj = [&](const Eigen::VectorXd& x) {
    return jacobian_det_along_flow(program, x, grid, cfg)[0];
  };
  return {mc_volume(detj, r1, samples, seed),
          mc_volume(detj, r2, samples, seed + 1)};
}

std::pair<VolumeEstimate, VolumeEstimate> volume_comparison(
    const std::function<double(const Eigen::VectorXd&)>& detj, const Region& r1,
    const Region& r2, std::int64_t samples, std::uint64_t seed) {
  return {mc_volume(detj, r1, samples, seed),
          mc_volume(detj, r2, samples, seed + 1)};
}

}  // namespace flowcap
