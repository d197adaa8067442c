#ifndef FLOWCAP_FLOW_HPP
#define FLOWCAP_FLOW_HPP

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "flowcap/field.hpp"

namespace flowcap {

/// Fixed-step RK4 oracle settings.
struct IntegratorConfig {
  int steps_per_unit_time = 1000;
  double blow_up_radius = 1e6;
};

enum class LegDirection { Forward, Backward };

/// One program leg: flow the field for `duration` >= 0; backward legs flow
/// the negated field for the same duration.
struct Leg {
  VectorField field;
  double duration = 0.0;
  LegDirection direction = LegDirection::Forward;
};

/// Ordered composition of flow-map legs, applied left to right.
class FlowProgram {
 public:
  explicit FlowProgram(int dim) : dim_(dim) {}
  FlowProgram(int dim, std::vector<Leg> legs);

  static FlowProgram identity(int dim) { return FlowProgram(dim); }

  void append(Leg leg);
  void append(VectorField field, double duration,
              LegDirection direction = LegDirection::Forward);
  void extend(const FlowProgram& other);

  int dim() const { return dim_; }
  const std::vector<Leg>& legs() const { return legs_; }
  bool empty() const { return legs_.empty(); }
  std::size_t size() const { return legs_.size(); }
  double total_duration() const;

 private:
  int dim_;
  std::vector<Leg> legs_;
};

// --- closed-form flows ------------------------------------------------------

/// Flow of x' = Ax + b at time tau (either sign), via the homogeneous
/// matrix exponential.
Eigen::VectorXd flow_affine(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                            double tau, const Eigen::VectorXd& x);

/// Flow of x' = sign * ReLU(x) at time tau >= 0:
/// x_i -> e^{sign tau} x_i when x_i > 0, fixed otherwise.
Eigen::VectorXd flow_relu(int sign, double tau, const Eigen::VectorXd& x);

/// Flow of x' = x^2 in one dimension: x / (1 - tau x). Throws PoleReached
/// when tau * x >= 1.
double flow_mobius_1d(double tau, double x);

// --- numeric oracle ---------------------------------------------------------

/// Fixed-step classical RK4 for x' = f(x) over signed time tau. Throws
/// BlowUpGuard when any visited state leaves the guard ball.
Eigen::VectorXd flow_numeric(const VectorField& f, double tau,
                             const Eigen::VectorXd& x,
                             const IntegratorConfig& cfg = {});

/// Same integrator for a raw callable (used by profile/surrogate fields that
/// are not VectorField values).
Eigen::VectorXd flow_numeric(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
    double tau, const Eigen::VectorXd& x, const IntegratorConfig& cfg = {});

// --- program application ----------------------------------------------------

/// True when `apply` resolves this field's flow in closed form.
bool has_closed_form_flow(const VectorField& f);

/// Flow of one field for signed time tau: closed form when available,
/// otherwise the RK4 oracle.
Eigen::VectorXd flow_field(const VectorField& f, double tau,
                           const Eigen::VectorXd& x,
                           const IntegratorConfig& cfg = {});

/// Left-to-right composition of all legs. Flow errors are annotated with the
/// index of the offending leg.
Eigen::VectorXd apply(const FlowProgram& program, const Eigen::VectorXd& x,
                      const IntegratorConfig& cfg = {});

/// Reversed legs with flipped directions; inverse map on domains where all
/// legs are defined.
FlowProgram invert(const FlowProgram& program);

/// Flow of h(x) = A^{-1} f(Ax + b):  A^{-1}(phi_f^tau(Ax + b) - b).
Eigen::VectorXd conjugated_flow(const VectorField& f, const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& b, double tau,
                                const Eigen::VectorXd& x,
                                const IntegratorConfig& cfg = {});

/// Flow of g(x) = s f(a x + b):  a^{-1}(phi_f^{a s tau}(a x + b) - b).
Eigen::VectorXd scaled_shift_flow(const VectorField& f, double s, double a,
                                  const Eigen::VectorXd& b, double tau,
                                  const Eigen::VectorXd& x,
                                  const IntegratorConfig& cfg = {});

/// det of the flow Jacobian at the requested (nondecreasing, global) times,
/// integrating d/dt log det = div v along the trajectory. det J(0) = 1.
std::vector<double> jacobian_det_along_flow(const FlowProgram& program,
                                            const Eigen::VectorXd& x,
                                            const std::vector<double>& t_grid,
                                            const IntegratorConfig& cfg = {});

// --- Monte Carlo volume comparison ------------------------------------------

/// Axis-aligned box or Euclidean ball region.
struct Region {
  enum class Shape { Box, Disk };
  Shape shape = Shape::Disk;
  Box box{Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1)};
  Eigen::VectorXd center;
  double radius = 0.0;

  static Region disk(Eigen::VectorXd center, double radius);
  static Region from_box(Box b);

  int dim() const;
  Box bounding_box() const;
  bool contains(const Eigen::VectorXd& x) const;
  double bounding_volume() const;
};

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Seeded Monte Carlo estimate of integral_region detj(x) dx; the sample at
/// index i depends only on (seed, i), so results are order-independent.
VolumeEstimate mc_volume(const std::function<double(const Eigen::VectorXd&)>& detj,
                         const Region& region, std::int64_t samples,
                         std::uint64_t seed);

/// Volumes of the program image of two regions, via the Liouville
/// determinant along the flow.
std::pair<VolumeEstimate, VolumeEstimate> volume_comparison(
    const FlowProgram& program, const Region& r1, const Region& r2,
    std::int64_t samples, std::uint64_t seed,
    const IntegratorConfig& cfg = {});

/// Same comparison for an externally supplied Jacobian determinant.
std::pair<VolumeEstimate, VolumeEstimate> volume_comparison(
    const std::function<double(const Eigen::VectorXd&)>& detj, const Region& r1,
    const Region& r2, std::int64_t samples, std::uint64_t seed);

}  // namespace flowcap

#endif
