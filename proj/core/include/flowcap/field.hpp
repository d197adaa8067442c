#ifndef FLOWCAP_FIELD_HPP
#define FLOWCAP_FIELD_HPP

#include <Eigen/Core>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "flowcap/activation.hpp"
#include "flowcap/box.hpp"
#include "flowcap/errors.hpp"

namespace flowcap {

enum class FieldKind { Affine, Separable, Conjugated, Sum, Named };

/// Built-in example fields.
///   permute_relu : (x1, x2) -> (ReLU(x2), ReLU(x1)), d = 2
///   gauss        : every component x -> exp(-|x|^2)
///   sinsum       : (sin x1 + sin x2) * (1, 1), d = 2
enum class NamedField { PermuteRelu, Gauss, SinSum };

/// Immutable descriptor of a vector field on R^d. Values share structure;
/// copying is cheap and thread-safe.
class VectorField {
 public:
  static VectorField affine(Eigen::MatrixXd A, Eigen::VectorXd b);
  static VectorField zero(int dim);
  static VectorField constant(Eigen::VectorXd b);
  /// Activation applied to every coordinate.
  static VectorField separable(Activation act, int dim);
  /// Activation applied to flagged coordinates, 0 elsewhere.
  static VectorField separable(Activation act, std::vector<bool> flags);
  /// x -> S * base(W x + shift).
  static VectorField conjugated(Eigen::MatrixXd S, Eigen::MatrixXd W,
                                Eigen::VectorXd shift, VectorField base);
  /// Linear combination; nested sums are flattened at construction.
  static VectorField sum(std::vector<std::pair<double, VectorField>> terms);
  static VectorField scaled(double coeff, VectorField f);
  static VectorField named(NamedField id, int dim);
  static VectorField named(const std::string& id, int dim);

  int dim() const;
  FieldKind kind() const;

  const Eigen::MatrixXd& affine_matrix() const;
  const Eigen::VectorXd& affine_offset() const;
  const Activation& activation() const;
  const std::vector<bool>& flags() const;
  const Eigen::MatrixXd& conj_outer() const;
  const Eigen::MatrixXd& conj_inner() const;
  const Eigen::VectorXd& conj_shift() const;
  const VectorField& base() const;
  const std::vector<std::pair<double, VectorField>>& terms() const;
  NamedField named_id() const;

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;

  bool operator==(const VectorField& other) const;

 private:
  struct Data;
  explicit VectorField(std::shared_ptr<const Data> data)
      : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

std::string to_string(NamedField id);
NamedField named_field_from_string(const std::string& id);

Eigen::VectorXd eval_field(const VectorField& f, const Eigen::VectorXd& x);

/// Analytic Jacobian (all kinds carry one).
Eigen::MatrixXd jacobian(const VectorField& f, const Eigen::VectorXd& x);

/// Central finite difference with per-coordinate step
/// h_j = cbrt(eps) * (1 + |x_j|). Used as an independent cross-check.
Eigen::MatrixXd jacobian_fd(const VectorField& f, const Eigen::VectorXd& x);

double divergence(const VectorField& f, const Eigen::VectorXd& x);

/// [f, g](x) = Jg(x) f(x) - Jf(x) g(x).
Eigen::VectorXd lie_bracket(const VectorField& f, const VectorField& g,
                            const Eigen::VectorXd& x);

/// Max spectral norm of the Jacobian over the box's deterministic sample set
/// (corners + Halton prefix); a sampled lower bound for the Lipschitz
/// constant, monotone nondecreasing in `samples`.
double lipschitz_estimate(const VectorField& f, const Box& box, int samples);

/// Max |f| over the same deterministic sample set.
double sup_norm_estimate(const VectorField& f, const Box& box, int samples);

struct SliceVerdict {
  bool nonlinear = false;
  Eigen::VectorXd witness_shift;  // first shift whose slice fails the fit
  double max_residual = 0.0;
};

/// Fits an affine function to t -> f_component(t e_direction + shift) on a
/// grid over `interval` for each shift; Nonlinear when some residual exceeds
/// tol. tol < 0 selects the scale-aware default 1e-6 * (value range + 1).
SliceVerdict slice_nonlinearity_test(const VectorField& f, int component,
                                     int direction,
                                     const std::vector<Eigen::VectorXd>& shifts,
                                     const Box& interval, double tol = -1.0);

}  // namespace flowcap

#endif
