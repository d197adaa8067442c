#ifndef FLOWCAP_UNIVERSALITY_HPP
#define FLOWCAP_UNIVERSALITY_HPP

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "flowcap/flow.hpp"
#include "flowcap/schemes.hpp"

namespace flowcap {

// --- ReLU approximation builders ---------------------------------------------

struct ReluSurrogate {
  VectorField field;   // x -> a^{-1} ln(1 + e^{a x}) elementwise
  double sup_error;    // exactly ln 2 / a, attained at 0
};

/// Sharpened softplus surrogate of the elementwise ReLU field.
ReluSurrogate relu_from_softplus(double sharpness, int dim = 1);

struct ReluSumFit {
  VectorField field;                           // sum of shifted/scaled atoms
  double residual;                             // achieved sup residual
  std::vector<std::pair<double, double>> atoms;  // dictionary (a_i, b_i)
  Eigen::VectorXd coefficients;
};

/// Least-squares fit of sum_i s_i sigma(a_i t + b_i) to the scalar ReLU over
/// `interval`, using a fixed dictionary with a_i >= 0. Throws BudgetExceeded
/// (carrying the best residual) when the budget cannot reach tol.
ReluSumFit relu_from_sums(const Activation& sigma, const Box& interval,
                          int budget, double tol, int dim = 1);

// --- broadcast / marginalize / squeeze ---------------------------------------

/// Conjugates a field supported on axis `from_axis` to act on axis `to_axis`
/// using a determinant-one signed permutation: A^{-1} f(A x).
VectorField broadcast_coordinate(const VectorField& f, int from_axis,
                                 int to_axis);

/// Field x -> (fbar_1(x_1), ..., fbar_d(x_1)) obtained by tensor-product
/// trapezoidal quadrature of f over [-R, R]^{d-1} in the trailing variables.
class ProfileField {
 public:
  ProfileField(VectorField f, double radius, int nodes);

  int dim() const { return field_.dim(); }
  double radius() const { return radius_; }
  int nodes() const { return nodes_; }

  /// Component profiles at x1.
  Eigen::VectorXd profile(double x1) const;
  /// Field evaluation (depends on x[0] only).
  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;

 private:
  VectorField field_;
  double radius_;
  int nodes_;
};

/// Marginalizes the trailing d-1 variables; throws TailMassTooLarge when the
/// quadrature does not look converged at the chosen radius.
ProfileField marginalize(const VectorField& f, double radius, int nodes,
                         double tail_tol = 1e-6);

/// g_eps(x) = (fbar_1(x_1), eps fbar_2(x_1), ..., eps fbar_d(x_1)); the
/// diag(1, 1/eps, ...) conjugation of the profile field.
class SqueezedProfileField {
 public:
  SqueezedProfileField(ProfileField profile, double eps);

  int dim() const { return profile_.dim(); }
  double eps() const { return eps_; }
  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;

 private:
  ProfileField profile_;
  double eps_;
};

SqueezedProfileField squeeze_conjugation(ProfileField profile, double eps);

// --- lifted-system span certificate -------------------------------------------

enum class SampledFamily { Aff, Diag };

/// Rank certificate for span F^{(x)N} at a configuration. Row layout is
/// point-major: row[j*d + k] = g_k(x_j).
struct SpanCertificate {
  Eigen::MatrixXd configuration;    // N x d, one point per row
  Eigen::MatrixXd sampled_rows;     // count x (d N)
  Eigen::VectorXd singular_values;  // descending
  double threshold = 0.0;           // relative to sigma_max
  bool full_rank = false;
  Eigen::VectorXd witness;          // unit co-vector when deficient
};

/// Draws `index`-th family element (S f(Wx+b), diagonal variant for Diag)
/// with entries uniform in [-2, 2] under the given seed.
VectorField sample_family_field(const VectorField& f, SampledFamily family,
                                std::uint64_t seed, std::uint64_t index);

SpanCertificate span_certificate(const VectorField& f, SampledFamily family,
                                 const Eigen::MatrixXd& configuration,
                                 int sample_count, std::uint64_t seed,
                                 double threshold = 1e-10);

/// Strictly increasing coordinates in every axis (the certificate's generic
/// configuration set), sampled deterministically from the seed.
Eigen::MatrixXd omega_n_configuration(int N, int dim, std::uint64_t seed,
                                      double lo = -3.0, double hi = 3.0);

// --- canonical interpolation --------------------------------------------------

/// Canonical configuration z_i = i e_1 (i = 1..N) with ball radius 1/(2N).
struct CanonicalConfig {
  int N = 1;
  int dim = 2;

  CanonicalConfig(int n, int d);
  double delta() const { return 0.5 / static_cast<double>(N); }
  Eigen::VectorXd point(int i) const;  // i is 0-based
};

/// Stagewise program moving z_i -> targets[i] exactly, identity on every
/// other point at each stage. Legs use only affine fields and +-ReLU.
FlowProgram local_uip_relu(const CanonicalConfig& cfg,
                           const std::vector<Eigen::VectorXd>& targets);

/// Program steering arbitrary distinct points onto the canonical
/// configuration (within delta/2; the construction lands exactly up to
/// roundoff). d = 1 requires sorted inputs.
FlowProgram steer_to_canonical(const std::vector<Eigen::VectorXd>& points,
                               const CanonicalConfig& cfg,
                               std::uint64_t seed = 0);

struct InterpolationProblem {
  int dim;
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
  double tolerance;

  /// Validates distinctness, and for d = 1 sorts by x and requires y to be
  /// strictly increasing in the same order.
  InterpolationProblem(std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> data,
                       double tol);
  int size() const { return static_cast<int>(pairs.size()); }
};

enum class InterpolationFamily { AssRelu, Diag, Aff };

/// phi2^{-1} o phi4 o phi3^{-1} o phi1 with phi1/phi2 steering both point
/// sets to the canonical configuration and phi3/phi4 the local stages.
/// d = 1 uses anchored one-sided scalings directly.
FlowProgram interpolate(const InterpolationProblem& problem,
                        InterpolationFamily family);

}  // namespace flowcap

#endif
