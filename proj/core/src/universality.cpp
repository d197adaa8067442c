#include "flowcap/universality.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "flowcap/rng.hpp"

namespace flowcap {

// ---------------------------------------------------------------------------
// ReLU builders
// ---------------------------------------------------------------------------

ReluSurrogate relu_from_softplus(double sharpness, int dim) {
  if (!(sharpness > 0))
    throw Error("relu_from_softplus: sharpness must be > 0");
  VectorField field = VectorField::scaled(
      1.0 / sharpness,
      VectorField::separable(Activation::softplus(sharpness), dim));
  return {std::move(field), std::log(2.0) / sharpness};
}

namespace {

// Atom dictionary (a_i >= 0, b_i): the unit atom, a constant-capable atom,
// then harmonic pairs k pi / width with offsets {0, pi/2}.
std::vector<std::pair<double, double>> atom_dictionary(int budget,
                                                       double width) {
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(budget);
  atoms.emplace_back(1.0, 0.0);
  if (budget > 1) atoms.emplace_back(0.0, std::acos(-1.0) / 2.0);
  int harmonic = 1;
  while (static_cast<int>(atoms.size()) < budget) {
    const double a = harmonic * std::acos(-1.0) / width;
    atoms.emplace_back(a, 0.0);
    if (static_cast<int>(atoms.size()) < budget)
      atoms.emplace_back(a, std::acos(-1.0) / 2.0);
    ++harmonic;
  }
  return atoms;
}

}  // namespace

ReluSumFit relu_from_sums(const Activation& sigma, const Box& interval,
                          int budget, double tol, int dim) {
  if (interval.dim() != 1)
    throw DimensionMismatch("relu_from_sums: interval must be 1-D");
  if (budget < 1) throw Error("relu_from_sums: budget must be >= 1");
  const double lo = interval.lower[0], hi = interval.upper[0];
  const double width = hi - lo;
  if (!(width > 0)) throw EmptyBox("relu_from_sums: degenerate interval");

  const auto atoms = atom_dictionary(budget, width);
  constexpr int kFitGrid = 257;
  Eigen::MatrixXd design(kFitGrid, atoms.size());
  Eigen::VectorXd target(kFitGrid);
  for (int i = 0; i < kFitGrid; ++i) {
    const double t = lo + width * i / (kFitGrid - 1);
    target[i] = std::max(t, 0.0);
    for (std::size_t j = 0; j < atoms.size(); ++j)
      design(i, j) = sigma.value(atoms[j].first * t + atoms[j].second);
  }
  Eigen::VectorXd coef =
      design.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(target);

  // sup residual on a finer grid
  constexpr int kEvalGrid = 1025;
  double residual = 0.0;
  for (int i = 0; i < kEvalGrid; ++i) {
    const double t = lo + width * i / (kEvalGrid - 1);
    double v = 0.0;
    for (std::size_t j = 0; j < atoms.size(); ++j)
      v += coef[j] * sigma.value(atoms[j].first * t + atoms[j].second);
    residual = std::max(residual, std::abs(v - std::max(t, 0.0)));
  }
  if (residual > tol)
    throw BudgetExceeded("relu_from_sums: residual above tol at budget",
                         residual);

  std::vector<std::pair<double, VectorField>> terms;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(dim, dim);
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    if (coef[j] == 0.0) continue;
    terms.emplace_back(
        coef[j],
        VectorField::conjugated(I, atoms[j].first * I,
                                Eigen::VectorXd::Constant(dim, atoms[j].second),
                                VectorField::separable(sigma, dim)));
  }
  if (terms.empty()) terms.emplace_back(0.0, VectorField::zero(dim));
  return {VectorField::sum(std::move(terms)), residual, atoms, coef};
}

// ---------------------------------------------------------------------------
// Broadcast / marginalize / squeeze
// ---------------------------------------------------------------------------

VectorField broadcast_coordinate(const VectorField& f, int from_axis,
                                 int to_axis) {
  const int d = f.dim();
  if (from_axis < 0 || from_axis >= d || to_axis < 0 || to_axis >= d)
    throw DimensionMismatch("broadcast_coordinate: axis out of range");
  if (from_axis == to_axis)
    throw Error("broadcast_coordinate: axes must differ");
  if (d < 2) throw DimensionMismatch("broadcast_coordinate: needs d >= 2");

  // A e_to = e_from, A e_from = -e_to: det +1 plane rotation by 90 degrees.
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(d, d);
  A(from_axis, from_axis) = 0.0;
  A(to_axis, to_axis) = 0.0;
  A(from_axis, to_axis) = 1.0;
  A(to_axis, from_axis) = -1.0;
  return VectorField::conjugated(A.transpose(), A, Eigen::VectorXd::Zero(d), f);
}

ProfileField::ProfileField(VectorField f, double radius, int nodes)
    : field_(std::move(f)), radius_(radius), nodes_(nodes) {
  if (!(radius > 0)) throw Error("ProfileField: radius must be > 0");
  if (nodes < 2) throw Error("ProfileField: needs >= 2 quadrature nodes");
}

Eigen::VectorXd ProfileField::profile(double x1) const {
  const int d = field_.dim();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(d);
  if (d == 1) {
    Eigen::VectorXd x(1);
    x << x1;
    return eval_field(field_, x);
  }
  const int m = nodes_;
  const double h = 2.0 * radius_ / (m - 1);
  // tensor-product trapezoid over the trailing d-1 variables
  std::vector<int> idx(d - 1, 0);
  Eigen::VectorXd x(d);
  x[0] = x1;
  while (true) {
    double w = 1.0;
    for (int k = 0; k < d - 1; ++k) {
      x[k + 1] = -radius_ + idx[k] * h;
      w *= (idx[k] == 0 || idx[k] == m - 1) ? 0.5 * h : h;
    }
    acc += w * eval_field(field_, x);
    int k = 0;
    for (; k < d - 1; ++k) {
      if (++idx[k] < m) break;
      idx[k] = 0;
    }
    if (k == d - 1) break;
  }
  return acc;
}

Eigen::VectorXd ProfileField::operator()(const Eigen::VectorXd& x) const {
  if (x.size() != dim())
    throw DimensionMismatch("ProfileField: point dimension mismatch");
  return profile(x[0]);
}

ProfileField marginalize(const VectorField& f, double radius, int nodes,
                         double tail_tol) {
  ProfileField full(f, radius, nodes);
  // Tail estimate: the integral must be stable under shrinking the radius;
  // a drift larger than tail_tol signals unintegrated mass outside.
  ProfileField inner(f, 0.75 * radius,
                     std::max(2, static_cast<int>(nodes * 0.75)));
  double drift = 0.0, scale = 0.0;
  for (double probe : {-1.0, 0.0, 1.0}) {
    const Eigen::VectorXd a = full.profile(probe);
    const Eigen::VectorXd b = inner.profile(probe);
    drift = std::max(drift, (a - b).cwiseAbs().maxCoeff());
    scale = std::max(scale, a.cwiseAbs().maxCoeff());
  }
  if (drift > tail_tol * (1.0 + scale))
    throw TailMassTooLarge(
        "marginalize: integrand mass outside the quadrature radius");
  return full;
}

SqueezedProfileField::SqueezedProfileField(ProfileField profile, double eps)
    : profile_(std::move(profile)), eps_(eps) {
  if (!(eps > 0)) throw Error("squeeze_conjugation: eps must be > 0");
}

Eigen::VectorXd SqueezedProfileField::operator()(const Eigen::VectorXd& x) const {
  Eigen::VectorXd v = profile_(x);
  for (Eigen::Index i = 1; i < v.size(); ++i) v[i] *= eps_;
  return v;
}

SqueezedProfileField squeeze_conjugation(ProfileField profile, double eps) {
  return SqueezedProfileField(std::move(profile), eps);
}

// ---------------------------------------------------------------------------
// Span certificate
// ---------------------------------------------------------------------------

VectorField sample_family_field(const VectorField& f, SampledFamily family,
                                std::uint64_t seed, std::uint64_t index) {
  const int d = f.dim();
  const auto draw = [&](std::uint64_t stream) {
    return counter_uniform(seed, index, stream, -2.0, 2.0);
  };
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd b(d);
  std::uint64_t stream = 0;
  if (family == SampledFamily::Aff) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) S(i, j) = draw(stream++);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) W(i, j) = draw(stream++);
  } else {
    for (int i = 0; i < d; ++i) S(i, i) = draw(stream++);
    for (int i = 0; i < d; ++i) W(i, i) = draw(stream++);
  }
  for (int i = 0; i < d; ++i) b[i] = draw(stream++);
  return VectorField::conjugated(std::move(S), std::move(W), std::move(b), f);
}

namespace {

// Representative of a multi-dimensional numerical null space: the direction
// minimizing energy outside a single component block, sweeping blocks in
// order. Sign-fixed so the first entry above 1e-12 is positive.
Eigen::VectorXd canonical_witness(const Eigen::MatrixXd& null_basis, int N,
                                  int d) {
  Eigen::VectorXd w;
  if (null_basis.cols() == 1) {
    w = null_basis.col(0);
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < d; ++k) {
      Eigen::MatrixXd outside(null_basis.rows() - N, null_basis.cols());
      int r = 0;
      for (int j = 0; j < N; ++j)
        for (int kk = 0; kk < d; ++kk)
          if (kk != k) outside.row(r++) = null_basis.row(j * d + kk);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(outside, Eigen::ComputeFullV);
      const Eigen::VectorXd alpha = svd.matrixV().col(null_basis.cols() - 1);
      const double energy = (outside * alpha).norm();
      if (energy < best - 1e-14) {
        best = energy;
        w = null_basis * alpha;
      }
    }
  }
  w.normalize();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (std::abs(w[i]) > 1e-12) {
      if (w[i] < 0) w = -w;
      break;
    }
  }
  return w;
}

}  // namespace

SpanCertificate span_certificate(const VectorField& f, SampledFamily family,
                                 const Eigen::MatrixXd& configuration,
                                 int sample_count, std::uint64_t seed,
                                 double threshold) {
  const int N = static_cast<int>(configuration.rows());
  const int d = f.dim();
  if (configuration.cols() != d)
    throw DimensionMismatch("span_certificate: configuration must be N x d");
  if (N < 1) throw Error("span_certificate: empty configuration");
  if (sample_count < N * d)
    throw Error("span_certificate: sampler count must be >= d N");
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if ((configuration.row(i) - configuration.row(j)).norm() < 1e-12)
        throw Error("span_certificate: degenerate configuration (coincident points)");

  SpanCertificate cert;
  cert.configuration = configuration;
  cert.threshold = threshold;
  cert.sampled_rows.resize(sample_count, N * d);
  for (int s = 0; s < sample_count; ++s) {
    const VectorField g = sample_family_field(f, family, seed, s);
    for (int j = 0; j < N; ++j)
      cert.sampled_rows.row(s).segment(j * d, d) =
          eval_field(g, configuration.row(j).transpose()).transpose();
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cert.sampled_rows,
                                        Eigen::ComputeFullV);
  cert.singular_values = svd.singularValues();
  const double sigma_max = cert.singular_values[0];
  const double sigma_min = cert.singular_values[N * d - 1];
  cert.full_rank = sigma_min > threshold * sigma_max;
  if (!cert.full_rank) {
    int null_dim = 0;
    for (Eigen::Index i = cert.singular_values.size() - 1; i >= 0; --i) {
      if (cert.singular_values[i] <= threshold * sigma_max)
        ++null_dim;
      else
        break;
    }
    cert.witness = canonical_witness(
        svd.matrixV().rightCols(null_dim), N, d);
  }
  return cert;
}

Eigen::MatrixXd omega_n_configuration(int N, int dim, std::uint64_t seed,
                                      double lo, double hi) {
  if (N < 1 || dim < 1) throw Error("omega_n_configuration: N, dim >= 1");
  Eigen::MatrixXd X(N, dim);
  for (int k = 0; k < dim; ++k) {
    std::vector<double> vals(N);
    for (int j = 0; j < N; ++j)
      vals[j] = counter_uniform(seed, j, 1000 + k, lo, hi);
    std::sort(vals.begin(), vals.end());
    for (int j = 0; j < N; ++j) X(j, k) = vals[j];
  }
  return X;
}

}  // namespace flowcap
