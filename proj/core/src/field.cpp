#include "flowcap/field.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "flowcap/halton.hpp"

namespace flowcap {

// ---------------------------------------------------------------------------
// Halton / Box
// ---------------------------------------------------------------------------

namespace {
constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                           31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
}

Eigen::VectorXd halton_point(std::uint64_t index, int dim) {
  if (dim > static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0])))
    throw DimensionMismatch("halton_point: dimension too large");
  Eigen::VectorXd u(dim);
  for (int k = 0; k < dim; ++k)
    u[k] = radical_inverse(index + 1, kPrimes[k]);  // skip the origin
  return u;
}

Box::Box(Eigen::VectorXd lo, Eigen::VectorXd hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size())
    throw DimensionMismatch("Box: lower/upper sizes differ");
  if (lower.size() == 0) throw EmptyBox("Box: zero-dimensional box");
  if ((upper.array() < lower.array()).any())
    throw EmptyBox("Box: requires lower <= upper componentwise");
}

Box Box::centered(int dim, double half_width) {
  Eigen::VectorXd h = Eigen::VectorXd::Constant(dim, half_width);
  return Box(-h, h);
}

Box Box::interval(double lo, double hi) {
  Eigen::VectorXd l(1), u(1);
  l << lo;
  u << hi;
  return Box(l, u);
}

bool Box::contains(const Eigen::VectorXd& x, double slack) const {
  return (x.array() >= lower.array() - slack).all() &&
         (x.array() <= upper.array() + slack).all();
}

Box Box::inflated(double radius) const {
  Eigen::VectorXd r = Eigen::VectorXd::Constant(dim(), radius);
  return Box(lower - r, upper + r);
}

Eigen::VectorXd Box::map_unit(const Eigen::VectorXd& u) const {
  return lower.array() + u.array() * (upper - lower).array();
}

std::vector<Eigen::VectorXd> Box::sample_points(int count) const {
  if (count < 1) throw Error("Box::sample_points: count must be >= 1");
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(count);
  const int d = dim();
  // Corners first (skipped for large d where 2^d would dominate the budget).
  if (d <= 10) {
    const std::uint64_t n_corners = 1ULL << d;
    for (std::uint64_t c = 0; c < n_corners && static_cast<int>(pts.size()) < count; ++c) {
      Eigen::VectorXd x(d);
      for (int k = 0; k < d; ++k) x[k] = (c >> k) & 1 ? upper[k] : lower[k];
      pts.push_back(std::move(x));
    }
  }
  std::uint64_t i = 0;
  while (static_cast<int>(pts.size()) < count)
    pts.push_back(map_unit(halton_point(i++, d)));
  return pts;
}

// ---------------------------------------------------------------------------
// VectorField representation
// ---------------------------------------------------------------------------

struct VectorField::Data {
  FieldKind kind;
  int dim = 0;

  // Affine
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  // Separable
  Activation act = Activation::relu();
  std::vector<bool> flags;
  // Conjugated
  Eigen::MatrixXd S, W;
  Eigen::VectorXd shift;
  std::shared_ptr<const VectorField> base;
  // Sum
  std::vector<std::pair<double, VectorField>> terms;
  // Named
  NamedField named = NamedField::PermuteRelu;

  explicit Data(FieldKind k) : kind(k) {}
};

VectorField VectorField::affine(Eigen::MatrixXd A, Eigen::VectorXd b) {
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw DimensionMismatch("affine: A must be d x d and b length d");
  auto d = std::make_shared<Data>(FieldKind::Affine);
  d->dim = static_cast<int>(b.size());
  d->A = std::move(A);
  d->b = std::move(b);
  return VectorField(std::move(d));
}

VectorField VectorField::zero(int dim) {
  return affine(Eigen::MatrixXd::Zero(dim, dim), Eigen::VectorXd::Zero(dim));
}

VectorField VectorField::constant(Eigen::VectorXd b) {
  const auto n = b.size();
  return affine(Eigen::MatrixXd::Zero(n, n), std::move(b));
}

VectorField VectorField::separable(Activation act, int dim) {
  return separable(act, std::vector<bool>(dim, true));
}

VectorField VectorField::separable(Activation act, std::vector<bool> flags) {
  if (flags.empty()) throw DimensionMismatch("separable: empty flag vector");
  auto d = std::make_shared<Data>(FieldKind::Separable);
  d->dim = static_cast<int>(flags.size());
  d->act = act;
  d->flags = std::move(flags);
  return VectorField(std::move(d));
}

VectorField VectorField::conjugated(Eigen::MatrixXd S, Eigen::MatrixXd W,
                                    Eigen::VectorXd shift, VectorField base) {
  const int n = base.dim();
  if (S.rows() != n || S.cols() != n || W.rows() != n || W.cols() != n ||
      shift.size() != n)
    throw DimensionMismatch("conjugated: S, W, shift must conform to base dim");
  auto d = std::make_shared<Data>(FieldKind::Conjugated);
  d->dim = n;
  d->S = std::move(S);
  d->W = std::move(W);
  d->shift = std::move(shift);
  d->base = std::make_shared<const VectorField>(std::move(base));
  return VectorField(std::move(d));
}

VectorField VectorField::sum(std::vector<std::pair<double, VectorField>> terms) {
  if (terms.empty()) throw DimensionMismatch("sum: needs at least one term");
  const int n = terms.front().second.dim();
  auto d = std::make_shared<Data>(FieldKind::Sum);
  d->dim = n;
  for (auto& [c, f] : terms) {
    if (f.dim() != n) throw DimensionMismatch("sum: mixed dimensions");
    if (!std::isfinite(c)) throw Error("sum: coefficient must be finite");
    if (f.kind() == FieldKind::Sum) {
      for (const auto& [ci, fi] : f.terms()) d->terms.emplace_back(c * ci, fi);
    } else {
      d->terms.emplace_back(c, std::move(f));
    }
  }
  return VectorField(std::move(d));
}

VectorField VectorField::scaled(double coeff, VectorField f) {
  return sum({{coeff, std::move(f)}});
}

VectorField VectorField::named(NamedField id, int dim) {
  if ((id == NamedField::PermuteRelu || id == NamedField::SinSum) && dim != 2)
    throw DimensionMismatch("named: this example field is two-dimensional");
  if (dim < 1) throw DimensionMismatch("named: dim must be positive");
  auto d = std::make_shared<Data>(FieldKind::Named);
  d->dim = dim;
  d->named = id;
  return VectorField(std::move(d));
}

VectorField VectorField::named(const std::string& id, int dim) {
  return named(named_field_from_string(id), dim);
}

int VectorField::dim() const { return data_->dim; }
FieldKind VectorField::kind() const { return data_->kind; }
const Eigen::MatrixXd& VectorField::affine_matrix() const { return data_->A; }
const Eigen::VectorXd& VectorField::affine_offset() const { return data_->b; }
const Activation& VectorField::activation() const { return data_->act; }
const std::vector<bool>& VectorField::flags() const { return data_->flags; }
const Eigen::MatrixXd& VectorField::conj_outer() const { return data_->S; }
const Eigen::MatrixXd& VectorField::conj_inner() const { return data_->W; }
const Eigen::VectorXd& VectorField::conj_shift() const { return data_->shift; }
const VectorField& VectorField::base() const { return *data_->base; }
const std::vector<std::pair<double, VectorField>>& VectorField::terms() const {
  return data_->terms;
}
NamedField VectorField::named_id() const { return data_->named; }

Eigen::VectorXd VectorField::operator()(const Eigen::VectorXd& x) const {
  return eval_field(*this, x);
}

bool VectorField::operator==(const VectorField& other) const {
  if (data_ == other.data_) return true;
  if (kind() != other.kind() || dim() != other.dim()) return false;
  switch (kind()) {
    case FieldKind::Affine:
      return affine_matrix() == other.affine_matrix() &&
             affine_offset() == other.affine_offset();
    case FieldKind::Separable:
      return activation() == other.activation() && flags() == other.flags();
    case FieldKind::Conjugated:
      return conj_outer() == other.conj_outer() &&
             conj_inner() == other.conj_inner() &&
             conj_shift() == other.conj_shift() && base() == other.base();
    case FieldKind::Sum: {
      if (terms().size() != other.terms().size()) return false;
      for (std::size_t i = 0; i < terms().size(); ++i)
        if (terms()[i].first != other.terms()[i].first ||
            !(terms()[i].second == other.terms()[i].second))
          return false;
      return true;
    }
    case FieldKind::Named:
      return named_id() == other.named_id();
  }
  return false;
}

std::string to_string(NamedField id) {
  switch (id) {
    case NamedField::PermuteRelu: return "permute_relu";
    case NamedField::Gauss: return "gauss";
    case NamedField::SinSum: return "sinsum";
  }
  return "?";
}

NamedField named_field_from_string(const std::string& id) {
  if (id == "permute_relu") return NamedField::PermuteRelu;
  if (id == "gauss") return NamedField::Gauss;
  if (id == "sinsum") return NamedField::SinSum;
  throw Error("unknown named field: " + id);
}

// ---------------------------------------------------------------------------
// Evaluation and Jacobians
// ---------------------------------------------------------------------------

namespace {

double relu(double t) { return t > 0 ? t : 0.0; }
double relu_step(double t) { return t > 0 ? 1.0 : 0.0; }

Eigen::VectorXd eval_named(NamedField id, const Eigen::VectorXd& x) {
  switch (id) {
    case NamedField::PermuteRelu: {
      Eigen::VectorXd y(2);
      y << relu(x[1]), relu(x[0]);
      return y;
    }
    case NamedField::Gauss:
      return Eigen::VectorXd::Constant(x.size(), std::exp(-x.squaredNorm()));
    case NamedField::SinSum:
      return Eigen::VectorXd::Constant(2, std::sin(x[0]) + std::sin(x[1]));
  }
  return {};
}

Eigen::MatrixXd jacobian_named(NamedField id, const Eigen::VectorXd& x) {
  switch (id) {
    case NamedField::PermuteRelu: {
      Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2, 2);
      J(0, 1) = relu_step(x[1]);
      J(1, 0) = relu_step(x[0]);
      return J;
    }
    case NamedField::Gauss: {
      const auto n = x.size();
      const double g = std::exp(-x.squaredNorm());
      Eigen::MatrixXd J(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) J(i, j) = -2.0 * x[j] * g;
      return J;
    }
    case NamedField::SinSum: {
      Eigen::MatrixXd J(2, 2);
      const double c0 = std::cos(x[0]), c1 = std::cos(x[1]);
      J << c0, c1, c0, c1;
      return J;
    }
  }
  return {};
}

}  // namespace

Eigen::VectorXd eval_field(const VectorField& f, const Eigen::VectorXd& x) {
  if (x.size() != f.dim())
    throw DimensionMismatch("eval_field: point dimension mismatch");
  switch (f.kind()) {
    case FieldKind::Affine:
      return f.affine_matrix() * x + f.affine_offset();
    case FieldKind::Separable: {
      Eigen::VectorXd y(f.dim());
      const auto& fl = f.flags();
      for (int i = 0; i < f.dim(); ++i)
        y[i] = fl[i] ? f.activation().value(x[i]) : 0.0;
      return y;
    }
    case FieldKind::Conjugated:
      return f.conj_outer() *
             eval_field(f.base(), f.conj_inner() * x + f.conj_shift());
    case FieldKind::Sum: {
      Eigen::VectorXd y = Eigen::VectorXd::Zero(f.dim());
      for (const auto& [c, g] : f.terms()) y += c * eval_field(g, x);
      return y;
    }
    case FieldKind::Named:
      return eval_named(f.named_id(), x);
  }
  return {};
}

Eigen::MatrixXd jacobian(const VectorField& f, const Eigen::VectorXd& x) {
  if (x.size() != f.dim())
    throw DimensionMismatch("jacobian: point dimension mismatch");
  switch (f.kind()) {
    case FieldKind::Affine:
      return f.affine_matrix();
    case FieldKind::Separable: {
      Eigen::MatrixXd J = Eigen::MatrixXd::Zero(f.dim(), f.dim());
      const auto& fl = f.flags();
      for (int i = 0; i < f.dim(); ++i)
        if (fl[i]) J(i, i) = f.activation().derivative(x[i]);
      return J;
    }
    case FieldKind::Conjugated:
      return f.conj_outer() *
             jacobian(f.base(), f.conj_inner() * x + f.conj_shift()) *
             f.conj_inner();
    case FieldKind::Sum: {
      Eigen::MatrixXd J = Eigen::MatrixXd::Zero(f.dim(), f.dim());
      for (const auto& [c, g] : f.terms()) J += c * jacobian(g, x);
      return J;
    }
    case FieldKind::Named:
      return jacobian_named(f.named_id(), x);
  }
  return {};
}

Eigen::MatrixXd jacobian_fd(const VectorField& f, const Eigen::VectorXd& x) {
  if (x.size() != f.dim())
    throw DimensionMismatch("jacobian_fd: point dimension mismatch");
  const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
  const int n = f.dim();
  Eigen::MatrixXd J(n, n);
  Eigen::VectorXd xp = x, xm = x;
  for (int j = 0; j < n; ++j) {
    const double h = h0 * (1.0 + std::abs(x[j]));
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    J.col(j) = (eval_field(f, xp) - eval_field(f, xm)) / (2.0 * h);
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return J;
}

double divergence(const VectorField& f, const Eigen::VectorXd& x) {
  return jacobian(f, x).trace();
}

Eigen::VectorXd lie_bracket(const VectorField& f, const VectorField& g,
                            const Eigen::VectorXd& x) {
  if (f.dim() != g.dim())
    throw DimensionMismatch("lie_bracket: field dimensions differ");
  return jacobian(g, x) * eval_field(f, x) - jacobian(f, x) * eval_field(g, x);
}

double lipschitz_estimate(const VectorField& f, const Box& box, int samples) {
  if (box.dim() != f.dim())
    throw DimensionMismatch("lipschitz_estimate: box dimension mismatch");
  if (samples < 2) throw Error("lipschitz_estimate: samples must be >= 2");
  double best = 0.0;
  for (const auto& x : box.sample_points(samples)) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian(f, x));
    best = std::max(best, svd.singularValues()[0]);
  }
  return best;
}

double sup_norm_estimate(const VectorField& f, const Box& box, int samples) {
  double best = 0.0;
  for (const auto& x : box.sample_points(samples))
    best = std::max(best, eval_field(f, x).norm());
  return best;
}

SliceVerdict slice_nonlinearity_test(const VectorField& f, int component,
                                     int direction,
                                     const std::vector<Eigen::VectorXd>& shifts,
                                     const Box& interval, double tol) {
  if (component < 0 || component >= f.dim() || direction < 0 ||
      direction >= f.dim())
    throw DimensionMismatch("slice_nonlinearity_test: index out of range");
  if (shifts.empty()) throw Error("slice_nonlinearity_test: no shifts given");
  if (interval.dim() != 1)
    throw DimensionMismatch("slice_nonlinearity_test: interval must be 1-D");
  const double lo = interval.lower[0], hi = interval.upper[0];
  if (!(hi > lo)) throw EmptyBox("slice_nonlinearity_test: degenerate interval");

  constexpr int kGrid = 129;
  SliceVerdict verdict;
  for (const auto& b : shifts) {
    if (b.size() != f.dim())
      throw DimensionMismatch("slice_nonlinearity_test: shift dimension");
    Eigen::VectorXd values(kGrid), ts(kGrid);
    for (int i = 0; i < kGrid; ++i) {
      const double t = lo + (hi - lo) * i / (kGrid - 1);
      Eigen::VectorXd x = b;
      x[direction] += t;
      ts[i] = t;
      values[i] = eval_field(f, x)[component];
    }
    Eigen::MatrixXd design(kGrid, 2);
    design.col(0) = ts;
    design.col(1).setOnes();
    Eigen::Vector2d coef = design.colPivHouseholderQr().solve(values);
    const double residual = (design * coef - values).cwiseAbs().maxCoeff();
    const double range = values.maxCoeff() - values.minCoeff();
    const double threshold = tol >= 0 ? tol : 1e-6 * (range + 1.0);
    verdict.max_residual = std::max(verdict.max_residual, residual);
    if (residual > threshold) {
      verdict.nonlinear = true;
      verdict.witness_shift = b;
      return verdict;
    }
  }
  return verdict;
}

}  // namespace flowcap
