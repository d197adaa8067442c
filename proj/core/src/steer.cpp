#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "flowcap/matrix_exp.hpp"
#include "flowcap/rng.hpp"
#include "flowcap/universality.hpp"

// Exact point-steering constructions. Every primitive below composes only
// affine legs and +-ReLU legs, and is an exact identity on the points it is
// required to fix: fixed points sit in the closed nonpositive orthant of the
// conjugated coordinates, where the ReLU flow does not move at all.

namespace flowcap {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Leg translation_leg(const VectorXd& v) {
  return Leg{VectorField::constant(v), 1.0, LegDirection::Forward};
}

// Realizes x -> e^{gen} x + t as one affine leg (field Ax + b over unit
// time). b solves (int_0^1 e^{s gen} ds) b = t; the integral is read off the
// homogeneous exponential.
Leg affine_leg(const MatrixXd& gen, const VectorXd& t) {
  const auto d = gen.rows();
  MatrixXd H = MatrixXd::Zero(2 * d, 2 * d);
  H.topLeftCorner(d, d) = gen;
  H.topRightCorner(d, d) = MatrixXd::Identity(d, d);
  const MatrixXd J = matrix_exp(H).topRightCorner(d, d);
  return Leg{VectorField::affine(gen, J.partialPivLu().solve(t)), 1.0,
             LegDirection::Forward};
}

// Elementwise ReLU leg scaling positive coordinates by `lambda` > 0.
Leg relu_leg(double lambda, int dim) {
  const double tau = std::log(lambda);
  return Leg{VectorField::separable(Activation::relu(), dim), std::abs(tau),
             tau >= 0 ? LegDirection::Forward : LegDirection::Backward};
}

/// Builds a program from exact move primitives while tracking the images of
/// a working point set through the same closed-form maps.
class MoveBuilder {
 public:
  MoveBuilder(int dim, std::vector<VectorXd> points)
      : dim_(dim), program_(dim), points_(std::move(points)) {}

  const std::vector<VectorXd>& points() const { return points_; }
  FlowProgram&& take_program() { return std::move(program_); }

  void translate_all(const VectorXd& v) {
    program_.append(translation_leg(v));
    for (auto& p : points_) p += v;
  }

  void linear_map(const MatrixXd& gen, const VectorXd& t) {
    program_.append(affine_leg(gen, t));
    const MatrixXd E = matrix_exp(gen);
    for (auto& p : points_) p = E * p + t;
  }

  // One-sided scaling of coordinate `sep` anchored at c: points with
  // x_sep > c map to c + lambda (x_sep - c), everything else (and every
  // other coordinate) is exactly fixed.
  void one_sided_scale(int sep, double c, double lambda) {
    if (lambda == 1.0) return;
    if (!(lambda > 0)) throw SteeringFailed("one_sided_scale: lambda <= 0");
    VectorXd off = freeze_offsets(sep);
    off[sep] = -c;
    program_.append(translation_leg(off));
    program_.append(relu_leg(lambda, dim_));
    program_.append(translation_leg(-off));
    for (auto& p : points_)
      if (p[sep] > c) p[sep] = c + lambda * (p[sep] - c);
  }

  // Anchored two-coordinate scaling: points with x_sep > c_sep map to
  //   x_sep  -> c_sep  + lambda (x_sep  - c_sep)
  //   x_move -> c_move + lambda (x_move - c_move)
  // while points with x_sep <= c_sep are exactly fixed. Realized by
  // conjugating the ReLU flow with a shear that pushes the moving points'
  // `move` coordinate into the positive orthant.
  void anchored_scale(int sep, int move, double c_sep, double c_move,
                      double lambda) {
    if (lambda == 1.0) return;
    if (!(lambda > 0)) throw SteeringFailed("anchored_scale: lambda <= 0");
    double m_lo = 0.0;
    for (const auto& p : points_) {
      const double du = p[sep] - c_sep;
      const double dv = p[move] - c_move;
      if (du > 0) {
        if (-dv > 0) m_lo = std::max(m_lo, -dv / du);
      } else if (du < 0) {
        if (dv > 0) m_lo = std::max(m_lo, dv / -du);
      } else if (dv > 0) {
        throw SteeringFailed("anchored_scale: point on the anchor hyperplane");
      }
    }
    const double M = 2.0 * m_lo + 1.0;

    VectorXd t = freeze_offsets(sep, move);
    t[sep] = -c_sep;
    t[move] = -(c_move + M * c_sep);
    MatrixXd gen = MatrixXd::Zero(dim_, dim_);
    gen(move, sep) = M;
    // inverse of x -> (I + gen) x + t is y -> (I - gen) y - (I - gen) t
    program_.append(affine_leg(gen, t));
    program_.append(relu_leg(lambda, dim_));
    program_.append(
        affine_leg(-gen, -((MatrixXd::Identity(dim_, dim_) - gen) * t)));
    for (auto& p : points_) {
      if (p[sep] > c_sep) {
        p[sep] = c_sep + lambda * (p[sep] - c_sep);
        p[move] = c_move + lambda * (p[move] - c_move);
      }
    }
  }

  // Translates coordinate `move` by v for points with x_sep > c; exact
  // identity on x_sep <= c. Pair of anchored scalings with factors 2, 1/2.
  void one_sided_translate(int sep, int move, double c, double v) {
    if (v == 0.0) return;
    anchored_scale(sep, move, c, 0.0, 2.0);
    anchored_scale(sep, move, c, 2.0 * v, 0.5);
  }

  // Translates coordinate `move` by v inside the open slab c < x_sep < r.
  void slab_translate(int sep, int move, double c, double r, double v) {
    if (v == 0.0) return;
    one_sided_translate(sep, move, c, v);
    one_sided_translate(sep, move, r, -v);
  }

 private:
  // Offsets pushing every coordinate except the active ones strictly below
  // zero for all tracked points.
  VectorXd freeze_offsets(int active0, int active1 = -1) const {
    VectorXd off(dim_);
    for (int k = 0; k < dim_; ++k) {
      if (k == active0 || k == active1) {
        off[k] = 0.0;
        continue;
      }
      double hi = 0.0;
      for (const auto& p : points_) hi = std::max(hi, p[k]);
      off[k] = -(hi + 1.0);
    }
    return off;
  }

  int dim_;
  FlowProgram program_;
  std::vector<VectorXd> points_;
};

// Piecewise "tent": identity on (-inf, c] and [r, inf) for the tracked
// points, while the point currently at x_sep = mid (c < mid < r) lands at
// x_sep = target. Three one-sided scalings.
void tent_move(MoveBuilder& b, int sep, double c, double r, double mid,
               double target) {
  if (mid == target) return;
  const double s1 = (target - c) / (mid - c);
  b.one_sided_scale(sep, c, s1);
  const double r1 = c + s1 * (r - c);
  const double mu = (r - target) / (r1 - target);
  b.one_sided_scale(sep, target, mu);
  b.one_sided_scale(sep, r, 1.0 / (mu * s1));
}

// 1-D exact interpolation: anchored one-sided scalings at each site in
// increasing order, adjusting slopes to the right of the anchor only.
FlowProgram monotone_interpolation_1d(const std::vector<double>& xs,
                                      const std::vector<double>& ys) {
  const int n = static_cast<int>(xs.size());
  std::vector<VectorXd> pts(n, VectorXd(1));
  for (int i = 0; i < n; ++i) pts[i][0] = xs[i];
  MoveBuilder b(1, std::move(pts));
  for (int i = 0; i < n; ++i) {
    const double p = b.points()[i][0];
    if (p == ys[i]) continue;
    double anchor;
    if (i == 0) {
      anchor = std::min(p, ys[0]) - 1.0;
    } else {
      const double floor = ys[i - 1];
      anchor = floor + 0.5 * std::min(p - floor, ys[i] - floor);
    }
    b.one_sided_scale(0, anchor, (ys[i] - anchor) / (p - anchor));
  }
  return b.take_program();
}

}  // namespace

// ---------------------------------------------------------------------------
// CanonicalConfig / local_uip_relu
// ---------------------------------------------------------------------------

CanonicalConfig::CanonicalConfig(int n, int d) : N(n), dim(d) {
  if (n < 1) throw Error("CanonicalConfig: N must be >= 1");
  if (d < 1) throw Error("CanonicalConfig: dim must be >= 1");
}

Eigen::VectorXd CanonicalConfig::point(int i) const {
  VectorXd z = VectorXd::Zero(dim);
  z[0] = static_cast<double>(i + 1);
  return z;
}

FlowProgram local_uip_relu(const CanonicalConfig& cfg,
                           const std::vector<Eigen::VectorXd>& targets) {
  if (cfg.dim < 2)
    throw DimensionMismatch("local_uip_relu: needs d >= 2");
  if (static_cast<int>(targets.size()) != cfg.N)
    throw DimensionMismatch("local_uip_relu: one target per canonical point");
  const double delta = cfg.delta();
  bool trivial = true;
  for (int i = 0; i < cfg.N; ++i) {
    if (targets[i].size() != cfg.dim)
      throw DimensionMismatch("local_uip_relu: target dimension mismatch");
    const double dist = (targets[i] - cfg.point(i)).norm();
    if (dist >= delta)
      throw TargetOutsideRadius("local_uip_relu: target outside the delta ball");
    if (dist > 0) trivial = false;
  }
  if (trivial) return FlowProgram::identity(cfg.dim);
  if (cfg.N == 1) {
    FlowProgram program(cfg.dim);
    program.append(translation_leg(targets[0] - cfg.point(0)));
    return program;
  }

  std::vector<VectorXd> pts;
  pts.reserve(cfg.N);
  for (int i = 0; i < cfg.N; ++i) pts.push_back(cfg.point(i));
  MoveBuilder b(cfg.dim, std::move(pts));

  for (int i = 0; i < cfg.N; ++i) {
    const double c = (i + 1) - 0.5;
    const double r = (i + 1) + 0.5;
    // move along axis 1 inside the slab, identity at and beyond both fences
    tent_move(b, 0, c, r, b.points()[i][0], targets[i][0]);
    // transverse coordinates one at a time
    for (int k = 1; k < cfg.dim; ++k) {
      const double v = targets[i][k] - b.points()[i][k];
      b.slab_translate(0, k, c, r, v);
    }
  }
  return b.take_program();
}

// ---------------------------------------------------------------------------
// steer_to_canonical
// ---------------------------------------------------------------------------

namespace {

double pairwise_scale(const std::vector<VectorXd>& pts) {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      s = std::max(s, (pts[i] - pts[j]).norm());
  return s;
}

// min_{i<j} |x1_i - x1_j| after the shear x1 += w . x_tail
double shear_margin(const std::vector<VectorXd>& pts, const VectorXd& w) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const VectorXd d = pts[i] - pts[j];
      m = std::min(m, std::abs(d[0] + w.dot(d.tail(d.size() - 1))));
    }
  return m;
}

}  // namespace

FlowProgram steer_to_canonical(const std::vector<Eigen::VectorXd>& points,
                               const CanonicalConfig& cfg, std::uint64_t seed) {
  const int N = cfg.N;
  const int d = cfg.dim;
  if (static_cast<int>(points.size()) != N)
    throw DimensionMismatch("steer_to_canonical: point count != N");
  for (const auto& p : points)
    if (p.size() != d)
      throw DimensionMismatch("steer_to_canonical: point dimension mismatch");
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if ((points[i] - points[j]).norm() < 1e-12)
        throw SteeringFailed("steer_to_canonical: coincident input points");

  bool already_there = true;
  for (int i = 0; i < N && already_there; ++i)
    already_there = points[i] == cfg.point(i);
  if (already_there) return FlowProgram::identity(d);

  if (d == 1) {
    for (int i = 0; i + 1 < N; ++i)
      if (!(points[i][0] < points[i + 1][0]))
        throw std::invalid_argument(
            "steer_to_canonical: 1-D variant requires sorted inputs");
    std::vector<double> xs(N), zs(N);
    for (int i = 0; i < N; ++i) {
      xs[i] = points[i][0];
      zs[i] = i + 1.0;
    }
    return monotone_interpolation_1d(xs, zs);
  }

  if (N == 1) {
    FlowProgram program(d);
    program.append(translation_leg(cfg.point(0) - points[0]));
    return program;
  }

  // Shear search: x1 <- x1 + w . x_tail must separate all first coordinates.
  const double scale = pairwise_scale(points);
  VectorXd best_w = VectorXd::Zero(d - 1);
  double best_margin = shear_margin(points, best_w);
  constexpr int kBudget = 10000;
  for (int trial = 0; trial < kBudget; ++trial) {
    if (best_margin > 0.05 * scale) break;
    VectorXd v(d);
    for (int k = 0; k < d; ++k) {
      // Box-Muller from the counter stream keeps directions isotropic
      const double u1 = counter_uniform(seed + 17, trial, 2 * k) + 1e-300;
      const double u2 = counter_uniform(seed + 17, trial, 2 * k + 1);
      v[k] = std::sqrt(-2.0 * std::log(u1)) *
             std::cos(2.0 * std::acos(-1.0) * u2);
    }
    if (std::abs(v[0]) < 0.15 * v.norm()) continue;
    VectorXd w = v.tail(d - 1) / v[0];
    const double wn = w.norm();
    if (wn > 8.0) w *= 8.0 / wn;
    const double margin = shear_margin(points, w);
    if (margin > best_margin) {
      best_margin = margin;
      best_w = w;
    }
  }
  if (!(best_margin > 1e-9 * (1.0 + scale)))
    throw SteeringFailed(
        "steer_to_canonical: could not separate first coordinates within the "
        "search budget");

  MoveBuilder b(d, points);
  if (best_w.squaredNorm() > 0) {
    MatrixXd gen = MatrixXd::Zero(d, d);
    gen.row(0).tail(d - 1) = best_w.transpose();
    b.linear_map(gen, VectorXd::Zero(d));
  }

  // Normalize into the staging zone: x1 in [N+2, N+3], |x_k| <= 1/4.
  {
    double x1_lo = std::numeric_limits<double>::infinity(), x1_hi = -x1_lo;
    double t_hi = 0.0;
    for (const auto& p : b.points()) {
      x1_lo = std::min(x1_lo, p[0]);
      x1_hi = std::max(x1_hi, p[0]);
      for (int k = 1; k < d; ++k) t_hi = std::max(t_hi, std::abs(p[k]));
    }
    const double alpha = 1.0 / (x1_hi - x1_lo);
    const double beta = t_hi > 0.25 ? 0.25 / t_hi : 1.0;
    VectorXd loggains(d);
    loggains[0] = std::log(alpha);
    for (int k = 1; k < d; ++k) loggains[k] = std::log(beta);
    b.linear_map(loggains.asDiagonal(), VectorXd::Zero(d));
    VectorXd shiftv = VectorXd::Zero(d);
    shiftv[0] = (N + 2.0) - alpha * x1_lo;
    b.translate_all(shiftv);
  }

  // Place points one at a time: lift out of the staging band, carry over
  // everything else at height 2, drop into the slot.
  constexpr double kLift = 2.0;
  constexpr double kFence = 1.0;
  for (int i = 0; i < N; ++i) {
    const double x1 = b.points()[i][0];
    double gap = std::numeric_limits<double>::infinity();
    for (int j = 0; j < N; ++j)
      if (j != i) gap = std::min(gap, std::abs(b.points()[j][0] - x1));
    const double m = 0.5 * gap;
    if (!(m > 0))
      throw SteeringFailed("steer_to_canonical: staging collision");
    b.slab_translate(0, 1, x1 - m, x1 + m, kLift - b.points()[i][1]);
    b.one_sided_translate(1, 0, kFence, (i + 1.0) - b.points()[i][0]);
    b.slab_translate(0, 1, (i + 1.0) - 0.25, (i + 1.0) + 0.25,
                     -b.points()[i][1]);
    for (int k = 2; k < d; ++k)
      b.slab_translate(0, k, (i + 1.0) - 0.25, (i + 1.0) + 0.25,
                       -b.points()[i][k]);
  }
  return b.take_program();
}

// ---------------------------------------------------------------------------
// InterpolationProblem / interpolate
// ---------------------------------------------------------------------------

InterpolationProblem::InterpolationProblem(
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> data, double tol)
    : dim(0), pairs(std::move(data)), tolerance(tol) {
  if (pairs.empty())
    throw std::invalid_argument("InterpolationProblem: no data pairs");
  if (!(tolerance > 0))
    throw std::invalid_argument("InterpolationProblem: tolerance must be > 0");
  dim = static_cast<int>(pairs.front().first.size());
  for (const auto& [x, y] : pairs)
    if (x.size() != dim || y.size() != dim)
      throw std::invalid_argument("InterpolationProblem: inconsistent dims");
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if ((pairs[i].first - pairs[j].first).norm() < 1e-12)
        throw std::invalid_argument("InterpolationProblem: duplicate sources");
      if ((pairs[i].second - pairs[j].second).norm() < 1e-12)
        throw std::invalid_argument("InterpolationProblem: duplicate targets");
    }
  if (dim == 1) {
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
      return a.first[0] < b.first[0];
    });
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
      if (!(pairs[i].second[0] < pairs[i + 1].second[0]))
        throw std::invalid_argument(
            "InterpolationProblem: 1-D flow maps are increasing; "
            "order-reversing data is not interpolable");
  }
}

FlowProgram interpolate(const InterpolationProblem& problem,
                        InterpolationFamily family) {
  if (family != InterpolationFamily::AssRelu)
    throw UnsupportedFamily(
        "interpolate: constructive programs are built for the ReLU associated "
        "family; diag/aff families are analyzed via span_certificate");
  const int N = problem.size();
  const int d = problem.dim;

  FlowProgram program(d);
  if (d == 1) {
    std::vector<double> xs(N), ys(N);
    for (int i = 0; i < N; ++i) {
      xs[i] = problem.pairs[i].first[0];
      ys[i] = problem.pairs[i].second[0];
    }
    program = monotone_interpolation_1d(xs, ys);
  } else if (N == 1) {
    program.append(translation_leg(problem.pairs[0].second -
                                   problem.pairs[0].first));
  } else {
    const CanonicalConfig cfg(N, d);
    std::vector<Eigen::VectorXd> xs, ys;
    xs.reserve(N);
    ys.reserve(N);
    for (const auto& [x, y] : problem.pairs) {
      xs.push_back(x);
      ys.push_back(y);
    }
    const FlowProgram phi1 = steer_to_canonical(xs, cfg, 1);
    const FlowProgram phi2 = steer_to_canonical(ys, cfg, 2);
    std::vector<Eigen::VectorXd> t3, t4;
    t3.reserve(N);
    t4.reserve(N);
    for (int i = 0; i < N; ++i) {
      t3.push_back(apply(phi1, xs[i]));
      t4.push_back(apply(phi2, ys[i]));
    }
    const FlowProgram phi3 = local_uip_relu(cfg, t3);
    const FlowProgram phi4 = local_uip_relu(cfg, t4);
    program.extend(phi1);
    program.extend(invert(phi3));
    program.extend(phi4);
    program.extend(invert(phi2));
  }

  double residual = 0.0;
  for (const auto& [x, y] : problem.pairs)
    residual = std::max(residual, (apply(program, x) - y).norm());
  if (residual > problem.tolerance)
    throw ToleranceNotMet("interpolate: residual above problem tolerance",
                          residual);
  return program;
}

}  // namespace flowcap
