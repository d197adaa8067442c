#ifndef FLOWCAP_BOX_HPP
#define FLOWCAP_BOX_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "flowcap/errors.hpp"

namespace flowcap {

/// Axis-aligned compact domain lower <= x <= upper.
struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  Box() = default;
  Box(Eigen::VectorXd lo, Eigen::VectorXd hi);

  static Box centered(int dim, double half_width);
  static Box interval(double lo, double hi);  // 1-D

  int dim() const { return static_cast<int>(lower.size()); }
  bool empty() const { return lower.size() == 0; }
  Eigen::VectorXd width() const { return upper - lower; }
  bool contains(const Eigen::VectorXd& x, double slack = 0.0) const;

  /// Box grown by `radius` on every side.
  Box inflated(double radius) const;

  /// Map a unit-cube point into the box.
  Eigen::VectorXd map_unit(const Eigen::VectorXd& u) const;

  /// Deterministic sample set: the 2^d corners (d small) followed by the
  /// Halton sequence. Prefixes are nested, so sup-estimates over the first n
  /// points are monotone nondecreasing in n.
  std::vector<Eigen::VectorXd> sample_points(int count) const;
};

}  // namespace flowcap

#endif
