#ifndef FLOWCAP_HALTON_HPP
#define FLOWCAP_HALTON_HPP

#include <Eigen/Core>
#include <cstdint>

namespace flowcap {

/// Van der Corput radical inverse of `index` in base `base`.
inline double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double place = inv;
  double value = 0.0;
  while (index > 0) {
    value += static_cast<double>(index % base) * place;
    index /= base;
    place *= inv;
  }
  return value;
}

/// d-dimensional Halton point (index >= 0) in the unit cube, one prime base
/// per coordinate. Indexing is a fixed nesting sequence: the first n points
/// are the same for every n' >= n.
Eigen::VectorXd halton_point(std::uint64_t index, int dim);

}  // namespace flowcap

#endif
