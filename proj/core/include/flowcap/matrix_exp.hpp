#ifndef FLOWCAP_MATRIX_EXP_HPP
#define FLOWCAP_MATRIX_EXP_HPP

#include <Eigen/Core>

namespace flowcap {

/// e^A by scaling-and-squaring with the degree-13 Pade approximant
/// (Higham 2005 theta thresholds, lower degrees for small norms).
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& A);

/// Homogeneous-coordinate exponential for the affine system x' = Ax + b:
/// returns (M, v) with  e^{tau A} = M  and  v = (int_0^tau e^{sA} ds) b,
/// so the time-tau flow is x -> M x + v. Exact for either sign of tau.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> affine_flow_matrix(
    const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tau);

}  // namespace flowcap

#endif
