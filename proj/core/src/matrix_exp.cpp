#include "flowcap/matrix_exp.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "flowcap/errors.hpp"

namespace flowcap {

namespace {

using Eigen::MatrixXd;

// Pade numerator U + V / denominator -U + V for degree m in {3,5,7,9,13}.
void pade(const MatrixXd& A, int degree, MatrixXd& U, MatrixXd& V) {
  const auto n = A.rows();
  const MatrixXd I = MatrixXd::Identity(n, n);
  const MatrixXd A2 = A * A;
  switch (degree) {
    case 3: {
      U = A * (A2 + 60.0 * I);
      V = 12.0 * A2 + 120.0 * I;
      return;
    }
    case 5: {
      U = A * (A2 * A2 + 420.0 * A2 + 15120.0 * I);
      V = 30.0 * A2 * A2 + 3360.0 * A2 + 30240.0 * I;
      return;
    }
    case 7: {
      const MatrixXd A4 = A2 * A2, A6 = A4 * A2;
      U = A * (A6 + 1512.0 * A4 + 277200.0 * A2 + 8648640.0 * I);
      V = 56.0 * A6 + 25200.0 * A4 + 1995840.0 * A2 + 17297280.0 * I;
      return;
    }
    case 9: {
      const MatrixXd A4 = A2 * A2, A6 = A4 * A2, A8 = A6 * A2;
      U = A * (A8 + 3960.0 * A6 + 2162160.0 * A4 + 302702400.0 * A2 +
               8821612800.0 * I);
      V = 90.0 * A8 + 110880.0 * A6 + 30270240.0 * A4 + 2075673600.0 * A2 +
          17643225600.0 * I;
      return;
    }
    case 13: {
      const double c[] = {64764752532480000.0, 32382376266240000.0,
                          7771770303897600.0, 1187353796428800.0,
                          129060195264000.0,  10559470521600.0,
                          670442572800.0,     33522128640.0,
                          1323241920.0,       40840800.0,
                          960960.0,           16380.0,
                          182.0,              1.0};
      const MatrixXd A4 = A2 * A2, A6 = A4 * A2;
      U = A * (A6 * (c[13] * A6 + c[11] * A4 + c[9] * A2) + c[7] * A6 +
               c[5] * A4 + c[3] * A2 + c[1] * I);
      V = A6 * (c[12] * A6 + c[10] * A4 + c[8] * A2) + c[6] * A6 + c[4] * A4 +
          c[2] * A2 + c[0] * I;
      return;
    }
  }
  throw Error("pade: unsupported degree");
}

}  // namespace

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) throw DimensionMismatch("matrix_exp: square only");
  const double norm = A.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm

  int degree = 13;
  int squarings = 0;
  if (norm < 1.495585217958292e-2) {
    degree = 3;
  } else if (norm < 2.539398330063230e-1) {
    degree = 5;
  } else if (norm < 9.504178996162932e-1) {
    degree = 7;
  } else if (norm < 2.097847961257068e0) {
    degree = 9;
  } else {
    const double theta13 = 5.371920351148152e0;
    if (norm > theta13) {
      squarings = static_cast<int>(
          std::ceil(std::log2(norm / theta13)));
    }
  }

  MatrixXd As = A / std::pow(2.0, squarings);
  MatrixXd U, V;
  pade(As, degree, U, V);
  MatrixXd R = (-U + V).partialPivLu().solve(U + V);
  for (int i = 0; i < squarings; ++i) R = R * R;
  return R;
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> affine_flow_matrix(
    const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tau) {
  const auto n = A.rows();
  if (A.cols() != n || b.size() != n)
    throw DimensionMismatch("affine_flow_matrix: A must be d x d, b length d");
  MatrixXd H = MatrixXd::Zero(n + 1, n + 1);
  H.topLeftCorner(n, n) = tau * A;
  H.topRightCorner(n, 1) = tau * b;
  MatrixXd E = matrix_exp(H);
  return {E.topLeftCorner(n, n), E.topRightCorner(n, 1)};
}

}  // namespace flowcap
