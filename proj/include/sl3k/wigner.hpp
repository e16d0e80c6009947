#pragma once

// Wigner functions on SO(3) in z-x-z Euler angles,
//   k(alpha, beta, gamma) = Rz(alpha) Rx(beta) Rz(gamma),
//   D^l_{m1,m2}(k) = e^{i m1 alpha} d^l_{m1,m2}(cos beta) e^{i m2 gamma}.
// Sign convention: D^l_{m1,m2} carries the factor (-1)^{l+m2} in its explicit
// binomial sum. Other references flip the signs of m1 and m2; no conversion is
// attempted.

#include <Eigen/Dense>

#include <complex>

#include "sl3k/ktype_vector.hpp"

namespace sl3k {

struct EulerAngles {
  double alpha = 0.0;  // [0, 2pi)
  double beta = 0.0;   // [0, pi]
  double gamma = 0.0;  // [0, 2pi)
};

/// d^l_{m1,m2}(x) for x in [-1, 1]. Throws std::out_of_range for invalid indices.
double little_d(int l, int m1, int m2, double x);

std::complex<double> wigner_D(const WignerIndex& idx, const EulerAngles& angles);

/// The (2l+1)x(2l+1) matrix [D^l_{m1,m2}(k)], rows m1 = -l..l, columns m2 = -l..l.
Eigen::MatrixXcd wigner_D_matrix(int l, const EulerAngles& angles);

Eigen::Matrix3d matrix_from_euler(const EulerAngles& angles);

/// Inverse of matrix_from_euler. At beta in {0, pi} gamma is set to 0.
/// Throws std::invalid_argument unless k^T k = I and det k = 1 within 1e-10.
EulerAngles euler_from_matrix(const Eigen::Matrix3d& k);

/// Elements of so(3) (complexified) acting on Wigner functions.
enum class KElement {
  Y1,
  Y2,
  Y3,
  Y2PlusIY3,       // Y2 + i Y3
  MinusY2PlusIY3,  // -Y2 + i Y3
};

/// pi(X) D = d/dt D(k e^{tX}) at t = 0 (right translation).
/// Y1 -> i m2; Y2 + iY3 raises m2; -Y2 + iY3 lowers m2.
WignerVector<ExactComplex> right_derivative(KElement x, const WignerIndex& idx);

/// L(X) D = d/dt D(e^{tX} k) at t = 0 (left translation).
/// Y1 -> i m1; -Y2 + iY3 raises m1; Y2 + iY3 lowers m1.
WignerVector<ExactComplex> left_derivative(KElement x, const WignerIndex& idx);

/// Evaluates sum_c c * D at the given angles.
std::complex<double> evaluate_at(const WignerVector<std::complex<double>>& v,
                                 const EulerAngles& angles);

}  // namespace sl3k
