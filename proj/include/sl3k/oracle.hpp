#pragma once

// Independent numerical checks: Haar quadrature on SO(3), finite-difference
// Lie derivatives of functions on SL(3,R) and SL(2,R), and the coordinate
// differential operators on the upper-triangular subgroup.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "sl3k/series.hpp"
#include "sl3k/wigner.hpp"

namespace sl3k {

// ---- quadrature -----------------------------------------------------------------

/// Product rule for dk = (1/8 pi^2) d(alpha) d(cos beta) d(gamma): Gauss-Legendre
/// in cos(beta), equally spaced alpha and gamma. Total mass is 1.
struct QuadratureRule {
  std::vector<double> cos_beta;
  std::vector<double> beta_weights;  // sum to 1
  int alpha_nodes = 1;
  int gamma_nodes = 1;
  int degree = 0;

  /// Exact for products of Wigner functions whose l values sum to at most degree.
  static QuadratureRule for_degree(int degree);

  struct Node {
    EulerAngles angles;
    double weight;
  };
  std::vector<Node> nodes() const;
};

/// Gauss-Legendre nodes and weights on [-1, 1] (weights sum to 2).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

std::complex<double> integrate_K(const KFunction& f, const QuadratureRule& rule);

// ---- group functions and derivatives --------------------------------------------

using GFunction = std::function<std::complex<double>(const Eigen::Matrix3d&)>;

/// d/dt f(g exp(tX)) at t = 0 by central differences, with complex X split into
/// real and imaginary parts. Throws std::invalid_argument for h outside
/// [1e-6, 1e-3]; Iwasawa failures propagate from f.
std::complex<double> fd_lie_derivative(const GFunction& f, const Eigen::Matrix3cd& x,
                                       const Eigen::Matrix3d& g, double h = 1e-5);

/// The same derivative of the Iwasawa extension of D^l_{m1,m2}.
std::complex<double> fd_lie_derivative(const LambdaValue& lambda, const WignerIndex& idx,
                                       const Eigen::Matrix3cd& x, const Eigen::Matrix3d& g,
                                       double h = 1e-5);

/// g -> extend_wigner(lambda, idx, g).
GFunction extended_wigner_function(const LambdaValue& lambda, const WignerIndex& idx);

/// n(x) a(y) k with x entries in [-1, 1], diagonal of a in [0.5, 2], det 1.
Eigen::Matrix3d random_group_point(std::mt19937_64& rng);

// ---- theorem check --------------------------------------------------------------

struct TheoremMainReport {
  LambdaValue lambda{};
  int lmax = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double h = 0.0;
  int comparisons = 0;
  double max_deviation = 0.0;
  WignerIndex worst_index;
  int worst_n = 0;

  nlohmann::json to_json() const;
};

/// Compares the finite-difference derivative along Z_n with the evaluated
/// expansion pi(Z_n) D for every n, every D with l <= lmax and `samples`
/// random group points.
TheoremMainReport verify_theorem_main(const LambdaValue& lambda, int lmax, int samples,
                                      std::uint64_t seed = 1, double h = 1e-5);

// ---- coordinates ----------------------------------------------------------------

struct CoordinatePoint {
  double x1 = 0, x2 = 0, x3 = 0;
  double y1 = 1, y2 = 1;
};

/// [[1,x1,x3],[0,1,x2],[0,0,1]] diag(y1^{2/3} y2^{1/3}, y1^{-1/3} y2^{1/3}, y1^{-1/3} y2^{-2/3}).
Eigen::Matrix3d coordinate_matrix(const CoordinatePoint& p);
CoordinatePoint random_coordinate_point(std::mt19937_64& rng);

struct DiffopRow {
  std::string generator;
  std::complex<double> lie_derivative;
  std::complex<double> coordinate_operator;
  double deviation = 0.0;
};

struct DiffopsReport {
  std::vector<DiffopRow> rows;
  double max_deviation = 0.0;
  nlohmann::json to_json() const;
};

/// For f(g) = extend_wigner(lambda, idx, left g), compares each coordinate
/// operator of the table (Y1, H1, H2, X1, X2, X3, Z-2, Z0, Z2) applied to
/// f(g(x, y)) with the finite-difference Lie derivative at g(x, y).
/// Left translation commutes with the right action and keeps the isotypy law,
/// and makes f depend on x.
DiffopsReport coordinate_diffops_check(const LambdaValue& lambda, const WignerIndex& idx,
                                       const CoordinatePoint& point,
                                       const Eigen::Matrix3d& left = Eigen::Matrix3d::Identity(),
                                       double h = 1e-5);

// ---- SL(2) ----------------------------------------------------------------------

struct SL2Point {
  double x = 0, y = 1, theta = 0;
};

/// [[1,x],[0,1]] diag(y^{1/2}, y^{-1/2}) k_theta.
Eigen::Matrix2d sl2_matrix(const SL2Point& p);

/// The vector v_l of V_{nu,eps} evaluated at g: y^{nu+1/2} e^{i l theta} in the
/// coordinates of g.
std::complex<double> sl2_vector_value(std::complex<double> nu, int l, const Eigen::Matrix2d& g);

using SL2Function = std::function<std::complex<double>(const Eigen::Matrix2d&)>;

std::complex<double> sl2_fd_lie_derivative(const SL2Function& f, const Eigen::Matrix2cd& x,
                                           const Eigen::Matrix2d& g, double h = 1e-5);

struct SL2OracleReport {
  int comparisons = 0;
  double max_deviation = 0.0;
  nlohmann::json to_json() const;
};

/// Raising, lowering and weight operators on v_l, |l| <= lmax, against the
/// coefficients 2nu+1+l, 2nu+1-l and i l, at random points.
SL2OracleReport sl2_ladder_oracle(std::complex<double> nu, int lmax, int samples,
                                  std::uint64_t seed = 1, double h = 1e-5);

/// The raising and lowering operators against -+2iy d/dx + 2y d/dy +- l applied
/// to a left translate of v_l, by coordinate finite differences. The sign of
/// the x derivative follows from pi(E) = y d/dx, pi(H) = 2y d/dy and the weight
/// i l of [[0,-1],[1,0]].
SL2OracleReport sl2_maass_check(std::complex<double> nu, int lmax, int samples,
                                std::uint64_t seed = 1, double h = 1e-5);

// ---- suites ---------------------------------------------------------------------

struct SuiteResult {
  std::string suite;
  bool passed = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  nlohmann::json details;

  nlohmann::json to_json() const;
};

/// "orthogonality", "cg", "theorem-main", "diffops", "sl2".
const std::vector<std::string>& suite_names();

/// Runs one suite. Throws std::invalid_argument for unknown names.
SuiteResult run_suite(const std::string& name, int lmax, std::uint64_t seed);

}  // namespace sl3k
