#pragma once

// Principal series V_{lambda,delta} of SL(3,R): K-type basis, multiplicities,
// and the extension of Wigner functions to G through g = n a k.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "sl3k/ktype_vector.hpp"
#include "sl3k/wigner.hpp"

namespace sl3k {

using Delta = std::array<int, 3>;

struct SeriesParams {
  ExactLambda lambda;
  Delta delta{0, 0, 0};

  /// Validates the zero-sum condition and that delta is in {0,1}^3.
  SeriesParams(ExactLambda lambda, Delta delta);
  LambdaValue numeric_lambda() const { return to_numeric(lambda); }
};

void require_valid_delta(const Delta& delta);

struct IwasawaFactors {
  Eigen::Matrix3d n;  // unit upper triangular
  Eigen::Matrix3d a;  // positive diagonal, det 1
  Eigen::Matrix3d k;  // special orthogonal
};

/// g = n a k, computed by orthonormalizing the rows of g from the bottom up.
/// Throws std::invalid_argument if det g differs from 1 by more than 1e-10 or
/// an intermediate row norm drops below 1e-10.
IwasawaFactors iwasawa(const Eigen::Matrix3d& g);

/// A group element with its Iwasawa factors computed once at construction.
class GroupElement {
 public:
  explicit GroupElement(const Eigen::Matrix3d& g);

  const Eigen::Matrix3d& matrix() const { return g_; }
  const IwasawaFactors& factors() const { return f_; }
  /// Diagonal (a, b, c) of the A factor.
  Eigen::Vector3d diagonal() const { return f_.a.diagonal(); }
  const EulerAngles& angles() const { return angles_; }

 private:
  Eigen::Matrix3d g_;
  IwasawaFactors f_;
  EulerAngles angles_;
};

/// a^{1+l1} b^{l2} c^{-1+l3}, principal branch on positive reals.
std::complex<double> line_bundle_factor(const LambdaValue& lambda, const Eigen::Vector3d& abc);

/// a^{1+l1} b^{l2} c^{-1+l3} D^l_{m1,m2}(k) for g = n diag(a,b,c) k.
std::complex<double> extend_wigner(const LambdaValue& lambda, const WignerIndex& idx,
                                   const GroupElement& g);

/// Same for a linear combination of Wigner functions.
std::complex<double> extend_wigner(const LambdaValue& lambda,
                                   const WignerVector<std::complex<double>>& v,
                                   const GroupElement& g);

/// (-1)^{d1+d3+l}, the sign in v_{l,m1,m2} = D_{m1,m2} + sign D_{-m1,m2}.
int basis_sign(const Delta& delta, int l);

/// True if (l, m1, m2) with m1 >= 0 labels a nonzero v in V_{lambda,delta}.
bool label_valid(const Delta& delta, const BasisLabel& label);

/// All valid labels for the given l, sorted by (m1, m2).
std::vector<BasisLabel> basis(const Delta& delta, int l);

/// The closed-form multiplicity of V_l in V_{lambda,delta}.
int multiplicity(const Delta& delta, int l);

/// v_{l,m1,m2} as a combination of Wigner functions.
WignerVector<RadicalScalar> basis_vector(const Delta& delta, const BasisLabel& label);

using KFunction = std::function<std::complex<double>(const EulerAngles&)>;

/// Samples both parity identities at `samples` random points (seeded) and
/// returns true if every residual is below 1e-9.
bool parity_check(const KFunction& f, const Delta& delta, std::uint64_t seed = 1,
                  int samples = 100);

}  // namespace sl3k
