#pragma once

// Lie algebra action of sl(3,C) on Wigner functions in the line bundle L_lambda
// and on the basis v_{l,m1,m2} of V_{lambda,delta}.
//
// Exact coefficients come in two flavours: LambdaForm (affine in lambda, used by
// the Z_n and U_j operators, whose coefficients are real) and LambdaPoly (used
// when operators are composed or complex scalars appear).

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sl3k/ktype_vector.hpp"
#include "sl3k/series.hpp"

namespace sl3k {

enum class Generator {
  X1, X2, X3, Xm1, Xm2, Xm3, H1, H2,
  Y1, Y2, Y3, Zm2, Zm1, Z0, Z1, Z2,
};

/// All sixteen generators in declaration order.
const std::array<Generator, 16>& all_generators();
/// The basis {Y1, Y2, Y3, Z-2, Z-1, Z0, Z1, Z2}.
const std::array<Generator, 8>& yz_basis();

std::string generator_name(Generator g);  // "X1", "Xm1", "Z-2", ...
/// Accepts the names produced by generator_name plus "X-1", "Zm2" spellings.
Generator parse_generator(const std::string& name);
bool is_z_generator(Generator g);
/// n for Z_n; throws for other generators.
int z_index(Generator g);
Generator z_generator(int n);

using ExactMatrix = std::array<std::array<ExactComplex, 3>, 3>;

ExactMatrix generator_matrix_exact(Generator g);
Eigen::Matrix3cd generator_matrix(Generator g);
Eigen::Matrix3cd to_numeric(const ExactMatrix& m);
ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b);

/// Coordinates of a traceless matrix in the {Y, Z} basis. Throws if m has a
/// nonzero trace.
std::map<Generator, ExactComplex> yz_coordinates(const ExactMatrix& m);
ExactMatrix from_yz_coordinates(const std::map<Generator, ExactComplex>& coords);

/// Lambda^{(k)}_j(lambda, l, m1) for k in {-2, 0, 2}.
LambdaForm lambda_factor(int k, int j, int l, int m1);
/// c_{-2} = c_2 = 1, c_0 = sqrt(2/3).
const RadicalScalar& c_factor(int k);

/// pi(Z_n) D^l_{m1,m2} as a combination of Wigner functions.
WignerVector<LambdaForm> act_Z(int n, const WignerIndex& idx);
/// U_j D^l_{m1,m2}.
WignerVector<LambdaForm> act_U(int j, const WignerIndex& idx);

/// pi(X) D for any of the sixteen generators.
WignerVector<LambdaPoly> act(Generator g, const WignerIndex& idx);
/// Extends act linearly to a vector.
WignerVector<LambdaPoly> act(Generator g, const WignerVector<LambdaPoly>& v);
/// pi(M) for an arbitrary traceless exact matrix, through yz_coordinates.
WignerVector<LambdaPoly> act(const ExactMatrix& m, const WignerVector<LambdaPoly>& v);

/// X (or H) written in the {Y, Z} basis and applied to D.
WignerVector<LambdaPoly> decompose_standard_basis(Generator g, const WignerIndex& idx);

/// pi(Z_n) D via the five-term expansion in products D^2 * D^l, before the
/// Clebsch-Gordan recurrence is used to collect terms.
WignerVector<LambdaForm> act_Z_five_term(int n, const WignerIndex& idx);

/// Components of k X k^{-1} in n + a + k: X_a = c1 H1 + c2 H2 and
/// X_k = b1 Y1 + b2 Y2 + b3 Y3.
struct AdjointParts {
  std::complex<double> c1, c2, b1, b2, b3;
};
AdjointParts adjoint_parts(const Eigen::Matrix3cd& m);

/// The stated D^2 expansions of c1, c2, b1, b2, b3 for X = Z_n.
std::array<WignerVector<ExactComplex>, 5> adjoint_part_expansions(int n);

// ---- the v basis --------------------------------------------------------------

// The templates below are instantiated for RadicalScalar, LambdaForm,
// LambdaPoly and std::complex<double>.

/// Rewrites a vector of V_{lambda,delta} given in Wigner functions in the v
/// basis. Throws std::logic_error when D_{l,m,m2} and D_{l,-m,m2} do not pair
/// with the sign required by delta.
template <class Coeff>
BasisVector<Coeff> fold(const Delta& delta, const WignerVector<Coeff>& v);

/// v_{l,m1,m2} expanded into Wigner functions.
template <class Coeff>
WignerVector<Coeff> unfold(const Delta& delta, const BasisVector<Coeff>& v);

/// pi(Z_n) v_{l,m1,m2}, computed from the Wigner expansion and folded.
BasisVector<LambdaForm> act_Z_on_basis(int n, const BasisLabel& label, const Delta& delta);
/// pi(Z_n) v_{l,m1,m2} read off directly from the closed form in the v basis.
BasisVector<LambdaForm> act_Z_on_basis_direct(int n, const BasisLabel& label, const Delta& delta);
/// pi(X) v_{l,m1,m2} for any generator.
BasisVector<LambdaPoly> act_on_basis(Generator g, const BasisLabel& label, const Delta& delta);

// ---- projections and the W compositions ---------------------------------------

enum class ProjectionMode { Filter, Polynomial };

/// P^l_j: keeps the l+j component. Throws std::invalid_argument if v has
/// support outside [l-2, l+2] or l+j < 0.
template <class Coeff>
WignerVector<Coeff> project_P(int l, int j, const WignerVector<Coeff>& v,
                              ProjectionMode mode = ProjectionMode::Filter);

/// True when every square root in W^l_{n,m2} has a positive argument.
bool w_defined(int n, int l, int m2);

/// W^l_{n,m2} applied to v. Throws std::domain_error when !w_defined.
WignerVector<LambdaPoly> act_W(int n, int l, int m2, const WignerVector<LambdaPoly>& v);

/// Exact check of P^l_j W^{l+j}_{n,m2} = q(n,j,l,m2) U_j on every D^l_{m1,m2}.
/// Returns std::nullopt when W^{l+j}_{n,m2} is undefined.
std::optional<bool> verify_pwqu(int n, int j, int l, int m2);

/// True when some n in [-2, 2] has q(n,j,l,m2) != 0.
bool u_expressible(int j, int l, int m2);

// ---- bracket fidelity ----------------------------------------------------------

struct BracketCheck {
  Generator a = Generator::Y1;
  Generator b = Generator::Y1;
  bool ok = false;
  int indices = 0;  // Wigner functions tested
};

/// Checks [pi(A), pi(B)] D = pi([A, B]) D exactly, with [A, B] taken as 3x3
/// matrices and expanded in the {Y, Z} basis, for every D^l_{m1,m2} with
/// 2 <= l <= lmax - 2.
BracketCheck verify_bracket(Generator a, Generator b, int lmax);
/// All 28 unordered pairs from the {Y, Z} basis.
std::vector<BracketCheck> verify_brackets(int lmax);

// ---- matrices -----------------------------------------------------------------

struct ActionBlock {
  int l = 0;  // source K-type
  int j = 0;  // target is l + j
  bool truncated = false;  // target l + j exceeds lmax
  std::vector<BasisLabel> rows;
  std::vector<BasisLabel> cols;
  Eigen::MatrixXcd entries;
};

struct ActionMatrix {
  LambdaValue lambda{};
  Delta delta{0, 0, 0};
  Generator generator = Generator::Z0;
  int lmax = 0;
  std::vector<BasisLabel> labels;  // all labels with l <= lmax
  std::vector<ActionBlock> blocks;  // sorted by (l, j)

  /// Entry for (row, col); zero when absent.
  std::complex<double> entry(const BasisLabel& row, const BasisLabel& col) const;
  bool has_truncated_blocks() const;

  nlohmann::json to_json() const;
  static ActionMatrix from_json(const nlohmann::json& j);
  /// Dense matrix over `labels` (truncated blocks omitted), one row per line.
  std::string to_csv() const;
};

ActionMatrix assemble_matrix(const LambdaValue& lambda, const Delta& delta, Generator g,
                             int lmax);

}  // namespace sl3k
