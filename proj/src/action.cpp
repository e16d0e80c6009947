#include "sl3k/action.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "sl3k/clebsch.hpp"

namespace sl3k {

namespace {

const ExactComplex kI = ExactComplex::i();

ExactComplex rational(long num, long den = 1) {
  return ExactComplex(RadicalScalar(Rational(num, den)));
}

const RadicalScalar& sqrt_two_thirds() {
  static const RadicalScalar v = RadicalScalar::sqrt(Rational(2, 3));
  return v;
}

ExactMatrix zero_matrix() {
  ExactMatrix m;
  for (auto& row : m) row.fill(ExactComplex{});
  return m;
}

ExactMatrix scaled(const ExactMatrix& m, const ExactComplex& s) {
  ExactMatrix out = m;
  for (auto& row : out)
    for (auto& e : row) e = e * s;
  return out;
}

ExactMatrix sum(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out = a;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out[r][c] += b[r][c];
  return out;
}

LambdaPoly to_poly(const RadicalScalar& c) { return LambdaPoly(ExactComplex(c)); }

template <class Coeff>
Coeff scale_rational(const Coeff& c, const Rational& r);
template <>
RadicalScalar scale_rational(const RadicalScalar& c, const Rational& r) { return c * r; }
template <>
LambdaForm scale_rational(const LambdaForm& c, const Rational& r) { return c * RadicalScalar(r); }
template <>
LambdaPoly scale_rational(const LambdaPoly& c, const Rational& r) {
  return c * LambdaPoly(ExactComplex(RadicalScalar(r)));
}
template <>
std::complex<double> scale_rational(const std::complex<double>& c, const Rational& r) {
  return c * r.get_d();
}

template <class Coeff>
bool same(const Coeff& a, const Coeff& b) { return a == b; }
template <>
bool same(const std::complex<double>& a, const std::complex<double>& b) {
  return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a) + std::abs(b));
}

WignerVector<LambdaPoly> to_poly(const WignerVector<LambdaForm>& v) {
  return v.map_coefficients([](const LambdaForm& c) { return LambdaPoly(c); });
}

WignerVector<LambdaPoly> to_poly(const WignerVector<ExactComplex>& v) {
  return v.map_coefficients([](const ExactComplex& c) { return LambdaPoly(c); });
}

WignerVector<LambdaPoly> scaled(const WignerVector<LambdaPoly>& v, const LambdaPoly& s) {
  WignerVector<LambdaPoly> out;
  for (const auto& [k, c] : v) out.add(k, c * s);
  return out;
}

bool valid_index(const WignerIndex& idx) {
  return idx.l >= 0 && std::abs(idx.m1) <= idx.l && std::abs(idx.m2) <= idx.l;
}

void require_index(const WignerIndex& idx) {
  if (!valid_index(idx)) throw std::invalid_argument("invalid Wigner index");
}

// pi(X) for X in {Y2 + iY3, -Y2 + iY3} on a vector, scaled by 1/sqrt(arg).
WignerVector<LambdaPoly> normalized_k_step(KElement x, long arg,
                                           const WignerVector<LambdaPoly>& v) {
  if (arg <= 0) throw std::domain_error("W normalization has a non-positive argument");
  const LambdaPoly norm = to_poly(RadicalScalar::sqrt(Rational(arg)).inverse());
  WignerVector<LambdaPoly> out;
  for (const auto& [idx, c] : v) {
    const LambdaPoly cn = c * norm;
    for (const auto& [t, d] : right_derivative(x, idx)) out.add(t, cn * LambdaPoly(d));
  }
  return out;
}

long casimir(int l) { return static_cast<long>(l) * (l + 1); }

struct IndexHash {
  std::size_t operator()(const std::pair<int, WignerIndex>& key) const {
    const auto& [g, i] = key;
    return ((static_cast<std::size_t>(g) * 1315423911u) ^ (static_cast<std::size_t>(i.l) << 20) ^
            (static_cast<std::size_t>(i.m1 + 512) << 10) ^ static_cast<std::size_t>(i.m2 + 512));
  }
};

}  // namespace

// ---- generators -----------------------------------------------------------------

const std::array<Generator, 16>& all_generators() {
  static const std::array<Generator, 16> gens{
      Generator::X1, Generator::X2,  Generator::X3,  Generator::Xm1, Generator::Xm2, Generator::Xm3,
      Generator::H1, Generator::H2,  Generator::Y1,  Generator::Y2,  Generator::Y3,  Generator::Zm2,
      Generator::Zm1, Generator::Z0, Generator::Z1,  Generator::Z2};
  return gens;
}

const std::array<Generator, 8>& yz_basis() {
  static const std::array<Generator, 8> gens{Generator::Y1,  Generator::Y2, Generator::Y3,
                                             Generator::Zm2, Generator::Zm1, Generator::Z0,
                                             Generator::Z1,  Generator::Z2};
  return gens;
}

std::string generator_name(Generator g) {
  switch (g) {
    case Generator::X1: return "X1";
    case Generator::X2: return "X2";
    case Generator::X3: return "X3";
    case Generator::Xm1: return "X-1";
    case Generator::Xm2: return "X-2";
    case Generator::Xm3: return "X-3";
    case Generator::H1: return "H1";
    case Generator::H2: return "H2";
    case Generator::Y1: return "Y1";
    case Generator::Y2: return "Y2";
    case Generator::Y3: return "Y3";
    case Generator::Zm2: return "Z-2";
    case Generator::Zm1: return "Z-1";
    case Generator::Z0: return "Z0";
    case Generator::Z1: return "Z1";
    case Generator::Z2: return "Z2";
  }
  throw std::invalid_argument("unknown generator");
}

Generator parse_generator(const std::string& name) {
  std::string n = name;
  if (n.size() == 3 && n[1] == 'm') n[1] = '-';
  for (Generator g : all_generators()) {
    if (generator_name(g) == n) return g;
  }
  throw std::invalid_argument("unknown generator '" + name + "'");
}

bool is_z_generator(Generator g) {
  return g == Generator::Zm2 || g == Generator::Zm1 || g == Generator::Z0 ||
         g == Generator::Z1 || g == Generator::Z2;
}

int z_index(Generator g) {
  switch (g) {
    case Generator::Zm2: return -2;
    case Generator::Zm1: return -1;
    case Generator::Z0: return 0;
    case Generator::Z1: return 1;
    case Generator::Z2: return 2;
    default: throw std::invalid_argument("not a Z generator: " + generator_name(g));
  }
}

Generator z_generator(int n) {
  switch (n) {
    case -2: return Generator::Zm2;
    case -1: return Generator::Zm1;
    case 0: return Generator::Z0;
    case 1: return Generator::Z1;
    case 2: return Generator::Z2;
    default: throw std::invalid_argument("Z index must be in [-2, 2]");
  }
}

ExactMatrix generator_matrix_exact(Generator g) {
  ExactMatrix m = zero_matrix();
  const ExactComplex one(1L);
  const ExactComplex i = kI;
  switch (g) {
    case Generator::X1: m[0][1] = one; break;
    case Generator::X2: m[1][2] = one; break;
    case Generator::X3: m[0][2] = one; break;
    case Generator::Xm1: m[1][0] = one; break;
    case Generator::Xm2: m[2][1] = one; break;
    case Generator::Xm3: m[2][0] = one; break;
    case Generator::H1: m[0][0] = one; m[1][1] = -one; break;
    case Generator::H2: m[1][1] = one; m[2][2] = -one; break;
    case Generator::Y1: m[0][1] = -one; m[1][0] = one; break;
    case Generator::Y2: m[1][2] = -one; m[2][1] = one; break;
    case Generator::Y3: m[0][2] = -one; m[2][0] = one; break;
    case Generator::Zm2: m[0][0] = one; m[0][1] = i; m[1][0] = i; m[1][1] = -one; break;
    case Generator::Zm1: m[0][2] = i; m[1][2] = -one; m[2][0] = i; m[2][1] = -one; break;
    case Generator::Z0: {
      const ExactComplex c(sqrt_two_thirds());
      m[0][0] = c;
      m[1][1] = c;
      m[2][2] = c * ExactComplex(-2L);
      break;
    }
    case Generator::Z1: m[0][2] = i; m[1][2] = one; m[2][0] = i; m[2][1] = one; break;
    case Generator::Z2: m[0][0] = one; m[0][1] = -i; m[1][0] = -i; m[1][1] = -one; break;
  }
  return m;
}

Eigen::Matrix3cd to_numeric(const ExactMatrix& m) {
  Eigen::Matrix3cd out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out(r, c) = m[r][c].to_complex();
  return out;
}

Eigen::Matrix3cd generator_matrix(Generator g) { return to_numeric(generator_matrix_exact(g)); }

ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out = zero_matrix();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      for (int k = 0; k < 3; ++k) {
        out[r][c] += a[r][k] * b[k][c];
        out[r][c] -= b[r][k] * a[k][c];
      }
    }
  }
  return out;
}

std::map<Generator, ExactComplex> yz_coordinates(const ExactMatrix& m) {
  if (!(m[0][0] + m[1][1] + m[2][2]).is_zero()) {
    throw std::invalid_argument("yz_coordinates: matrix is not traceless");
  }
  // Standard coordinates: X_i above the diagonal, X_{-i} below, H1 and H2 on it.
  const ExactComplex x1 = m[0][1], xm1 = m[1][0];
  const ExactComplex x2 = m[1][2], xm2 = m[2][1];
  const ExactComplex x3 = m[0][2], xm3 = m[2][0];
  const ExactComplex h1 = m[0][0], h2 = -m[2][2];
  // X_i = (S_i - Y_i)/2 and X_{-i} = (S_i + Y_i)/2 with S_i = X_i + X_{-i};
  // S1 = (Z_{-2} - Z_2)/(2i), S2 = (Z_1 - Z_{-1})/2, S3 = (Z_1 + Z_{-1})/(2i),
  // H1 = (Z_{-2} + Z_2)/2, H2 = (sqrt6/4) Z_0 - (Z_{-2} + Z_2)/4.
  const ExactComplex half = rational(1, 2);
  const ExactComplex quarter = rational(1, 4);
  const ExactComplex minus_i_half = kI * rational(-1, 2);
  const ExactComplex s1 = (x1 + xm1) * half;
  const ExactComplex s2 = (x2 + xm2) * half;
  const ExactComplex s3 = (x3 + xm3) * half;
  std::map<Generator, ExactComplex> out;
  auto put = [&](Generator g, const ExactComplex& c) {
    if (!c.is_zero()) out[g] = c;
  };
  put(Generator::Y1, (xm1 - x1) * half);
  put(Generator::Y2, (xm2 - x2) * half);
  put(Generator::Y3, (xm3 - x3) * half);
  put(Generator::Zm2, s1 * minus_i_half + h1 * half - h2 * quarter);
  put(Generator::Z2, -(s1 * minus_i_half) + h1 * half - h2 * quarter);
  put(Generator::Zm1, -(s2 * half) + s3 * minus_i_half);
  put(Generator::Z1, s2 * half + s3 * minus_i_half);
  put(Generator::Z0, h2 * ExactComplex(RadicalScalar::sqrt(Rational(6, 16))));
  return out;
}

ExactMatrix from_yz_coordinates(const std::map<Generator, ExactComplex>& coords) {
  ExactMatrix out = zero_matrix();
  for (const auto& [g, c] : coords) out = sum(out, scaled(generator_matrix_exact(g), c));
  return out;
}

// ---- Z_n and U_j ----------------------------------------------------------------

LambdaForm lambda_factor(int k, int j, int l, int m1) {
  LambdaForm f;
  switch (k) {
    case -2:
      f.constant = RadicalScalar(static_cast<long>(1 - m1));
      f.l1 = RadicalScalar(1L);
      f.l2 = RadicalScalar(-1L);
      break;
    case 0:
      f.constant = RadicalScalar(static_cast<long>(j * l + (j + j * j) / 2));
      f.l1 = RadicalScalar(1L);
      f.l2 = RadicalScalar(1L);
      f.l3 = RadicalScalar(-2L);
      break;
    case 2:
      f.constant = RadicalScalar(static_cast<long>(1 + m1));
      f.l1 = RadicalScalar(1L);
      f.l2 = RadicalScalar(-1L);
      break;
    default:
      throw std::invalid_argument("lambda_factor: k must be -2, 0 or 2");
  }
  return f;
}

const RadicalScalar& c_factor(int k) {
  static const RadicalScalar one(1L);
  if (k == -2 || k == 2) return one;
  if (k == 0) return sqrt_two_thirds();
  throw std::invalid_argument("c_factor: k must be -2, 0 or 2");
}

WignerVector<LambdaForm> act_Z(int n, const WignerIndex& idx) {
  require_index(idx);
  if (n < -2 || n > 2) throw std::invalid_argument("act_Z: n must be in [-2, 2]");
  const auto [l, m1, m2] = idx;
  WignerVector<LambdaForm> out;
  for (int j = -2; j <= 2; ++j) {
    const RadicalScalar& qn = q(n, j, l, m2);
    if (qn.is_zero()) continue;
    for (int k = -2; k <= 2; k += 2) {
      const RadicalScalar& qk = q(k, j, l, m1);
      if (qk.is_zero()) continue;
      out.add({l + j, m1 + k, m2 + n}, lambda_factor(k, j, l, m1) * (c_factor(k) * qk * qn));
    }
  }
  return out;
}

WignerVector<LambdaForm> act_U(int j, const WignerIndex& idx) {
  require_index(idx);
  if (j < -2 || j > 2) throw std::invalid_argument("act_U: j must be in [-2, 2]");
  const auto [l, m1, m2] = idx;
  WignerVector<LambdaForm> out;
  for (int k = -2; k <= 2; k += 2) {
    const RadicalScalar& qk = q(k, j, l, m1);
    if (qk.is_zero()) continue;
    out.add({l + j, m1 + k, m2}, lambda_factor(k, j, l, m1) * (c_factor(k) * qk));
  }
  return out;
}

WignerVector<LambdaForm> act_Z_five_term(int n, const WignerIndex& idx) {
  require_index(idx);
  const auto [l, m1, m2] = idx;
  WignerVector<LambdaForm> out;
  auto add_product = [&](int a, const WignerIndex& target, const LambdaForm& factor) {
    if (!valid_index(target)) return;
    for (const auto& [t, c] : cg_product({2, a, n}, target)) out.add(t, factor * c);
  };
  LambdaForm middle;
  middle.constant = RadicalScalar(3L);
  middle.l1 = RadicalScalar(1L);
  middle.l2 = RadicalScalar(1L);
  middle.l3 = RadicalScalar(-2L);
  add_product(-2, idx, lambda_factor(-2, 0, l, m1) * c_factor(-2));
  add_product(0, idx, middle * c_factor(0));
  add_product(2, idx, lambda_factor(2, 0, l, m1) * c_factor(2));
  LambdaForm up;
  up.constant = ladder_coefficient(l, m1, 1);
  LambdaForm down;
  down.constant = ladder_coefficient(l, m1, -1);
  add_product(-1, {l, m1 + 1, m2}, up);
  add_product(1, {l, m1 - 1, m2}, down);
  return out;
}

AdjointParts adjoint_parts(const Eigen::Matrix3cd& m) {
  // X_{-i} = Y_i + X_i, so the k-part carries the coefficients below the diagonal.
  return {m(0, 0), -m(2, 2), m(1, 0), m(2, 1), m(2, 0)};
}

std::array<WignerVector<ExactComplex>, 5> adjoint_part_expansions(int n) {
  const ExactComplex one(1L);
  const ExactComplex c0(sqrt_two_thirds());
  std::array<WignerVector<ExactComplex>, 5> out;
  out[0].add({2, -2, n}, one);
  out[0].add({2, 0, n}, c0);
  out[0].add({2, 2, n}, one);
  out[1].add({2, 0, n}, c0 * ExactComplex(2L));
  out[2].add({2, -2, n}, kI);
  out[2].add({2, 2, n}, -kI);
  out[3].add({2, -1, n}, -one);
  out[3].add({2, 1, n}, one);
  out[4].add({2, -1, n}, kI);
  out[4].add({2, 1, n}, kI);
  return out;
}

// ---- general generators -----------------------------------------------------------

WignerVector<LambdaPoly> decompose_standard_basis(Generator g, const WignerIndex& idx) {
  WignerVector<LambdaPoly> out;
  for (const auto& [basis_g, c] : yz_coordinates(generator_matrix_exact(g))) {
    out += scaled(act(basis_g, idx), LambdaPoly(c));
  }
  return out;
}

WignerVector<LambdaPoly> act(Generator g, const WignerIndex& idx) {
  require_index(idx);
  static std::shared_mutex mutex;
  static std::unordered_map<std::pair<int, WignerIndex>, WignerVector<LambdaPoly>, IndexHash> memo;
  const std::pair<int, WignerIndex> key{static_cast<int>(g), idx};
  {
    std::shared_lock lock(mutex);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  WignerVector<LambdaPoly> out;
  switch (g) {
    case Generator::Y1: out = to_poly(right_derivative(KElement::Y1, idx)); break;
    case Generator::Y2: out = to_poly(right_derivative(KElement::Y2, idx)); break;
    case Generator::Y3: out = to_poly(right_derivative(KElement::Y3, idx)); break;
    case Generator::Zm2:
    case Generator::Zm1:
    case Generator::Z0:
    case Generator::Z1:
    case Generator::Z2: out = to_poly(act_Z(z_index(g), idx)); break;
    default: out = decompose_standard_basis(g, idx); break;
  }
  std::unique_lock lock(mutex);
  memo.emplace(key, out);
  return out;
}

WignerVector<LambdaPoly> act(Generator g, const WignerVector<LambdaPoly>& v) {
  WignerVector<LambdaPoly> out;
  for (const auto& [idx, c] : v) out += scaled(act(g, idx), c);
  return out;
}

WignerVector<LambdaPoly> act(const ExactMatrix& m, const WignerVector<LambdaPoly>& v) {
  WignerVector<LambdaPoly> out;
  for (const auto& [g, c] : yz_coordinates(m)) out += scaled(act(g, v), LambdaPoly(c));
  return out;
}

// ---- the v basis ------------------------------------------------------------------

template <class Coeff>
BasisVector<Coeff> fold(const Delta& delta, const WignerVector<Coeff>& v) {
  BasisVector<Coeff> out;
  for (const auto& [idx, c] : v) {
    const int eps = basis_sign(delta, idx.l);
    if ((idx.m1 - delta[0] - delta[1]) % 2 != 0) {
      throw std::logic_error("fold: term violates the m1 parity of delta");
    }
    if (idx.m1 == 0) {
      if (eps != 1) throw std::logic_error("fold: m1 = 0 term where v vanishes");
      out.add({idx.l, 0, idx.m2}, scale_rational(c, Rational(1, 2)));
      continue;
    }
    const Coeff partner = v.coefficient({idx.l, -idx.m1, idx.m2});
    if (!same(partner, eps == 1 ? c : -c)) {
      throw std::logic_error("fold: unpaired Wigner terms");
    }
    if (idx.m1 > 0) out.add({idx.l, idx.m1, idx.m2}, c);
  }
  return out;
}

template <class Coeff>
WignerVector<Coeff> unfold(const Delta& delta, const BasisVector<Coeff>& v) {
  WignerVector<Coeff> out;
  for (const auto& [label, c] : v) {
    if (!label_valid(delta, label)) throw std::invalid_argument("unfold: invalid label");
    out.add({label.l, label.m1, label.m2}, c);
    const int eps = basis_sign(delta, label.l);
    out.add({label.l, -label.m1, label.m2}, eps == 1 ? c : -c);
  }
  return out;
}

BasisVector<LambdaForm> act_Z_on_basis(int n, const BasisLabel& label, const Delta& delta) {
  if (!label_valid(delta, label)) throw std::invalid_argument("act_Z_on_basis: invalid label");
  WignerVector<LambdaForm> image;
  for (const auto& [idx, c] : basis_vector(delta, label)) {
    for (const auto& [t, d] : act_Z(n, idx)) image.add(t, d * c);
  }
  return fold(delta, image);
}

BasisVector<LambdaForm> act_Z_on_basis_direct(int n, const BasisLabel& label,
                                              const Delta& delta) {
  if (!label_valid(delta, label)) throw std::invalid_argument("act_Z_on_basis: invalid label");
  const auto [l, m1, m2] = label;
  BasisVector<LambdaForm> out;
  for (int j = -2; j <= 2; ++j) {
    const RadicalScalar& qn = q(n, j, l, m2);
    if (qn.is_zero()) continue;
    for (int k = -2; k <= 2; k += 2) {
      const RadicalScalar& qk = q(k, j, l, m1);
      if (qk.is_zero()) continue;
      LambdaForm c = lambda_factor(k, j, l, m1) * (c_factor(k) * qk * qn);
      int target = m1 + k;
      if (target < 0) {
        target = -target;
        if (basis_sign(delta, l + j) == -1) c = -c;
      }
      if (target == 0 && basis_sign(delta, l + j) == -1) continue;  // v vanishes
      out.add({l + j, target, m2 + n}, c);
    }
  }
  return out;
}

BasisVector<LambdaPoly> act_on_basis(Generator g, const BasisLabel& label, const Delta& delta) {
  if (!label_valid(delta, label)) throw std::invalid_argument("act_on_basis: invalid label");
  WignerVector<LambdaPoly> image;
  for (const auto& [idx, c] : basis_vector(delta, label)) {
    image += scaled(act(g, idx), to_poly(c));
  }
  return fold(delta, image);
}

// ---- projections and W ----------------------------------------------------------

template <class Coeff>
WignerVector<Coeff> project_P(int l, int j, const WignerVector<Coeff>& v, ProjectionMode mode) {
  if (l + j < 0) throw std::invalid_argument("project_P: l + j must be non-negative");
  WignerVector<Coeff> out;
  for (const auto& [idx, c] : v) {
    if (idx.l < l - 2 || idx.l > l + 2) {
      throw std::invalid_argument("project_P: support outside [l-2, l+2]");
    }
    if (mode == ProjectionMode::Filter) {
      if (idx.l == l + j) out.add(idx, c);
      continue;
    }
    Rational factor = 1;
    for (int k = -2; k <= 2; ++k) {
      if (k == j || l + k < 0) continue;
      Rational step(casimir(idx.l) - casimir(l + k), casimir(l + j) - casimir(l + k));
      step.canonicalize();
      factor *= step;
    }
    if (factor != 0) out.add(idx, scale_rational(c, factor));
  }
  return out;
}

bool w_defined(int n, int l, int m2) {
  if (l < 0) return false;
  switch (n) {
    case 0: return true;
    case 1: return casimir(l) - static_cast<long>(m2) * (m2 + 1) > 0;
    case -1: return casimir(l) - static_cast<long>(m2) * (m2 - 1) > 0;
    case 2:
      return casimir(l) - static_cast<long>(m2) * (m2 + 1) > 0 &&
             casimir(l) - static_cast<long>(m2 + 1) * (m2 + 2) > 0;
    case -2:
      return casimir(l) - static_cast<long>(m2) * (m2 - 1) > 0 &&
             casimir(l) - static_cast<long>(m2 - 1) * (m2 - 2) > 0;
    default: throw std::invalid_argument("W index must be in [-2, 2]");
  }
}

WignerVector<LambdaPoly> act_W(int n, int l, int m2, const WignerVector<LambdaPoly>& v) {
  if (!w_defined(n, l, m2)) throw std::domain_error("W is undefined for these indices");
  WignerVector<LambdaPoly> w = act(z_generator(n), v);
  if (n == 0) return w;
  // Steps back towards m2: -Y2 + iY3 lowers after Z_1, Z_2; Y2 + iY3 raises after Z_{-1}, Z_{-2}.
  const KElement step = n > 0 ? KElement::MinusY2PlusIY3 : KElement::Y2PlusIY3;
  const int s = n > 0 ? 1 : -1;
  if (n == 2 || n == -2) {
    w = normalized_k_step(step, casimir(l) - static_cast<long>(m2 + s) * (m2 + 2 * s), w);
  }
  return normalized_k_step(step, casimir(l) - static_cast<long>(m2) * (m2 + s), w);
}

std::optional<bool> verify_pwqu(int n, int j, int l, int m2) {
  if (l < 0 || std::abs(m2) > l || l + j < 0 || !w_defined(n, l + j, m2)) return std::nullopt;
  const LambdaPoly qn = to_poly(q(n, j, l, m2));
  for (int m1 = -l; m1 <= l; ++m1) {
    const WignerVector<LambdaPoly> d({l, m1, m2}, LambdaPoly(ExactComplex(1L)));
    const auto lhs = project_P(l, j, act_W(n, l + j, m2, d));
    const auto rhs = scaled(to_poly(act_U(j, {l, m1, m2})), qn);
    if (lhs != rhs) return false;
  }
  return true;
}

bool u_expressible(int j, int l, int m2) {
  for (int n = -2; n <= 2; ++n) {
    if (!q(n, j, l, m2).is_zero()) return true;
  }
  return false;
}

// ---- brackets ---------------------------------------------------------------------

BracketCheck verify_bracket(Generator a, Generator b, int lmax) {
  BracketCheck out{a, b, true, 0};
  const ExactMatrix bracket =
      commutator(generator_matrix_exact(a), generator_matrix_exact(b));
  const auto coords = yz_coordinates(bracket);
  for (int l = 2; l <= lmax - 2; ++l) {
    for (int m1 = -l; m1 <= l; ++m1) {
      for (int m2 = -l; m2 <= l; ++m2) {
        const WignerIndex idx{l, m1, m2};
        auto lhs = act(a, act(b, idx)) - act(b, act(a, idx));
        WignerVector<LambdaPoly> rhs;
        for (const auto& [g, c] : coords) rhs += scaled(act(g, idx), LambdaPoly(c));
        ++out.indices;
        if (lhs != rhs) out.ok = false;
      }
    }
  }
  return out;
}

std::vector<BracketCheck> verify_brackets(int lmax) {
  std::vector<BracketCheck> out;
  const auto& basis_gens = yz_basis();
  for (std::size_t i = 0; i < basis_gens.size(); ++i) {
    for (std::size_t k = i + 1; k < basis_gens.size(); ++k) {
      out.push_back(verify_bracket(basis_gens[i], basis_gens[k], lmax));
    }
  }
  return out;
}

// ---- matrices ---------------------------------------------------------------------

std::complex<double> ActionMatrix::entry(const BasisLabel& row, const BasisLabel& col) const {
  for (const auto& b : blocks) {
    if (b.l != col.l || b.l + b.j != row.l) continue;
    auto r = std::find(b.rows.begin(), b.rows.end(), row);
    auto c = std::find(b.cols.begin(), b.cols.end(), col);
    if (r == b.rows.end() || c == b.cols.end()) return 0.0;
    return b.entries(r - b.rows.begin(), c - b.cols.begin());
  }
  return 0.0;
}

bool ActionMatrix::has_truncated_blocks() const {
  return std::any_of(blocks.begin(), blocks.end(), [](const ActionBlock& b) { return b.truncated; });
}

namespace {

nlohmann::json label_json(const BasisLabel& b) { return nlohmann::json::array({b.l, b.m1, b.m2}); }

BasisLabel label_from_json(const nlohmann::json& j) {
  return {j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>()};
}

nlohmann::json complex_json(std::complex<double> c) {
  return nlohmann::json::array({c.real(), c.imag()});
}

std::complex<double> complex_from_json(const nlohmann::json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

std::string format_complex(std::complex<double> c) {
  std::ostringstream os;
  os << std::setprecision(17) << c.real() << (std::signbit(c.imag()) ? "-" : "+")
     << std::abs(c.imag()) << "i";
  return os.str();
}

}  // namespace

nlohmann::json ActionMatrix::to_json() const {
  nlohmann::json meta;
  meta["lambda"] = nlohmann::json::array();
  for (const auto& c : lambda) meta["lambda"].push_back(complex_json(c));
  meta["delta"] = delta;
  meta["generator"] = generator_name(generator);
  meta["lmax"] = lmax;
  meta["truncated"] = has_truncated_blocks();
  meta["truncated_blocks"] = nlohmann::json::array();
  for (const auto& b : blocks) {
    if (b.truncated) meta["truncated_blocks"].push_back({b.l, b.j});
  }
  nlohmann::json out;
  out["metadata"] = meta;
  out["labels"] = nlohmann::json::array();
  for (const auto& b : labels) out["labels"].push_back(label_json(b));
  out["blocks"] = nlohmann::json::array();
  for (const auto& b : blocks) {
    nlohmann::json jb;
    jb["l"] = b.l;
    jb["j"] = b.j;
    jb["truncated"] = b.truncated;
    jb["rows"] = nlohmann::json::array();
    for (const auto& r : b.rows) jb["rows"].push_back(label_json(r));
    jb["cols"] = nlohmann::json::array();
    for (const auto& c : b.cols) jb["cols"].push_back(label_json(c));
    jb["entries"] = nlohmann::json::array();
    for (Eigen::Index r = 0; r < b.entries.rows(); ++r)
      for (Eigen::Index c = 0; c < b.entries.cols(); ++c)
        jb["entries"].push_back(complex_json(b.entries(r, c)));
    out["blocks"].push_back(jb);
  }
  return out;
}

ActionMatrix ActionMatrix::from_json(const nlohmann::json& j) {
  ActionMatrix m;
  const auto& meta = j.at("metadata");
  for (int i = 0; i < 3; ++i) m.lambda[i] = complex_from_json(meta.at("lambda").at(i));
  m.delta = meta.at("delta").get<Delta>();
  m.generator = parse_generator(meta.at("generator").get<std::string>());
  m.lmax = meta.at("lmax").get<int>();
  for (const auto& l : j.at("labels")) m.labels.push_back(label_from_json(l));
  for (const auto& jb : j.at("blocks")) {
    ActionBlock b;
    b.l = jb.at("l").get<int>();
    b.j = jb.at("j").get<int>();
    b.truncated = jb.at("truncated").get<bool>();
    for (const auto& r : jb.at("rows")) b.rows.push_back(label_from_json(r));
    for (const auto& c : jb.at("cols")) b.cols.push_back(label_from_json(c));
    const auto rows = static_cast<Eigen::Index>(b.rows.size());
    const auto cols = static_cast<Eigen::Index>(b.cols.size());
    const auto& entries = jb.at("entries");
    if (entries.size() != static_cast<std::size_t>(rows * cols)) {
      throw std::invalid_argument("ActionMatrix JSON: entry count does not match block shape");
    }
    b.entries.resize(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c)
        b.entries(r, c) = complex_from_json(entries.at(static_cast<std::size_t>(r * cols + c)));
    m.blocks.push_back(std::move(b));
  }
  return m;
}

std::string ActionMatrix::to_csv() const {
  auto name = [](const BasisLabel& b) {
    return std::to_string(b.l) + ":" + std::to_string(b.m1) + ":" + std::to_string(b.m2);
  };
  std::ostringstream os;
  os << "row\\col";
  for (const auto& c : labels) os << "," << name(c);
  os << "\n";
  for (const auto& r : labels) {
    os << name(r);
    for (const auto& c : labels) os << "," << format_complex(entry(r, c));
    os << "\n";
  }
  return os.str();
}

ActionMatrix assemble_matrix(const LambdaValue& lambda, const Delta& delta, Generator g,
                             int lmax) {
  if (lmax < 0) throw std::invalid_argument("assemble_matrix: lmax must be non-negative");
  require_valid_delta(delta);
  ActionMatrix m;
  m.lambda = lambda;
  m.delta = delta;
  m.generator = g;
  m.lmax = lmax;
  for (int l = 0; l <= lmax; ++l) {
    for (const auto& b : basis(delta, l)) m.labels.push_back(b);
  }
  for (int l = 0; l <= lmax; ++l) {
    const auto cols = basis(delta, l);
    if (cols.empty()) continue;
    std::map<int, ActionBlock> by_j;
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
      BasisVector<std::complex<double>> image;
      if (is_z_generator(g)) {
        image = evaluate(act_Z_on_basis(z_index(g), cols[ci], delta), lambda);
      } else {
        image = evaluate(act_on_basis(g, cols[ci], delta), lambda);
      }
      for (const auto& [row, c] : image) {
        const int j = row.l - l;
        auto it = by_j.find(j);
        if (it == by_j.end()) {
          ActionBlock blk;
          blk.l = l;
          blk.j = j;
          blk.truncated = row.l > lmax;
          blk.rows = basis(delta, row.l);
          blk.cols = cols;
          blk.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(blk.rows.size()),
                                               static_cast<Eigen::Index>(cols.size()));
          it = by_j.emplace(j, std::move(blk)).first;
        }
        auto& blk = it->second;
        const auto ri = std::find(blk.rows.begin(), blk.rows.end(), row) - blk.rows.begin();
        blk.entries(ri, static_cast<Eigen::Index>(ci)) = c;
      }
    }
    for (auto& [j, blk] : by_j) m.blocks.push_back(std::move(blk));
  }
  return m;
}

// ---- explicit instantiations ----------------------------------------------------

#define SL3K_INSTANTIATE(T)                                                            \
  template BasisVector<T> fold<T>(const Delta&, const WignerVector<T>&);               \
  template WignerVector<T> unfold<T>(const Delta&, const BasisVector<T>&);             \
  template WignerVector<T> project_P<T>(int, int, const WignerVector<T>&, ProjectionMode);

SL3K_INSTANTIATE(RadicalScalar)
SL3K_INSTANTIATE(LambdaForm)
SL3K_INSTANTIATE(LambdaPoly)
SL3K_INSTANTIATE(std::complex<double>)

#undef SL3K_INSTANTIATE

}  // namespace sl3k
