#pragma once

// Clebsch-Gordan coefficients for coupling with a spin-2 factor:
//   q(k, j, l, m) = <2 k l m | (l+j) (k+m)>.

#include "sl3k/ktype_vector.hpp"
#include "sl3k/scalars.hpp"

namespace sl3k {

struct CGIndex {
  int k = 0;
  int j = 0;
  int l = 0;
  int m = 0;
  auto operator<=>(const CGIndex&) const = default;
};

/// True when the coefficient can be nonzero: |k|,|j| <= 2, |m| <= l,
/// |k+m| <= l+j, and |l-2| <= l+j.
bool cg_in_range(int k, int j, int l, int m);

/// Exact value from the closed forms; zero outside cg_in_range. Results are
/// memoized in a table that is safe for concurrent readers.
const RadicalScalar& q(int k, int j, int l, int m);
inline const RadicalScalar& q(const CGIndex& i) { return q(i.k, i.j, i.l, i.m); }

/// D^2_{a,b} * D^l_{m1,m2} expanded as sum_j q(a,j,l,m1) q(b,j,l,m2) D^{l+j}_{m1+a,m2+b}.
/// Throws std::invalid_argument unless two.l == 2 and both indices are valid.
WignerVector<RadicalScalar> cg_product(const WignerIndex& two, const WignerIndex& idx);

/// The three-term recurrence
///   sqrt(2/3) (l j + j(j+1)/2 - 3) q(0,j,l,m)
///     = sqrt((l-m)(l+1+m)) q(-1,j,l,m+1) + sqrt((l+m)(l+1-m)) q(1,j,l,m-1)
/// checked as an exact identity.
bool verify_recurrence_cg4(int l, int m, int j);

/// Checks that
///   sqrt((l-m1)(l+1+m1)) D^2_{-1,n} D^l_{m1+1,m2} + sqrt((l+m1)(l+1-m1)) D^2_{1,n} D^l_{m1-1,m2}
/// expanded by cg_product equals
///   sqrt(2/3) sum_j (j l + j(j+1)/2 - 3) q(0,j,l,m1) q(n,j,l,m2) D^{l+j}_{m1,m2+n}
/// term by term.
bool verify_cg5(int n, int l, int m1, int m2);

/// sqrt(l(l+1) - m(m+shift)), the so(3) ladder factor, as an exact value.
RadicalScalar ladder_coefficient(int l, int m, int shift);

}  // namespace sl3k
