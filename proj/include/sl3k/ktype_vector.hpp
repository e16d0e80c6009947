#pragma once

#include <compare>
#include <functional>
#include <map>
#include <ostream>
#include <utility>

#include "sl3k/scalars.hpp"

namespace sl3k {

/// (l, m1, m2) labelling a Wigner function D^l_{m1,m2}.
struct WignerIndex {
  int l = 0;
  int m1 = 0;
  int m2 = 0;

  bool valid() const { return l >= 0 && -l <= m1 && m1 <= l && -l <= m2 && m2 <= l; }
  auto operator<=>(const WignerIndex&) const = default;
};

/// (l, m1, m2) labelling v_{l,m1,m2} = D^l_{m1,m2} + sign * D^l_{-m1,m2}, m1 >= 0.
struct BasisLabel {
  int l = 0;
  int m1 = 0;
  int m2 = 0;

  auto operator<=>(const BasisLabel&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const WignerIndex& i) {
  return os << "D(" << i.l << "," << i.m1 << "," << i.m2 << ")";
}
inline std::ostream& operator<<(std::ostream& os, const BasisLabel& b) {
  return os << "v(" << b.l << "," << b.m1 << "," << b.m2 << ")";
}

/// Finite linear combination of basis functions with no explicit zero terms.
/// Iteration order is the (l, m1, m2) order of the keys.
template <class Key, class Coeff>
class KTypeVector {
 public:
  using Terms = std::map<Key, Coeff>;

  KTypeVector() = default;
  KTypeVector(const Key& key, Coeff c) { add(key, std::move(c)); }

  void add(const Key& key, const Coeff& c) {
    if (is_zero_coefficient(c)) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, c);
      return;
    }
    it->second += c;
    if (is_zero_coefficient(it->second)) terms_.erase(it);
  }

  /// Coefficient of key, or a default-constructed (zero) value.
  Coeff coefficient(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Coeff{} : it->second;
  }

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  KTypeVector& operator+=(const KTypeVector& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  KTypeVector& operator-=(const KTypeVector& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  friend KTypeVector operator+(KTypeVector a, const KTypeVector& b) { return a += b; }
  friend KTypeVector operator-(KTypeVector a, const KTypeVector& b) { return a -= b; }

  template <class Scalar>
  KTypeVector scaled(const Scalar& s) const {
    KTypeVector out;
    for (const auto& [k, c] : terms_) out.add(k, c * s);
    return out;
  }

  /// Applies f to every coefficient, producing a vector over another ring.
  template <class F>
  auto map_coefficients(F&& f) const {
    using Out = std::decay_t<decltype(f(std::declval<const Coeff&>()))>;
    KTypeVector<Key, Out> out;
    for (const auto& [k, c] : terms_) out.add(k, f(c));
    return out;
  }

  friend bool operator==(const KTypeVector& a, const KTypeVector& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const KTypeVector& a, const KTypeVector& b) { return !(a == b); }

 private:
  Terms terms_;
};

template <class Coeff>
using WignerVector = KTypeVector<WignerIndex, Coeff>;
template <class Coeff>
using BasisVector = KTypeVector<BasisLabel, Coeff>;

/// Numeric evaluation of a vector with lambda-dependent coefficients.
template <class Key, class Coeff>
KTypeVector<Key, std::complex<double>> evaluate(const KTypeVector<Key, Coeff>& v,
                                                const LambdaValue& lambda) {
  return v.map_coefficients([&](const Coeff& c) { return c.evaluate(lambda); });
}

template <class Key, class Coeff>
KTypeVector<Key, ExactComplex> evaluate(const KTypeVector<Key, Coeff>& v,
                                        const ExactLambda& lambda) {
  return v.map_coefficients([&](const Coeff& c) { return c.evaluate(lambda); });
}

}  // namespace sl3k
