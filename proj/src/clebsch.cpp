#include "sl3k/clebsch.hpp"

#include <cstdlib>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace sl3k {

namespace {

Integer fact(long n) {
  if (n < 0) throw std::logic_error("negative factorial in Clebsch-Gordan formula");
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

RadicalScalar compute_q(int k, int j, int l, int m) {
  const long L = l;
  const long K = k;
  const long M = m;
  const Integer common = fact(2 - K) * fact(2 + K);
  Integer num;
  Integer den;
  Rational prefactor;
  const long sign = (k % 2 == 0) ? 1 : -1;
  switch (j) {
    case -2:
      prefactor = sign;
      num = 6 * fact(L - M) * fact(L + M);
      den = Integer(L * (L - 1) * (2 * L - 1) * (2 * L + 1)) * common * fact(L - K - M - 2) *
            fact(L + K + M - 2);
      break;
    case -1:
      prefactor = sign * (K + L * K + 2 * M);
      num = 3 * fact(L - M) * fact(L + M);
      den = Integer(L * (L - 1) * (L + 1) * (2 * L + 1)) * common * fact(L - K - M - 1) *
            fact(L + K + M - 1);
      break;
    case 0:
      prefactor = sign * (2 * L * L * (K * K - 1) + L * (5 * K * K + 6 * K * M - 2) +
                          3 * (K * K + 3 * K * M + 2 * M * M));
      num = fact(L - M) * fact(L + M);
      den = Integer(L * (L + 1) * (2 * L - 1) * (2 * L + 3)) * common * fact(L - K - M) *
            fact(L + K + M);
      break;
    case 1:
      prefactor = L * K - 2 * M;
      num = 3 * fact(L - K - M + 1) * fact(L + K + M + 1);
      den = Integer(L * (L + 1) * (L + 2) * (2 * L + 1)) * common * fact(L - M) * fact(L + M);
      break;
    case 2:
      prefactor = 1;
      num = 6 * fact(L - K - M + 2) * fact(L + K + M + 2);
      den = Integer((L + 1) * (L + 2) * (2 * L + 1) * (2 * L + 3)) * common * fact(L - M) *
            fact(L + M);
      break;
    default:
      return {};
  }
  if (prefactor == 0) return {};
  return RadicalScalar::sqrt(Rational(num, den)) * prefactor;
}

struct QTable {
  std::shared_mutex mutex;
  std::unordered_map<long long, RadicalScalar> values;
};

QTable& q_table() {
  static QTable table;
  return table;
}

long long pack(int k, int j, int l, int m) {
  return ((static_cast<long long>(l) * 8 + (k + 2)) * 8 + (j + 2)) * 100000LL + (m + 50000);
}

const RadicalScalar& zero() {
  static const RadicalScalar z;
  return z;
}

}  // namespace

bool cg_in_range(int k, int j, int l, int m) {
  return std::abs(k) <= 2 && std::abs(j) <= 2 && l >= 0 && std::abs(m) <= l &&
         std::abs(k + m) <= l + j && std::abs(l - 2) <= l + j;
}

const RadicalScalar& q(int k, int j, int l, int m) {
  if (!cg_in_range(k, j, l, m)) return zero();
  auto& table = q_table();
  const long long key = pack(k, j, l, m);
  {
    std::shared_lock lock(table.mutex);
    auto it = table.values.find(key);
    if (it != table.values.end()) return it->second;
  }
  RadicalScalar value = compute_q(k, j, l, m);
  std::unique_lock lock(table.mutex);
  // unordered_map references stay valid across rehashing
  return table.values.try_emplace(key, std::move(value)).first->second;
}

RadicalScalar ladder_coefficient(int l, int m, int shift) {
  return RadicalScalar::sqrt(Rational(l * (l + 1) - m * (m + shift)));
}

WignerVector<RadicalScalar> cg_product(const WignerIndex& two, const WignerIndex& idx) {
  if (two.l != 2 || !two.valid() || !idx.valid()) {
    throw std::invalid_argument("cg_product expects D^2 times a valid Wigner index");
  }
  WignerVector<RadicalScalar> out;
  for (int j = -2; j <= 2; ++j) {
    const WignerIndex target{idx.l + j, idx.m1 + two.m1, idx.m2 + two.m2};
    if (!target.valid()) continue;
    const auto& a = q(two.m1, j, idx.l, idx.m1);
    if (a.is_zero()) continue;
    out.add(target, a * q(two.m2, j, idx.l, idx.m2));
  }
  return out;
}

bool verify_recurrence_cg4(int l, int m, int j) {
  const RadicalScalar lhs = RadicalScalar::sqrt(Rational(2, 3)) *
                            Rational(2 * l * j + j * (j + 1) - 6, 2) * q(0, j, l, m);
  const RadicalScalar up = RadicalScalar::sqrt(Rational((l - m) * (l + 1 + m)));
  const RadicalScalar down = RadicalScalar::sqrt(Rational((l + m) * (l + 1 - m)));
  return lhs == up * q(-1, j, l, m + 1) + down * q(1, j, l, m - 1);
}

bool verify_cg5(int n, int l, int m1, int m2) {
  WignerVector<RadicalScalar> lhs;
  if (m1 + 1 <= l) {
    lhs += cg_product({2, -1, n}, {l, m1 + 1, m2})
               .scaled(RadicalScalar::sqrt(Rational((l - m1) * (l + 1 + m1))));
  }
  if (m1 - 1 >= -l) {
    lhs += cg_product({2, 1, n}, {l, m1 - 1, m2})
               .scaled(RadicalScalar::sqrt(Rational((l + m1) * (l + 1 - m1))));
  }
  WignerVector<RadicalScalar> rhs;
  const RadicalScalar c0 = RadicalScalar::sqrt(Rational(2, 3));
  for (int j = -2; j <= 2; ++j) {
    const WignerIndex target{l + j, m1, m2 + n};
    if (!target.valid()) continue;
    rhs.add(target, c0 * Rational(2 * j * l + j * (j + 1) - 6, 2) * q(0, j, l, m1) *
                        q(n, j, l, m2));
  }
  return lhs == rhs;
}

}  // namespace sl3k
