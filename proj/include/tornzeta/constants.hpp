#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "tornzeta/bigfloat.hpp"
#include "tornzeta/exact_arith.hpp"
#include "tornzeta/zexpr.hpp"

namespace tornzeta {

inline constexpr int kMinDigits = 30;

namespace detail {

inline void check_digits(int digits) {
  if (digits < kMinDigits) throw std::domain_error("working precision must be at least 30 digits");
}

/// Write-once cache of constants keyed by (symbol, digits).
class ConstantCache {
 public:
  template <class F>
  BigFl get(const ConstSym& sym, int digits, F compute) {
    const Key key{sym, digits};
    {
      std::lock_guard lock(mu_);
      if (auto it = values_.find(key); it != values_.end()) return it->second;
    }
    BigFl v = compute();
    std::lock_guard lock(mu_);
    return values_.try_emplace(key, std::move(v)).first->second;
  }

 private:
  using Key = std::tuple<ConstSym, int>;
  std::mutex mu_;
  std::map<Key, BigFl> values_;
};

inline ConstantCache& constant_cache() {
  static ConstantCache cache;
  return cache;
}

inline BigFl compute_ln2(int digits) {
  // ln 2 = 2 artanh(1/3) = 2 sum_j 1 / ((2j+1) 3^(2j+1))
  PrecisionScope scope(digits + 10);
  const BigFl eps = pow10(-(digits + 8));
  BigFl power = BigFl(1L) / 3L;
  BigFl sum;
  for (long j = 0;; ++j) {
    BigFl term = power / (2 * j + 1);
    sum += term;
    if (term < eps) break;
    power /= 9L;
  }
  return sum * 2L;
}

inline BigFl compute_pi(int digits) {
  PrecisionScope scope(digits + 10);
  BigFl out;
  mpfr_const_pi(out.get(), MPFR_RNDN);
  return out;
}

// zeta(k) = sum_{j<M} j^-k + M^(1-k)/(k-1) + M^-k/2
//         + sum_{i>=1} B_2i/(2i)! k(k+1)...(k+2i-2) M^(-k-2i+1)
inline BigFl compute_zeta(int k, int digits) {
  PrecisionScope scope(digits + 10);
  const long m = 2L * digits;
  const BigFl eps = pow10(-(digits + 5));

  BigFl sum;
  for (long j = 1; j < m; ++j) sum += pow(BigFl(j), -k);
  const BigFl big_m(m);
  sum += pow(big_m, 1 - k) / static_cast<long>(k - 1);
  sum += pow(big_m, -k) / 2L;

  Rat rising(k);  // k (k+1) ... (k+2i-2)
  Rat fact(2);    // (2i)!
  constexpr int kMaxTerms = 400;
  for (int i = 1; i <= kMaxTerms; ++i) {
    if (i > 1) {
      rising *= Rat((k + 2 * i - 3) * static_cast<long>(k + 2 * i - 2));
      fact *= Rat(static_cast<long>(2 * i - 1) * (2 * i));
    }
    const Rat coeff = bernoulli(2 * i) / fact * rising;
    BigFl term = BigFl(coeff) * pow(big_m, -k - 2 * i + 1);
    sum += term;
    if (abs(term) < eps) return sum;
  }
  throw std::runtime_error("const_zeta: Euler-Maclaurin correction did not converge");
}

}  // namespace detail

inline BigFl const_pi(int digits) {
  detail::check_digits(digits);
  return detail::constant_cache().get(ConstSym::pi_pow(1), digits, [&] { return detail::compute_pi(digits); });
}

inline BigFl const_ln2(int digits) {
  detail::check_digits(digits);
  return detail::constant_cache().get(ConstSym::ln2(), digits, [&] { return detail::compute_ln2(digits); });
}

inline BigFl const_zeta(int k, int digits) {
  if (k < 2) throw std::domain_error("const_zeta: k must be >= 2");
  detail::check_digits(digits);
  return detail::constant_cache().get(ConstSym::zeta(k), digits, [&] { return detail::compute_zeta(k, digits); });
}

inline BigFl const_value(const ConstSym& sym, int digits) {
  switch (sym.kind()) {
    case ConstSym::Kind::Unit: {
      PrecisionScope scope(digits + 10);
      return BigFl(1L);
    }
    case ConstSym::Kind::Ln2: return const_ln2(digits);
    case ConstSym::Kind::Zeta: return const_zeta(sym.index(), digits);
    case ConstSym::Kind::PiPow: return pow(const_pi(digits), sym.index());
  }
  throw std::logic_error("const_value: unknown symbol");
}

/// Numeric value of a ZExpr, summed in canonical symbol order.
inline BigFl zx_numeric(const ZExpr& e, int digits) {
  detail::check_digits(digits);
  PrecisionScope scope(digits + 10);
  BigFl sum;
  for (const auto& [sym, c] : e.terms()) sum += BigFl(c) * const_value(sym, digits);
  return sum;
}

}  // namespace tornzeta
