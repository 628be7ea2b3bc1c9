#pragma once

#include <mpfr.h>

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "tornzeta/rat.hpp"

namespace tornzeta {

/// Decimal digits to MPFR bits, with 16 guard bits.
inline mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 16;
}

namespace detail {
inline mpfr_prec_t& thread_default_bits() {
  thread_local mpfr_prec_t bits = digits_to_bits(50);
  return bits;
}
}  // namespace detail

/// Sets the default precision of newly constructed BigFl values on this
/// thread for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits) : saved_(detail::thread_default_bits()) {
    if (digits < 1) throw std::domain_error("PrecisionScope: digits must be positive");
    detail::thread_default_bits() = digits_to_bits(digits);
  }
  ~PrecisionScope() { detail::thread_default_bits() = saved_; }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

/// Arbitrary-precision binary float (MPFR, round-to-nearest). New values
/// take the thread's default precision; results of binary operations take
/// the larger operand precision.
class BigFl {
 public:
  BigFl() : BigFl(detail::thread_default_bits(), 0L) {}
  BigFl(long v) : BigFl(detail::thread_default_bits(), v) {}  // NOLINT
  BigFl(int v) : BigFl(static_cast<long>(v)) {}               // NOLINT
  explicit BigFl(double v) {
    mpfr_init2(v_, detail::thread_default_bits());
    mpfr_set_d(v_, v, MPFR_RNDN);
  }
  explicit BigFl(const Rat& r) {
    mpfr_init2(v_, detail::thread_default_bits());
    mpfr_set_q(v_, r.raw().get_mpq_t(), MPFR_RNDN);
  }
  BigFl(mpfr_prec_t bits, long v) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, v, MPFR_RNDN);
  }

  static BigFl parse(const std::string& text) {
    BigFl out;
    if (mpfr_set_str(out.v_, text.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("BigFl: cannot parse '" + text + "'");
    return out;
  }
  static BigFl with_bits(mpfr_prec_t bits) { return BigFl(bits, 0L); }

  BigFl(const BigFl& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFl(BigFl&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFl& operator=(const BigFl& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFl& operator=(BigFl&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFl() { mpfr_clear(v_); }

  [[nodiscard]] mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
  [[nodiscard]] mpfr_ptr get() { return v_; }
  [[nodiscard]] mpfr_srcptr get() const { return v_; }

  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  [[nodiscard]] bool is_finite() const { return mpfr_number_p(v_) != 0; }
  [[nodiscard]] int sign() const { return mpfr_sgn(v_); }
  [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Base-10 exponent estimate (floor(log10|x|)), very negative for zero.
  [[nodiscard]] long log10_abs() const {
    if (is_zero()) return std::numeric_limits<long>::min() / 2;
    long e2 = 0;
    const double m = mpfr_get_d_2exp(&e2, v_, MPFR_RNDN);
    return static_cast<long>(std::floor(std::log10(std::fabs(m)) + static_cast<double>(e2) * 0.30102999566398120));
  }

  /// Decimal text with `sig` significant digits, %g style; zero is "0".
  [[nodiscard]] std::string str(int sig = 30) const {
    if (is_zero()) return "0";
    char* buf = nullptr;
    if (mpfr_asprintf(&buf, "%.*Rg", sig, v_) < 0 || buf == nullptr)
      throw std::runtime_error("BigFl: formatting failed");
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  BigFl& operator+=(const BigFl& o) { widen(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFl& operator-=(const BigFl& o) { widen(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFl& operator*=(const BigFl& o) { widen(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFl& operator/=(const BigFl& o) { widen(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFl& operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
  BigFl& operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
  BigFl& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
  BigFl& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

  friend BigFl operator+(BigFl a, const BigFl& b) { return a += b; }
  friend BigFl operator-(BigFl a, const BigFl& b) { return a -= b; }
  friend BigFl operator*(BigFl a, const BigFl& b) { return a *= b; }
  friend BigFl operator/(BigFl a, const BigFl& b) { return a /= b; }
  friend BigFl operator+(BigFl a, long b) { return a += b; }
  friend BigFl operator-(BigFl a, long b) { return a -= b; }
  friend BigFl operator*(BigFl a, long b) { return a *= b; }
  friend BigFl operator/(BigFl a, long b) { return a /= b; }
  friend BigFl operator*(long a, BigFl b) { return b *= a; }
  friend BigFl operator-(BigFl a) {
    mpfr_neg(a.v_, a.v_, MPFR_RNDN);
    return a;
  }

  friend bool operator==(const BigFl& a, const BigFl& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigFl& a, const BigFl& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigFl& x) { return os << x.str(); }

 private:
  void widen(const BigFl& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  }

  mpfr_t v_;
};

namespace detail {
template <class F>
BigFl unary(const BigFl& x, F f) {
  BigFl out = BigFl::with_bits(x.bits());
  f(out.get(), x.get(), MPFR_RNDN);
  return out;
}
}  // namespace detail

inline BigFl abs(const BigFl& x) { return detail::unary(x, mpfr_abs); }
inline BigFl sqrt(const BigFl& x) { return detail::unary(x, mpfr_sqrt); }
inline BigFl exp(const BigFl& x) { return detail::unary(x, mpfr_exp); }
inline BigFl log(const BigFl& x) { return detail::unary(x, mpfr_log); }
inline BigFl log1p(const BigFl& x) { return detail::unary(x, mpfr_log1p); }
inline BigFl sinh(const BigFl& x) { return detail::unary(x, mpfr_sinh); }
inline BigFl cosh(const BigFl& x) { return detail::unary(x, mpfr_cosh); }
inline BigFl pow(const BigFl& x, long e) {
  BigFl out = BigFl::with_bits(x.bits());
  mpfr_pow_si(out.get(), x.get(), e, MPFR_RNDN);
  return out;
}
inline BigFl max(const BigFl& a, const BigFl& b) { return a < b ? b : a; }

/// 10^e at the default precision.
inline BigFl pow10(long e) {
  BigFl out;
  mpfr_set_si(out.get(), 10, MPFR_RNDN);
  mpfr_pow_si(out.get(), out.get(), e, MPFR_RNDN);
  return out;
}

/// 1 / (f1 * f2 * ...). Integer factors are multiplied exactly while the
/// product fits in 64 bits and divided out otherwise.
template <class T, class... Ints>
  requires std::same_as<T, BigFl>
BigFl inv_product(Ints... factors) {
  BigFl out(1L);
  std::int64_t acc = 1;
  auto push = [&](std::int64_t f) {
    std::int64_t next = 0;
    if (__builtin_mul_overflow(acc, f, &next)) {
      mpfr_div_si(out.get(), out.get(), acc, MPFR_RNDN);
      acc = f;
    } else {
      acc = next;
    }
  };
  (push(static_cast<std::int64_t>(factors)), ...);
  mpfr_div_si(out.get(), out.get(), acc, MPFR_RNDN);
  return out;
}

}  // namespace tornzeta
