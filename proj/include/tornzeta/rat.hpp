#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace tornzeta {

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator. Thin value wrapper over GMP's mpq_class.
class Rat {
 public:
  Rat() = default;
  Rat(long v) : q_(v) {}  // NOLINT: implicit from integers is intended
  Rat(int v) : q_(static_cast<long>(v)) {}
  Rat(long num, long den) : Rat(mpz_class(num), mpz_class(den)) {}
  Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rat(const mpz_class& v) : q_(v) {}
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "a", "-a" or "a/b".
  static Rat parse(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("Rat: cannot parse '" + text + "'");
    if (q.get_den() == 0) throw std::domain_error("Rat: zero denominator");
    return Rat(std::move(q));
  }

  [[nodiscard]] mpz_class num() const { return q_.get_num(); }
  [[nodiscard]] mpz_class den() const { return q_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return q_; }

  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] double to_double() const { return q_.get_d(); }
  [[nodiscard]] std::string str() const { return q_.get_str(10); }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

/// 1 / (f1 * f2 * ...) with the product formed exactly.
template <class T, class... Ints>
  requires std::same_as<T, Rat>
Rat inv_product(Ints... factors) {
  mpz_class d = 1;
  ((d *= mpz_class(static_cast<long>(factors))), ...);
  return Rat(mpz_class(1), d);
}

/// b^e for integer exponent (negative allowed for nonzero b).
inline Rat pow(const Rat& b, long e) {
  if (e < 0) return Rat(1) / pow(b, -e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), b.num().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), b.den().get_mpz_t(), static_cast<unsigned long>(e));
  return Rat(n, d);
}

}  // namespace tornzeta
