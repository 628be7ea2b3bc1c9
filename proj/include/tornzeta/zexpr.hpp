#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "tornzeta/exact_arith.hpp"
#include "tornzeta/rat.hpp"

namespace tornzeta {

/// One symbolic constant of the basis. Ordering is the canonical iteration
/// order: Unit < Ln2 < Zeta(2) < Zeta(3) < ... < PiPow(1) < PiPow(2) < ...
class ConstSym {
 public:
  enum class Kind : std::uint8_t { Unit, Ln2, Zeta, PiPow };

  static ConstSym unit() { return {Kind::Unit, 0}; }
  static ConstSym ln2() { return {Kind::Ln2, 0}; }
  static ConstSym zeta(int k) {
    if (k < 2) throw std::domain_error("ConstSym: zeta(k) requires k >= 2");
    return {Kind::Zeta, k};
  }
  static ConstSym pi_pow(int k) {
    if (k < 1) throw std::domain_error("ConstSym: pi^k requires k >= 1");
    return {Kind::PiPow, k};
  }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] int index() const { return index_; }

  /// "1", "ln2", "z3", "pi^4".
  [[nodiscard]] std::string name() const {
    switch (kind_) {
      case Kind::Unit: return "1";
      case Kind::Ln2: return "ln2";
      case Kind::Zeta: return "z" + std::to_string(index_);
      case Kind::PiPow: return index_ == 1 ? std::string("pi") : "pi^" + std::to_string(index_);
    }
    return "?";
  }

  friend bool operator==(const ConstSym&, const ConstSym&) = default;
  friend auto operator<=>(const ConstSym&, const ConstSym&) = default;

 private:
  ConstSym(Kind kind, int index) : kind_(kind), index_(index) {}

  Kind kind_;
  int index_;
};

/// Rational linear combination of basis constants. Zero coefficients are
/// never stored, so the zero expression is the empty map and equality is
/// plain coefficient-wise equality.
class ZExpr {
 public:
  using Terms = std::map<ConstSym, Rat>;

  ZExpr() = default;
  ZExpr(std::initializer_list<std::pair<const ConstSym, Rat>> terms) {
    for (const auto& [sym, c] : terms) add_term(sym, c);
  }

  static ZExpr rational(const Rat& c) { return ZExpr{{ConstSym::unit(), c}}; }
  static ZExpr term(const ConstSym& sym, const Rat& c = Rat(1)) { return ZExpr{{sym, c}}; }

  void add_term(const ConstSym& sym, const Rat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(sym, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] Rat coeff(const ConstSym& sym) const {
    auto it = terms_.find(sym);
    return it == terms_.end() ? Rat(0) : it->second;
  }
  /// True when the only symbol present is Unit (or the expression is zero).
  [[nodiscard]] bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == ConstSym::unit());
  }
  [[nodiscard]] Rat rational_value() const {
    if (!is_rational()) throw std::logic_error("ZExpr: expression is not rational");
    return coeff(ConstSym::unit());
  }

  /// Canonical text, e.g. "16*z2 - 14*z3", "4 - 2*ln2 - z2", "1/4*z2", "0".
  [[nodiscard]] std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [sym, c] : terms_) {
      const bool neg = c.sign() < 0;
      const Rat mag = abs(c);
      if (first) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      first = false;
      if (sym == ConstSym::unit()) {
        out += mag.str();
      } else if (mag == Rat(1)) {
        out += sym.name();
      } else {
        out += mag.str() + "*" + sym.name();
      }
    }
    return out;
  }

  friend bool operator==(const ZExpr&, const ZExpr&) = default;
  friend std::ostream& operator<<(std::ostream& os, const ZExpr& e) { return os << e.str(); }

 private:
  Terms terms_;
};

inline ZExpr zx_add(const ZExpr& a, const ZExpr& b) {
  ZExpr out = a;
  for (const auto& [sym, c] : b.terms()) out.add_term(sym, c);
  return out;
}

inline ZExpr zx_scale(const Rat& c, const ZExpr& a) {
  ZExpr out;
  if (c.is_zero()) return out;
  for (const auto& [sym, v] : a.terms()) out.add_term(sym, c * v);
  return out;
}

inline ZExpr operator+(const ZExpr& a, const ZExpr& b) { return zx_add(a, b); }
inline ZExpr operator-(const ZExpr& a, const ZExpr& b) { return zx_add(a, zx_scale(Rat(-1), b)); }
inline ZExpr operator*(const Rat& c, const ZExpr& a) { return zx_scale(c, a); }

/// Rational r with zeta(2n) = r * pi^(2n):
/// r = (-1)^(n+1) 2^(2n) B_(2n) / (2 (2n)!).
inline Rat zeta_even_pi_coeff(int n) {
  if (n < 1) throw std::domain_error("zeta_even_to_pi: n must be >= 1");
  mpz_class fact, two_pow;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(2 * n));
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(2 * n));
  Rat r = Rat(two_pow) * bernoulli(2 * n) / (Rat(2) * Rat(fact));
  return (n % 2 == 0) ? -r : r;
}

inline ZExpr zeta_even_to_pi(int n) {
  return ZExpr::term(ConstSym::pi_pow(2 * n), zeta_even_pi_coeff(n));
}

enum class NormalMode { KeepZeta, PreferPi };

/// Rewrites even zeta values to powers of pi (PreferPi) or even powers of pi
/// back to zeta values (KeepZeta). Odd zeta values and odd powers of pi are
/// left as they are.
inline ZExpr zx_normalize(const ZExpr& a, NormalMode mode) {
  ZExpr out;
  for (const auto& [sym, c] : a.terms()) {
    if (mode == NormalMode::PreferPi && sym.kind() == ConstSym::Kind::Zeta && sym.index() % 2 == 0) {
      const int n = sym.index() / 2;
      out.add_term(ConstSym::pi_pow(2 * n), c * zeta_even_pi_coeff(n));
    } else if (mode == NormalMode::KeepZeta && sym.kind() == ConstSym::Kind::PiPow &&
               sym.index() % 2 == 0) {
      const int n = sym.index() / 2;
      out.add_term(ConstSym::zeta(2 * n), c / zeta_even_pi_coeff(n));
    } else {
      out.add_term(sym, c);
    }
  }
  return out;
}

}  // namespace tornzeta
