#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "tornzeta/exact_arith.hpp"
#include "tornzeta/series_spec.hpp"
#include "tornzeta/zexpr.hpp"

namespace tornzeta {

namespace detail {

inline ZExpr z(int k, const Rat& c = Rat(1)) { return ZExpr::term(ConstSym::zeta(k), c); }
inline ZExpr one(const Rat& c = Rat(1)) { return ZExpr::rational(c); }
inline ZExpr ln2(const Rat& c = Rat(1)) { return ZExpr::term(ConstSym::ln2(), c); }

inline Rat factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(f);
}

}  // namespace detail

/// sum_{j=0}^{s-1} (-1)^j C(s-1, j) / (j+1)^power, exact. Terms are added in
/// ascending j unless `reverse` is set.
inline Rat alternating_binomial_sum(int s, int power, bool reverse = false) {
  if (s < 1) throw std::domain_error("alternating_binomial_sum: s must be >= 1");
  Rat acc(0);
  for (int i = 0; i < s; ++i) {
    const int j = reverse ? s - 1 - i : i;
    Rat term = binomial(s - 1, j) / pow(Rat(j + 1), power);
    if (j % 2 == 1) term = -term;
    acc += term;
  }
  return acc;
}

/// A_n(s): n! zeta(n+1) for s = 0, otherwise the rational n! times the
/// alternating binomial sum with exponent n+1.
inline ZExpr eval_An(int n, int s) {
  if (n < 2) throw std::domain_error("eval_An: n must be >= 2");
  if (s < 0) throw std::domain_error("eval_An: s must be >= 0");
  const Rat nf = detail::factorial(n);
  if (s == 0) return detail::z(n + 1, nf);
  return detail::one(nf * alternating_binomial_sum(s, n + 1));
}

/// A(s) of the double series with harmonic numerator.
inline ZExpr eval_A3(int s) {
  if (s < 0) throw std::domain_error("eval_A3: s must be >= 0");
  if (s == 0) return detail::z(4, Rat(6));
  return detail::one(Rat(6) * alternating_binomial_sum(s, 4));
}

/// Double-precision evaluation of the rational branch of A_n(s). The
/// alternating terms grow like C(s-1, s/2) while the sum stays O(1), so the
/// float path is refused for s > 25.
inline double eval_An_float(int n, int s) {
  constexpr int kMaxFloatS = 25;
  if (n < 2) throw std::domain_error("eval_An_float: n must be >= 2");
  if (s < 1) throw std::domain_error("eval_An_float: s must be >= 1");
  if (s > kMaxFloatS) throw std::domain_error("eval_An_float: refused above s = 25 (cancellation)");
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= i;
  double acc = 0.0;
  double c = 1.0;  // C(s-1, j)
  for (int j = 0; j < s; ++j) {
    const double term = c / std::pow(static_cast<double>(j + 1), n + 1);
    acc += (j % 2 == 0) ? term : -term;
    c = c * static_cast<double>(s - 1 - j) / static_cast<double>(j + 1);
  }
  return fact * acc;
}

/// a(k) = sum_m H_{m+k}/(m(m+k)): 2 zeta(3) at k = 0, else (H_k^2 + H_k^(2))/k.
inline ZExpr eval_aXL(int k) {
  if (k < 0) throw std::domain_error("eval_aXL: k must be >= 0");
  if (k == 0) return detail::z(3, Rat(2));
  const Rat h = harmonic(k);
  return detail::one((h * h + harmonic_gen(k, 2)) / Rat(k));
}

/// Both sides of sum_{j<k} (-1)^j C(k-1,j)/(j+1)^3 = (H_k^2 + H_k^(2))/(2k).
inline std::pair<Rat, Rat> binomial_harmonic_sides(int k) {
  if (k < 1) throw std::domain_error("binomial_harmonic_sides: k must be >= 1");
  const Rat h = harmonic(k);
  return {alternating_binomial_sum(k, 3), (h * h + harmonic_gen(k, 2)) / Rat(2 * k)};
}

/// T_d = sum_{m,n>=0} 1/((2m+1)(2n+1)(2m+2n+d)).
inline ZExpr eval_base_T(int d) {
  switch (d) {
    case 1: return detail::z(2);
    case 2: return detail::z(3, Rat(7, 8));
    case 3: return detail::z(2, Rat(1, 2));
    default: throw std::domain_error("eval_base_T: d must be 1, 2 or 3");
  }
}

enum class AuxSum { EvenOddAux, OddSquares, BInter };

inline ZExpr eval_aux(AuxSum which) {
  switch (which) {
    case AuxSum::EvenOddAux:
      // sum 1/(n(n+1)) = 1 minus the alternating series ln 2
      return detail::one() - detail::ln2();
    case AuxSum::OddSquares:
      return detail::z(2, Rat(3, 4));
    case AuxSum::BInter: {
      // A - B collects the m = 0 or n = 0 terms: 2 sum 1/(2k+1)^2 - 1.
      const ZExpr a = eval_base_T(1);
      const ZExpr a_minus_b = zx_scale(Rat(2), eval_aux(AuxSum::OddSquares)) - detail::one();
      return a - a_minus_b;
    }
  }
  throw std::logic_error("eval_aux: unknown sum");
}

/// The two closed-form derivation routes for the odd-harmonic sums.
struct OddHarmonicRoutes {
  ZExpr ln_via_s1;
  ZExpr ln_via_3;
  ZExpr on_via_s1;
  ZExpr on_via_3;
};

inline OddHarmonicRoutes odd_harmonic_routes() {
  const ZExpr b = eval_aux(AuxSum::BInter);
  const ZExpr even_odd = eval_aux(AuxSum::EvenOddAux);
  const ZExpr odd_sq = eval_aux(AuxSum::OddSquares);

  OddHarmonicRoutes r;
  // B = sum O_m/(2m(2m+1)) + 1 - (3/4) zeta(2)
  r.on_via_s1 = b - detail::one() + detail::z(2, Rat(3, 4));
  // 2 H_{2m+1} - H_m = 2 O_m + 2/(2m+1) and 1/(2m(2m+1)^2) = 1/(2m(2m+1)) - 1/(2m+1)^2
  r.ln_via_s1 = zx_scale(Rat(2), r.on_via_s1 + even_odd - odd_sq + detail::one());

  // B = sum (H_{2m+1} - 1 - H_m/2)/(2m(2m+1)), the numerator being O_m - 2m/(2m+1)
  r.on_via_3 = b + odd_sq - detail::one();
  r.ln_via_3 = zx_scale(Rat(2), b + even_odd);
  return r;
}

/// sum_m (2 H_{2m+1} - H_m)/(2m(2m+1)) = 4 - 2 ln 2 - zeta(2).
inline ZExpr eval_ln_series() {
  const auto routes = odd_harmonic_routes();
  const ZExpr literal = detail::one(Rat(4)) - detail::ln2(Rat(2)) - detail::z(2);
  if (routes.ln_via_3 != literal || routes.ln_via_s1 != literal)
    throw std::logic_error("eval_ln_series: derivation disagrees with 4 - 2*ln2 - z2");
  return routes.ln_via_3;
}

/// sum_m O_m/(2m(2m+1)) = zeta(2)/4.
inline ZExpr eval_on_series() {
  const auto routes = odd_harmonic_routes();
  const ZExpr literal = detail::z(2, Rat(1, 4));
  if (routes.on_via_s1 != literal || routes.on_via_3 != literal)
    throw std::logic_error("eval_on_series: derivation disagrees with z2/4");
  return routes.on_via_s1;
}

/// Half-integer sums. Each (x + 1/2) factor is (2x+1)/2, so four factors
/// scale the odd-integer T-differences by 16; the c-variant is a - b since
/// its last two factors differ by exactly 1.
inline ZExpr eval_halfint(char variant) {
  const ZExpr t1 = eval_base_T(1);
  const ZExpr t2 = eval_base_T(2);
  const ZExpr t3 = eval_base_T(3);
  const ZExpr a = zx_scale(Rat(16), t1 - t2);
  const ZExpr b = zx_scale(Rat(16), t2 - t3);

  ZExpr derived;
  ZExpr literal;
  switch (variant) {
    case 'a':
      derived = a;
      literal = detail::z(2, Rat(16)) - detail::z(3, Rat(14));
      break;
    case 'b':
      derived = b;
      literal = detail::z(3, Rat(14)) - detail::z(2, Rat(8));
      break;
    case 'c':
      derived = a - b;
      literal = detail::z(2, Rat(24)) - detail::z(3, Rat(28));
      break;
    default:
      throw std::domain_error("eval_halfint: variant must be a, b or c");
  }
  if (derived != literal)
    throw std::logic_error(std::string("eval_halfint: derived value disagrees with literal for variant ") + variant);
  return derived;
}

/// Closed form of any catalogued series; nullopt for Tornheim sums other
/// than S(1,1,1), which have no evaluation here.
inline std::optional<ZExpr> closed_form(const SeriesSpec& spec) {
  using namespace series;
  validate(spec);
  return std::visit(Overloaded{
                        [](const A3& x) -> std::optional<ZExpr> { return eval_A3(x.s); },
                        [](const An& x) -> std::optional<ZExpr> { return eval_An(x.n, x.s); },
                        [](const AXL& x) -> std::optional<ZExpr> { return eval_aXL(x.k); },
                        [](const LnSeries&) -> std::optional<ZExpr> { return eval_ln_series(); },
                        [](const OnSeries&) -> std::optional<ZExpr> { return eval_on_series(); },
                        [](const HalfInt& x) -> std::optional<ZExpr> { return eval_halfint(x.variant); },
                        [](const BaseT& x) -> std::optional<ZExpr> { return eval_base_T(x.d); },
                        [](const S111&) -> std::optional<ZExpr> { return detail::z(3, Rat(2)); },
                        [](const EvenOddAux&) -> std::optional<ZExpr> { return eval_aux(AuxSum::EvenOddAux); },
                        [](const OddSquares&) -> std::optional<ZExpr> { return eval_aux(AuxSum::OddSquares); },
                        [](const BInter&) -> std::optional<ZExpr> { return eval_aux(AuxSum::BInter); },
                        [](const TornheimRaw& x) -> std::optional<ZExpr> {
                          if (x.a == 1 && x.b == 1 && x.c == 1) return detail::z(3, Rat(2));
                          return std::nullopt;
                        },
                    },
                    spec);
}

}  // namespace tornzeta
