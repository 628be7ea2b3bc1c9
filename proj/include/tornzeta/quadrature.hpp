#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tornzeta/bigfloat.hpp"
#include "tornzeta/constants.hpp"

namespace tornzeta {

/// Abscissa of the tanh-sinh map t = (1 + tanh(pi/2 sinh x)) / 2 on (0, 1),
/// carried as logarithms so neither endpoint is ever evaluated and both
/// 1 - t and t keep full relative precision.
struct TanhSinhNode {
  BigFl log_t;          // ln t
  BigFl log_one_minus;  // ln(1 - t)
  BigFl weight;         // dt/dx
};

struct QuadratureResult {
  BigFl value;
  BigFl error_estimate;
  int levels_used = 0;
  bool converged = false;
  std::string failure;
  /// |I_l - I_(l-1)| for l = 1..levels_used.
  std::vector<BigFl> level_errors;
};

namespace detail {

inline TanhSinhNode tanh_sinh_node(const BigFl& x, const BigFl& half_pi, const BigFl& pi) {
  const BigFl u = half_pi * sinh(x);
  const BigFl a = exp(-2L * abs(u));  // e^{-2|u|}
  const BigFl l1p = log1p(a);
  TanhSinhNode node;
  if (u.sign() >= 0) {
    node.log_t = -l1p;
    node.log_one_minus = -2L * u - l1p;
  } else {
    node.log_t = 2L * u - l1p;
    node.log_one_minus = -l1p;
  }
  const BigFl one_plus_a = a + 1L;
  node.weight = pi * cosh(x) * a / (one_plus_a * one_plus_a);
  return node;
}

}  // namespace detail

/// Tanh-sinh quadrature on (0, 1) of an integrand given in terms of ln t and
/// ln(1-t). Step h halves each level starting from h = 1; the level-to-level
/// difference is the error estimate. Stops early once that estimate drops
/// below 10^-digits relative to the value.
inline QuadratureResult tanh_sinh_01(const std::function<BigFl(const BigFl& log_t, const BigFl& log_one_minus)>& f,
                                     int digits, int max_levels) {
  if (max_levels < 1) throw std::domain_error("tanh_sinh_01: need at least one level");
  PrecisionScope scope(digits + 10);
  const BigFl pi = const_pi(digits + 10);
  const BigFl half_pi = pi / 2L;
  const BigFl negligible = pow10(-(digits + 15));
  constexpr double kMaxAbscissa = 12.0;

  auto term_at = [&](const BigFl& x) {
    const TanhSinhNode node = detail::tanh_sinh_node(x, half_pi, pi);
    return f(node.log_t, node.log_one_minus) * node.weight;
  };

  // Sums f*w over x = (k + offset) * h for k = 0, 1, ... and its mirror,
  // walking outward until the terms are negligible.
  auto sweep = [&](const BigFl& h, bool odd_only) {
    BigFl total;
    for (int side : {1, -1}) {
      for (long k = odd_only ? 1 : (side == 1 ? 0 : 1);; k += odd_only ? 2 : 1) {
        const BigFl x = h * (side * k);
        if (abs(x) > BigFl(kMaxAbscissa)) break;
        const BigFl t = term_at(x);
        if (!t.is_finite()) throw std::runtime_error("tanh_sinh_01: non-finite integrand");
        total += t;
        if (abs(x) > BigFl(1L) && abs(t) < negligible) break;
      }
    }
    return total;
  };

  QuadratureResult out;
  BigFl h(1L);
  BigFl sum = sweep(h, false);
  BigFl estimate = sum * h;
  for (int level = 1; level <= max_levels; ++level) {
    h /= 2L;
    sum += sweep(h, true);
    BigFl next = sum * h;
    out.level_errors.push_back(abs(next - estimate));
    estimate = std::move(next);
    out.levels_used = level;
    const BigFl target = pow10(-digits) * max(abs(estimate), BigFl(1L));
    if (level >= 3 && out.level_errors.back() < target) {
      out.converged = true;
      break;
    }
  }
  out.value = estimate;
  out.error_estimate = out.level_errors.back();
  if (!out.converged) {
    const auto n = out.level_errors.size();
    if (n >= 2 && out.level_errors[n - 1] >= out.level_errors[n - 2]) {
      out.failure = "tanh-sinh error estimate stopped decreasing at level " + std::to_string(out.levels_used);
    } else {
      // still shrinking: accept the last level with its estimate
      out.converged = true;
    }
  }
  return out;
}

/// A_n(s) = (-1)^n integral_0^1 (1-t)^(s-1) ln^n t dt.
inline QuadratureResult quadrature_An(int n, int s, int digits, int max_levels) {
  if (n < 2) throw std::domain_error("quadrature_An: n must be >= 2");
  if (s < 0) throw std::domain_error("quadrature_An: s must be >= 0");
  const long sign = (n % 2 == 0) ? 1L : -1L;
  return tanh_sinh_01(
      [&](const BigFl& log_t, const BigFl& log_one_minus) {
        BigFl v = pow(log_t, n) * sign;
        if (s != 1) v *= exp(log_one_minus * static_cast<long>(s - 1));
        return v;
      },
      digits, max_levels);
}

}  // namespace tornzeta
