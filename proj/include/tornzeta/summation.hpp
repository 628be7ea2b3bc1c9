#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tornzeta/bigfloat.hpp"

namespace tornzeta {

/// Neumaier-compensated running sum. With an exact scalar (Rat) the
/// compensation term stays identically zero.
template <class T>
class CompensatedSum {
 public:
  CompensatedSum() : sum_(0L), comp_(0L) {}

  void add(const T& x) {
    T t = sum_ + x;
    if (abs(sum_) >= abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = std::move(t);
  }

  [[nodiscard]] T value() const { return sum_ + comp_; }

 private:
  T sum_;
  T comp_;
};

/// Partial sum S(N) recorded at cutoff N.
struct Checkpoint {
  std::int64_t n = 0;
  BigFl partial;
};

/// Cutoffs n_max, n_max/r, n_max/r^2, ... (count of them, distinct, all >= floor),
/// with ratio r = 2 unless that would dip below floor, in which case r shrinks
/// so the last cutoff lands near floor.
inline std::vector<std::int64_t> checkpoint_schedule(std::int64_t n_max, int count, std::int64_t floor) {
  std::vector<std::int64_t> out;
  if (count <= 0 || n_max < floor) return out;
  double ratio = 2.0;
  if (count > 1) ratio = std::min(2.0, std::pow(static_cast<double>(n_max) / floor, 1.0 / (count - 1)));
  double x = static_cast<double>(n_max);
  for (int i = 0; i < count; ++i, x /= ratio) {
    const auto n = static_cast<std::int64_t>(std::llround(x));
    if (n < floor) break;
    if (!out.empty() && n >= out.back()) continue;
    out.push_back(n);
  }
  return out;
}

namespace detail {

// Solves the square system A x = b in place (partial pivoting).
inline std::vector<BigFl> solve_dense(std::vector<std::vector<BigFl>> a, std::vector<BigFl> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
    if (a[piv][col].is_zero()) throw std::runtime_error("extrapolation: singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const BigFl f = a[r][col] / a[col][col];
      if (f.is_zero()) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<BigFl> x(n);
  for (std::size_t i = n; i-- > 0;) {
    BigFl acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace detail

/// Number of checkpoints consumed by one extrapolation fit.
inline int extrapolation_points(int log_degree, int orders) { return 1 + orders * (log_degree + 1); }

/// Fits S(N) = S + sum_{j=1..orders} sum_{p=0..log_degree} c_jp ln(N)^p / N^j
/// exactly through the given checkpoints and returns the limit S.
inline BigFl extrapolate_limit(std::span<const Checkpoint> pts, int log_degree, int orders) {
  const auto unknowns = static_cast<std::size_t>(extrapolation_points(log_degree, orders));
  if (pts.size() != unknowns) throw std::invalid_argument("extrapolate_limit: wrong checkpoint count");
  PrecisionScope scope(static_cast<int>(pts.front().partial.bits() / 3.32) + 20);
  std::vector<std::vector<BigFl>> a(unknowns, std::vector<BigFl>(unknowns));
  std::vector<BigFl> b(unknowns);
  for (std::size_t i = 0; i < unknowns; ++i) {
    const BigFl n(static_cast<long>(pts[i].n));
    const BigFl ln = log(n);
    a[i][0] = BigFl(1L);
    std::size_t col = 1;
    BigFl inv_pow(1L);
    for (int j = 1; j <= orders; ++j) {
      inv_pow /= n;
      BigFl lp(1L);
      for (int p = 0; p <= log_degree; ++p, ++col) {
        a[i][col] = lp * inv_pow;
        lp *= ln;
      }
    }
    b[i] = pts[i].partial;
  }
  return detail::solve_dense(std::move(a), std::move(b))[0];
}

struct Extrapolated {
  BigFl value;
  BigFl error_estimate;
};

/// Limit from the leading checkpoints, with the distance to the fit through
/// the next set (shifted one cutoff down) as the error estimate.
/// `pts` must hold extrapolation_points(...) + 1 checkpoints, largest first.
inline Extrapolated extrapolate_with_estimate(std::span<const Checkpoint> pts, int log_degree, int orders) {
  const auto k = static_cast<std::size_t>(extrapolation_points(log_degree, orders));
  if (pts.size() < k + 1) throw std::invalid_argument("extrapolate_with_estimate: not enough checkpoints");
  BigFl best = extrapolate_limit(pts.subspan(0, k), log_degree, orders);
  BigFl shifted = extrapolate_limit(pts.subspan(1, k), log_degree, orders);
  BigFl err = abs(best - shifted);
  return {std::move(best), std::move(err)};
}

}  // namespace tornzeta
