#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tornzeta/bigfloat.hpp"
#include "tornzeta/families.hpp"
#include "tornzeta/quadrature.hpp"
#include "tornzeta/series_spec.hpp"
#include "tornzeta/summation.hpp"

namespace tornzeta {

enum class Method { Raw, Diagonal, Quadrature };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::Raw: return "raw";
    case Method::Diagonal: return "diagonal";
    case Method::Quadrature: return "quadrature";
  }
  return "?";
}

inline Method parse_method(std::string_view text) {
  if (text == "raw") return Method::Raw;
  if (text == "diagonal") return Method::Diagonal;
  if (text == "quadrature") return Method::Quadrature;
  throw std::invalid_argument("unknown method '" + std::string(text) + "' (raw|diagonal|quadrature)");
}

struct NumericCfg {
  int digits = 50;
  std::int64_t n_max = 1'000'000;
  int quad_levels = 10;
  Method method = Method::Diagonal;
  /// Fit the remainder's asymptotic form through partial sums at
  /// n_max, n_max/2, ... and report the fitted limit.
  bool extrapolate = true;
};

inline void validate(const NumericCfg& cfg) {
  if (cfg.digits < kMinDigits) throw std::invalid_argument("NumericCfg: digits must be >= 30");
  if (cfg.n_max < 10) throw std::invalid_argument("NumericCfg: n_max must be >= 10");
  if (cfg.quad_levels < 3 || cfg.quad_levels > 16) throw std::invalid_argument("NumericCfg: quad_levels must be in 3..16");
}

struct OracleResult {
  BigFl value;
  Method method = Method::Diagonal;
  /// Raw: box edge; diagonal: last diagonal index; quadrature: 0.
  std::int64_t n_used = 0;
  int levels_used = 0;
  /// Truncated partial sum before any extrapolation (series methods).
  BigFl partial_sum;
  /// Certified bound on the remainder after partial_sum; 0 for quadrature,
  /// nullopt where no majorant is available.
  std::optional<BigFl> tail_bound;
  /// Extrapolation or quadrature error estimate.
  BigFl error_estimate;
  bool extrapolated = false;
  bool ok = true;
  std::string failure;
  double elapsed_seconds = 0.0;

  /// What `value` may be off by: the error estimate for extrapolated and
  /// quadrature values, otherwise the tail bound (nullopt if unknown).
  [[nodiscard]] std::optional<BigFl> uncertainty() const {
    if (method == Method::Quadrature || extrapolated) return error_estimate;
    if (!tail_bound) return std::nullopt;
    return *tail_bound + error_estimate;
  }
};

namespace detail {

class Stopwatch {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

constexpr int kExtrapolationOrders = 2;

// Checkpoints n_max, n_max/2, ... for one fit plus one for the error estimate;
// empty when the schedule would dip below `floor`.
inline std::vector<std::int64_t> fit_schedule(std::int64_t n_max, int degree, std::int64_t floor) {
  const int count = extrapolation_points(degree, kExtrapolationOrders) + 1;
  auto cps = checkpoint_schedule(n_max, count, floor);
  if (static_cast<int>(cps.size()) < count) cps.clear();
  return cps;
}

// Applies extrapolation when enabled and the fitted value is tighter than
// the certified tail bound.
inline void finish_series(OracleResult& out, const std::vector<Checkpoint>& cps, int degree, bool extrapolate) {
  out.value = out.partial_sum;
  out.error_estimate = BigFl(0L);
  if (!extrapolate || cps.empty()) return;
  std::vector<Checkpoint> largest_first(cps.rbegin(), cps.rend());
  Extrapolated ex = extrapolate_with_estimate(largest_first, degree, kExtrapolationOrders);
  if (out.tail_bound && !(ex.error_estimate < *out.tail_bound)) return;
  out.value = std::move(ex.value);
  out.error_estimate = std::move(ex.error_estimate);
  out.extrapolated = true;
}

}  // namespace detail

/// Upper bound on the diagonal remainder past N, or nullopt when the
/// majorant is not yet decreasing at N (large An orders at small N).
inline std::optional<BigFl> tail_bound_if_valid(const SeriesSpec& spec, std::int64_t n) {
  if (n < 10) return std::nullopt;
  if (const auto* a = std::get_if<series::An>(&spec)) {
    // (ln x + 1)^p / x^2 decreases once 2 (ln x + 1) >= p
    if (2.0 * (std::log(static_cast<double>(n)) + 1.0) < a->n - 1) return std::nullopt;
  }
  return tail_estimate(spec, n);
}

/// Plain truncated sum of the definitional series over the box
/// [lower..n_max]^dim, accumulated in shells.
inline OracleResult oracle_raw(const SeriesSpec& spec, const NumericCfg& cfg) {
  validate(spec);
  validate(cfg);
  detail::Stopwatch clock;
  PrecisionScope scope(cfg.digits);
  const int dim = raw_dim(spec);
  const double terms = std::pow(static_cast<double>(cfg.n_max + 1), dim);
  constexpr double kMaxRawTerms = 5e8;
  if (terms > kMaxRawTerms)
    throw std::invalid_argument("oracle_raw: box of " + std::to_string(cfg.n_max) + "^" + std::to_string(dim) +
                                " terms is too large; lower n_max");

  const int degree = log_degree(spec) + (dim > 1 ? 1 : 0);
  auto schedule = detail::fit_schedule(cfg.n_max, degree, 16);
  std::sort(schedule.begin(), schedule.end());
  std::vector<Checkpoint> cps;
  OracleResult out;
  out.method = Method::Raw;
  out.n_used = cfg.n_max;
  out.partial_sum = raw_box_sum<BigFl>(spec, cfg.n_max, schedule, [&](std::int64_t n, const BigFl& partial) {
    cps.push_back({n, partial});
  });
  const std::int64_t shift = raw_lower(spec) == 1 ? dim - 1 : 0;
  out.tail_bound = tail_bound_if_valid(spec, cfg.n_max + shift);
  detail::finish_series(out, cps, degree, cfg.extrapolate);
  out.elapsed_seconds = clock.seconds();
  return out;
}

/// Single-index reduction summed to K = n_max with incremental harmonic
/// updates.
inline OracleResult oracle_diagonal(const SeriesSpec& spec, const NumericCfg& cfg) {
  validate(spec);
  validate(cfg);
  if (!has_diagonal(spec)) {
    if (std::holds_alternative<series::An>(spec))
      throw std::invalid_argument("oracle_diagonal: An with n > 6 is not supported");
    throw std::invalid_argument("oracle_diagonal: no diagonal reduction for " + to_string(spec));
  }
  detail::Stopwatch clock;
  PrecisionScope scope(cfg.digits);
  const int degree = log_degree(spec);
  auto schedule = detail::fit_schedule(cfg.n_max, degree, 64);
  std::sort(schedule.begin(), schedule.end());

  DiagonalSeries<BigFl> series(spec);
  CompensatedSum<BigFl> acc;
  std::vector<Checkpoint> cps;
  std::size_t next_cp = 0;
  while (series.index() <= cfg.n_max) {
    const std::int64_t k = series.index();
    acc.add(series.next());
    if (next_cp < schedule.size() && schedule[next_cp] == k) {
      cps.push_back({k, acc.value()});
      ++next_cp;
    }
  }
  OracleResult out;
  out.method = Method::Diagonal;
  out.n_used = cfg.n_max;
  out.partial_sum = acc.value();
  out.tail_bound = tail_bound_if_valid(spec, cfg.n_max);
  detail::finish_series(out, cps, degree, cfg.extrapolate);
  out.elapsed_seconds = clock.seconds();
  return out;
}

/// Tanh-sinh quadrature of A_n(s) = (-1)^n integral_0^1 (1-t)^(s-1) ln^n t dt.
inline OracleResult oracle_quadrature(const SeriesSpec& spec, const NumericCfg& cfg) {
  validate(spec);
  validate(cfg);
  int n = 0;
  int s = 0;
  if (const auto* a = std::get_if<series::A3>(&spec)) {
    n = 3;
    s = a->s;
  } else if (const auto* b = std::get_if<series::An>(&spec)) {
    n = b->n;
    s = b->s;
  } else {
    throw std::invalid_argument("oracle_quadrature: only A3 and An have an integral representation");
  }
  detail::Stopwatch clock;
  PrecisionScope scope(cfg.digits);
  QuadratureResult q = quadrature_An(n, s, cfg.digits, cfg.quad_levels);
  OracleResult out;
  out.method = Method::Quadrature;
  out.value = q.value;
  out.partial_sum = q.value;
  out.error_estimate = q.error_estimate;
  out.tail_bound = BigFl(0L);
  out.levels_used = q.levels_used;
  out.ok = q.converged;
  out.failure = q.failure;
  out.elapsed_seconds = clock.seconds();
  return out;
}

inline OracleResult run_oracle(const SeriesSpec& spec, const NumericCfg& cfg) {
  switch (cfg.method) {
    case Method::Raw: return oracle_raw(spec, cfg);
    case Method::Diagonal: return oracle_diagonal(spec, cfg);
    case Method::Quadrature: return oracle_quadrature(spec, cfg);
  }
  throw std::logic_error("run_oracle: unknown method");
}

}  // namespace tornzeta
