#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tornzeta/bigfloat.hpp"
#include "tornzeta/exact_arith.hpp"
#include "tornzeta/rat.hpp"
#include "tornzeta/series_spec.hpp"
#include "tornzeta/summation.hpp"

namespace tornzeta {

/// Largest n accepted for the diagonal A_n reduction.
inline constexpr int kMaxDiagonalAn = 6;

/// Number of summation indices of the raw (definitional) series.
inline int raw_dim(const SeriesSpec& spec) {
  using namespace series;
  return std::visit(Overloaded{
                        [](const A3&) { return 2; },
                        [](const An& x) { return x.n - 1; },
                        [](const HalfInt&) { return 2; },
                        [](const BaseT&) { return 2; },
                        [](const S111&) { return 2; },
                        [](const TornheimRaw&) { return 2; },
                        [](const BInter&) { return 2; },
                        [](const auto&) { return 1; },
                    },
                    spec);
}

/// Smallest value of each raw index (0 or 1).
inline int raw_lower(const SeriesSpec& spec) {
  using namespace series;
  return std::visit(Overloaded{
                        [](const HalfInt&) { return 0; },
                        [](const BaseT&) { return 0; },
                        [](const OddSquares&) { return 0; },
                        [](const auto&) { return 1; },
                    },
                    spec);
}

/// Whether the family has a single-index (diagonal) reduction.
inline bool has_diagonal(const SeriesSpec& spec) {
  if (std::holds_alternative<series::TornheimRaw>(spec)) return false;
  if (const auto* a = std::get_if<series::An>(&spec)) return a->n <= kMaxDiagonalAn;
  return true;
}

/// First diagonal index K (the diagonal index is the sum of the raw indices).
inline std::int64_t diagonal_first(const SeriesSpec& spec) {
  return static_cast<std::int64_t>(raw_dim(spec)) * raw_lower(spec);
}

/// Highest power of ln N in the asymptotic expansion of the diagonal terms.
inline int log_degree(const SeriesSpec& spec) {
  using namespace series;
  return std::visit(Overloaded{
                        [](const A3&) { return 2; },
                        [](const An& x) { return x.n - 1; },
                        [](const EvenOddAux&) { return 0; },
                        [](const OddSquares&) { return 0; },
                        [](const auto&) { return 1; },
                    },
                    spec);
}

namespace detail {

template <class T>
T inv_dyn(std::span<const std::int64_t> factors) {
  if constexpr (std::is_same_v<T, Rat>) {
    mpz_class d = 1;
    for (auto f : factors) d *= mpz_class(static_cast<long>(f));
    return Rat(mpz_class(1), d);
  } else {
    T out(1L);
    std::int64_t acc = 1;
    for (auto f : factors) {
      std::int64_t next = 0;
      if (__builtin_mul_overflow(acc, f, &next)) {
        out /= static_cast<long>(acc);
        acc = f;
      } else {
        acc = next;
      }
    }
    out /= static_cast<long>(acc);
    return out;
  }
}

template <class T>
T factorial_t(int n) {
  T f(1L);
  for (int i = 2; i <= n; ++i) f *= T(static_cast<long>(i));
  return f;
}

}  // namespace detail

/// Terms of the single-index reduction, produced in order K = first, first+1, ...
///
///   A3(s):     2 H_{K-1} H_{K+s} / (K (K+s))                    K >= 2
///   An(n,s):   c_{n-1}(K) H_{K+s} / (K+s)                        K >= n-1
///              c_j(K) = sum_{k_1+..+k_j=K} 1/(k_1..k_j)
///                     = (j!/K) e_{j-1}(1, 1/2, ..., 1/(K-1))
///   S111:      2 H_{K-1} / K^2                                    K >= 2
///   BaseT(d):  O_{K+1} / ((K+1)(2K+d))                            K >= 0
///   HalfInt:   16 O_{K+1} / ((K+1)(2K+1)(2K+2)), (2K+2)(2K+3), 32 (2K+1)(2K+2)(2K+3)
///   BInter:    (O_K - 1) / ((K+1)(2K+1))                           K >= 2
///   single sums (aXL, ln, on, evenodd, oddsquares) term by term.
template <class T>
class DiagonalSeries {
 public:
  explicit DiagonalSeries(const SeriesSpec& spec) : spec_(spec), k_(diagonal_first(spec)) {
    validate(spec);
    if (!has_diagonal(spec))
      throw std::invalid_argument("no diagonal reduction for " + to_string(spec));
    init();
  }

  [[nodiscard]] std::int64_t index() const { return k_; }

  /// Term at the current index, then advances.
  T next() {
    using namespace series;
    const std::int64_t k = k_;
    T term = std::visit(
        Overloaded{
            [&](const A3& x) {
              T t = ha_ * hb_ * inv_product<T>(k, k + x.s);
              t *= T(2L);
              ha_ += inv_product<T>(k);
              hb_ += inv_product<T>(k + x.s + 1);
              return t;
            },
            [&](const An& x) {
              T t = fact_ * e_.back() * hb_ * inv_product<T>(k, k + x.s);
              const T add = inv_product<T>(k);
              for (std::size_t r = e_.size(); r-- > 1;) e_[r] += e_[r - 1] * add;
              hb_ += inv_product<T>(k + x.s + 1);
              return t;
            },
            [&](const AXL& x) {
              T t = hb_ * inv_product<T>(k, k + x.k);
              hb_ += inv_product<T>(k + x.k + 1);
              return t;
            },
            [&](const S111&) {
              T t = ha_ * inv_product<T>(k, k);
              t *= T(2L);
              ha_ += inv_product<T>(k);
              return t;
            },
            [&](const LnSeries&) {
              // ha_ = H_{2m+1}, hb_ = H_m
              T t = (ha_ * T(2L) - hb_) * inv_product<T>(2 * k, 2 * k + 1);
              ha_ += inv_product<T>(2 * k + 2);
              ha_ += inv_product<T>(2 * k + 3);
              hb_ += inv_product<T>(k + 1);
              return t;
            },
            [&](const OnSeries&) {
              T t = odd_ * inv_product<T>(2 * k, 2 * k + 1);
              odd_ += inv_product<T>(2 * k + 1);
              return t;
            },
            [&](const BaseT& x) {
              T t = odd_ * inv_product<T>(k + 1, 2 * k + x.d);
              odd_ += inv_product<T>(2 * k + 3);
              return t;
            },
            [&](const HalfInt& x) {
              T t = odd_;
              switch (x.variant) {
                case 'a': t *= inv_product<T>(k + 1, 2 * k + 1, 2 * k + 2); t *= T(16L); break;
                case 'b': t *= inv_product<T>(k + 1, 2 * k + 2, 2 * k + 3); t *= T(16L); break;
                default: t *= inv_product<T>(k + 1, 2 * k + 1, 2 * k + 2, 2 * k + 3); t *= T(32L); break;
              }
              odd_ += inv_product<T>(2 * k + 3);
              return t;
            },
            [&](const EvenOddAux&) { return inv_product<T>(2 * k, 2 * k + 1); },
            [&](const OddSquares&) { return inv_product<T>(2 * k + 1, 2 * k + 1); },
            [&](const BInter&) {
              T t = (odd_ - T(1L)) * inv_product<T>(k + 1, 2 * k + 1);
              odd_ += inv_product<T>(2 * k + 1);
              return t;
            },
            [&](const TornheimRaw&) -> T { throw std::logic_error("unreachable"); },
        },
        spec_);
    ++k_;
    return term;
  }

 private:
  void init() {
    using namespace series;
    BasicHarmonicTable<T> table;
    std::visit(Overloaded{
                   [&](const A3& x) {
                     ha_ = table.h(k_ - 1);
                     hb_ = table.h(k_ + x.s);
                   },
                   [&](const An& x) {
                     fact_ = detail::factorial_t<T>(x.n - 1);
                     // e_0..e_{n-2} over {1, ..., 1/(K-1)} with K = n-1
                     e_.assign(static_cast<std::size_t>(x.n - 1), T(0L));
                     e_[0] = T(1L);
                     for (std::int64_t i = 1; i < k_; ++i) {
                       const T add = inv_product<T>(i);
                       for (std::size_t r = e_.size(); r-- > 1;) e_[r] += e_[r - 1] * add;
                     }
                     hb_ = table.h(k_ + x.s);
                   },
                   [&](const AXL& x) { hb_ = table.h(k_ + x.k); },
                   [&](const S111&) { ha_ = table.h(k_ - 1); },
                   [&](const LnSeries&) {
                     ha_ = table.h(2 * k_ + 1);
                     hb_ = table.h(k_);
                   },
                   [&](const OnSeries&) { odd_ = table.odd(k_); },
                   [&](const BaseT&) { odd_ = table.odd(k_ + 1); },
                   [&](const HalfInt&) { odd_ = table.odd(k_ + 1); },
                   [&](const BInter&) { odd_ = table.odd(k_); },
                   [](const auto&) {},
               },
               spec_);
  }

  SeriesSpec spec_;
  std::int64_t k_;
  T ha_{0L};
  T hb_{0L};
  T odd_{0L};
  T fact_{1L};
  std::vector<T> e_;
};

/// Evaluates the definitional summand at a raw index tuple. Keeps its own
/// harmonic table, grown to `max_index` up front.
template <class T>
class RawTerms {
 public:
  RawTerms(const SeriesSpec& spec, std::int64_t max_index_sum) : spec_(spec) {
    validate(spec);
    const std::int64_t need = 2 * max_index_sum + shift() + 4;
    table_.reserve(need);
    (void)table_.h(need);
    (void)table_.odd(max_index_sum + 2);
  }

  T operator()(std::span<const std::int64_t> idx) {
    using namespace series;
    return std::visit(
        Overloaded{
            [&](const A3& x) {
              const std::int64_t n = idx[0], m = idx[1];
              return table_.h(n + m + x.s) * inv_product<T>(n, m, n + m + x.s);
            },
            [&](const An& x) {
              std::int64_t sum = 0;
              factors_.clear();
              for (auto k : idx) {
                sum += k;
                factors_.push_back(k);
              }
              factors_.push_back(sum + x.s);
              return table_.h(sum + x.s) * detail::inv_dyn<T>(factors_);
            },
            [&](const AXL& x) {
              const std::int64_t m = idx[0];
              return table_.h(m + x.k) * inv_product<T>(m, m + x.k);
            },
            [&](const LnSeries&) {
              const std::int64_t m = idx[0];
              return (table_.h(2 * m + 1) * T(2L) - table_.h(m)) * inv_product<T>(2 * m, 2 * m + 1);
            },
            [&](const OnSeries&) {
              const std::int64_t m = idx[0];
              return table_.odd(m) * inv_product<T>(2 * m, 2 * m + 1);
            },
            [&](const HalfInt& x) {
              // (x + 1/2) = (2x + 1)/2 for each factor
              const std::int64_t m = idx[0], n = idx[1], s = m + n;
              switch (x.variant) {
                case 'a': return inv_product<T>(2 * m + 1, 2 * n + 1, 2 * s + 1, 2 * s + 2) * T(16L);
                case 'b': return inv_product<T>(2 * m + 1, 2 * n + 1, 2 * s + 2, 2 * s + 3) * T(16L);
                default: return inv_product<T>(2 * m + 1, 2 * n + 1, 2 * s + 1, 2 * s + 2, 2 * s + 3) * T(32L);
              }
            },
            [&](const BaseT& x) {
              const std::int64_t m = idx[0], n = idx[1];
              return inv_product<T>(2 * m + 1, 2 * n + 1, 2 * m + 2 * n + x.d);
            },
            [&](const S111&) {
              const std::int64_t n = idx[0], m = idx[1];
              return inv_product<T>(n, m, n + m);
            },
            [&](const EvenOddAux&) {
              const std::int64_t m = idx[0];
              return inv_product<T>(2 * m, 2 * m + 1);
            },
            [&](const OddSquares&) {
              const std::int64_t k = idx[0];
              return inv_product<T>(2 * k + 1, 2 * k + 1);
            },
            [&](const TornheimRaw& x) {
              const std::int64_t m = idx[0], n = idx[1];
              factors_.clear();
              for (int i = 0; i < x.a; ++i) factors_.push_back(m);
              for (int i = 0; i < x.b; ++i) factors_.push_back(n);
              for (int i = 0; i < x.c; ++i) factors_.push_back(m + n);
              return detail::inv_dyn<T>(factors_);
            },
            [&](const BInter&) {
              const std::int64_t m = idx[0], n = idx[1];
              return inv_product<T>(2 * m + 1, 2 * n + 1, 2 * m + 2 * n + 1);
            },
        },
        spec_);
  }

 private:
  [[nodiscard]] std::int64_t shift() const {
    if (const auto* a = std::get_if<series::A3>(&spec_)) return a->s;
    if (const auto* a = std::get_if<series::An>(&spec_)) return a->s;
    if (const auto* a = std::get_if<series::AXL>(&spec_)) return a->k;
    return 0;
  }

  SeriesSpec spec_;
  BasicHarmonicTable<T> table_;
  std::vector<std::int64_t> factors_;
};

/// Visits every tuple of [lower..edge]^dim whose maximum equals `edge`, in a
/// fixed order (position of the first coordinate equal to `edge`, then
/// lexicographic).
template <class F>
void for_each_in_shell(int dim, std::int64_t lower, std::int64_t edge, F&& visit) {
  std::vector<std::int64_t> idx(static_cast<std::size_t>(dim));
  for (int p = 0; p < dim; ++p) {
    if (edge == lower && p > 0) break;
    // coords before p in [lower, edge-1], coord p = edge, after p in [lower, edge]
    if (p > 0 && edge - 1 < lower) continue;
    for (int i = 0; i < dim; ++i) idx[static_cast<std::size_t>(i)] = (i == p) ? edge : lower;
    while (true) {
      visit(std::span<const std::int64_t>(idx));
      int i = dim - 1;
      for (; i >= 0; --i) {
        if (i == p) continue;
        const std::int64_t hi = i < p ? edge - 1 : edge;
        if (idx[static_cast<std::size_t>(i)] < hi) {
          ++idx[static_cast<std::size_t>(i)];
          break;
        }
        idx[static_cast<std::size_t>(i)] = lower;
      }
      if (i < 0) break;
    }
  }
}

/// Raw partial sums over the boxes [lower..N]^dim, accumulated shell by
/// shell; `on_checkpoint(N, partial)` fires for each requested N (ascending).
template <class T, class F>
T raw_box_sum(const SeriesSpec& spec, std::int64_t edge, std::span<const std::int64_t> checkpoints_ascending,
              F&& on_checkpoint) {
  const int dim = raw_dim(spec);
  const std::int64_t lower = raw_lower(spec);
  RawTerms<T> term(spec, static_cast<std::int64_t>(dim) * edge);
  CompensatedSum<T> acc;
  std::size_t next_cp = 0;
  for (std::int64_t e = lower; e <= edge; ++e) {
    for_each_in_shell(dim, lower, e, [&](std::span<const std::int64_t> idx) { acc.add(term(idx)); });
    while (next_cp < checkpoints_ascending.size() && checkpoints_ascending[next_cp] == e) {
      on_checkpoint(e, acc.value());
      ++next_cp;
    }
  }
  return acc.value();
}

/// Raw sum over the simplex {indices >= lower, index sum <= bound}: the index
/// set covered by the diagonal reduction up to K = bound.
template <class T>
T raw_simplex_sum(const SeriesSpec& spec, std::int64_t bound) {
  const int dim = raw_dim(spec);
  const std::int64_t lower = raw_lower(spec);
  RawTerms<T> term(spec, bound);
  CompensatedSum<T> acc;
  std::vector<std::int64_t> idx(static_cast<std::size_t>(dim), lower);
  std::int64_t sum = lower * dim;
  if (sum > bound) return acc.value();
  while (true) {
    acc.add(term(std::span<const std::int64_t>(idx)));
    // odometer over the simplex, last coordinate fastest
    int i = dim - 1;
    for (; i >= 0; --i) {
      if (sum < bound) {
        ++idx[static_cast<std::size_t>(i)];
        ++sum;
        break;
      }
      sum -= idx[static_cast<std::size_t>(i)] - lower;
      idx[static_cast<std::size_t>(i)] = lower;
    }
    if (i < 0) break;
  }
  return acc.value();
}

/// Diagonal partial sum over K = first..bound.
template <class T>
T diagonal_partial_sum(const SeriesSpec& spec, std::int64_t bound) {
  DiagonalSeries<T> series(spec);
  CompensatedSum<T> acc;
  while (series.index() <= bound) acc.add(series.next());
  return acc.value();
}

namespace detail {

// integral_N^inf (ln x + c)^p x^-q dx
//   = (ln N + c)^p / ((q-1) N^(q-1)) + p/(q-1) * (same with p-1)
inline BigFl log_power_tail(std::int64_t n, int p, int q, double c) {
  const BigFl big_n(static_cast<long>(n));
  const BigFl lc = log(big_n) + BigFl(c);
  const BigFl base = BigFl(1L) / (pow(big_n, q - 1) * static_cast<long>(q - 1));
  BigFl acc = base;  // p = 0
  BigFl lp(1L);
  for (int j = 1; j <= p; ++j) {
    lp *= lc;
    acc = lp * base + acc * static_cast<long>(j) / static_cast<long>(q - 1);
  }
  return acc;
}

}  // namespace detail

/// Certified upper bound on sum_{K > N} of the diagonal terms, by integral
/// comparison with a decreasing majorant f(x) >= term(x) for x >= N >= 10.
/// Uses H_n <= ln n + 1 and O_m <= (ln m + 3.5)/2 for m >= 10.
///
///   A3            2 (ln x + 1)^2 / x^2
///   An            (n-1) (ln x + 1)^(n-1) / x^2       (e_r <= H^r / r!)
///   aXL           (ln x + 1) / x^2
///   S111          2 (ln x + 1) / x^2
///   Tornheim      2 (ln x + 1) / x^(c+1)
///   ln            (ln x + 3.5) / (4 x^2)
///   on            (ln x + 3.5) / (8 x^2)
///   BaseT, BInter (ln x + 3.5) / (4 x^2)
///   HalfInt a, b  2 (ln x + 3.5) / x^3;   c: 2 (ln x + 3.5) / x^4
///   evenodd       1 / (4 x^2)
///   oddsquares    1 / (2x + 1)^2
inline BigFl tail_estimate(const SeriesSpec& spec, std::int64_t n) {
  using namespace series;
  validate(spec);
  if (n < 10) throw std::domain_error("tail_estimate: N must be >= 10");
  using detail::log_power_tail;
  return std::visit(Overloaded{
                        [&](const A3&) { return log_power_tail(n, 2, 2, 1.0) * 2L; },
                        [&](const An& x) { return log_power_tail(n, x.n - 1, 2, 1.0) * static_cast<long>(x.n - 1); },
                        [&](const AXL&) { return log_power_tail(n, 1, 2, 1.0); },
                        [&](const S111&) { return log_power_tail(n, 1, 2, 1.0) * 2L; },
                        [&](const TornheimRaw& x) { return log_power_tail(n, 1, x.c + 1, 1.0) * 2L; },
                        [&](const LnSeries&) { return log_power_tail(n, 1, 2, 3.5) / 4L; },
                        [&](const OnSeries&) { return log_power_tail(n, 1, 2, 3.5) / 8L; },
                        [&](const BaseT&) { return log_power_tail(n, 1, 2, 3.5) / 4L; },
                        [&](const BInter&) { return log_power_tail(n, 1, 2, 3.5) / 4L; },
                        [&](const HalfInt& x) {
                          return log_power_tail(n, 1, x.variant == 'c' ? 4 : 3, 3.5) * 2L;
                        },
                        [&](const EvenOddAux&) { return BigFl(1L) / (4L * BigFl(static_cast<long>(n))); },
                        [&](const OddSquares&) { return BigFl(1L) / (2L * BigFl(static_cast<long>(2 * n + 1))); },
                    },
                    spec);
}

/// Bound on what the raw box [lower..N]^dim leaves out: every missing tuple
/// has index sum >= N + dim (lower 1) or >= N + 1 (lower 0).
inline BigFl raw_box_tail(const SeriesSpec& spec, std::int64_t edge) {
  const std::int64_t shift = raw_lower(spec) == 1 ? raw_dim(spec) - 1 : 0;
  return tail_estimate(spec, edge + shift);
}

}  // namespace tornzeta
