#pragma once

#include <cstdint>
#include <iterator>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "tornzeta/bigfloat.hpp"
#include "tornzeta/rat.hpp"

namespace tornzeta {

inline Rat binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0) throw std::domain_error("binomial: negative argument");
  if (k > n) return Rat(0);
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(c);
}

namespace detail {

// B_0..B_n via sum_{j=0}^{m} C(m+1, j) B_j = 0, grown on demand.
class BernoulliCache {
 public:
  Rat get(std::int64_t n) {
    std::lock_guard lock(mu_);
    if (values_.empty()) values_.emplace_back(1);
    for (auto m = static_cast<std::int64_t>(values_.size()); m <= n; ++m) {
      if (m >= 3 && m % 2 == 1) {
        values_.emplace_back(0);
        continue;
      }
      Rat acc(0);
      for (std::int64_t j = 0; j < m; ++j) {
        if (!values_[j].is_zero()) acc += binomial(m + 1, j) * values_[j];
      }
      values_.push_back(-acc / Rat(m + 1));
    }
    return values_[static_cast<std::size_t>(n)];
  }

 private:
  std::mutex mu_;
  std::vector<Rat> values_;
};

inline BernoulliCache& bernoulli_cache() {
  static BernoulliCache cache;
  return cache;
}

}  // namespace detail

/// Bernoulli number with the B_1 = -1/2 convention.
inline Rat bernoulli(std::int64_t n) {
  if (n < 0) throw std::domain_error("bernoulli: negative index");
  return detail::bernoulli_cache().get(n);
}

/// Incrementally grown table of H_n, O_m and H_n^(m) for any field-like
/// scalar T (Rat for exact work, BigFl for the numeric oracles).
///
/// Growth is amortised O(1) per index; nothing is recomputed from scratch.
/// Not internally synchronised: share read-only after warm-up, or use the
/// locked free functions below.
template <class T>
class BasicHarmonicTable {
 public:
  BasicHarmonicTable() : h_{T(0)}, o_{T(0)} {}

  void reserve(std::int64_t n) {
    h_.reserve(static_cast<std::size_t>(n) + 1);
    o_.reserve(static_cast<std::size_t>(n) + 1);
  }

  const T& h(std::int64_t n) {
    check(n);
    while (static_cast<std::int64_t>(h_.size()) <= n) {
      const auto k = static_cast<std::int64_t>(h_.size());
      h_.push_back(h_.back() + inv_product<T>(k));
    }
    return h_[static_cast<std::size_t>(n)];
  }

  const T& odd(std::int64_t m) {
    check(m);
    while (static_cast<std::int64_t>(o_.size()) <= m) {
      const auto k = static_cast<std::int64_t>(o_.size());
      o_.push_back(o_.back() + inv_product<T>(2 * k - 1));
    }
    return o_[static_cast<std::size_t>(m)];
  }

  /// H_n^(order); order may be zero or negative.
  const T& gen(std::int64_t n, std::int64_t order) {
    check(n);
    if (order == 1) return h(n);
    auto it = gen_.begin();
    for (; it != gen_.end(); ++it)
      if (it->order == order) break;
    if (it == gen_.end()) {
      gen_.push_back({order, {T(0)}});
      it = std::prev(gen_.end());
    }
    auto& v = it->values;
    while (static_cast<std::int64_t>(v.size()) <= n) {
      const auto k = static_cast<std::int64_t>(v.size());
      v.push_back(v.back() + power_term(k, order));
    }
    return v[static_cast<std::size_t>(n)];
  }

  [[nodiscard]] std::int64_t size() const { return static_cast<std::int64_t>(h_.size()) - 1; }

 private:
  struct GenRow {
    std::int64_t order;
    std::vector<T> values;
  };

  static void check(std::int64_t n) {
    if (n < 0) throw std::domain_error("harmonic table: negative index");
  }

  static T power_term(std::int64_t k, std::int64_t order) {
    if (order >= 0) {
      T d(1);
      for (std::int64_t i = 0; i < order; ++i) d = d * T(k);
      return T(1) / d;
    }
    T p(1);
    for (std::int64_t i = 0; i < -order; ++i) p = p * T(k);
    return p;
  }

  std::vector<T> h_;
  std::vector<T> o_;
  std::vector<GenRow> gen_;
};

using HarmonicTable = BasicHarmonicTable<Rat>;

namespace detail {

struct SharedHarmonic {
  std::mutex mu;
  HarmonicTable table;
};

inline SharedHarmonic& shared_harmonic() {
  static SharedHarmonic s;
  return s;
}

}  // namespace detail

inline Rat harmonic(std::int64_t n) {
  auto& s = detail::shared_harmonic();
  std::lock_guard lock(s.mu);
  return s.table.h(n);
}

inline Rat harmonic_gen(std::int64_t n, std::int64_t m) {
  auto& s = detail::shared_harmonic();
  std::lock_guard lock(s.mu);
  return s.table.gen(n, m);
}

inline Rat odd_harmonic(std::int64_t m) {
  auto& s = detail::shared_harmonic();
  std::lock_guard lock(s.mu);
  return s.table.odd(m);
}

}  // namespace tornzeta
