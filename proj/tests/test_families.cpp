#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>
#include <vector>

#include "tornzeta/closed_form.hpp"
#include "tornzeta/constants.hpp"
#include "tornzeta/families.hpp"

using tornzeta::BigFl;
using tornzeta::Rat;
using tornzeta::SeriesSpec;
namespace series = tornzeta::series;

namespace {

Rat h(std::int64_t n) { return tornzeta::harmonic(n); }
Rat o(std::int64_t m) { return tornzeta::odd_harmonic(m); }
Rat inv(std::int64_t x) { return Rat(1) / Rat(static_cast<long>(x)); }

// Brute-force sum of the definitional summand over all index tuples with
// entries >= lower and index sum <= bound, written straight from the series
// definitions.
Rat brute_simplex(const SeriesSpec& spec, std::int64_t bound) {
  Rat total(0);
  auto pairs = [&](std::int64_t lower, const std::function<Rat(std::int64_t, std::int64_t)>& f) {
    for (std::int64_t a = lower; a <= bound; ++a)
      for (std::int64_t b = lower; a + b <= bound; ++b) total += f(a, b);
  };
  auto singles = [&](std::int64_t lower, const std::function<Rat(std::int64_t)>& f) {
    for (std::int64_t m = lower; m <= bound; ++m) total += f(m);
  };
  if (auto* x = std::get_if<series::A3>(&spec)) {
    pairs(1, [&](auto n, auto m) { return h(n + m + x->s) * inv(n) * inv(m) * inv(n + m + x->s); });
  } else if (auto* x = std::get_if<series::An>(&spec)) {
    const int dim = x->n - 1;
    std::function<void(int, std::int64_t, Rat)> rec = [&](int depth, std::int64_t sum, Rat prod) {
      if (depth == dim) {
        total += prod * h(sum + x->s) * inv(sum + x->s);
        return;
      }
      for (std::int64_t k = 1; sum + k + (dim - depth - 1) <= bound; ++k) rec(depth + 1, sum + k, prod * inv(k));
    };
    rec(0, 0, Rat(1));
  } else if (auto* x = std::get_if<series::AXL>(&spec)) {
    singles(1, [&](auto m) { return h(m + x->k) * inv(m) * inv(m + x->k); });
  } else if (std::holds_alternative<series::LnSeries>(spec)) {
    singles(1, [&](auto m) { return (Rat(2) * h(2 * m + 1) - h(m)) * inv(2 * m) * inv(2 * m + 1); });
  } else if (std::holds_alternative<series::OnSeries>(spec)) {
    singles(1, [&](auto m) { return o(m) * inv(2 * m) * inv(2 * m + 1); });
  } else if (auto* x = std::get_if<series::HalfInt>(&spec)) {
    const Rat half(1, 2);
    pairs(0, [&](auto m, auto n) {
      const Rat mm = Rat(static_cast<long>(m)) + half, nn = Rat(static_cast<long>(n)) + half;
      const Rat s(static_cast<long>(m + n));
      Rat d = mm * nn;
      if (x->variant == 'a') d *= (s + half) * (s + Rat(1));
      if (x->variant == 'b') d *= (s + Rat(1)) * (s + Rat(3, 2));
      if (x->variant == 'c') d *= (s + half) * (s + Rat(1)) * (s + Rat(3, 2));
      return Rat(1) / d;
    });
  } else if (auto* x = std::get_if<series::BaseT>(&spec)) {
    pairs(0, [&](auto m, auto n) { return inv(2 * m + 1) * inv(2 * n + 1) * inv(2 * m + 2 * n + x->d); });
  } else if (std::holds_alternative<series::S111>(spec)) {
    pairs(1, [&](auto n, auto m) { return inv(n) * inv(m) * inv(n + m); });
  } else if (std::holds_alternative<series::EvenOddAux>(spec)) {
    singles(1, [&](auto m) { return inv(2 * m) * inv(2 * m + 1); });
  } else if (std::holds_alternative<series::OddSquares>(spec)) {
    singles(0, [&](auto k) { return inv(2 * k + 1) * inv(2 * k + 1); });
  } else if (auto* x = std::get_if<series::TornheimRaw>(&spec)) {
    pairs(1, [&](auto m, auto n) {
      return tornzeta::pow(inv(m), x->a) * tornzeta::pow(inv(n), x->b) * tornzeta::pow(inv(m + n), x->c);
    });
  } else if (std::holds_alternative<series::BInter>(spec)) {
    pairs(1, [&](auto m, auto n) { return inv(2 * m + 1) * inv(2 * n + 1) * inv(2 * m + 2 * n + 1); });
  }
  return total;
}

std::vector<SeriesSpec> diagonal_specs() {
  return {series::A3{0},        series::A3{2},         series::A3{5},      series::An{2, 0},
          series::An{3, 1},     series::An{4, 0},      series::An{5, 2},   series::An{6, 0},
          series::AXL{0},       series::AXL{3},        series::LnSeries{}, series::OnSeries{},
          series::HalfInt{'a'}, series::HalfInt{'b'},  series::HalfInt{'c'}, series::BaseT{1},
          series::BaseT{2},     series::BaseT{3},      series::S111{},     series::EvenOddAux{},
          series::OddSquares{}, series::BInter{}};
}

// c_j(K) = sum over compositions of K into j positive parts of 1/(k_1...k_j),
// by repeated convolution.
std::vector<Rat> convolution_coeffs(int j, std::int64_t kmax) {
  std::vector<Rat> c(static_cast<std::size_t>(kmax) + 1, Rat(0));
  for (std::int64_t k = 1; k <= kmax; ++k) c[k] = inv(k);
  for (int step = 1; step < j; ++step) {
    std::vector<Rat> next(c.size(), Rat(0));
    for (std::int64_t k = 1; k <= kmax; ++k)
      for (std::int64_t i = 1; i < k; ++i) next[k] += c[i] * inv(k - i);
    c = std::move(next);
  }
  return c;
}

}  // namespace

TEST(Families, Examples) {
  using tornzeta::diagonal_partial_sum;
  const BigFl raw = tornzeta::raw_box_sum<BigFl>(series::A3{0}, 1, {}, [](auto, const auto&) {});
  EXPECT_EQ(raw.to_double(), 0.75);
  EXPECT_EQ(tornzeta::raw_box_sum<Rat>(series::A3{0}, 1, {}, [](auto, const auto&) {}), Rat(3, 4));
  EXPECT_EQ(tornzeta::raw_box_sum<Rat>(series::S111{}, 1, {}, [](auto, const auto&) {}), Rat(1, 2));
  EXPECT_EQ(tornzeta::raw_box_sum<Rat>(series::BaseT{1}, 0, {}, [](auto, const auto&) {}), Rat(1));
  EXPECT_EQ(diagonal_partial_sum<Rat>(series::A3{0}, 2), Rat(3, 4));
  EXPECT_EQ(diagonal_partial_sum<Rat>(series::OddSquares{}, 0), Rat(1));
}

TEST(Families, DiagonalMatchesBruteForceSimplex) {
  for (const auto& spec : diagonal_specs()) {
    const int dim = tornzeta::raw_dim(spec);
    const std::int64_t bound = dim <= 2 ? 50 : (dim == 3 ? 30 : 18);
    EXPECT_EQ(tornzeta::diagonal_partial_sum<Rat>(spec, bound), brute_simplex(spec, bound)) << tornzeta::to_string(spec);
    EXPECT_EQ(tornzeta::raw_simplex_sum<Rat>(spec, bound), brute_simplex(spec, bound)) << tornzeta::to_string(spec);
  }
}

TEST(Families, RawSimplexForTornheim) {
  for (const auto& spec : {SeriesSpec(series::TornheimRaw{1, 1, 1}), SeriesSpec(series::TornheimRaw{2, 1, 3})})
    EXPECT_EQ(tornzeta::raw_simplex_sum<Rat>(spec, 30), brute_simplex(spec, 30));
}

TEST(Families, AnTermsMatchConvolution) {
  constexpr std::int64_t kMax = 40;
  for (int n = 2; n <= tornzeta::kMaxDiagonalAn; ++n) {
    const auto c = convolution_coeffs(n - 1, kMax);
    for (int s : {0, 1, 4}) {
      tornzeta::DiagonalSeries<Rat> series(series::An{n, s});
      while (series.index() <= kMax) {
        const std::int64_t k = series.index();
        EXPECT_EQ(series.next(), c[k] * h(k + s) * inv(k + s)) << "n=" << n << " s=" << s << " K=" << k;
      }
    }
  }
}

TEST(Families, BigFloatDiagonalTracksExact) {
  tornzeta::PrecisionScope scope(50);
  const BigFl eps = tornzeta::pow10(-40);
  for (const auto& spec : diagonal_specs()) {
    const Rat exact = tornzeta::diagonal_partial_sum<Rat>(spec, 60);
    const BigFl approx = tornzeta::diagonal_partial_sum<BigFl>(spec, 60);
    EXPECT_LT(tornzeta::abs(approx - BigFl(exact)), eps) << tornzeta::to_string(spec);
  }
}

TEST(FamiliesProperties, RawTermsSymmetric) {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<std::int64_t> idx(1, 500);
  const std::vector<SeriesSpec> symmetric = {series::A3{3},        series::S111{},   series::BaseT{2},
                                             series::HalfInt{'c'}, series::BInter{}, series::TornheimRaw{2, 2, 1}};
  for (const auto& spec : symmetric) {
    tornzeta::RawTerms<Rat> term(spec, 1000);
    for (int trial = 0; trial < 100; ++trial) {
      const std::int64_t a = idx(rng), b = idx(rng);
      const std::int64_t ab[] = {a, b}, ba[] = {b, a};
      EXPECT_EQ(term(ab), term(ba)) << tornzeta::to_string(spec);
    }
  }
  tornzeta::RawTerms<Rat> an(series::An{5, 1}, 100);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::int64_t> v = {idx(rng) % 25 + 1, idx(rng) % 25 + 1, idx(rng) % 25 + 1, idx(rng) % 25 + 1};
    const Rat base = an(v);
    std::shuffle(v.begin(), v.end(), rng);
    EXPECT_EQ(an(v), base);
  }
}

TEST(FamiliesProperties, ShellsPartitionTheBox) {
  for (int dim = 1; dim <= 4; ++dim) {
    for (std::int64_t lower : {0, 1}) {
      constexpr std::int64_t kEdge = 6;
      std::set<std::vector<std::int64_t>> seen;
      std::size_t visits = 0;
      for (std::int64_t e = lower; e <= kEdge; ++e) {
        tornzeta::for_each_in_shell(dim, lower, e, [&](std::span<const std::int64_t> idx) {
          ++visits;
          EXPECT_EQ(*std::max_element(idx.begin(), idx.end()), e);
          EXPECT_GE(*std::min_element(idx.begin(), idx.end()), lower);
          seen.insert(std::vector<std::int64_t>(idx.begin(), idx.end()));
        });
      }
      std::size_t expect = 1;
      for (int i = 0; i < dim; ++i) expect *= static_cast<std::size_t>(kEdge - lower + 1);
      EXPECT_EQ(visits, expect);
      EXPECT_EQ(seen.size(), expect);
    }
  }
}

TEST(FamiliesProperties, PartialSumsIncreaseTowardsClosedForm) {
  tornzeta::PrecisionScope scope(40);
  for (const auto& spec : diagonal_specs()) {
    const auto cf = tornzeta::closed_form(spec);
    ASSERT_TRUE(cf.has_value()) << tornzeta::to_string(spec);
    const BigFl limit = tornzeta::zx_numeric(*cf, 40);
    tornzeta::DiagonalSeries<BigFl> series(spec);
    BigFl partial(0L);
    for (int i = 0; i < 2000; ++i) {
      const BigFl t = series.next();
      ASSERT_GT(t, BigFl(0L)) << tornzeta::to_string(spec);
      partial += t;
    }
    EXPECT_LT(partial, limit) << tornzeta::to_string(spec);
  }
}

// The bound past N must dominate the (positive) mass between N and 4N.
TEST(FamiliesProperties, TailBoundsAreHonest) {
  tornzeta::PrecisionScope scope(40);
  for (const auto& spec : diagonal_specs()) {
    for (std::int64_t n : {1000, 10000, 100000}) {
      if (tornzeta::raw_dim(spec) > 2 && n > 10000) continue;
      tornzeta::DiagonalSeries<BigFl> series(spec);
      BigFl head(0L), mass(0L);
      while (series.index() <= 4 * n) {
        const bool past = series.index() > n;
        const BigFl t = series.next();
        (past ? mass : head) += t;
      }
      EXPECT_GT(tornzeta::tail_estimate(spec, n), mass) << tornzeta::to_string(spec) << " N=" << n;
    }
  }
}

TEST(FamiliesProperties, TailBoundsAgainstClosedForm) {
  tornzeta::PrecisionScope scope(40);
  for (const auto& spec : diagonal_specs()) {
    constexpr std::int64_t kN = 1000;
    const BigFl limit = tornzeta::zx_numeric(*tornzeta::closed_form(spec), 40);
    const BigFl remainder = limit - tornzeta::diagonal_partial_sum<BigFl>(spec, kN);
    EXPECT_GT(remainder, BigFl(0L)) << tornzeta::to_string(spec);
    EXPECT_GE(tornzeta::tail_estimate(spec, kN), remainder) << tornzeta::to_string(spec);
  }
}

TEST(FamiliesProperties, RawBoxTailCoversTheMissingMass) {
  tornzeta::PrecisionScope scope(40);
  for (const auto& spec : diagonal_specs()) {
    if (tornzeta::raw_dim(spec) > 2) continue;
    constexpr std::int64_t kEdge = 60;
    const BigFl box = tornzeta::raw_box_sum<BigFl>(spec, kEdge, {}, [](auto, const auto&) {});
    const BigFl limit = tornzeta::zx_numeric(*tornzeta::closed_form(spec), 40);
    EXPECT_LE(box, limit) << tornzeta::to_string(spec);
    EXPECT_GE(box + tornzeta::raw_box_tail(spec, kEdge), limit) << tornzeta::to_string(spec);
  }
}

TEST(Families, Rejections) {
  EXPECT_THROW(tornzeta::DiagonalSeries<Rat>(series::An{7, 0}), std::invalid_argument);
  EXPECT_THROW(tornzeta::DiagonalSeries<Rat>(series::TornheimRaw{1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(tornzeta::tail_estimate(series::S111{}, 5), std::domain_error);
}
