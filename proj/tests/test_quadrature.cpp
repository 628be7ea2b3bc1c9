#include <gtest/gtest.h>

#include "tornzeta/closed_form.hpp"
#include "tornzeta/constants.hpp"
#include "tornzeta/quadrature.hpp"

using tornzeta::BigFl;

namespace {

BigFl closed(int n, int s, int digits) { return tornzeta::zx_numeric(tornzeta::eval_An(n, s), digits); }

}  // namespace

TEST(Quadrature, Examples) {
  constexpr int kDigits = 40;
  tornzeta::PrecisionScope scope(kDigits);
  const BigFl eps = tornzeta::pow10(-30);
  const auto a = tornzeta::quadrature_An(2, 0, kDigits, 12);
  EXPECT_TRUE(a.converged) << a.failure;
  EXPECT_LT(tornzeta::abs(a.value - 2L * tornzeta::const_zeta(3, kDigits)), eps);
  const auto b = tornzeta::quadrature_An(3, 0, kDigits, 12);
  EXPECT_LT(tornzeta::abs(b.value - 6L * tornzeta::const_zeta(4, kDigits)), eps);
  const auto c = tornzeta::quadrature_An(3, 1, kDigits, 12);
  EXPECT_LT(tornzeta::abs(c.value - BigFl(6L)), eps);
}

TEST(Quadrature, PolynomialIntegrand) {
  // integral_0^1 t dt = 1/2
  const auto r = tornzeta::tanh_sinh_01([](const BigFl& log_t, const BigFl&) { return tornzeta::exp(log_t); }, 40, 10);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(tornzeta::abs(r.value - BigFl(1L) / 2L), tornzeta::pow10(-35));
}

TEST(QuadratureProperties, ErrorShrinksAndMatchesClosedForm) {
  constexpr int kDigits = 35;
  tornzeta::PrecisionScope scope(kDigits);
  for (int n = 2; n <= 5; ++n) {
    for (int s = 0; s <= 5; ++s) {
      const auto r = tornzeta::quadrature_An(n, s, kDigits, 12);
      ASSERT_TRUE(r.converged) << r.failure;
      ASSERT_GE(r.level_errors.size(), 3u);
      const auto& e = r.level_errors;
      EXPECT_LT(e.back(), e[e.size() - 3]) << "n=" << n << " s=" << s;
      const BigFl err = tornzeta::abs(r.value - closed(n, s, kDigits));
      EXPECT_LT(err, tornzeta::pow10(-25) * tornzeta::max(BigFl(1L), tornzeta::abs(r.value))) << "n=" << n << " s=" << s;
    }
  }
}

TEST(Quadrature, Rejections) {
  EXPECT_THROW(tornzeta::quadrature_An(1, 0, 30, 5), std::domain_error);
  EXPECT_THROW(tornzeta::quadrature_An(3, -1, 30, 5), std::domain_error);
  EXPECT_THROW(tornzeta::tanh_sinh_01([](const BigFl& a, const BigFl&) { return a; }, 30, 0), std::domain_error);
}
