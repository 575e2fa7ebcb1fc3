#include "renorm/verify.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace renorm;

namespace {

const TPolicy kPol{3, 4};
const Window kWindow{-12, 12};

}  // namespace

class CurveForms : public ::testing::TestWithParam<CurveModel> {};

TEST_P(CurveForms, IFormEqualsTFormOverWindow) {
  Check c = curve_form_check(GetParam(), kPol, kWindow, 3);
  EXPECT_TRUE(c.pass) << c.describe();
}

TEST_P(CurveForms, RestrictionToZeroCouplings) {
  for (auto& c : base_checks(GetParam(), kPol, kWindow, 3)) EXPECT_TRUE(c.pass) << c.describe();
}

INSTANTIATE_TEST_SUITE_P(Models, CurveForms,
                         ::testing::Values(CurveModel::one_d, CurveModel::hmm_thin, CurveModel::hmm_fat,
                                           CurveModel::two_d));

class ActionFunctions : public ::testing::TestWithParam<CurveModel> {};

TEST_P(ActionFunctions, DerivativesMatchTheCurve) {
  for (auto& c : action_checks(GetParam(), 5)) EXPECT_TRUE(c.pass) << c.describe();
}

INSTANTIATE_TEST_SUITE_P(Models, ActionFunctions,
                         ::testing::Values(CurveModel::one_d, CurveModel::hmm_thin, CurveModel::two_d));

TEST(Curves, BaseCurves) {
  EXPECT_EQ(base_curve(CurveModel::one_d).body, parse_text("zeta^-1 - 1/2*zeta"));
  EXPECT_EQ(base_curve(CurveModel::two_d).body, parse_text("zeta^(1/2)"));
  EXPECT_EQ(base_curve(CurveModel::hmm_fat, 0).body, parse_text("tH*zeta^-1 - 1/2*zeta"));
}

TEST(Curves, FatBaseCurveCarriesCatalanNumbers) {
  // coefficient of tH^{k+1} z^{-2k-1} in the fat curve at zero couplings
  CurveSeries c = restrict_to_origin(curve_hmm_fat_i(6, 4));
  const int catalan[] = {1, 1, 2, 5, 14};
  for (int k = 1; k <= 4; ++k) {
    Poly coeff = coefficient_of(c.coefficient(-4 * k - 2), var::tH(), k + 1);
    EXPECT_EQ(coeff, Poly(Rational(catalan[k]))) << "k = " << k;
  }
  EXPECT_EQ(c.body, base_curve(CurveModel::hmm_fat, 4).body);
}

TEST(Curves, FatCurveNeedsSqrtTwoOnFreeEnergyTerms) {
  // the same curve with the free-energy terms scaled by 1/sqrt(2), i.e. without the sqrt(2)
  CurveSeries full = curve_hmm_fat_i(kPol.max_index, 3);
  Poly pole_and_tail = curve_pole_i(Poly::var(var::tH()), kPol.max_index).body;
  CurveSeries scaled{pole_and_tail + (full.body - pole_and_tail) * Rational(1, 2), full.var, full.unit};
  Check c = compare_curves("no sqrt2", expand_in_z(scaled, kPol, kWindow),
                           curve_t_form(CurveModel::hmm_fat, kPol, kWindow, 3), kWindow);
  EXPECT_FALSE(c.pass);
}

TEST(Curves, TwoDUnifiedFormEqualsIForm) {
  for (int top = 1; top <= 6; ++top) EXPECT_EQ(curve_2d_unified(top).body, curve_2d_i(top).body);
}

TEST(Curves, AiryNormalizationAlongT0) {
  // with only t_0 switched on the curve is sqrt(z - 2 t_0) = sum_k binom(1/2, k) (-2 t_0)^k z^{1/2-k}
  auto w = airy_w_t_form({0, 4}, kWindow);
  std::map<int, Poly> expected;
  for (int k = 0; k <= 4; ++k)
    expected[1 - 2 * k] = Poly::var(var::t(0), k) * (binomial(Rational(1, 2), k) * pow(Rational(-2), k));
  EXPECT_EQ(w, expected);
  EXPECT_EQ(airy_w_t_form({0, 1}, kWindow), (std::map<int, Poly>{{-1, -Poly::var(var::t(0))}, {1, Poly(Rational(1))}}));
}

TEST(Curves, WrongPoleIsDetected) {
  CurveSeries c = curve_1d_i(kPol.max_index);
  c.body += detail::zeta_pow(-2);
  Check r = compare_curves("doubled pole", expand_in_z(c, kPol, kWindow), curve_t_form(CurveModel::one_d, kPol, kWindow),
                           kWindow);
  EXPECT_FALSE(r.pass);
}

TEST(Curves, SuiteSummary) {
  std::vector<Check> cs = curve_suite(kPol, kWindow);
  EXPECT_TRUE(all_pass(cs));
  EXPECT_EQ(cs.size(), 22u);
}

TEST(Curves, GammaAtHalfIntegers) {
  EXPECT_EQ(gamma_half(0), Rational(1));
  EXPECT_EQ(gamma_half(1), Rational(1, 2));
  EXPECT_EQ(gamma_half(3), Rational(15, 8));
  EXPECT_EQ(gamma_half(-1), Rational(-2));
  EXPECT_EQ(gamma_half(-2), Rational(4, 3));
}
