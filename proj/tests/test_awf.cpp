#include <cmath>

#include "doctest.h"
#include "zyg/awf.hpp"

using namespace zyg;
using doctest::Approx;

namespace {

const ZygmundRectangle kUnit({0, 1}, {0, 1}, {0, 1});
const Resolution kRes{6, 6, 6};

std::vector<Point> nodes(const GridFunction& g) {
  std::vector<Point> p(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) p[i] = g.node(i);
  return p;
}

GridFunction indicator(const Box& b, const Resolution& res) {
  return GridFunction::sample(b, res, [](const Point&) { return 1.0; });
}

}  // namespace

TEST_CASE("zero input gives a zero decomposition") {
  const auto k = make_nagel_wainger();
  const GridFunction f(kUnit.box(), kRes);
  const auto d = awf_twice(k, kUnit, f, 16.0);
  CHECK(d.h_R.sup_norm() == 0.0);
  CHECK(d.h_Rtilde.sup_norm() == 0.0);
  CHECK(d.e.sup_norm() == 0.0);
  CHECK(d.eta() == 0.0);
}

TEST_CASE("one iteration against pointwise operators") {
  const auto k = make_nagel_wainger();
  const double A = 16.0;
  const auto f = extremal_testfunction(linear_symbol(3), kUnit, kRes);
  const auto d = awf_once(k, kUnit, f, A);
  const Box rt = d.base.reflected.box();
  const auto tstar = apply_T_star(k, indicator(rt, kRes), nodes(f));
  for (std::size_t j = 0; j < f.size(); ++j) CHECK(d.h_R[j] * tstar[j] == Approx(f[j]).epsilon(1e-12));
  const auto th = apply_T(k, d.h_R, nodes(d.e));
  for (std::size_t i = 0; i < th.size(); i += 7) CHECK(d.e[i] == Approx(th[i]).epsilon(1e-12));
  CHECK(d.error_mean <= kMeanZeroTol * d.f_abs_mean * kUnit.volume());
  CHECK(d.residual_sup <= 1e-12);

  const auto d16 = awf_once(k, kUnit, f, 16.0 * A);
  CHECK(d16.eta() < d.eta());
}

TEST_CASE("two iterations") {
  const auto k = make_nagel_wainger();
  const double A = 16.0;
  for (const char* spec : {"linear-x3", "sign-x3:0.5", "holder-x3:0.5", "separable-product:1,1,1"}) {
    const auto f = extremal_testfunction(make_symbol(spec), kUnit, kRes);
    const auto d = awf_twice(k, kUnit, f, A);
    const auto tone = apply_T(k, indicator(kUnit.box(), kRes), nodes(d.h_Rtilde));
    const auto e_once = awf_once(k, kUnit, f, A).e;
    for (std::size_t i = 0; i < tone.size(); i += 5) CHECK(d.h_Rtilde[i] * tone[i] == Approx(e_once[i]).epsilon(1e-12));
    const auto ts = apply_T_star(k, d.h_Rtilde, nodes(d.e));
    for (std::size_t j = 0; j < ts.size(); j += 5) CHECK(d.e[j] == Approx(ts[j]).epsilon(1e-12));
    CHECK(std::abs(quadrature(d.e)) <= kMeanZeroTol * d.f_abs_mean * kUnit.volume());
    CHECK(d.h_factor() <= kHBoundFactor);
    CHECK(d.residual_sup <= 1e-8 * d.f_sup);
    CHECK(awf_twice(k, kUnit, f, 16.0 * A).eta() < d.eta());
  }
}

TEST_CASE("AWF input checks") {
  const auto k = make_nagel_wainger();
  const auto ones = indicator(kUnit.box(), kRes);
  CHECK_THROWS_AS(awf_once(k, kUnit, ones, 16.0), DomainError);
  const GridFunction wrong(kUnit.box(), {4, 4, 4});
  CHECK_THROWS_AS(awf_once(AwfSetup(k, kUnit, 16.0, kRes), wrong), DomainError);
}

TEST_CASE("amplitude calibration") {
  const auto k = make_nagel_wainger();
  const auto cal = calibrate_amplitude(k, kUnit, {8, 8, 8});
  CHECK(cal.amplitude <= std::ldexp(1.0, 20));
  CHECK(cal.amplitude == 16.0);
  CHECK(cal.eta_twice_bound <= kEtaTwiceCeiling);
  CHECK(cal.probe_h_factor <= kHBoundFactor);
  const auto dil = calibrate_amplitude(k, dilate_rectangle(kUnit, {0.125, 4.0}), {8, 8, 8});
  CHECK(dil.amplitude == cal.amplitude);
  CHECK(dil.eta_twice_bound == Approx(cal.eta_twice_bound).epsilon(1e-9));
  CHECK_THROWS_AS(calibrate_amplitude(make_zero_stub(), kUnit, {8, 8, 8}), CalibrationFailure);
}

TEST_CASE("eta bounds shrink along the ladder") {
  const auto k = make_nagel_wainger();
  double prev = INFINITY;
  for (double A : {16.0, 256.0, 4096.0}) {
    const AwfSetup s(k, kUnit, A, kRes);
    CHECK(s.eta_twice_bound() <= s.eta_once_bound());
    CHECK(s.eta_once_bound() < prev);
    prev = s.eta_once_bound();
  }
}

TEST_CASE("oscillation certificates") {
  const auto k = make_nagel_wainger();
  const auto flat = oscillation_lower_bound(constant_symbol(2), k, kUnit, 16.0, kRes);
  CHECK(flat.osc_value == 0.0);
  CHECK(flat.pairing_1 == 0.0);
  CHECK(flat.valid);

  const auto lin = oscillation_lower_bound(linear_symbol(3), k, kUnit, 16.0, kRes);
  CHECK(lin.osc_value == Approx(0.25));
  CHECK(lin.valid);
  CHECK(lin.bound >= lin.osc_value);
  CHECK(lin.error_sup <= 0.5);

  const auto step = oscillation_lower_bound(sign_x3_symbol(0.5), k, kUnit, 16.0, kRes);
  CHECK(step.osc_value == Approx(1.0));
  CHECK(step.valid);

  CHECK(grid_oscillation(linear_symbol(3), ZygmundRectangle({0, 2}, {0, 3}, {0, 6}), {4, 4, 8}) == Approx(1.5));
}

TEST_CASE("bmo lower estimate through certificates") {
  const auto k = make_nagel_wainger();
  std::vector<ZygmundRectangle> ladder;
  for (double s : {0.5, 1.0, 2.0}) ladder.push_back(dilate_rectangle(kUnit, {s, 1.0}));
  const Resolution res{4, 4, 4};
  CHECK(bmo_lower_via_off(constant_symbol(1), k, 2, 2, ladder, 16.0, res).value == 0.0);

  const auto diag = bmo_lower_via_off(linear_symbol(3), k, 2, 2, ladder, 16.0, res);
  CHECK(diag.value == Approx(0.5));  // l(I^3)/4 on the largest rectangle
  CHECK(diag.argmax == 2);
  CHECK(diag.invalid_certificates == 0);

  const auto frac = bmo_lower_via_off(linear_symbol(3), k, 4.0 / 3.0, 4.0, ladder, 16.0, res);
  for (const auto& c : frac.certificates) CHECK(c.valid);
  CHECK(frac.value == Approx(0.25));
  CHECK_THROWS_AS(bmo_lower_via_off(linear_symbol(3), k, 3, 2, ladder, 16.0, res), DomainError);
}
