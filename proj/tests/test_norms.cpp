#include <cmath>
#include <random>

#include "doctest.h"
#include "zyg/norms.hpp"

using namespace zyg;
using doctest::Approx;

namespace {
const Box kUnit{{Interval{0, 1}, Interval{0, 1}, Interval{0, 1}}};

// Independent mean absolute deviation over the midpoint samples.
double brute_osc(const Symbol& b, const ZygmundRectangle& r, const Resolution& res) {
  std::vector<double> v;
  const auto& ax = r.box().axes;
  for (int i = 0; i < res[0]; ++i)
    for (int j = 0; j < res[1]; ++j)
      for (int k = 0; k < res[2]; ++k)
        v.push_back(b({ax[0].lo + (i + 0.5) * ax[0].length() / res[0], ax[1].lo + (j + 0.5) * ax[1].length() / res[1],
                       ax[2].lo + (k + 0.5) * ax[2].length() / res[2]}));
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double d = 0.0;
  for (double x : v) d += std::abs(x - m);
  return d / static_cast<double>(v.size());
}
}  // namespace

TEST_CASE("oscillation closed forms and algebra") {
  const ZygmundRectangle r({1, 3}, {0, 0.5}, {2, 3});
  const Resolution res{4, 4, 8};
  CHECK(osc(constant_symbol(7), r, res).osc == 0.0);
  CHECK(osc(linear_symbol(3), r, res).osc == Approx(0.25));
  CHECK(osc(linear_symbol(3), r, res, 0.5).o_alpha == Approx(0.25));
  const auto rep = osc(holder_x3_symbol(0.3), r, res);
  CHECK(rep.osc == Approx(brute_osc(holder_x3_symbol(0.3), r, res)).epsilon(1e-13));
  CHECK(rep.refinement_delta >= 0.0);

  Symbol shifted = holder_x3_symbol(0.3);
  shifted.evaluate = [](const Point& x) { return std::pow(std::abs(x[2]), 0.3) + 11.0; };
  Symbol scaled = holder_x3_symbol(0.3);
  scaled.evaluate = [](const Point& x) { return -3.0 * std::pow(std::abs(x[2]), 0.3); };
  CHECK(osc(shifted, r, res).osc == Approx(rep.osc).epsilon(1e-12));
  CHECK(osc(scaled, r, res).osc == Approx(3.0 * rep.osc).epsilon(1e-13));
}

TEST_CASE("bmo norm") {
  CHECK(bmo_norm(constant_symbol(1), kUnit, 0, 2, 0.5, {4, 4, 4}).value == 0.0);
  const auto est = bmo_norm(linear_symbol(3), kUnit, 0, 3, 0.5, {4, 4, 4});
  CHECK(est.value == Approx(0.25).epsilon(0.02));
  CHECK(est.witness.has_value());
  const Box wide{{Interval{-2, 2}, Interval{0, 8}, Interval{-16, 16}}};
  CHECK(bmo_norm(linear_symbol(3), wide, 0, 2, 0.5, {4, 4, 4}).value == Approx(0.25).epsilon(0.02));

  const Symbol b = separable_product_symbol(1, 0, 1);
  double prev = 0.0;
  for (int d = 0; d <= 3; ++d) {
    const double v = bmo_norm(b, kUnit, 0, d, 0.25, {4, 4, 4}).value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("Holder seminorm in x3") {
  const auto sampler = holder_pair_sampler(kUnit);
  CHECK(holder_x3_seminorm(constant_symbol(2), 0.5, sampler, 500).value == 0.0);
  const auto lin = holder_x3_seminorm(linear_symbol(3), 0.5, sampler, 2000);
  CHECK(lin.value <= 1.0 + 1e-12);
  CHECK(lin.value >= 1.0 - 1e-9);
  const auto x1 = holder_x3_seminorm(linear_symbol(1), 0.5, sampler, 2000);
  CHECK(std::isinf(x1.value));
  CHECK(x1.infinite_pairs > 0);
}

TEST_CASE("equivalence check") {
  const auto hold = check_equivalence(holder_x3_symbol(1.0), 0.5, kUnit, 0, 2, 2000, 1, 16, {4, 4, 4});
  CHECK(hold.status == EquivalenceStatus::Consistent);
  CHECK(hold.ratio >= 1.0 / 16);
  CHECK(hold.ratio <= 16);
  const auto flat = check_equivalence(constant_symbol(1), 0.5, kUnit, 0, 1, 200, 1, 16, {4, 4, 4});
  CHECK(flat.status == EquivalenceStatus::BothZero);
  CHECK(flat.message == "both zero: consistent");
  const auto x1 = check_equivalence(linear_symbol(1), 0.5, kUnit, 0, 1, 2000, 1, 16, {4, 4, 4});
  CHECK(x1.status == EquivalenceStatus::NotInSpace);
  CHECK(std::isfinite(x1.bmo));
  CHECK(x1.message.rfind("not bmo_Z^alpha on R^3", 0) == 0);
}

TEST_CASE("chain bound") {
  const double alpha = 0.25;
  const Symbol b = holder_x3_symbol(2 * alpha);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int i = 0; i < 20; ++i) {
    const Point x{u(rng), u(rng), u(rng)};
    Point y{u(rng), u(rng), 0.0};
    const double d12 = std::abs(x[0] - y[0]) * std::abs(x[1] - y[1]);
    y[2] = x[2] + (i % 2 ? 0.5 : 3.0) * d12;  // alternate the two geometric cases
    const auto t = chain_bound(b, x, y, alpha, 1e-6, 12, {4, 4, 4});
    CHECK(t.horizontal_case == (i % 2 == 1));
    CHECK(t.i_chain.size() == 12);
    CHECK(t.osc_sum <= t.bound * (1 + 1e-12));
    CHECK(t.difference <= 8.0 * t.osc_sum);
    // |I_k| = 2^{-4(k-1)} |I_1|
    for (std::size_t k = 1; k < t.i_chain.size(); ++k)
      CHECK(t.i_chain[k].volume() == Approx(t.i_chain[k - 1].volume() / 16.0));
  }
  const auto same = chain_bound(b, {1, 1, 1}, {1, 1, 1}, alpha);
  CHECK(same.difference == 0.0);
  CHECK(std::isfinite(same.osc_sum));
  CHECK(same.constant == Approx(2.0 * std::pow(16.0, alpha) / (1.0 - std::pow(2.0, -4.0 * alpha))));
}

TEST_CASE("A_p constant of weights") {
  CHECK(apz_constant(constant_symbol(3), 2.0, kUnit, 0, 2, {4, 4, 4}).value == Approx(1.0));
  const Symbol w = holder_x3_symbol(0.1);
  for (const auto& r : enumerate_zygmund(kUnit, 0, 2)) CHECK(apz_rectangle_value(w, 2.0, r, {4, 4, 4}) >= 1.0 - 1e-14);
  const double coarse = apz_constant(w, 2.0, kUnit, 0, 1, {8, 8, 8}).value;
  const double fine = apz_constant(w, 2.0, kUnit, 0, 1, {16, 16, 16}).value;
  CHECK(std::abs(fine - coarse) / fine <= 0.05);
  CHECK_THROWS_AS(apz_rectangle_value(linear_symbol(3), 2.0, ZygmundRectangle({0, 1}, {0, 1}, {-1, 0}), {2, 2, 2}),
                  PositivityError);
}
