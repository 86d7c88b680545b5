#include <cmath>
#include <random>

#include "doctest.h"
#include "zyg/geometry.hpp"
#include "zyg/kernels.hpp"

using namespace zyg;

namespace {
const Box kUnit{{Interval{0, 1}, Interval{0, 1}, Interval{0, 1}}};
}

TEST_CASE("is_zygmund on small boxes") {
  CHECK(is_zygmund({0, 1}, {0, 1}, {0, 1}, 0.0));
  CHECK(is_zygmund({0, 2}, {0, 3}, {0, 6}, 0.0));
  CHECK_FALSE(is_zygmund({0, 1}, {0, 1}, {0, 2}, 1e-9));
  CHECK_THROWS_AS(ZygmundRectangle({0, 1}, {0, 1}, {0, 2}), GeometryError);
}

TEST_CASE("interval helpers") {
  const Interval a{0, 1}, b{1, 2}, c{3, 4};
  CHECK_FALSE(a.overlaps_half_open(b));
  CHECK(a.overlaps_half_open(Interval{0.5, 1.5}));
  CHECK(a.distance(c) == 2.0);
  CHECK(a.distance(0.5) == 0.0);
  CHECK_THROWS(Interval::make(1, 1));
}

TEST_CASE("dilations") {
  CHECK(dilate_point({1, 1, 1}, {1, 1}) == Point{1, 1, 1});
  CHECK(dilate_point({1, 1, 1}, {2, 3}) == Point{2, 3, 6});
  CHECK(dilate_point({1, -1, 2}, {0.5, 4}) == Point{0.5, -4, 4});
  CHECK_THROWS_AS(ZygmundDilation::make(0, 1), DomainError);

  const ZygmundRectangle unit({0, 1}, {0, 1}, {0, 1});
  CHECK(dilate_rectangle(unit, {1, 1}) == unit);
  CHECK(dilate_rectangle(unit, {2, 3}) == ZygmundRectangle({0, 2}, {0, 3}, {0, 6}));

  const auto d = ZygmundDilation::make(2, 5).compose(ZygmundDilation::make(0.25, 3));
  CHECK(d.s == 0.5);
  CHECK(d.t == 15);
}

TEST_CASE("dilated rectangles stay Zygmund") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lg(-6, 6);
  for (int n = 0; n < 200; ++n) {
    const double l1 = std::exp2(lg(rng)), l2 = std::exp2(lg(rng));
    const auto r = ZygmundRectangle::centered({lg(rng), lg(rng), lg(rng)}, l1, l2);
    const auto img = dilate_rectangle(r, ZygmundDilation::make(std::exp2(lg(rng)), std::exp2(lg(rng))));
    CHECK(is_zygmund(img.i1(), img.i2(), img.i3()));
  }
}

TEST_CASE("enumerate_zygmund counts") {
  CHECK(enumerate_zygmund(kUnit, 0, 0).size() == 1);
  // brute force: all dyadic placements with j, k <= 2
  std::size_t expected = 0;
  for (int j = 0; j <= 2; ++j)
    for (int k = 0; k <= 2; ++k) expected += (1u << j) * (1u << k) * (1u << (j + k));
  const auto rects = enumerate_zygmund(kUnit, 0, 2);
  CHECK(rects.size() == expected);
  CHECK(enumerate_zygmund(kUnit, 0, 1).size() == 25);
  for (const auto& r : rects) CHECK(kUnit.contains(r.box()));
  const Box empty{{Interval{0, 1}, Interval{0, 0}, Interval{0, 1}}};
  CHECK(enumerate_zygmund(empty, 0, 3).empty());
}

TEST_CASE("reflect places R~ at the expected distances") {
  const auto k = make_nagel_wainger();
  const ZygmundRectangle unit({0, 1}, {0, 1}, {0, 1});
  const auto p = reflect(unit, k, 4096.0);
  for (int a = 0; a < 3; ++a) CHECK(p.reflected.side(a) == doctest::Approx(unit.side(a)));
  // |K(c~, c)| A |R| at the witness: 1/4 by direct evaluation
  const double direct = std::abs(nagel_wainger(p.reflected.center(), unit.center())) * 4096.0 * unit.volume();
  CHECK(direct == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(p.center_constant == doctest::Approx(direct));

  // witness offset lambda A^{1/4} l per horizontal axis, lambda^2 A^{1/2} l3 vertically,
  // minus one side length between the facing edges
  const double lambda = std::pow(2.0, 0.25);
  CHECK(p.reflected.i1().distance(unit.i1()) / 8.0 == doctest::Approx(lambda - 1.0 / 8.0));
  CHECK(p.reflected.i3().distance(unit.i3()) / 64.0 == doctest::Approx(lambda * lambda - 1.0 / 64.0));
  CHECK(p.dist_const_lo == doctest::Approx(lambda - 1.0 / 8.0));
  CHECK(p.dist_const_hi == doctest::Approx(lambda * lambda - 1.0 / 64.0));
  CHECK_THROWS_AS(reflect(unit, make_zero_stub(), 4096.0), WitnessFailure);
}

TEST_CASE("reflected distance constants are dilation invariant") {
  const auto k = make_nagel_wainger();
  const ZygmundRectangle unit({0, 1}, {0, 1}, {0, 1});
  const auto a = reflect(unit, k, 256.0);
  const auto b = reflect(dilate_rectangle(unit, {0.25, 8}), k, 256.0);
  CHECK(b.dist_const_lo == doctest::Approx(a.dist_const_lo));
  CHECK(b.dist_const_hi == doctest::Approx(a.dist_const_hi));
  CHECK(b.center_constant == doctest::Approx(a.center_constant));
}
