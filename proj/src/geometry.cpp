#include "zyg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "zyg/kernels.hpp"

namespace zyg {

Interval Interval::make(double lo, double hi) {
  if (!(hi > lo)) {
    std::ostringstream os;
    os << "interval requires hi > lo, got [" << lo << ", " << hi << "]";
    throw DomainError(os.str());
  }
  return {lo, hi};
}

Interval Interval::centered(double center, double length) {
  return make(center - 0.5 * length, center + 0.5 * length);
}

double Interval::distance(const Interval& o) const {
  if (o.lo > hi) return o.lo - hi;
  if (lo > o.hi) return lo - o.hi;
  return 0.0;
}

double Interval::distance(double x) const {
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return 0.0;
}

double Box::volume() const {
  if (empty()) return 0.0;
  return axes[0].length() * axes[1].length() * axes[2].length();
}

bool Box::empty() const {
  return !(axes[0].valid() && axes[1].valid() && axes[2].valid());
}

Point Box::center() const { return {axes[0].center(), axes[1].center(), axes[2].center()}; }

bool Box::contains(const Point& p) const {
  return axes[0].contains(p[0]) && axes[1].contains(p[1]) && axes[2].contains(p[2]);
}

bool Box::contains(const Box& b) const {
  return axes[0].contains(b.axes[0]) && axes[1].contains(b.axes[1]) && axes[2].contains(b.axes[2]);
}

bool is_zygmund(const Interval& i1, const Interval& i2, const Interval& i3, double tol) {
  const double l3 = i3.length();
  return std::abs(l3 - i1.length() * i2.length()) <= tol * l3;
}

ZygmundRectangle::ZygmundRectangle(Interval i1, Interval i2, Interval i3, double zygmund_tol)
    : box_{{i1, i2, i3}}, tol_(zygmund_tol) {
  if (!i1.valid() || !i2.valid() || !i3.valid()) throw DomainError("rectangle with empty side");
  if (!is_zygmund(i1, i2, i3, zygmund_tol)) {
    std::ostringstream os;
    os << "not a Zygmund rectangle: l1*l2 = " << i1.length() * i2.length() << ", l3 = " << i3.length();
    throw GeometryError(os.str());
  }
}

double endpoint_rounding_tol(const Interval& i1, const Interval& i2, const Interval& i3) {
  double rel = 0.0;
  for (const Interval* i : {&i1, &i2, &i3})
    rel += std::max(std::abs(i->lo), std::abs(i->hi)) / i->length();
  return 4.0 * std::numeric_limits<double>::epsilon() * rel;
}

ZygmundRectangle ZygmundRectangle::centered(const Point& c, double l1, double l2) {
  const Interval i1 = Interval::centered(c[0], l1);
  const Interval i2 = Interval::centered(c[1], l2);
  const Interval i3 = Interval::centered(c[2], l1 * l2);
  return {i1, i2, i3, kZygmundTol + endpoint_rounding_tol(i1, i2, i3)};
}

ZygmundDilation ZygmundDilation::make(double s, double t) {
  if (!(s > 0.0) || !(t > 0.0)) throw DomainError("Zygmund dilation requires s, t > 0");
  return {s, t};
}

Point dilate_point(const Point& x, const ZygmundDilation& d) {
  return {d.s * x[0], d.t * x[1], d.s * d.t * x[2]};
}

ZygmundRectangle dilate_rectangle(const ZygmundRectangle& r, const ZygmundDilation& d) {
  const double st = d.s * d.t;
  // Scale each side explicitly so l3' = st*l3 and l1'*l2' = s*l1*t*l2 agree
  // up to the rectangle's own tolerance.
  return {Interval{d.s * r.i1().lo, d.s * r.i1().hi}, Interval{d.t * r.i2().lo, d.t * r.i2().hi},
          Interval{st * r.i3().lo, st * r.i3().hi}, std::max(r.zygmund_tol(), 8.0 * kZygmundTol)};
}

namespace {

// Dyadic intervals of length `len` inside `dom`.
std::vector<Interval> dyadic_positions(const Interval& dom, double len) {
  std::vector<Interval> out;
  if (!dom.valid()) return out;
  const auto first = static_cast<long long>(std::ceil(dom.lo / len));
  const auto last = static_cast<long long>(std::floor(dom.hi / len)) - 1;
  for (long long m = first; m <= last; ++m) out.push_back({m * len, (m + 1) * len});
  return out;
}

}  // namespace

std::vector<ZygmundRectangle> enumerate_zygmund(const Box& domain, int min_depth, int max_depth) {
  if (min_depth > max_depth) throw DomainError("enumerate_zygmund: min_depth > max_depth");
  std::vector<ZygmundRectangle> out;
  if (domain.empty()) return out;
  for (int j = min_depth; j <= max_depth; ++j) {
    for (int k = min_depth; k <= max_depth; ++k) {
      const double l1 = std::ldexp(1.0, -j);
      const double l2 = std::ldexp(1.0, -k);
      const double l3 = std::ldexp(1.0, -j - k);
      const auto p1 = dyadic_positions(domain.axes[0], l1);
      const auto p2 = dyadic_positions(domain.axes[1], l2);
      const auto p3 = dyadic_positions(domain.axes[2], l3);
      for (const auto& a : p1)
        for (const auto& b : p2)
          for (const auto& c : p3) out.emplace_back(a, b, c);
    }
  }
  return out;
}

ReflectedPair reflect(const ZygmundRectangle& r, const Kernel& k, double amplitude) {
  if (!(amplitude > 1.0)) throw DomainError("reflect: amplitude must exceed 1");
  if (!k.has_witness()) throw WitnessFailure("kernel '" + k.name + "' provides no non-degeneracy witness");
  const double quarter = std::pow(amplitude, 0.25);
  const double d1 = quarter * r.side(0);
  const double d2 = quarter * r.side(1);
  const Point c = r.center();
  const Point x = k.witness(c, d1, d2);
  if (!(std::abs(x[0] - c[0]) > d1 && std::abs(x[1] - c[1]) > d2 && std::abs(x[2] - c[2]) > d1 * d2))
    throw WitnessFailure("witness of kernel '" + k.name + "' violates the separation requirements");

  const double vol = r.volume();
  const double kc = k(x, c);
  const double center_constant = std::abs(kc) * amplitude * vol;
  if (!(center_constant >= k.witness_constant * (1.0 - 1e-12)) || !(k.witness_constant > 0.0)) {
    std::ostringstream os;
    os << "witness of kernel '" << k.name << "' gives |K|*A*|R| = " << center_constant
       << " below its lower constant " << k.witness_constant;
    throw WitnessFailure(os.str());
  }

  ZygmundRectangle refl = ZygmundRectangle::centered(x, r.side(0), r.side(1));
  const double scales[3] = {quarter * r.side(0), quarter * r.side(1), std::sqrt(amplitude) * r.side(2)};
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double ratio = r.axis(i).distance(refl.axis(i)) / scales[i];
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return {r, refl, amplitude, kc, lo, hi, center_constant};
}

}  // namespace zyg
