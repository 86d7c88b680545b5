#pragma once

#include <vector>

#include "zyg/core.hpp"

namespace zyg {

/// Closed interval [lo, hi] with hi > lo.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  static Interval make(double lo, double hi);
  static Interval centered(double center, double length);

  double center() const { return 0.5 * (lo + hi); }
  double length() const { return hi - lo; }
  bool valid() const { return hi > lo; }

  bool contains(double x) const { return lo <= x && x <= hi; }
  // Half-open [lo, hi): shared endpoints do not count as overlap.
  bool contains_half_open(double x) const { return lo <= x && x < hi; }
  bool overlaps_half_open(const Interval& o) const { return lo < o.hi && o.lo < hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }

  double distance(const Interval& o) const;
  double distance(double x) const;

  bool operator==(const Interval&) const = default;
};

/// Axis-aligned box; used for grid supports and experiment domains. Unlike
/// Interval, a Box may be degenerate (an axis with hi <= lo is empty).
struct Box {
  std::array<Interval, 3> axes{};

  double volume() const;
  bool empty() const;
  Point center() const;
  bool contains(const Point& p) const;
  bool contains(const Box& b) const;
  bool operator==(const Box&) const = default;
};

inline constexpr double kZygmundTol = 1e-12;

bool is_zygmund(const Interval& i1, const Interval& i2, const Interval& i3, double tol = kZygmundTol);

/// Relative error in l1*l2/l3 that endpoint rounding alone can produce; matters
/// for small rectangles far from the origin.
double endpoint_rounding_tol(const Interval& i1, const Interval& i2, const Interval& i3);

class ZygmundRectangle {
 public:
  ZygmundRectangle(Interval i1, Interval i2, Interval i3, double zygmund_tol = kZygmundTol);

  /// Rectangle centered at c with horizontal sides l1, l2 and vertical side l1*l2;
  /// the tolerance absorbs endpoint rounding.
  static ZygmundRectangle centered(const Point& c, double l1, double l2);

  const Interval& i1() const { return box_.axes[0]; }
  const Interval& i2() const { return box_.axes[1]; }
  const Interval& i3() const { return box_.axes[2]; }
  const Interval& axis(int i) const { return box_.axes.at(static_cast<std::size_t>(i)); }
  double side(int i) const { return axis(i).length(); }
  double zygmund_tol() const { return tol_; }

  Point center() const { return box_.center(); }
  double volume() const { return box_.volume(); }
  const Box& box() const { return box_; }

  bool operator==(const ZygmundRectangle& o) const { return box_ == o.box_; }

 private:
  Box box_;
  double tol_;
};

struct ZygmundDilation {
  double s = 1.0;
  double t = 1.0;

  static ZygmundDilation make(double s, double t);
  ZygmundDilation compose(const ZygmundDilation& o) const { return {s * o.s, t * o.t}; }
};

Point dilate_point(const Point& x, const ZygmundDilation& d);
ZygmundRectangle dilate_rectangle(const ZygmundRectangle& r, const ZygmundDilation& d);

/// Dyadic Zygmund rectangles with sides 2^-j, 2^-k, 2^-(j+k), j,k in
/// [min_depth, max_depth], aligned to the dyadic grid of each scale and
/// contained in the domain. Order: j, k, then positions along axes 1, 2, 3.
std::vector<ZygmundRectangle> enumerate_zygmund(const Box& domain, int min_depth, int max_depth);

struct Kernel;

/// R together with its reflected rectangle R~ built from a kernel witness.
struct ReflectedPair {
  ZygmundRectangle base;
  ZygmundRectangle reflected;
  double amplitude;
  double kernel_at_centers;
  // Measured comparability constants: min/max over axes of
  // dist(I^i, I~^i) / (A^{1/4} l(I^i)) for i=1,2 and / (A^{1/2} l(I^3)) for i=3.
  double dist_const_lo;
  double dist_const_hi;
  // |K(c_R~, c_R)| * A * |R|.
  double center_constant;
};

ReflectedPair reflect(const ZygmundRectangle& r, const Kernel& k, double amplitude);

}  // namespace zyg
