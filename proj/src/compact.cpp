#include "zyg/compact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "zyg/norms.hpp"

namespace zyg {

std::string to_string(SelectionFamily f) { return f == SelectionFamily::Base ? "base" : "reflected"; }
std::string to_string(SelectionBranch b) { return b == SelectionBranch::Escape ? "escape" : "accumulation"; }

namespace {

std::vector<std::size_t> escape_greedy(const std::vector<Interval>& iv, std::size_t want) {
  std::vector<std::size_t> out;
  double m = 0.0;
  for (std::size_t i = 0; i < iv.size() && out.size() < want; ++i) {
    if (!out.empty() && !(iv[i].lo >= m || iv[i].hi <= -m)) continue;
    out.push_back(i);
    m = std::max({m, std::abs(iv[i].lo), std::abs(iv[i].hi)});
  }
  return out;
}

double locate_accumulation(const std::vector<Interval>& iv) {
  double h = 1.0;
  auto inside = [&](double half) {
    return std::all_of(iv.begin(), iv.end(), [&](const Interval& i) { return -half <= i.lo && i.hi <= half; });
  };
  while (!inside(h)) h *= 2.0;
  while (h > 1e-300 && inside(0.5 * h)) h *= 0.5;
  Interval q{-h, h};
  std::vector<std::size_t> members(iv.size());
  for (std::size_t i = 0; i < iv.size(); ++i) members[i] = i;
  for (int depth = 0; depth < 1100; ++depth) {
    const double mid = q.center();
    if (!(q.lo < mid && mid < q.hi)) break;
    std::vector<std::size_t> left, right;
    for (std::size_t i : members) {
      if (iv[i].lo <= mid && iv[i].hi >= q.lo) left.push_back(i);
      if (iv[i].lo <= q.hi && iv[i].hi >= mid) right.push_back(i);
    }
    const bool go_left = left.size() >= right.size();
    auto& next = go_left ? left : right;
    if (next.size() < 2) break;
    q = go_left ? Interval{q.lo, mid} : Interval{mid, q.hi};
    members = std::move(next);
  }
  const double cands[3] = {q.center(), q.lo, q.hi};
  double best = cands[0];
  std::size_t best_count = 0;
  for (double c : cands) {
    const auto cnt = static_cast<std::size_t>(
        std::count_if(iv.begin(), iv.end(), [&](const Interval& i) { return i.contains(c); }));
    if (cnt > best_count) {
      best_count = cnt;
      best = c;
    }
  }
  return best;
}

std::vector<std::size_t> separation_greedy(const std::vector<Interval>& iv, double x, double divisor,
                                           std::size_t want) {
  std::vector<std::size_t> out;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < iv.size() && out.size() < want; ++i) {
    if (iv[i].contains(x)) continue;
    const double reach = iv[i].distance(x) + iv[i].length();
    if (!out.empty() && !(reach < gap / divisor)) continue;
    out.push_back(i);
    gap = std::min(gap, iv[i].distance(x));
  }
  return out;
}

std::vector<Interval> axis_intervals(const std::vector<ZygmundRectangle>& rects, int axis) {
  std::vector<Interval> iv;
  iv.reserve(rects.size());
  for (const auto& r : rects) iv.push_back(r.axis(axis - 1));
  return iv;
}

}  // namespace

SelectionResult select_disjoint(const std::vector<ZygmundRectangle>& rects, const Kernel& k, double amplitude,
                                int axis, const SelectionOptions& opts) {
  if (axis < 1 || axis > 3) throw DomainError("select_disjoint: axis must be 1, 2 or 3");
  if (!(opts.divisor >= 1.0)) throw DomainError("select_disjoint: divisor must be at least 1");
  SelectionResult res;
  res.axis = axis;
  if (rects.empty()) return res;
  const std::size_t want = std::min(opts.requested, rects.size());
  const std::vector<Interval> base = axis_intervals(rects, axis);

  res.indices = escape_greedy(base, want);
  if (res.indices.size() >= want) return res;

  const double first = base.front().length();
  const double last = base.back().length();
  if (!(last < 0.5 * first)) {
    std::ostringstream os;
    os << "select_disjoint: axis-" << axis << " side lengths do not shrink (first " << first << ", last " << last
       << ")";
    throw SelectionFailure(os.str());
  }

  const double x = locate_accumulation(base);
  std::vector<Interval> refl;
  refl.reserve(rects.size());
  for (const auto& r : rects) refl.push_back(reflect(r, k, amplitude).reflected.axis(axis - 1));
  auto b_idx = separation_greedy(base, x, opts.divisor, want);
  auto r_idx = separation_greedy(refl, x, opts.divisor, want);

  res.branch = SelectionBranch::Accumulation;
  res.accumulation_point = x;
  if (b_idx.size() >= r_idx.size()) {
    res.which = SelectionFamily::Base;
    res.indices = std::move(b_idx);
  } else {
    res.which = SelectionFamily::Reflected;
    res.indices = std::move(r_idx);
  }
  return res;
}

std::vector<ZygmundRectangle> selected_family(const SelectionResult& sel, const std::vector<ZygmundRectangle>& rects,
                                              const Kernel& k, double amplitude) {
  std::vector<ZygmundRectangle> out;
  for (std::size_t i : sel.indices)
    out.push_back(sel.which == SelectionFamily::Base ? rects.at(i) : reflect(rects.at(i), k, amplitude).reflected);
  return out;
}

bool pairwise_disjoint(const std::vector<ZygmundRectangle>& rects) {
  for (std::size_t a = 0; a < rects.size(); ++a) {
    for (std::size_t b = a + 1; b < rects.size(); ++b) {
      bool separated = false;
      for (int i = 0; i < 3 && !separated; ++i) separated = !rects[a].axis(i).overlaps_half_open(rects[b].axis(i));
      if (!separated) return false;
    }
  }
  return true;
}

std::vector<double> dyadic_scale_ladder(int first, int last) {
  std::vector<double> s;
  for (int m = first; m <= last; ++m) s.push_back(std::ldexp(1.0, -m));
  return s;
}

namespace {

int dyadic_exponent(double s) {
  int e = 0;
  const double mant = std::frexp(s, &e);
  if (mant != 0.5) throw DomainError("shrinking_probe: scales must be powers of two");
  return 1 - e;  // s = 2^-(1-e)
}

struct Shape {
  double s[3];
  std::int64_t first[3];
  std::int64_t count[3];
  std::int64_t total() const { return count[0] * count[1] * count[2]; }
};

Shape make_shape(const Box& domain, double s1, double s2) {
  Shape sh{{s1, s2, s1 * s2}, {}, {}};
  for (int a = 0; a < 3; ++a) {
    const auto& ax = domain.axes[static_cast<std::size_t>(a)];
    const auto lo = static_cast<std::int64_t>(std::ceil(ax.lo / sh.s[a]));
    const auto hi = static_cast<std::int64_t>(std::floor(ax.hi / sh.s[a]));
    sh.first[a] = lo;
    sh.count[a] = std::max<std::int64_t>(0, hi - lo);
  }
  return sh;
}

ZygmundRectangle shape_rect(const Shape& sh, std::int64_t flat) {
  std::int64_t p[3];
  p[2] = flat % sh.count[2];
  flat /= sh.count[2];
  p[1] = flat % sh.count[1];
  p[0] = flat / sh.count[1];
  std::array<Interval, 3> ax;
  for (int a = 0; a < 3; ++a) {
    const double lo = static_cast<double>(sh.first[a] + p[a]) * sh.s[a];
    ax[static_cast<std::size_t>(a)] = Interval{lo, lo + sh.s[a]};
  }
  return ZygmundRectangle(ax[0], ax[1], ax[2], 8 * kZygmundTol);
}

}  // namespace

ProbeReport shrinking_probe(const Symbol& b, double alpha, int axis, const std::vector<double>& scales,
                            const Box& domain, const ProbeOptions& opts) {
  if (axis < 1 || axis > 3) throw DomainError("shrinking_probe: axis must be 1, 2 or 3");
  for (std::size_t i = 1; i < scales.size(); ++i)
    if (!(scales[i] < scales[i - 1])) throw DomainError("shrinking_probe: scales must decrease");
  ProbeReport rep;
  rep.axis = axis;
  rep.scales = scales;
  for (double s : scales) {
    const int m = dyadic_exponent(s);
    std::vector<Shape> shapes;
    if (axis == 3) {
      for (int j = 0; j <= m; ++j) shapes.push_back(make_shape(domain, std::ldexp(1.0, -j), std::ldexp(1.0, j - m)));
    } else {
      for (int o = 0; o <= opts.max_other_depth; ++o) {
        const double other = std::ldexp(1.0, -o);
        shapes.push_back(axis == 1 ? make_shape(domain, s, other) : make_shape(domain, other, s));
      }
    }
    std::int64_t total = 0;
    for (const auto& sh : shapes) total += sh.total();
    if (total == 0) throw DomainError("shrinking_probe: no rectangle of this scale fits in the domain");
    const auto cap = static_cast<std::int64_t>(std::max<std::size_t>(1, opts.max_rects_per_scale));
    const std::int64_t picks = std::min(total, cap);
    double best = -1.0;
    std::optional<ZygmundRectangle> witness;
    for (std::int64_t t = 0; t < picks; ++t) {
      std::int64_t flat = picks == total ? t : (t * total) / picks;
      std::size_t si = 0;
      while (flat >= shapes[si].total()) flat -= shapes[si++].total();
      const ZygmundRectangle r = shape_rect(shapes[si], flat);
      const double v = grid_mean_oscillation(sample_symbol(b, r.box(), opts.resolution)) / std::pow(r.volume(), alpha);
      if (v > best) {
        best = v;
        witness = r;
      }
    }
    rep.o_alpha_values.push_back(best);
    rep.witnesses.push_back(*witness);
    rep.searched.push_back(static_cast<std::size_t>(picks));
  }
  rep.inf_witness = rep.o_alpha_values.empty()
                        ? 0.0
                        : *std::min_element(rep.o_alpha_values.begin(), rep.o_alpha_values.end());
  return rep;
}

RjChainReport rj_chain(const Symbol& b, const ZygmundRectangle& r, int j_max, const Resolution& res) {
  if (j_max < 1) throw DomainError("rj_chain: j_max must be at least 1");
  RjChainReport rep;
  rep.hypothesis = b.constant_in_x12;
  const Point c = r.center();
  std::vector<ZygmundRectangle> chain;
  for (int j = 0; j <= j_max; ++j) {
    const Interval i1 = Interval::centered(c[0], std::ldexp(r.side(0), -j));
    const Interval i2 = Interval::centered(c[1], std::ldexp(r.side(1), j));
    const ZygmundRectangle rj(i1, i2, r.i3(), r.zygmund_tol() + endpoint_rounding_tol(i1, i2, r.i3()));
    if (b.domain && !b.domain->contains(rj.box())) {
      std::ostringstream os;
      os << "rj_chain: R_" << j << " leaves the symbol domain";
      throw DomainError(os.str());
    }
    chain.push_back(rj);
  }
  const GridFunction base = sample_symbol(b, r.box(), res);
  double lo = base[0], hi = base[0], mean_b = 0.0;
  for (double v : base.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    mean_b += v;
  }
  mean_b /= static_cast<double>(base.size());
  const std::vector<double> constants{lo, lo + 0.25 * (hi - lo), lo + 0.5 * (hi - lo), lo + 0.75 * (hi - lo), hi,
                                      mean_b};
  const double scale = std::max(std::abs(lo), std::abs(hi));
  const double tol_abs = 1e-13 * std::max(scale, 1e-300);

  std::vector<std::vector<double>> dev(chain.size());
  std::vector<double> oscs(chain.size());
  for (std::size_t j = 0; j < chain.size(); ++j) {
    const GridFunction g = sample_symbol(b, chain[j].box(), res);
    oscs[j] = grid_mean_oscillation(g);
    for (double cst : constants) {
      double s = 0.0;
      for (double v : g.values()) s += std::abs(v - cst);
      dev[j].push_back(s / static_cast<double>(g.size()));
    }
  }
  for (std::size_t j = 0; j < chain.size(); ++j) {
    RjStep st{.j = static_cast<int>(j), .rect = chain[j], .osc = oscs[j]};
    if (j + 1 < chain.size()) {
      st.max_violation = -std::numeric_limits<double>::infinity();
      for (std::size_t ci = 0; ci < constants.size(); ++ci)
        st.max_violation = std::max(st.max_violation, dev[j][ci] - dev[j + 1][ci]);
      st.monotone_holds = st.max_violation <= tol_abs;
    }
    st.closing_holds = oscs[0] <= 2.0 * oscs[j] + tol_abs;
    if (!st.monotone_holds) ++rep.monotone_failures;
    if (!st.closing_holds) ++rep.closing_failures;
    rep.steps.push_back(st);
  }
  return rep;
}

CompactnessDossier compactness_dossier(const Symbol& b, double alpha, const Kernel& k, double amplitude,
                                       const Box& domain, const std::vector<double>& scales,
                                       const ProbeOptions& opts) {
  CompactnessDossier d;
  d.symbol = b.name;
  d.alpha = alpha;
  d.amplitude = amplitude;
  d.threshold = opts.threshold;
  for (int axis = 1; axis <= 3; ++axis) {
    AxisDossier ad{.probe = shrinking_probe(b, alpha, axis, scales, domain, opts)};
    for (const auto& w : ad.probe.witnesses) {
      ad.certificates.push_back(oscillation_lower_bound(b, k, w, amplitude, opts.resolution));
      if (!ad.certificates.back().valid) ++ad.invalid_certificates;
    }
    try {
      ad.selection = select_disjoint(ad.probe.witnesses, k, amplitude, axis);
    } catch (const SelectionFailure&) {
      ad.selection.reset();
    }
    ad.obstruction = ad.probe.inf_witness >= opts.threshold && ad.invalid_certificates == 0 && ad.selection &&
                     ad.selection->indices.size() >= 2 &&
                     pairwise_disjoint(selected_family(*ad.selection, ad.probe.witnesses, k, amplitude));
    if (ad.obstruction) ++d.axes_with_obstruction;
    d.axes.push_back(std::move(ad));
  }
  d.obstruction = d.axes_with_obstruction > 0;
  return d;
}

}  // namespace zyg
