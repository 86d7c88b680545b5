#include "zyg/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace zyg {

double grid_mean_oscillation(const GridFunction& g) {
  if (g.size() == 0) return 0.0;
  const double n = static_cast<double>(g.size());
  double m = 0.0;
  for (double v : g.values()) m += v;
  m /= n;
  double s = 0.0;
  for (double v : g.values()) s += std::abs(v - m);
  return s / n;
}

namespace {

double osc_at(const Symbol& b, const ZygmundRectangle& r, const Resolution& res) {
  return grid_mean_oscillation(sample_symbol(b, r.box(), res));
}

Resolution doubled(const Resolution& res) { return {2 * res[0], 2 * res[1], 2 * res[2]}; }

}  // namespace

OscillationReport osc(const Symbol& b, const ZygmundRectangle& r, const Resolution& res, double alpha) {
  if (res[0] <= 0 || res[1] <= 0 || res[2] <= 0) throw DomainError("osc: resolution must be positive");
  const double o = osc_at(b, r, res);
  const double fine = osc_at(b, r, doubled(res));
  return {r, o, alpha, o / std::pow(r.volume(), alpha), res, std::abs(o - fine)};
}

NormEstimate bmo_norm(const Symbol& b, const Box& domain, int min_depth, int max_depth, double alpha,
                      const Resolution& res) {
  if (!(alpha >= 0.0)) throw DomainError("bmo_norm: alpha must be nonnegative");
  const auto family = enumerate_zygmund(domain, min_depth, max_depth);
  NormEstimate est;
  est.alpha = alpha;
  est.family_size = family.size();
  for (const auto& r : family) {
    const double v = osc_at(b, r, res) / std::pow(r.volume(), alpha);
    if (!est.witness || v > est.value) {
      est.value = v;
      est.witness = r;
    }
  }
  return est;
}

PairSampler holder_pair_sampler(const Box& domain) {
  return [domain](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto draw = [&]() {
      Point p;
      for (std::size_t a = 0; a < 3; ++a) p[a] = domain.axes[a].lo + u(rng) * domain.axes[a].length();
      return p;
    };
    const int kind = static_cast<int>(std::uniform_int_distribution<int>(0, 3)(rng));
    Point x = draw();
    Point y = draw();
    switch (kind) {
      case 0: y[0] = x[0]; y[1] = x[1]; break;  // only x3 differs
      case 1: y[1] = x[1]; y[2] = x[2]; break;  // only x1 differs
      case 2: y[0] = x[0]; y[2] = x[2]; break;  // only x2 differs
      default: break;
    }
    return std::pair{x, y};
  };
}

HolderEstimate holder_x3_seminorm(const Symbol& b, double alpha, const PairSampler& sampler, std::size_t n,
                                  std::uint64_t seed) {
  if (!(alpha > 0.0)) throw DomainError("holder_x3_seminorm: alpha must be positive");
  std::mt19937_64 rng(seed);
  HolderEstimate h;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [x, y] = sampler(rng);
    ++h.samples;
    const double num = std::abs(b(x) - b(y));
    const double d3 = std::abs(x[2] - y[2]);
    if (d3 == 0.0) {
      if (num != 0.0) {
        ++h.infinite_pairs;
        h.value = std::numeric_limits<double>::infinity();
      }
      continue;
    }
    h.value = std::max(h.value, num / std::pow(d3, 2.0 * alpha));
  }
  return h;
}

std::string to_string(EquivalenceStatus s) {
  switch (s) {
    case EquivalenceStatus::Consistent: return "consistent";
    case EquivalenceStatus::BothZero: return "both zero: consistent";
    case EquivalenceStatus::NotInSpace: return "not bmo_Z^alpha on R^3";
    case EquivalenceStatus::OutOfRange: return "ratio out of range";
  }
  return "unknown";
}

EquivalenceReport check_equivalence(const Symbol& b, double alpha, const Box& domain, int min_depth, int max_depth,
                                    std::size_t n, std::uint64_t seed, double c_eq, const Resolution& res) {
  EquivalenceReport rep;
  rep.c_eq = c_eq;
  rep.bmo = bmo_norm(b, domain, min_depth, max_depth, alpha, res).value;
  const HolderEstimate h = holder_x3_seminorm(b, alpha, holder_pair_sampler(domain), n, seed);
  rep.holder = h.value;
  std::ostringstream os;
  if (std::isinf(h.value)) {
    rep.ratio = 0.0;
    rep.status = EquivalenceStatus::NotInSpace;
    os << h.infinite_pairs << " pairs with x3 = y3 and b(x) != b(y); bmo side " << rep.bmo;
  } else if (rep.bmo == 0.0 && h.value == 0.0) {
    rep.ratio = std::numeric_limits<double>::quiet_NaN();
    rep.status = EquivalenceStatus::BothZero;
  } else {
    rep.ratio = h.value > 0.0 ? rep.bmo / h.value : std::numeric_limits<double>::infinity();
    rep.status = (rep.ratio >= 1.0 / c_eq && rep.ratio <= c_eq) ? EquivalenceStatus::Consistent
                                                                 : EquivalenceStatus::OutOfRange;
    os << "ratio " << rep.ratio << " against [1/" << c_eq << ", " << c_eq << "]";
  }
  rep.message = to_string(rep.status) + (os.str().empty() ? "" : ": " + os.str());
  return rep;
}

namespace {

ZygmundRectangle chain_box(const Point& c, double s1, double s2) {
  return ZygmundRectangle::centered(c, s1, s2);
}

bool nested(const ZygmundRectangle& inner, const ZygmundRectangle& outer) {
  for (int i = 0; i < 3; ++i) {
    const double slack = 1e-12 * outer.side(i);
    if (inner.axis(i).lo < outer.axis(i).lo - slack || inner.axis(i).hi > outer.axis(i).hi + slack) return false;
  }
  return true;
}

}  // namespace

ChainTranscript chain_bound(const Symbol& b, const Point& x, const Point& y, double alpha, double eps, int k_max,
                            const Resolution& res) {
  if (k_max < 1) throw DomainError("chain_bound: k_max must be at least 1");
  if (!(eps > 0.0)) throw DomainError("chain_bound: eps must be positive");
  if (!(alpha > 0.0)) throw DomainError("chain_bound: alpha must be positive");
  const double d1 = std::abs(x[0] - y[0]);
  const double d2 = std::abs(x[1] - y[1]);
  const double d3 = std::abs(x[2] - y[2]);
  double r1, r2;
  const bool horizontal = d3 <= d1 * d2;
  if (horizontal) {
    r1 = std::max(d1, eps);
    r2 = std::max(d2, eps);
  } else if (d1 > 0.0) {
    r1 = d1;
    r2 = d3 / d1;
  } else if (d2 > 0.0) {
    r2 = d2;
    r1 = d3 / d2;
  } else {
    r1 = r2 = std::sqrt(d3);
  }
  const Point mid{0.5 * (x[0] + y[0]), 0.5 * (x[1] + y[1]), 0.5 * (x[2] + y[2])};
  ChainTranscript t{.x = x, .y = y, .r1 = r1, .r2 = r2, .horizontal_case = horizontal,
                    .top = chain_box(mid, 2 * r1, 2 * r2)};
  // Levels whose sides drop below the endpoint resolution are cut off; the tail bound covers them.
  auto resolvable = [&](double s1, double s2) {
    const double side[3] = {s1, s2, s1 * s2};
    for (std::size_t a = 0; a < 3; ++a)
      if (side[a] < 1e3 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(x[a]), std::abs(y[a])}))
        return false;
    return true;
  };
  for (int k = 1; k <= k_max; ++k) {
    const double s = std::ldexp(1.0, 1 - k);
    if (k > 1 && !resolvable(s * r1, s * r2)) break;
    t.i_chain.push_back(chain_box(x, s * r1, s * r2));
    t.j_chain.push_back(chain_box(y, s * r1, s * r2));
  }
  const int levels = static_cast<int>(t.i_chain.size());
  if (!nested(t.i_chain.front(), t.top) || !nested(t.j_chain.front(), t.top))
    throw GeometryError("chain_bound: I_1 or J_1 is not contained in L");
  for (std::size_t k = 1; k < t.i_chain.size(); ++k)
    if (!nested(t.i_chain[k], t.i_chain[k - 1]) || !nested(t.j_chain[k], t.j_chain[k - 1]))
      throw GeometryError("chain_bound: chain is not nested");

  auto o_alpha = [&](const ZygmundRectangle& r, double* o) {
    *o = osc_at(b, r, res);
    return *o / std::pow(r.volume(), alpha);
  };
  double o = 0.0;
  double top_o = 0.0;
  t.norm_estimate = o_alpha(t.top, &top_o);
  // I_0 = J_0 = L.
  t.osc_sum = 2 * top_o;
  for (int k = 1; k < levels; ++k) {
    const std::size_t idx = static_cast<std::size_t>(k - 1);
    t.norm_estimate = std::max(t.norm_estimate, o_alpha(t.i_chain[idx], &o));
    t.osc_sum += o;
    t.norm_estimate = std::max(t.norm_estimate, o_alpha(t.j_chain[idx], &o));
    t.osc_sum += o;
  }
  const double q = std::pow(2.0, -4.0 * alpha);
  t.constant = 2.0 * std::pow(16.0, alpha) / (1.0 - q);
  const double scale = t.norm_estimate * std::pow(r1 * r2, 2.0 * alpha);
  t.bound = t.constant * scale;
  t.tail_bound = t.constant * scale * std::pow(q, levels);
  t.difference = std::abs(b(x) - b(y));
  return t;
}

double apz_rectangle_value(const Symbol& w, double p, const ZygmundRectangle& r, const Resolution& res) {
  if (!(p > 1.0)) throw DomainError("apz: p must exceed 1");
  const GridFunction g = sample_symbol(w, r.box(), res);
  const double dual = -1.0 / (p - 1.0);
  double sw = 0.0, sd = 0.0;
  for (double v : g.values()) {
    if (!(v > 0.0)) throw PositivityError("apz: weight is not positive at a sample node");
    sw += v;
    sd += std::pow(v, dual);
  }
  const double n = static_cast<double>(g.size());
  return (sw / n) * std::pow(sd / n, p - 1.0);
}

NormEstimate apz_constant(const Symbol& w, double p, const Box& domain, int min_depth, int max_depth,
                          const Resolution& res) {
  const auto family = enumerate_zygmund(domain, min_depth, max_depth);
  NormEstimate est;
  est.family_size = family.size();
  for (const auto& r : family) {
    const double v = apz_rectangle_value(w, p, r, res);
    if (!est.witness || v > est.value) {
      est.value = v;
      est.witness = r;
    }
  }
  return est;
}

}  // namespace zyg
