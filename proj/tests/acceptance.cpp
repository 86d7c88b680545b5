// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "zyg/awf.hpp"
#include "zyg/compact.hpp"
#include "zyg/fields.hpp"
#include "zyg/geometry.hpp"
#include "zyg/kernels.hpp"
#include "zyg/multiplier.hpp"
#include "zyg/norms.hpp"
#include "zyg/operators.hpp"

#ifndef ZYG_CLI
#error "ZYG_CLI must name the zyg executable"
#endif

using namespace zyg;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and budgets.
constexpr double kHomogeneityTol = 1e-12;
constexpr double kBracketRatioMax = 10.0;
constexpr double kAwfTol = 1e-8;
constexpr double kHFactorMax = 8.0;
constexpr double kNormRelTol = 0.02;
constexpr double kHolderTol = 1e-9;
constexpr double kEquivalenceLo = 1.0 / 16.0;
constexpr double kEquivalenceHi = 16.0;
constexpr double kMajorantConstantMax = 8.0;
constexpr double kRieszTol = 1e-3;
constexpr std::size_t kSelectionMin = 10;
constexpr double kGradientTol = 1e-6;
constexpr double kStabilityTol = 0.05;
constexpr double kColumnTol = 0.05;
constexpr double kCornerTol = 1e-9;

constexpr double kBudget1 = 5.0;
constexpr double kBudget2 = 120.0;
constexpr double kBudget3 = 600.0;
constexpr double kBudget7 = 1.0;
constexpr double kBudget9 = 60.0;

const Box kUnit{{Interval{0, 1}, Interval{0, 1}, Interval{0, 1}}};

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "violated: " + what;
    }
  }
  void note(const std::string& s) {
    if (!detail.empty()) detail += "; ";
    detail += s;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<ZygmundRectangle> strided(const std::vector<ZygmundRectangle>& all, std::size_t n) {
  std::vector<ZygmundRectangle> out;
  for (std::size_t i = 0; i < n && i < all.size(); ++i) out.push_back(all[i * all.size() / n]);
  return out;
}

double calibrated_amplitude(const Kernel& k) {
  return calibrate_amplitude(k, ZygmundRectangle({0, 1}, {0, 1}, {0, 1}), cube_resolution(16)).amplitude;
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = check_homogeneity(make_nagel_wainger(), 100000, 1);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(rep.samples == 100000, "sample count");
  o.require(rep.max_kernel_error <= kHomogeneityTol, "kernel relative error <= 1e-12");
  o.require(rep.max_size_error <= kHomogeneityTol, "size_z relative error <= 1e-12");
  o.require(secs < kBudget1, "runtime < 5 s");
  o.note("kernel err " + fmt(rep.max_kernel_error) + ", size err " + fmt(rep.max_size_error) + ", " + fmt(secs) +
         " s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const Kernel k = make_nagel_wainger();
  const double a = calibrated_amplitude(k);
  const auto rects = strided(enumerate_zygmund(kUnit, 0, 3), 20);
  const Resolution res = cube_resolution(32);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double lo = INFINITY, hi = 0.0;
  std::size_t points = 0;
  for (const auto& r : rects) {
    const auto pair = reflect(r, k, a);
    const Box& tb = pair.reflected.box();
    const auto ones = GridFunction::sample(r.box(), res, [](const Point&) { return 1.0; });
    for (int i = 0; i < 50; ++i) {
      Point x;
      for (int d = 0; d < 3; ++d) x[d] = tb.axes[d].lo + u(rng) * tb.axes[d].length();
      double s = 0.0;
      for (std::size_t j = 0; j < ones.size(); ++j) s += std::abs(k(x, ones.node(j)));
      s *= ones.cell_volume();
      lo = std::min(lo, a * s);
      hi = std::max(hi, a * s);
      ++points;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(rects.size() == 20 && points == 1000, "20 rectangles x 50 points");
  o.require(lo > 0.0, "c > 0");
  o.require(hi / lo <= kBracketRatioMax, "C/c <= 10");
  o.require(secs < kBudget2, "runtime < 2 min");
  o.note("A " + fmt(a) + ", c " + fmt(lo) + ", C " + fmt(hi) + ", C/c " + fmt(hi / lo) + ", " + fmt(secs) + " s");
  return o;
}

/// Ten Zygmund rectangles of varied shape whose third side contains x3 = 0.3.
std::vector<ZygmundRectangle> awf_rectangles() {
  const std::vector<std::pair<double, double>> shapes{{1, 1},   {0.5, 0.5},  {0.25, 1},  {1, 0.25},  {2, 0.5},
                                                      {0.5, 2}, {0.125, 0.5}, {0.25, 0.25}, {4, 0.125}, {0.0625, 4}};
  std::vector<ZygmundRectangle> out;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const auto [l1, l2] = shapes[i];
    const double off = 0.25 * l1 * l2 * (static_cast<double>(i % 3) - 1.0);
    out.push_back(ZygmundRectangle::centered({0.1 * i, -0.2 * i, 0.3 + off}, l1, l2));
  }
  return out;
}

Outcome criterion3() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const Kernel k = make_nagel_wainger();
  const double a = calibrated_amplitude(k);
  const Resolution res = cube_resolution(24);
  const std::vector<std::string> symbols{"constant:1", "linear-x3", "sign-x3:0.3", "holder-x3:0.5"};
  std::size_t decompositions = 0, nontrivial = 0;
  double worst_h = 0.0, worst_mean = 0.0, worst_residual = 0.0;
  for (const auto& r : awf_rectangles()) {
    const AwfSetup s1(k, r, a, res);
    const AwfSetup s16(k, r, 16.0 * a, res);
    for (const auto& spec : symbols) {
      const Symbol b = make_symbol(spec);
      const GridFunction f = extremal_testfunction(b, r, res);
      const auto d1 = awf_twice(s1, f);
      const auto d16 = awf_twice(s16, f);
      for (const auto* d : {&d1, &d16}) {
        ++decompositions;
        const double scale = d->f_abs_mean * r.volume();
        o.require(d->error_mean <= kAwfTol * scale, "|int e| bound for " + spec);
        o.require(d->h_R.sup_norm() <= kHFactorMax * d->amplitude * d->f_sup, "h bound for " + spec);
        o.require(d->residual_sup <= kAwfTol * d->f_sup, "residual bound for " + spec);
        worst_h = std::max(worst_h, d->h_factor());
        if (scale > 0.0) worst_mean = std::max(worst_mean, d->error_mean / scale);
        if (d->f_sup > 0.0) worst_residual = std::max(worst_residual, d->residual_sup / d->f_sup);
      }
      if (d1.f_abs_mean > 0.0) {
        ++nontrivial;
        o.require(d16.eta() < d1.eta(), "eta decreases from A to 16A for " + spec);
      } else {
        o.require(d1.e.sup_norm() == 0.0 && d16.e.sup_norm() == 0.0, "zero error for f = 0 (" + spec + ")");
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(decompositions == 80, "4 symbols x 10 rectangles x 2 amplitudes");
  o.require(secs < kBudget3, "runtime < 10 min");
  o.note("A " + fmt(a) + ", nontrivial " + std::to_string(nontrivial) + "/40, max h factor " + fmt(worst_h) +
         ", max mean " + fmt(worst_mean) + ", max residual " + fmt(worst_residual) + ", " + fmt(secs) + " s");
  return o;
}

Outcome criterion4() {
  Outcome o;
  const Kernel k = make_nagel_wainger();
  const double a = calibrated_amplitude(k);
  const Resolution res = cube_resolution(16);
  const auto rects = enumerate_zygmund(kUnit, 0, 1);
  const std::vector<std::string> catalog{"constant:1",      "linear-x1",      "linear-x2",
                                         "linear-x3",       "holder-x3:0.5",  "holder-x3:0.25",
                                         "sign-x3:0.3",     "separable-product:1,1,1"};
  std::size_t total = 0, invalid = 0, nonzero = 0;
  double min_slack = INFINITY;
  for (const auto& r : rects) {
    const AwfSetup setup(k, r, a, res);
    for (const auto& spec : catalog) {
      const auto c = oscillation_lower_bound(make_symbol(spec), setup);
      ++total;
      if (!c.valid) ++invalid;
      if (c.osc_value > 0.0) {
        ++nonzero;
        min_slack = std::min(min_slack, c.bound / c.osc_value);
      }
      o.require(c.constant == kCertificateConstant, "single certificate constant");
    }
  }
  o.require(rects.size() == 25, "25-rectangle sweep");
  o.require(invalid == 0, "all certificates valid");
  o.note(std::to_string(total) + " certificates, " + std::to_string(invalid) + " invalid, " +
         std::to_string(nonzero) + " with osc > 0, min bound/osc " + fmt(min_slack) + ", C " +
         fmt(kCertificateConstant));
  return o;
}

Outcome criterion5() {
  Outcome o;
  const Symbol x3 = make_symbol("linear-x3");
  const auto bmo = bmo_norm(x3, kUnit, 0, 4, 0.5);
  o.require(std::abs(bmo.value - 0.25) <= kNormRelTol * 0.25, "bmo_norm 0.25 +- 2%");
  double lo = INFINITY, hi = 0.0;
  for (const auto& r : enumerate_zygmund(kUnit, 0, 4)) {
    const double v = osc(x3, r, cube_resolution(8), 0.5).o_alpha;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  o.require(std::abs(lo - 0.25) <= kNormRelTol * 0.25 && std::abs(hi - 0.25) <= kNormRelTol * 0.25,
            "O_alpha shape independent");
  const auto hol = holder_x3_seminorm(x3, 0.5, holder_pair_sampler(kUnit), 10000);
  o.require(hol.value <= 1.0 + kHolderTol && hol.value >= 1.0 - kHolderTol, "Holder seminorm 1");
  const auto eq = check_equivalence(x3, 0.5, kUnit, 0, 4, 10000);
  o.require(eq.status == EquivalenceStatus::Consistent, "x3 consistent");
  o.require(eq.ratio >= kEquivalenceLo && eq.ratio <= kEquivalenceHi, "ratio in [1/16, 16]");
  const auto eq1 = check_equivalence(make_symbol("linear-x1"), 0.5, kUnit, 0, 4, 10000);
  o.require(eq1.status == EquivalenceStatus::NotInSpace, "x1 flagged NotInSpace");
  o.note("bmo " + fmt(bmo.value) + " over " + std::to_string(bmo.family_size) + " rectangles, O_alpha range [" +
         fmt(lo) + ", " + fmt(hi) + "], holder " + fmt(hol.value) + ", ratio " + fmt(eq.ratio) + ", x1 " +
         to_string(eq1.status));
  return o;
}

Outcome criterion6() {
  Outcome o;
  const Kernel k = make_nagel_wainger(1.0);
  const double alpha = 0.25;
  const Symbol b = holder_x3_symbol(2 * alpha);
  const auto f = GridFunction::sample(kUnit, {6, 6, 6}, [](const Point& y) { return std::sin(3 * y[0]) + y[1] * y[2] - 0.25; });
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(1.25, 3.0);
  std::bernoulli_distribution flip(0.5);
  std::vector<Point> pts;
  for (int i = 0; i < 100; ++i) {
    Point z;
    for (int d = 0; d < 3; ++d) z[d] = flip(rng) ? u(rng) : 1.0 - u(rng);
    pts.push_back(z);
  }
  std::size_t dom_fail = 0;
  for (const auto& z : pts)
    if (!check_domination(b, k, f, z).holds) ++dom_fail;
  o.require(dom_fail == 0, "domination at 100 points");

  const auto hol = holder_x3_seminorm(b, alpha, holder_pair_sampler(kUnit), 10000);
  const auto chain = check_majorant_chain(b, k, f, pts, alpha, hol.value);
  o.require(chain.points == 100 && chain.domination_failures == 0, "majorant chain at 100 points");
  o.require(chain.max_constant <= kMajorantConstantMax, "majorant constant <= 8");

  const auto one = SampledFunction::sample(0.0, 1.0, 4096, [](double) { return 1.0; });
  const double riesz = riesz_potential_1d(0.5, one, 2.0).value;
  o.require(std::abs(riesz - 0.8284) <= kRieszTol, "Riesz 1d 0.8284 +- 1e-3");
  o.note("domination failures " + std::to_string(dom_fail) + ", chain C " + fmt(chain.max_constant) +
         " (norm " + fmt(hol.value) + "), riesz " + fmt(riesz));
  return o;
}

ZygmundRectangle with_axis1(const Interval& i1) { return ZygmundRectangle(i1, {0, 1}, {0, i1.length()}); }

Outcome criterion7() {
  Outcome o;
  const Kernel k = make_nagel_wainger();
  const double a = 16.0;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::function<Interval(double)>> gens{
      [](double x) { return Interval{x, x + 1}; },
      [](double x) { return Interval{0, 1 / x}; },
      [](double x) { return Interval{1 / x, 1 / x + 1 / (x * x * x)}; }};
  std::string counts;
  for (const auto& g : gens) {
    std::vector<ZygmundRectangle> seq;
    for (int i = 1; i <= 100; ++i) seq.push_back(with_axis1(g(i)));
    const auto sel = select_disjoint(seq, k, a, 1);
    o.require(sel.indices.size() >= kSelectionMin, ">= 10 indices");
    o.require(pairwise_disjoint(selected_family(sel, seq, k, a)), "pairwise disjoint");
    if (!counts.empty()) counts += "/";
    counts += std::to_string(sel.indices.size()) + (sel.which == SelectionFamily::Base ? "b" : "r");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < kBudget7, "runtime < 1 s");
  o.note("selected " + counts + ", " + fmt(secs) + " s");
  return o;
}

Outcome criterion8() {
  Outcome o;
  const Kernel k = make_nagel_wainger();
  const double a = calibrated_amplitude(k);
  const auto scales = dyadic_scale_ladder(1, 5);
  const auto flat = compactness_dossier(make_symbol("constant:1"), 0.5, k, a, kUnit, scales);
  o.require(!flat.obstruction, "constant: no obstruction");
  const auto lin = compactness_dossier(make_symbol("linear-x3"), 0.5, k, a, kUnit, scales);
  o.require(lin.axes_with_obstruction == 3, "x3: obstruction on all axes");
  std::string infs;
  for (const auto& ax : lin.axes) {
    o.require(std::abs(ax.probe.inf_witness - 0.25) <= kNormRelTol * 0.25, "inf_witness 0.25 +- 2%");
    o.require(ax.invalid_certificates == 0, "witness certificates valid");
    if (!infs.empty()) infs += "/";
    infs += fmt(ax.probe.inf_witness);
  }
  o.note("constant axes " + std::to_string(flat.axes_with_obstruction) + ", x3 axes " +
         std::to_string(lin.axes_with_obstruction) + ", inf_witness " + infs);
  return o;
}

Outcome criterion9() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto grad = gradient_check(10000, 1);
  o.require(grad.points == 10000, "10^4 clearance-respecting points");
  o.require(grad.max_relative_error <= kGradientTol, "gradient vs FD <= 1e-6");
  const LogGrid grid;
  const auto checks = check_mz1(grid, 2);
  const auto stab = check_mz1_stability(grid, 2);
  double worst_change = 0.0, worst_ratio = 0.0;
  for (const auto& c : checks) {
    o.require(std::isfinite(c.max_ratio), "finite ratio for " + to_string(c.alpha));
    worst_ratio = std::max(worst_ratio, c.max_ratio);
  }
  for (const auto& s : stab) {
    o.require(s.relative_change <= kStabilityTol, "grid stable for " + to_string(s.alpha));
    worst_change = std::max(worst_change, s.relative_change);
  }
  o.require(checks.size() == 10, "all |alpha| <= 2");
  std::vector<double> eps;
  for (int j = 2; j <= 12; ++j) eps.push_back(std::ldexp(1.0, -j));
  const auto rows = unboundedness_sweep(eps);
  double spread = 0.0, corner_err = 0.0;
  for (auto col : {&UnboundednessRow::d1, &UnboundednessRow::d2, &UnboundednessRow::d3}) {
    double lo = INFINITY, hi = 0.0;
    for (const auto& r : rows) {
      lo = std::min(lo, r.*col);
      hi = std::max(hi, r.*col);
    }
    spread = std::max(spread, hi / lo - 1.0);
  }
  for (const auto& r : rows) corner_err = std::max(corner_err, std::abs(r.corner - std::pow(2.0, -1.5)));
  o.require(spread <= kColumnTol, "columns constant within 5%");
  o.require(corner_err <= kCornerTol, "corner 2^-3/2 +- 1e-9");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < kBudget9, "runtime < 1 min");
  o.note("grad err " + fmt(grad.max_relative_error) + ", max ratio " + fmt(worst_ratio) + ", max change " +
         fmt(worst_change) + ", column spread " + fmt(spread) + ", corner err " + fmt(corner_err) + ", " +
         fmt(secs) + " s");
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion10() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / ("zyg-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(root);
  const fs::path cfg = root / "config.json";
  std::ofstream(cfg) << R"({"symbol": "holder-x3:0.5", "alpha": 0.25, "depths": [0, 1], "resolution": [6, 6, 6], "seed": 7})";
  const std::vector<std::string> commands{"kernels check", "norms bmo",     "norms equivalence", "awf verify",
                                         "off estimate",  "compact probe", "multiplier audit"};
  std::size_t files = 0;
  for (const auto& cmd : commands) {
    std::vector<fs::path> dirs;
    for (int run = 0; run < 2; ++run) {
      std::string tag = cmd;
      for (char& ch : tag)
        if (ch == ' ') ch = '-';
      const fs::path out = root / (tag + "-" + std::to_string(run));
      const std::string line = std::string("\"") + ZYG_CLI + "\" " + cmd + " --config \"" + cfg.string() +
                               "\" --out \"" + out.string() + "\" > /dev/null 2>&1";
      const int rc = std::system(line.c_str());
      o.require(rc == 0, cmd + " exits 0");
      dirs.push_back(out);
    }
    std::vector<fs::path> names;
    for (const auto& e : fs::directory_iterator(dirs[0])) names.push_back(e.path().filename());
    o.require(!names.empty(), cmd + " writes outputs");
    std::size_t second = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dirs[1])) ++second;
    o.require(second == names.size(), cmd + " same file set");
    for (const auto& n : names) {
      ++files;
      o.require(fs::exists(dirs[1] / n) && slurp(dirs[0] / n) == slurp(dirs[1] / n), cmd + " " + n.string() +
                                                                                         " byte-identical");
    }
  }
  fs::remove_all(root);
  o.note(std::to_string(commands.size()) + " subcommands, " + std::to_string(files) + " files compared");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"kernel homogeneity", criterion1},
      {"reflected-rectangle bracketing", criterion2},
      {"AWF verification", criterion3},
      {"necessity certificates", criterion4},
      {"off-diagonal characterization", criterion5},
      {"majorant chain", criterion6},
      {"disjoint selection", criterion7},
      {"compactness dossier", criterion8},
      {"multiplier audit", criterion9},
      {"determinism", criterion10}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
