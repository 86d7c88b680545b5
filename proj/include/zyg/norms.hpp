#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zyg/fields.hpp"
#include "zyg/geometry.hpp"
#include "zyg/kernels.hpp"

namespace zyg {

struct OscillationReport {
  ZygmundRectangle rectangle;
  double osc = 0.0;
  double alpha = 0.0;
  double o_alpha = 0.0;  // osc / |R|^alpha
  Resolution resolution{};
  double refinement_delta = 0.0;  // |osc(n) - osc(2n)|
};

/// Mean absolute deviation of grid samples from their grid mean.
double grid_mean_oscillation(const GridFunction& g);

OscillationReport osc(const Symbol& b, const ZygmundRectangle& r, const Resolution& res, double alpha = 0.0);

struct NormEstimate {
  double value = 0.0;
  std::optional<ZygmundRectangle> witness;
  std::size_t family_size = 0;
  double alpha = 0.0;
};

/// max of osc / |R|^alpha over enumerate_zygmund(domain, min_depth, max_depth).
/// alpha = 0 gives the bmo_Z estimate. Ties go to the earliest rectangle.
NormEstimate bmo_norm(const Symbol& b, const Box& domain, int min_depth, int max_depth, double alpha,
                      const Resolution& res = cube_resolution(8));

/// Pairs inside a box: one quarter each differing only in x3, only in x1,
/// only in x2, and in all coordinates.
PairSampler holder_pair_sampler(const Box& domain);

struct HolderEstimate {
  double value = 0.0;  // +inf when some pair has x3 = y3 and b(x) != b(y)
  std::size_t infinite_pairs = 0;
  std::size_t samples = 0;
};

/// max |b(x) - b(y)| / |x3 - y3|^{2 alpha} over sampled pairs.
HolderEstimate holder_x3_seminorm(const Symbol& b, double alpha, const PairSampler& sampler, std::size_t n,
                                  std::uint64_t seed = 1);

enum class EquivalenceStatus { Consistent, BothZero, NotInSpace, OutOfRange };

std::string to_string(EquivalenceStatus s);

struct EquivalenceReport {
  double bmo = 0.0;
  double holder = 0.0;
  double ratio = 0.0;  // bmo / holder; NaN when undefined
  double c_eq = 16.0;
  EquivalenceStatus status = EquivalenceStatus::Consistent;
  std::string message;
  bool assumes_local_integrability = true;
};

inline constexpr double kDefaultEquivalenceConstant = 16.0;

EquivalenceReport check_equivalence(const Symbol& b, double alpha, const Box& domain, int min_depth, int max_depth,
                                    std::size_t n, std::uint64_t seed = 1,
                                    double c_eq = kDefaultEquivalenceConstant,
                                    const Resolution& res = cube_resolution(8));

struct ChainTranscript {
  Point x{};
  Point y{};
  double r1 = 0.0;
  double r2 = 0.0;
  bool horizontal_case = true;  // |x3 - y3| <= |x1 - y1||x2 - y2|
  ZygmundRectangle top;
  std::vector<ZygmundRectangle> i_chain{};  // I_1, ..., I_K with K <= k_max
  std::vector<ZygmundRectangle> j_chain{};
  double osc_sum = 0.0;       // sum_{k=1}^{K} osc(I_{k-1}) + osc(J_{k-1})
  double norm_estimate = 0.0; // max O_alpha over L and the chains
  double constant = 0.0;      // 2 * 16^alpha / (1 - 2^{-4 alpha})
  double bound = 0.0;         // constant * norm_estimate * (r1 r2)^{2 alpha}
  double tail_bound = 0.0;    // bound on the omitted k > K terms
  double difference = 0.0;    // |b(x) - b(y)|
};

/// Nested Zygmund rectangles L, I_k (centered at x), J_k (centered at y).
/// If |x3 - y3| <= |x1 - y1||x2 - y2|: r_i = max(|x_i - y_i|, eps). Otherwise
/// r1 r2 = |x3 - y3| with r1 = |x1 - y1| (or r2 = |x2 - y2| when x1 = y1, or
/// r1 = r2 = |x3 - y3|^{1/2} when both agree). Sides: L = (2r1, 2r2, 4r1r2),
/// I_k = (2^{1-k} r1, 2^{1-k} r2, 2^{2-2k} r1 r2). The chain stops early (K < k_max)
/// once a side is too small to resolve next to the coordinates of x, y.
ChainTranscript chain_bound(const Symbol& b, const Point& x, const Point& y, double alpha, double eps = 1e-6,
                            int k_max = 20, const Resolution& res = cube_resolution(8));

/// <w>_R <w^{-1/(p-1)}>_R^{p-1} by midpoint quadrature.
double apz_rectangle_value(const Symbol& w, double p, const ZygmundRectangle& r, const Resolution& res);

/// Max of apz_rectangle_value over the enumerated family.
NormEstimate apz_constant(const Symbol& w, double p, const Box& domain, int min_depth, int max_depth,
                          const Resolution& res = cube_resolution(8));

}  // namespace zyg
