#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "zyg/awf.hpp"
#include "zyg/fields.hpp"
#include "zyg/geometry.hpp"
#include "zyg/kernels.hpp"

namespace zyg {

enum class SelectionFamily { Base, Reflected };
enum class SelectionBranch { Escape, Accumulation };

std::string to_string(SelectionFamily f);
std::string to_string(SelectionBranch b);

struct SelectionResult {
  std::vector<std::size_t> indices;  // strictly increasing
  SelectionFamily which = SelectionFamily::Base;
  SelectionBranch branch = SelectionBranch::Escape;
  int axis = 1;                       // 1, 2 or 3
  std::optional<double> accumulation_point;
};

struct SelectionOptions {
  std::size_t requested = std::numeric_limits<std::size_t>::max();
  /// Greedy separation divisor: accept I when dist(I, x) + l(I) < dist(x, chosen) / divisor.
  double divisor = 1.0;
};

/// Disjoint subsequence of rectangles whose axis-j sides shrink to 0, either
/// of the rectangles themselves or of their reflections (kernel k, amplitude A).
SelectionResult select_disjoint(const std::vector<ZygmundRectangle>& rects, const Kernel& k, double amplitude,
                                int axis, const SelectionOptions& opts = {});

/// The family a selection refers to: the chosen rectangles or their reflections.
std::vector<ZygmundRectangle> selected_family(const SelectionResult& sel, const std::vector<ZygmundRectangle>& rects,
                                              const Kernel& k, double amplitude);

/// Exact check: every two boxes have disjoint interiors along some axis.
bool pairwise_disjoint(const std::vector<ZygmundRectangle>& rects);

struct ProbeOptions {
  Resolution resolution{8, 8, 8};
  int max_other_depth = 2;        // depth range of the free side
  std::size_t max_rects_per_scale = 64;
  double threshold = 1e-3;
};

struct ProbeReport {
  int axis = 1;
  std::vector<double> scales;          // strictly decreasing
  std::vector<double> o_alpha_values;  // per-scale max of O_alpha
  std::vector<ZygmundRectangle> witnesses;
  std::vector<std::size_t> searched;   // rectangles examined per scale
  double inf_witness = 0.0;
};

/// Dyadic ladder 2^-first .. 2^-last.
std::vector<double> dyadic_scale_ladder(int first, int last);

/// For each scale, the max of O_alpha over dyadic Zygmund rectangles in the
/// domain whose axis-j side equals that scale (deterministic stride subset).
ProbeReport shrinking_probe(const Symbol& b, double alpha, int axis, const std::vector<double>& scales,
                            const Box& domain, const ProbeOptions& opts = {});

struct RjStep {
  int j = 0;
  ZygmundRectangle rect;
  double osc = 0.0;
  double max_violation = 0.0;  // max over c of <|b-c|>_{R_j} - <|b-c|>_{R_{j+1}} (<= 0 when it holds)
  bool monotone_holds = true;
  bool closing_holds = true;   // osc(R) <= 2 <|b - <b>_{R_j}|>_{R_j}
};

struct RjChainReport {
  std::vector<RjStep> steps;
  bool hypothesis = false;  // symbol flagged constant in x1, x2
  std::size_t monotone_failures = 0;
  std::size_t closing_failures = 0;
};

/// R_j = 2^-j I^1 x 2^j I^2 x I^3 (scaled about the centers), j = 0..j_max.
RjChainReport rj_chain(const Symbol& b, const ZygmundRectangle& r, int j_max,
                       const Resolution& res = cube_resolution(8));

struct AxisDossier {
  ProbeReport probe;
  std::vector<OscillationCertificate> certificates{};
  std::optional<SelectionResult> selection{};
  std::size_t invalid_certificates = 0;
  bool obstruction = false;
};

struct CompactnessDossier {
  std::string symbol;
  double alpha = 0.0;
  double amplitude = 0.0;
  double threshold = 1e-3;
  std::vector<AxisDossier> axes;  // axes 1, 2, 3
  bool obstruction = false;       // some axis witnesses an obstruction
  std::size_t axes_with_obstruction = 0;
};

CompactnessDossier compactness_dossier(const Symbol& b, double alpha, const Kernel& k, double amplitude,
                                       const Box& domain, const std::vector<double>& scales,
                                       const ProbeOptions& opts = {});

}  // namespace zyg
