#pragma once

#include <optional>
#include <span>
#include <vector>

#include "zyg/fields.hpp"
#include "zyg/geometry.hpp"
#include "zyg/kernels.hpp"
#include "zyg/operators.hpp"

namespace zyg {

/// Amplitude ladder 2^4, 2^8, ..., 2^32.
inline constexpr int kLadderFirstLog2 = 4;
inline constexpr int kLadderStepLog2 = 4;
inline constexpr int kLadderLastLog2 = 32;

/// Bound on ||h_R|| / (A ||f||) accepted by calibration.
inline constexpr double kHBoundFactor = 8.0;
/// Calibration requires the worst-case twice-iterated error factor to stay below this.
inline constexpr double kEtaTwiceCeiling = 0.25;
/// Certificate constant implied by kEtaTwiceCeiling: ||e_R|| <= 2 * 0.25 for ||f|| <= 2.
inline constexpr double kCertificateConstant = 2.0;
inline constexpr double kMeanZeroTol = 1e-8;

/// R, R~ and the kernel interaction between their grids, with T*1_{R~} on R
/// and T1_R on R~ precomputed.
class AwfSetup {
 public:
  AwfSetup(const Kernel& k, const ZygmundRectangle& r, double amplitude, const Resolution& res);

  const ReflectedPair& pair() const { return pair_; }
  const Resolution& resolution() const { return res_; }
  const KernelInteraction& interaction() const { return op_; }
  /// T*1_{R~} at the nodes of R.
  const GridFunction& tstar_one() const { return tstar_one_; }
  /// T1_R at the nodes of R~.
  const GridFunction& t_one() const { return t_one_; }
  /// 1/2 |R| |K(c_R~, c_R)|.
  double lower_bracket() const { return 0.5 * pair_.base.volume() * std::abs(pair_.kernel_at_centers); }

  /// sup over mean-zero f of ||e_R~|| / <|f|>_R (one iteration), from kernel ranges.
  double eta_once_bound() const;
  /// Same for the twice-iterated error e_R.
  double eta_twice_bound() const;

 private:
  ReflectedPair pair_;
  Resolution res_;
  KernelInteraction op_;
  GridFunction tstar_one_;
  GridFunction t_one_;
};

struct AwfDecomposition {
  ReflectedPair base;
  GridFunction h_R{};       // on R
  GridFunction h_Rtilde{};  // on R~ (empty for one iteration)
  GridFunction e{};         // on R~ for one iteration, on R for twice iterated
  double amplitude = 0.0;
  double residual_sup = 0.0;  // sup |f - reconstruction| at grid nodes of R and R~
  double error_mean = 0.0;    // |int e|
  double f_sup = 0.0;
  double f_abs_mean = 0.0;    // <|f|>_R
  bool twice = false;

  /// ||e|| / <|f|>_R, 0 when f = 0.
  double eta() const { return f_abs_mean > 0.0 ? e.sup_norm() / f_abs_mean : 0.0; }
  /// ||h_R|| / (A ||f||), 0 when f = 0.
  double h_factor() const { return f_sup > 0.0 ? h_R.sup_norm() / (amplitude * f_sup) : 0.0; }
};

AwfDecomposition awf_once(const AwfSetup& setup, const GridFunction& f);
AwfDecomposition awf_twice(const AwfSetup& setup, const GridFunction& f);
AwfDecomposition awf_once(const Kernel& k, const ZygmundRectangle& r, const GridFunction& f, double amplitude);
AwfDecomposition awf_twice(const Kernel& k, const ZygmundRectangle& r, const GridFunction& f, double amplitude);

struct Calibration {
  double amplitude = 0.0;
  double certificate_constant = kCertificateConstant;
  double eta_once_bound = 0.0;
  double eta_twice_bound = 0.0;
  double probe_eta_twice = 0.0;
  double probe_h_factor = 0.0;
  double bracket_ratio = 0.0;  // min |T*1|, |T1| over both grids / (|R| |K(c~, c)|)
  Resolution resolution{16, 16, 16};
  int rungs_tried = 0;
};

/// Smallest ladder amplitude for which the reflected pair exists, both
/// T*1_{R~} and T1_R stay above 1/2 |R||K(c~,c)|, the sign-x3 probe passes the
/// awf_twice mean-zero and h bounds, and the worst-case twice-iterated error
/// factor is at most kEtaTwiceCeiling. Throws CalibrationFailure otherwise.
Calibration calibrate_amplitude(const Kernel& k, const ZygmundRectangle& r,
                                const Resolution& res = cube_resolution(16));

struct OscillationCertificate {
  ZygmundRectangle rectangle;
  double osc_value = 0.0;
  double pairing_1 = 0.0;
  double pairing_2 = 0.0;
  double amplitude = 0.0;
  double constant = kCertificateConstant;
  double bound = 0.0;
  double error_sup = 0.0;  // ||e_R||
  bool valid = false;
};

/// osc(b, R) from the grid of R, deviations below 1e-14 sup|b| counted as zero
/// (consistent with extremal_testfunction).
double grid_oscillation(const Symbol& b, const ZygmundRectangle& r, const Resolution& res);

OscillationCertificate oscillation_lower_bound(const Symbol& b, const AwfSetup& setup,
                                               double constant = kCertificateConstant);
OscillationCertificate oscillation_lower_bound(const Symbol& b, const Kernel& k, const ZygmundRectangle& r,
                                               double amplitude, const Resolution& res = cube_resolution(16),
                                               double constant = kCertificateConstant);

struct BmoLowerEstimate {
  double value = 0.0;
  std::size_t argmax = 0;
  std::size_t invalid_certificates = 0;
  std::vector<OscillationCertificate> certificates;
};

/// max over rectangles of osc(b,R) / |R|^(1/p - 1/q), each certified.
BmoLowerEstimate bmo_lower_via_off(const Symbol& b, const Kernel& k, double p, double q,
                                   std::span<const ZygmundRectangle> rectangles, double amplitude,
                                   const Resolution& res = cube_resolution(16));

}  // namespace zyg
