#pragma once

#include "json.hpp"
#include "zyg/awf.hpp"
#include "zyg/compact.hpp"
#include "zyg/geometry.hpp"
#include "zyg/kernels.hpp"
#include "zyg/multiplier.hpp"
#include "zyg/norms.hpp"
#include "zyg/operators.hpp"

// JSON encoders for report structs. Non-finite doubles encode as null.
namespace zyg {

void to_json(nlohmann::json& j, const Interval& v);
void to_json(nlohmann::json& j, const Box& v);
void to_json(nlohmann::json& j, const ZygmundRectangle& v);
void to_json(nlohmann::json& j, const ReflectedPair& v);
void to_json(nlohmann::json& j, const HomogeneityReport& v);
void to_json(nlohmann::json& j, const BoundCheckReport& v);
void to_json(nlohmann::json& j, const Calibration& v);
void to_json(nlohmann::json& j, const OscillationCertificate& v);
void to_json(nlohmann::json& j, const OscillationReport& v);
void to_json(nlohmann::json& j, const NormEstimate& v);
void to_json(nlohmann::json& j, const HolderEstimate& v);
void to_json(nlohmann::json& j, const EquivalenceReport& v);
void to_json(nlohmann::json& j, const OffDiagonalEstimate& v);
void to_json(nlohmann::json& j, const SelectionResult& v);
void to_json(nlohmann::json& j, const ProbeReport& v);
void to_json(nlohmann::json& j, const AxisDossier& v);
void to_json(nlohmann::json& j, const CompactnessDossier& v);
void to_json(nlohmann::json& j, const MultiIndex& v);
void to_json(nlohmann::json& j, const MultiplierCheck& v);
void to_json(nlohmann::json& j, const StabilityRow& v);
void to_json(nlohmann::json& j, const UnboundednessRow& v);
void to_json(nlohmann::json& j, const GradientCheck& v);

/// "[lo,hi]x[lo,hi]x[lo,hi]" with %.17g coordinates, for CSV cells.
std::string rectangle_label(const Box& b);
inline std::string rectangle_label(const ZygmundRectangle& r) { return rectangle_label(r.box()); }

}  // namespace zyg
