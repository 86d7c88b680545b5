#include "zyg/cli/serialize.hpp"

#include <cstdio>

namespace zyg {

using nlohmann::json;

void to_json(json& j, const Interval& v) { j = json::array({v.lo, v.hi}); }

void to_json(json& j, const Box& v) { j = {{"i1", v.axes[0]}, {"i2", v.axes[1]}, {"i3", v.axes[2]}}; }

void to_json(json& j, const ZygmundRectangle& v) { to_json(j, v.box()); }

void to_json(json& j, const ReflectedPair& v) {
  j = {{"base", v.base},
       {"reflected", v.reflected},
       {"amplitude", v.amplitude},
       {"kernel_at_centers", v.kernel_at_centers},
       {"dist_const_lo", v.dist_const_lo},
       {"dist_const_hi", v.dist_const_hi},
       {"center_constant", v.center_constant}};
}

void to_json(json& j, const HomogeneityReport& v) {
  j = {{"max_kernel_error", v.max_kernel_error},
       {"max_size_error", v.max_size_error},
       {"argmax_z", v.argmax_z},
       {"samples", v.samples}};
}

void to_json(json& j, const BoundCheckReport& v) {
  j = {{"max_ratio", v.max_ratio}, {"argmax_x", v.argmax_x}, {"argmax_y", v.argmax_y}, {"samples", v.samples}};
}

void to_json(json& j, const Calibration& v) {
  j = {{"amplitude", v.amplitude},
       {"certificate_constant", v.certificate_constant},
       {"eta_once_bound", v.eta_once_bound},
       {"eta_twice_bound", v.eta_twice_bound},
       {"probe_eta_twice", v.probe_eta_twice},
       {"probe_h_factor", v.probe_h_factor},
       {"bracket_ratio", v.bracket_ratio},
       {"resolution", v.resolution},
       {"rungs_tried", v.rungs_tried}};
}

void to_json(json& j, const OscillationCertificate& v) {
  j = {{"rectangle", v.rectangle}, {"osc", v.osc_value},   {"pairing_1", v.pairing_1},
       {"pairing_2", v.pairing_2}, {"amplitude", v.amplitude}, {"constant", v.constant},
       {"bound", v.bound},         {"error_sup", v.error_sup}, {"valid", v.valid}};
}

void to_json(json& j, const OscillationReport& v) {
  j = {{"rectangle", v.rectangle},   {"osc", v.osc},
       {"alpha", v.alpha},           {"o_alpha", v.o_alpha},
       {"resolution", v.resolution}, {"refinement_delta", v.refinement_delta}};
}

void to_json(json& j, const NormEstimate& v) {
  j = {{"value", v.value},
       {"witness", v.witness ? json(*v.witness) : json(nullptr)},
       {"family_size", v.family_size},
       {"alpha", v.alpha}};
}

void to_json(json& j, const HolderEstimate& v) {
  j = {{"value", v.value}, {"infinite", std::isinf(v.value)}, {"infinite_pairs", v.infinite_pairs},
       {"samples", v.samples}};
}

void to_json(json& j, const EquivalenceReport& v) {
  j = {{"bmo", v.bmo},
       {"holder", v.holder},
       {"ratio", v.ratio},
       {"c_eq", v.c_eq},
       {"status", to_string(v.status)},
       {"message", v.message},
       {"assumes_local_integrability", v.assumes_local_integrability}};
}

void to_json(json& j, const OffDiagonalEstimate& v) {
  j = {{"u", v.u},
       {"t", v.t},
       {"value", v.value},
       {"pair_index", v.pair_index},
       {"testfn_index", v.testfn_index},
       {"p1", v.p1},
       {"p2", v.p2}};
}

void to_json(json& j, const SelectionResult& v) {
  j = {{"indices", v.indices},
       {"which", to_string(v.which)},
       {"branch", to_string(v.branch)},
       {"axis", v.axis},
       {"accumulation_point", v.accumulation_point ? json(*v.accumulation_point) : json(nullptr)}};
}

void to_json(json& j, const ProbeReport& v) {
  j = {{"axis", v.axis},
       {"scales", v.scales},
       {"o_alpha_values", v.o_alpha_values},
       {"witnesses", v.witnesses},
       {"searched", v.searched},
       {"inf_witness", v.inf_witness}};
}

void to_json(json& j, const AxisDossier& v) {
  j = {{"probe", v.probe},
       {"certificates", v.certificates},
       {"selection", v.selection ? json(*v.selection) : json(nullptr)},
       {"invalid_certificates", v.invalid_certificates},
       {"obstruction", v.obstruction}};
}

void to_json(json& j, const CompactnessDossier& v) {
  j = {{"symbol", v.symbol},
       {"alpha", v.alpha},
       {"amplitude", v.amplitude},
       {"threshold", v.threshold},
       {"axes", v.axes},
       {"obstruction", v.obstruction},
       {"axes_with_obstruction", v.axes_with_obstruction}};
}

void to_json(json& j, const MultiIndex& v) { j = json::array({v.a1, v.a2, v.a3}); }

void to_json(json& j, const MultiplierCheck& v) {
  j = {{"alpha", v.alpha},
       {"max_ratio", v.max_ratio},
       {"grid", {{"log2_lo", v.grid.log2_lo}, {"log2_hi", v.grid.log2_hi}, {"points", v.grid.points}}},
       {"argmax", v.argmax},
       {"skipped", v.skipped}};
}

void to_json(json& j, const StabilityRow& v) {
  j = {{"alpha", v.alpha}, {"coarse", v.coarse}, {"fine", v.fine}, {"relative_change", v.relative_change}};
}

void to_json(json& j, const UnboundednessRow& v) {
  j = {{"eps", v.eps}, {"d1", v.d1}, {"d2", v.d2}, {"d3", v.d3}, {"corner", v.corner}};
}

void to_json(json& j, const GradientCheck& v) {
  j = {{"points", v.points},
       {"skipped", v.skipped},
       {"max_relative_error", v.max_relative_error},
       {"worst", v.worst}};
}

std::string rectangle_label(const Box& b) {
  std::string s;
  char buf[80];
  for (std::size_t a = 0; a < 3; ++a) {
    std::snprintf(buf, sizeof buf, "%s[%.17g,%.17g]", a ? "x" : "", b.axes[a].lo, b.axes[a].hi);
    s += buf;
  }
  return s;
}

}  // namespace zyg
