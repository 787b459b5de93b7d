#pragma once

#include <string>
#include <vector>

#include "irrlab/averaging.hpp"
#include "irrlab/geometry.hpp"
#include "irrlab/irregularity.hpp"
#include "irrlab/spectral.hpp"
#include "irrlab/young.hpp"

namespace irrlab {

/// All emitters write deterministically: fixed field order, 17 significant
/// digits for floating point, sorted JSON keys.
std::string format_double(double v);

void emit_phi_table_csv(const PhiTable& table, const std::string& file);
void emit_envelope_csv(const std::vector<ShellEnvelope>& envs, const std::string& file);
void emit_irregularity_json(const IrregularityReport& rep, const std::string& file);
void emit_density_csv(const OccupationDensity& d, const std::string& file);
void emit_density_meta_json(const OccupationDensity& d, const std::string& file);
void emit_moments_csv(const MomentDiagnostic& diag, const std::string& file);
void emit_moments_json(const MomentDiagnostic& diag, const std::string& file);
void emit_density_curve_csv(const DensityCurve& c, const std::string& file);
void emit_roughness_csv(const RoughnessModulus& rm, const std::string& file);
void emit_occupation_window_csv(const OccupationWindow& ow, const std::string& file);
void emit_flow_json(const FlowDiagnostic& fd, const std::string& file);
void emit_averaged_field_json(const AveragedField& af, const std::string& file);
void emit_gridded_field_csv(const GriddedField& g, const std::string& file);
void emit_gain_json(const GainReport& g, const std::string& file);
void emit_dimension_json(const DimensionEstimate& de, const BoxCount& bc, const std::string& file);
void emit_pvariation_csv(const std::vector<PVariationResult>& rows, const std::string& file);

/// Two-column gnuplot-friendly variant (space separated, no header).
void emit_xy_dat(const std::vector<double>& x, const std::vector<double>& y, const std::string& file);

std::uint64_t fnv1a64_file(const std::string& file);

}  // namespace irrlab
