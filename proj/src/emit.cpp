#include "irrlab/emit.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace irrlab {

using json = nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("emit: cannot open " + file);
  return out;
}

void dump_json(const json& j, const std::string& file) {
  std::ofstream out = open_out(file);
  out << j.dump(2) << "\n";
}

}  // namespace

void emit_phi_table_csv(const PhiTable& table, const std::string& file) {
  std::ofstream out = open_out(file);
  out << "level,k,|xi|,dir_index,re,im\n";
  const std::size_t ndir = table.freqs.directions.size();
  for (int level = 0; level <= table.levels; ++level) {
    const std::size_t count = std::size_t(1) << level;
    for (std::size_t k = 0; k < count; ++k)
      for (std::size_t mi = 0; mi < table.freqs.magnitudes.size(); ++mi)
        for (std::size_t di = 0; di < ndir; ++di) {
          const auto v = table.value(mi * ndir + di, level, k);
          out << level << ',' << k << ',' << format_double(table.freqs.magnitudes[mi]) << ',' << di << ','
              << format_double(v.real()) << ',' << format_double(v.imag()) << "\n";
        }
  }
}

void emit_envelope_csv(const std::vector<ShellEnvelope>& envs, const std::string& file) {
  std::ofstream out = open_out(file);
  out << "gamma,q,envelope\n";
  for (const auto& env : envs)
    for (std::size_t i = 0; i < env.q.size(); ++i)
      out << format_double(env.gamma) << ',' << format_double(env.q[i]) << ',' << format_double(env.value[i])
          << "\n";
}

void emit_irregularity_json(const IrregularityReport& rep, const std::string& file) {
  json j;
  j["q_lo"] = rep.q_lo;
  j["q_hi"] = rep.q_hi;
  j["best_rho"] = rep.best_rho;
  j["best_gamma"] = rep.best_gamma;
  j["norm_at_best"] = rep.norm_at_best;
  j["delta_star"] = rep.delta_star;
  json fits = json::array();
  for (std::size_t i = 0; i < rep.gamma_grid.size(); ++i) {
    json f;
    f["gamma"] = rep.gamma_grid[i];
    f["rho"] = rep.fits[i].rho;
    f["C"] = rep.fits[i].c;
    f["r2"] = rep.fits[i].r2;
    f["shells"] = rep.fits[i].shells;
    fits.push_back(f);
  }
  j["fits"] = fits;
  dump_json(j, file);
}

void emit_density_csv(const OccupationDensity& d, const std::string& file) {
  std::ofstream out = open_out(file);
  out << "cell";
  for (int c = 0; c < d.dim; ++c) out << ",x" << (c + 1);
  out << ",density\n";
  for (std::size_t flat = 0; flat < d.values.size(); ++flat) {
    out << flat;
    for (double x : d.cell_center(flat)) out << ',' << format_double(x);
    out << ',' << format_double(d.values[flat]) << "\n";
  }
}

void emit_density_meta_json(const OccupationDensity& d, const std::string& file) {
  json j;
  j["dim"] = d.dim;
  j["bins"] = d.bins;
  j["lo"] = d.lo;
  j["hi"] = d.hi;
  json h = json::array();
  for (int c = 0; c < d.dim; ++c) h.push_back(d.h(c));
  j["h"] = h;
  j["mass"] = d.mass();
  j["t_lo"] = d.t_lo;
  j["t_hi"] = d.t_hi;
  dump_json(j, file);
}

void emit_moments_csv(const MomentDiagnostic& diag, const std::string& file) {
  std::ofstream out = open_out(file);
  out << "q,mean,stderr\n";
  for (std::size_t i = 0; i < diag.q.size(); ++i)
    out << format_double(diag.q[i]) << ',' << format_double(diag.mean[i]) << ','
        << format_double(diag.stderr_[i]) << "\n";
}

void emit_moments_json(const MomentDiagnostic& diag, const std::string& file) {
  json j;
  j["moment_order"] = diag.moment_order;
  j["slope"] = diag.slope;
  j["slope_stderr"] = diag.slope_stderr;
  j["target_slope"] = diag.target_slope;
  j["inconclusive"] = diag.inconclusive;
  if (!diag.cf_target.empty()) {
    j["cf_real"] = diag.cf_real;
    j["cf_target"] = diag.cf_target;
    j["cf_stderr"] = diag.cf_stderr;
  }
  dump_json(j, file);
}

void emit_density_curve_csv(const DensityCurve& c, const std::string& file) {
  std::ofstream out = open_out(file);
  out << "epsilon,fraction\n";
  for (std::size_t i = 0; i < c.eps.size(); ++i)
    out << format_double(c.eps[i]) << ',' << format_double(c.fraction[i]) << "\n";
}

void emit_roughness_csv(const RoughnessModulus& rm, const std::string& file) {
  std::ofstream out = open_out(file);
  out << "epsilon,modulus,witness_s,witness_dir\n";
  for (std::size_t i = 0; i < rm.eps.size(); ++i)
    out << format_double(rm.eps[i]) << ',' << format_double(rm.modulus[i]) << ',' << rm.witness_s[i] << ','
        << rm.witness_dir[i] << "\n";
}

void emit_occupation_window_csv(const OccupationWindow& ow, const std::string& file) {
  std::ofstream out = open_out(file);
  out << "r,W,W_over_2r\n";
  for (std::size_t i = 0; i < ow.r.size(); ++i)
    out << format_double(ow.r[i]) << ',' << format_double(ow.w[i]) << ',' << format_double(ow.w_over_2r[i])
        << "\n";
}

void emit_flow_json(const FlowDiagnostic& fd, const std::string& file) {
  json j;
  json rows = json::array();
  for (std::size_t i = 0; i < fd.eps.size(); ++i) {
    json r;
    r["epsilon"] = fd.eps[i];
    r["sup_ratio"] = fd.sup_ratio[i];
    r["blowup"] = static_cast<bool>(fd.blowup[i]);
    rows.push_back(r);
  }
  j["runs"] = rows;
  j["ratio_spread"] = fd.ratio_spread;
  dump_json(j, file);
}

void emit_averaged_field_json(const AveragedField& af, const std::string& file) {
  json j;
  j["s"] = af.s;
  j["t"] = af.t;
  j["dim"] = af.field.dim;
  j["hermitian"] = af.field.hermitian;
  json terms = json::array();
  for (std::size_t i = 0; i < af.field.terms(); ++i) {
    json t;
    t["xi"] = af.field.freqs[i];
    t["re"] = af.field.coeffs[i].real();
    t["im"] = af.field.coeffs[i].imag();
    terms.push_back(t);
  }
  j["terms"] = terms;
  dump_json(j, file);
}

void emit_gridded_field_csv(const GriddedField& g, const std::string& file) {
  std::ofstream out = open_out(file);
  out << "cell";
  for (int c = 0; c < g.dim; ++c) out << ",x" << (c + 1);
  out << ",value\n";
  std::vector<int> idx(g.dim);
  for (std::size_t flat = 0; flat < g.values.size(); ++flat) {
    std::size_t rem = flat;
    for (int c = g.dim - 1; c >= 0; --c) {
      idx[c] = static_cast<int>(rem % static_cast<std::size_t>(g.bins));
      rem /= static_cast<std::size_t>(g.bins);
    }
    out << flat;
    for (int c = 0; c < g.dim; ++c)
      out << ',' << format_double(g.lo[c] + (idx[c] + 0.5) * g.h(c));
    out << ',' << format_double(g.values[flat]) << "\n";
  }
}

void emit_gain_json(const GainReport& g, const std::string& file) {
  json j;
  j["alpha"] = g.alpha;
  j["p"] = g.p;
  j["gamma"] = g.gamma;
  j["rho_gain"] = g.rho_gain;
  j["max_ratio"] = g.max_ratio;
  j["median_ratio"] = g.median_ratio;
  j["probes"] = g.probes.size();
  dump_json(j, file);
}

void emit_dimension_json(const DimensionEstimate& de, const BoxCount& bc, const std::string& file) {
  json j;
  j["fourier"] = de.fourier;
  j["decay_exponent"] = de.decay_exponent;
  j["fit_r2"] = de.fit_r2;
  j["inconclusive"] = de.inconclusive;
  j["energy_alpha"] = de.energy_alpha;
  j["tracks_disagree"] = de.tracks_disagree;
  j["box_dimension"] = bc.dimension;
  j["box_inconclusive"] = bc.inconclusive;
  dump_json(j, file);
}

void emit_pvariation_csv(const std::vector<PVariationResult>& rows, const std::string& file) {
  std::ofstream out = open_out(file);
  out << "p,value,nodes,stride\n";
  for (const auto& r : rows)
    out << format_double(r.p) << ',' << format_double(r.value) << ',' << r.nodes_used << ','
        << r.subsample_stride << "\n";
}

void emit_xy_dat(const std::vector<double>& x, const std::vector<double>& y, const std::string& file) {
  std::ofstream out = open_out(file);
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    out << format_double(x[i]) << ' ' << format_double(y[i]) << "\n";
}

std::uint64_t fnv1a64_file(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("fnv1a64_file: cannot open " + file);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
    if (got < static_cast<std::streamsize>(sizeof(buf))) break;
  }
  return h;
}

}  // namespace irrlab
