#include "paraairy/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "paraairy/errors.hpp"

namespace paraairy {

std::string dump_canonical(const nlohmann::json& j) { return j.dump(); }

namespace {

nlohmann::json band_array(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) a.push_back(x);
  return a;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

nlohmann::json to_json(const NormReport& r) {
  nlohmann::json j;
  j["l2hs"] = r.l2hs;
  j["l2xs"] = r.l2xs;
  j["x"] = r.x;
  j["linf_l2"] = r.linf_l2;
  j["y_surrogate"] = r.y_surrogate;
  j["l2ys_surrogate"] = r.l2ys_surrogate;
  j["has_forcing"] = r.has_forcing;
  j["s"] = r.s;
  j["l2xs_band"] = band_array(r.l2xs_band);
  j["l2ys_band"] = band_array(r.l2ys_band);
  j["l2hs_band"] = band_array(r.l2hs_band);
  return j;
}

nlohmann::json to_json(const ProbeResult& r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["ratios"] = band_array(r.ratios);
  j["median"] = r.median;
  j["max"] = r.max;
  j["max_over_median"] = r.max_over_median;
  return j;
}

nlohmann::json record_json(const OuterIterationRecord& r) {
  nlohmann::json j;
  j["iteration"] = r.iteration;
  j["w_l2xs"] = r.w_l2xs;
  j["diff_l2xs"] = r.diff_l2xs;
  j["ratio"] = r.ratio;
  j["dxa_norm"] = r.dxa_norm;
  j["para_surrogate"] = r.para_surrogate;
  j["h_ys_surrogate"] = r.h_ys_surrogate;
  j["band_residual_l2"] = r.band_residual_l2;
  return j;
}

nlohmann::json to_json(const ConvergenceTrace& t) {
  nlohmann::json j;
  j["k"] = t.k;
  j["lambda"] = t.lambda;
  j["s0"] = t.s0;
  j["gamma"] = t.gamma;
  j["sigma"] = t.sigma;
  j["theta"] = t.theta;
  j["u0_l2hs"] = t.u0_l2hs;
  j["high_l2hs"] = t.high_l2hs;
  j["truncated_l2"] = t.truncated_l2;
  j["converged"] = t.converged;
  j["iterations"] = static_cast<int>(t.records.size());
  j["substitution_residual"] = t.substitution_residual;
  j["boundary_mass_fraction"] = t.boundary_mass_fraction;
  j["reference_checked"] = t.reference_checked;
  j["reference_linf_l2"] = t.reference_linf_l2;
  return j;
}

std::string trace_jsonl(const ConvergenceTrace& t) {
  std::string out;
  for (const auto& r : t.records) {
    out += dump_canonical(record_json(r));
    out += '\n';
  }
  return out;
}

std::string snapshots_csv(const SpaceTimeField& u, double t_end, int stride) {
  std::string out = "t,x,re,im\n";
  for (int i = 0; i < u.slice_count(); i += stride) {
    const double t = t_end * i / u.steps();
    const auto s = u.slice(i).samples();
    const std::string ts = format_double(t);
    for (int p = 0; p < u.grid()->n(); ++p) {
      out += ts;
      out += ',';
      out += format_double(u.grid()->x(p));
      out += ',';
      out += format_double(s[p].real());
      out += ',';
      out += format_double(s[p].imag());
      out += '\n';
    }
  }
  return out;
}

FieldCsv read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SolverError(ErrorCode::kIo, "cannot read field file " + path);
  std::string line;
  if (!std::getline(in, line))
    throw SolverError(ErrorCode::kParse, path + ": empty field file");
  if (line.size() && line.back() == '\r') line.pop_back();
  if (line != "x,re,im")
    throw SolverError(ErrorCode::kParse, path + ": expected header `x,re,im`");
  FieldCsv out;
  std::vector<double> xs;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.size() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string fx, fre, fim;
    if (!std::getline(row, fx, ',') || !std::getline(row, fre, ',') ||
        !std::getline(row, fim, ','))
      throw SolverError(ErrorCode::kParse, path + ":" + std::to_string(lineno) + ": bad row");
    try {
      xs.push_back(std::stod(fx));
      out.samples.emplace_back(std::stod(fre), std::stod(fim));
    } catch (const std::exception&) {
      throw SolverError(ErrorCode::kParse,
                        path + ":" + std::to_string(lineno) + ": bad number");
    }
  }
  const int n = static_cast<int>(xs.size());
  if (n < 16 || (n & (n - 1)) != 0)
    throw SolverError(ErrorCode::kParse, path + ": need a power-of-two row count >= 16");
  const double dx = xs[1] - xs[0];
  for (int i = 1; i < n; ++i)
    if (std::abs(xs[i] - xs[0] - i * dx) > 1e-9 * std::max(1.0, std::abs(xs[i])))
      throw SolverError(ErrorCode::kParse, path + ": non-uniform x column");
  out.n_points = n;
  out.length = dx * n;
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SolverError(ErrorCode::kIo, "cannot write " + path);
  out << content;
  if (!out) throw SolverError(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace paraairy
