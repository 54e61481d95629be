#include "paraairy/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "paraairy/errors.hpp"
#include "paraairy/rng.hpp"

namespace paraairy {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& key, const std::string& origin) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw SolverError(ErrorCode::kParse, origin + ": bad numeric value for " + key);
  }
}

long long parse_int(const std::string& v, const std::string& key, const std::string& origin) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw SolverError(ErrorCode::kParse, origin + ": bad integer value for " + key);
  }
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
  Scenario sc;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw SolverError(ErrorCode::kParse, where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw SolverError(ErrorCode::kParse, where + ": empty value for " + key);

    if (key == "name") sc.name = value;
    else if (key == "profile") sc.profile = value;
    else if (key == "amplitude") sc.amplitude = parse_double(value, key, where);
    else if (key == "width") sc.width = parse_double(value, key, where);
    else if (key == "center") sc.center = parse_double(value, key, where);
    else if (key == "profile_seed") sc.profile_seed = parse_int(value, key, where);
    else if (key == "n") sc.n_points = static_cast<int>(parse_int(value, key, where));
    else if (key == "length") sc.length = parse_double(value, key, where);
    else if (key == "snapshot_stride")
      sc.snapshot_stride = static_cast<int>(parse_int(value, key, where));
    else if (key == "time_samples")
      sc.config.m_steps = static_cast<int>(parse_int(value, key, where));
    else if (key == "s") sc.config.s = parse_double(value, key, where);
    else if (key == "theta") sc.config.theta = parse_double(value, key, where);
    else if (key == "k_max") sc.config.k_max = static_cast<int>(parse_int(value, key, where));
    else if (key == "k_force") sc.config.k_force = static_cast<int>(parse_int(value, key, where));
    else if (key == "delta_threshold") sc.config.delta_threshold = parse_double(value, key, where);
    else if (key == "outer_tol") sc.config.outer_tol = parse_double(value, key, where);
    else if (key == "outer_max_iter")
      sc.config.outer_max_iter = static_cast<int>(parse_int(value, key, where));
    else if (key == "inner_tol") sc.config.inner_tol = parse_double(value, key, where);
    else if (key == "inner_max_iter")
      sc.config.inner_max_iter = static_cast<int>(parse_int(value, key, where));
    else if (key == "n_cap") sc.config.n_cap = static_cast<int>(parse_int(value, key, where));
    else if (key == "battery_seed") sc.config.battery_seed = parse_int(value, key, where);
    else if (key == "reference_check")
      sc.config.run_reference_check = parse_int(value, key, where) != 0;
    else if (key == "reference_substeps")
      sc.config.reference_substeps = static_cast<int>(parse_int(value, key, where));
    else if (key == "monomial") {
      std::istringstream ms(value);
      double re, im;
      int a0, a1, a2;
      if (!(ms >> re >> im >> a0 >> a1 >> a2))
        throw SolverError(ErrorCode::kParse, where + ": monomial needs `re im a0 a1 a2`");
      std::string rest;
      if (ms >> rest)
        throw SolverError(ErrorCode::kParse, where + ": trailing tokens after monomial");
      sc.monomials.push_back(Monomial{Complex(re, im), {a0, a1, a2}});
    } else {
      throw SolverError(ErrorCode::kParse, where + ": unknown key '" + key + "'");
    }
  }
  if (sc.n_points < 16 || (sc.n_points & (sc.n_points - 1)) != 0)
    throw SolverError(ErrorCode::kParse, origin + ": n must be a power of two >= 16");
  if (!(sc.length > 0.0)) throw SolverError(ErrorCode::kParse, origin + ": length must be > 0");
  if (sc.config.m_steps < 4)
    throw SolverError(ErrorCode::kParse, origin + ": time_samples must be >= 4");
  if (!(sc.amplitude == sc.amplitude) || !(sc.width > 0.0))
    throw SolverError(ErrorCode::kParse, origin + ": bad profile parameters");
  if (sc.snapshot_stride < 1)
    throw SolverError(ErrorCode::kParse, origin + ": snapshot_stride must be >= 1");
  return sc;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SolverError(ErrorCode::kIo, "cannot read scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path);
}

PolynomialNonlinearity validate_scenario(const Scenario& sc) {
  const auto f = validate_nonlinearity(sc.monomials);
  if (!(sc.config.s > f.s0))
    throw SolverError(ErrorCode::kInvalidArgument,
                      "scenario s = " + std::to_string(sc.config.s) +
                          " does not exceed s0 = " + std::to_string(f.s0));
  sigma_exponent(sc.config.s, f);
  gamma_exponent(sc.config.s, f.lambda);
  // Physical-space products of resolved bands must not alias back under the
  // band cutoff: xi_max >= 3 * 2^j_max. Power-of-two box lengths satisfy it.
  const Grid probe(sc.n_points, sc.length);
  if (probe.xi_max() < 3.0 * std::ldexp(1.0, probe.j_max()))
    throw SolverError(ErrorCode::kInvalidArgument,
                      "grid aliasing margin too small: xi_max = " + std::to_string(probe.xi_max()) +
                          " < 3 * 2^j_max; use a power-of-two box length");
  return f;
}

SpectralField build_initial_data(const Context& ctx, const Scenario& sc) {
  const int n = ctx.grid->n();
  std::vector<Complex> s(n);
  if (sc.profile == "sech" || sc.profile == "sech2" || sc.profile == "gaussian") {
    for (int i = 0; i < n; ++i) {
      const double x = (ctx.grid->x(i) - sc.center) / sc.width;
      double v = 0.0;
      if (sc.profile == "sech") v = 1.0 / std::cosh(x);
      else if (sc.profile == "sech2") v = 1.0 / (std::cosh(x) * std::cosh(x));
      else v = std::exp(-x * x);
      s[i] = Complex(sc.amplitude * v, 0.0);
    }
    return SpectralField::from_samples(ctx.grid, s);
  }
  if (sc.profile == "random") {
    Rng rng(sc.profile_seed);
    SpectralField u(ctx.grid);
    for (int m = 0; m < n; ++m) {
      const double xi = ctx.grid->xi(m);
      u.coef()[m] = Complex(rng.normal(), rng.normal()) *
                    std::exp(-(xi * sc.width) * (xi * sc.width));
    }
    auto r = ctx.lp->project_resolved(u);
    const double nrm = r.l2_norm();
    if (nrm > 0.0) r *= sc.amplitude / nrm;
    return r;
  }
  throw SolverError(ErrorCode::kParse, "unknown profile '" + sc.profile + "'");
}

}  // namespace paraairy
