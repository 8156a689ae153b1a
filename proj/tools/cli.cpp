#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "airywell/errors.hpp"
#include "airywell/exact.hpp"
#include "airywell/maf.hpp"
#include "airywell/potential.hpp"
#include "airywell/wkb.hpp"

namespace airywell::cli {

using json = nlohmann::ordered_json;

namespace {

const std::set<std::string> known_keys = {"potential", "z0sq",  "levels", "level",    "methods",
                                          "zmax",      "points", "delta_z", "zc",      "nmax",
                                          "format",    "out",   "digits", "pairs",    "mirror",
                                          "quad_tol",  "root_tol"};

std::string normalize_key(std::string key)
{
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_real(const std::string& text, const std::string& what)
{
  double v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError(what + ": not a number: '" + text + "'");
  return v;
}

int parse_int(const std::string& text, const std::string& what)
{
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(what + ": not an integer: '" + text + "'");
  return v;
}

// ---- request ----------------------------------------------------------------

struct Request {
  std::string command;
  Potential::Kind kind = Potential::Kind::sho;
  std::vector<double> z0sq;
  int levels = 9;
  int level = 0;
  std::vector<Method> methods{Method::exact, Method::wkb, Method::maf};
  std::optional<double> zmax;
  int points = 801;
  std::optional<double> delta_z;
  std::optional<double> zc;
  int nmax = 200;
  std::string format = "csv";
  std::string out;
  int digits = 9;
  std::vector<std::pair<int, int>> pairs{{1, 0}, {3, 2}};
  bool mirror = false;
  double quad_tol = 1e-10;
  double root_tol = 1e-12;

  bool has(Method m) const { return std::find(methods.begin(), methods.end(), m) != methods.end(); }
};

Request build_request(const std::string& command, const std::map<std::string, std::string>& kv)
{
  Request r;
  r.command = command;
  for (const auto& [key, value] : kv) {
    if (!known_keys.count(key)) throw ConfigError("unknown setting '" + key + "'");
    if (key == "potential") {
      if (value == "sho") r.kind = Potential::Kind::sho;
      else if (value == "dwp") r.kind = Potential::Kind::dwp;
      else throw ConfigError("potential must be sho or dwp");
    } else if (key == "z0sq") {
      r.z0sq = parse_real_list(value);
    } else if (key == "levels") {
      r.levels = parse_int(value, key);
    } else if (key == "level") {
      r.level = parse_int(value, key);
    } else if (key == "methods") {
      r.methods.clear();
      for (const auto& m : split(value, ',')) {
        Method parsed;
        if (m == "exact") parsed = Method::exact;
        else if (m == "wkb") parsed = Method::wkb;
        else if (m == "maf") parsed = Method::maf;
        else throw ConfigError("unknown method '" + m + "'");
        if (!r.has(parsed)) r.methods.push_back(parsed);
      }
      std::sort(r.methods.begin(), r.methods.end());
    } else if (key == "zmax") {
      r.zmax = parse_real(value, key);
    } else if (key == "points") {
      r.points = parse_int(value, key);
    } else if (key == "delta_z") {
      r.delta_z = parse_real(value, key);
    } else if (key == "zc") {
      r.zc = parse_real(value, key);
    } else if (key == "nmax") {
      r.nmax = parse_int(value, key);
    } else if (key == "format") {
      if (value != "csv" && value != "json") throw ConfigError("format must be csv or json");
      r.format = value;
    } else if (key == "out") {
      r.out = value;
    } else if (key == "digits") {
      r.digits = parse_int(value, key);
    } else if (key == "pairs") {
      r.pairs.clear();
      for (const auto& p : split(value, ',')) {
        const auto ab = split(p, '-');
        if (ab.size() != 2) throw ConfigError("pairs are written odd-even, e.g. 1-0,3-2");
        r.pairs.emplace_back(parse_int(ab[0], key), parse_int(ab[1], key));
      }
    } else if (key == "mirror") {
      if (value != "true" && value != "false" && value != "1" && value != "0")
        throw ConfigError("mirror must be true or false");
      r.mirror = value == "true" || value == "1";
    } else if (key == "quad_tol") {
      r.quad_tol = parse_real(value, key);
    } else if (key == "root_tol") {
      r.root_tol = parse_real(value, key);
    }
  }

  if (r.methods.empty()) throw ConfigError("at least one method is required");
  if (r.levels < 1) throw ConfigError("levels must be >= 1");
  if (r.level < 0) throw ConfigError("level must be >= 0");
  if (r.points < 2) throw ConfigError("points must be >= 2");
  if (r.nmax < 1) throw ConfigError("nmax must be >= 1");
  if (r.digits < 0 || r.digits > 17) throw ConfigError("digits must be in 0..17");
  if (r.zmax && !(*r.zmax > 0)) throw ConfigError("zmax must be positive");
  if (r.delta_z && !(*r.delta_z > 0)) throw ConfigError("delta-z must be positive");
  if (r.zc && !(*r.zc > 0)) throw ConfigError("zc must be positive");
  if (!(r.quad_tol > 0) || !(r.root_tol > 0)) throw ConfigError("tolerances must be positive");
  for (double v : r.z0sq)
    if (!(v > 0)) throw ConfigError("z0sq values must be positive");
  for (const auto& [odd, even] : r.pairs)
    if (even < 0 || even % 2 != 0 || odd != even + 1)
      throw ConfigError("each pair must be (2k+1)-(2k), e.g. 1-0 or 3-2");

  const bool multi = r.command == "tables" || r.command == "splitting";
  if (r.kind == Potential::Kind::dwp) {
    if (r.z0sq.empty()) throw ConfigError("--potential dwp needs --z0sq");
    if (!multi && r.z0sq.size() != 1) throw ConfigError(r.command + " takes a single --z0sq value");
  }
  if (r.command == "splitting" && r.kind != Potential::Kind::dwp)
    throw ConfigError("splitting needs --potential dwp");
  return r;
}

Potential make_potential(const Request& r, double z0sq)
{
  return r.kind == Potential::Kind::dwp ? Potential::dwp(std::sqrt(z0sq)) : Potential::sho();
}

// Solver settings for one potential. Without an explicit --zc the SHO box
// grows with the highest level and the box always holds the output grid.
exact::SolverConfig solver_config(const Request& r, const Potential& pot, int top_level, double zmax = 0)
{
  auto cfg = exact::SolverConfig::defaults_for(pot);
  if (r.zc) {
    cfg.z_c = *r.zc;
  } else {
    if (!pot.is_dwp()) cfg.z_c = std::max(cfg.z_c, 2 * (std::sqrt(2.0 * top_level + 1) + 5));
    cfg.z_c = std::max(cfg.z_c, 2 * zmax);
  }
  cfg.n_max = r.nmax;
  cfg.quad_tol = r.quad_tol;
  cfg.root_tol = r.root_tol;
  cfg.delta_z = r.delta_z.value_or(0.0);
  cfg.validate();
  return cfg;
}

// ---- per-method levels --------------------------------------------------------

struct MethodLevels {
  std::vector<double> eps;  // found levels, ascending in n
  bool exhausted = false;
};

MethodLevels levels_for(Method m, const Request& r, const Potential& pot, int count)
{
  MethodLevels out;
  switch (m) {
    case Method::exact: {
      const auto res = exact::solve_potential(pot, solver_config(r, pot, count - 1), count);
      out.eps = res.energies;
      break;
    }
    case Method::wkb:
      if (pot.is_dwp()) {
        const auto set = wkb::dwp_wkb_eigenvalues(pot.z0, count, r.root_tol);
        for (const auto& l : set.levels) out.eps.push_back(l.eps);
        out.exhausted = set.exhausted;
      } else {
        for (const auto& l : wkb::sho_wkb_levels(count)) out.eps.push_back(l.eps);
      }
      break;
    case Method::maf:
      if (pot.is_dwp()) {
        const auto set = maf::dwp_maf_eigenvalues(pot.z0, count, r.root_tol);
        for (const auto& l : set.levels) out.eps.push_back(l.eps);
        out.exhausted = set.exhausted;
      } else {
        for (const auto& l : maf::sho_maf_energies(count, r.root_tol)) out.eps.push_back(l.eps);
      }
      break;
  }
  return out;
}

// ---- wavefunctions --------------------------------------------------------------

struct LevelModel {
  Potential pot;
  int n = 0;
  exact::SolverConfig cfg;
  double exact_eps = 0;
  std::vector<double> coeffs;
  std::optional<double> wkb_eps, maf_eps;
  std::optional<PiecewiseWavefunction> wkb_wf, maf_wf;
  std::string wkb_note;
  double delta_z = 0;
  double zmax = 0;

  double exact_value(double z) const
  {
    const double v = exact::basis_sum(coeffs, cfg.z_c, std::abs(z));
    return (z < 0 && parity_of(n) == Parity::odd) ? -v : v;
  }
};

double outer_turning(const Potential& pot, double eps)
{
  return pot.is_dwp() ? pot.z0 + std::sqrt(eps) : std::sqrt(eps);
}

// Flips `wf` so that its overlap with the exact function on `grid` is >= 0.
void align_sign(PiecewiseWavefunction& wf, const LevelModel& m, const std::vector<double>& grid)
{
  double overlap = 0;
  for (double z : grid) overlap += wf(z) * m.exact_value(z);
  if (overlap < 0) wf.flip_sign();
}

LevelModel build_level(const Request& r, const Potential& pot, int n, bool strict_wkb)
{
  LevelModel m;
  m.pot = pot;
  m.n = n;
  // exact energy first: it fixes the default plotting range
  const auto base_cfg = solver_config(r, pot, n);
  auto spec = exact::solve_potential(pot, base_cfg, n + 1);
  double zmax = r.zmax.value_or(outer_turning(pot, spec.energies[n]) + 3.0);
  m.cfg = solver_config(r, pot, n, zmax);
  if (m.cfg.z_c != base_cfg.z_c) spec = exact::solve_potential(pot, m.cfg, n + 1);
  if (!(zmax <= 0.5 * m.cfg.z_c))
    throw ConfigError("zmax must not exceed half the box width zc/2 = " + format_real(0.5 * m.cfg.z_c));
  m.exact_eps = spec.energies[n];
  m.coeffs = spec.coefficients[n];
  m.zmax = zmax;

  std::vector<double> grid(r.points);
  for (int i = 0; i < r.points; ++i) grid[i] = zmax * i / (r.points - 1.0);

  if (r.has(Method::wkb)) {
    const auto found = levels_for(Method::wkb, r, pot, n + 1);
    if (static_cast<int>(found.eps.size()) > n) {
      const double eps = found.eps[n];
      m.wkb_eps = eps;
      const double a = std::sqrt(eps);
      wkb::WkbLevel level{n, parity_of(n), eps, pot.is_dwp() ? pot.z0 - a : a, pot.is_dwp() ? pot.z0 + a : a};
      const double outer = outer_turning(pot, eps);
      if (pot.is_dwp()) {
        m.delta_z = r.delta_z.value_or(wkb::dwp_default_delta_z(level));
        m.wkb_wf = wkb::dwp_wkb_wavefunction(level, pot.z0, m.delta_z, std::max(zmax, outer + 8.0), r.quad_tol);
      } else {
        m.delta_z = r.delta_z.value_or(wkb::sho_default_delta_z(level));
        m.wkb_wf = wkb::sho_wkb_wavefunction(level, m.delta_z, std::max(zmax, outer + 8.0), r.quad_tol);
      }
    } else {
      m.wkb_note = "no WKB level n = " + std::to_string(n) + " below the barrier z0^2 = " +
                   format_real(pot.barrier());
      if (strict_wkb) throw DomainError(m.wkb_note);
    }
  }
  if (r.has(Method::maf)) {
    if (pot.is_dwp()) {
      const auto set = maf::dwp_maf_eigenvalues(pot.z0, n + 1, r.root_tol);
      if (static_cast<int>(set.levels.size()) > n) {
        const auto& level = set.levels[n];
        m.maf_eps = level.eps;
        const double reach = std::max(zmax, outer_turning(pot, level.eps) + 8.0);
        m.maf_wf = maf::dwp_maf_wavefunction(level, pot.z0, reach, r.quad_tol);
      } else if (strict_wkb) {
        throw DomainError("no MAF level n = " + std::to_string(n) + " below the barrier z0^2 = " +
                          format_real(pot.barrier()));
      }
    } else {
      const auto levels = maf::sho_maf_energies(n + 1, r.root_tol);
      m.maf_eps = levels[n].eps;
      const double reach = std::max(zmax, std::sqrt(levels[n].eps) + 8.0);
      m.maf_wf = maf::sho_maf_wavefunction(levels[n], reach, r.quad_tol);
    }
  }
  if (m.wkb_wf) align_sign(*m.wkb_wf, m, grid);
  if (m.maf_wf) align_sign(*m.maf_wf, m, grid);
  return m;
}

std::optional<double> finite_or_empty(const std::function<double()>& f)
{
  try {
    const double v = f();
    if (std::isfinite(v)) return v;
  } catch (const DomainError&) {
  }
  return std::nullopt;
}

// Bare branch continued into a patch region (left neighbour before the
// turning point, right neighbour after it).
std::optional<double> bare_inside_patch(const PiecewiseWavefunction& wf, double z)
{
  const double x = std::abs(z);
  const std::size_t i = wf.region_index(x);
  const auto& regions = wf.regions();
  if (regions[i].kind != BranchKind::patch) return std::nullopt;
  const double centre = 0.5 * (regions[i].z_lo + regions[i].z_hi);
  const std::size_t j = x < centre ? i - 1 : i + 1;
  auto v = finite_or_empty([&] { return wf.branch_value(j, x); });
  if (v && z < 0 && wf.parity() == Parity::odd) *v = -*v;
  return v;
}

// Patch branch continued up to three half-widths from its turning point.
std::optional<double> patch_near(const PiecewiseWavefunction& wf, double z)
{
  const double x = std::abs(z);
  const auto& regions = wf.regions();
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (regions[i].kind != BranchKind::patch) continue;
    const double centre = 0.5 * (regions[i].z_lo + regions[i].z_hi);
    const double half = 0.5 * (regions[i].z_hi - regions[i].z_lo);
    if (std::abs(x - centre) <= 3 * half) {
      auto v = finite_or_empty([&] { return wf.branch_value(i, x); });
      if (v && z < 0 && wf.parity() == Parity::odd) *v = -*v;
      return v;
    }
  }
  return std::nullopt;
}

json potential_json(const Potential& pot)
{
  json j;
  j["kind"] = pot.is_dwp() ? "dwp" : "sho";
  if (pot.is_dwp()) {
    j["z0"] = pot.z0;
    j["z0sq"] = pot.barrier();
  }
  return j;
}

json config_json(const exact::SolverConfig& cfg)
{
  return json{{"zc", cfg.z_c}, {"nmax", cfg.n_max}, {"quad_tol", cfg.quad_tol}, {"root_tol", cfg.root_tol}};
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string optional_csv(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

// ---- commands --------------------------------------------------------------------

void cmd_spectrum(const Request& r, std::ostream& out)
{
  const Potential pot = make_potential(r, r.z0sq.empty() ? 0.0 : r.z0sq.front());
  json doc{{"schema", 1}, {"command", "spectrum"}, {"potential", potential_json(pot)}};
  if (r.has(Method::exact)) doc["config"] = config_json(solver_config(r, pot, r.levels - 1));
  std::ostringstream csv;
  csv << "method,n,parity,eps\n";
  json methods = json::object();
  for (Method m : r.methods) {
    const auto found = levels_for(m, r, pot, r.levels);
    json rows = json::array();
    for (int n = 0; n < r.levels; ++n) {
      const bool have = n < static_cast<int>(found.eps.size());
      csv << to_string(m) << ',' << n << ',' << to_string(parity_of(n)) << ','
          << (have ? format_real(found.eps[n]) : "N/A") << '\n';
      rows.push_back(json{{"n", n}, {"parity", to_string(parity_of(n))},
                          {"eps", have ? json(found.eps[n]) : json(nullptr)}});
    }
    methods[std::string(to_string(m))] = json{{"exhausted", found.exhausted}, {"levels", rows}};
  }
  doc["methods"] = methods;
  if (r.format == "json") out << doc.dump(2) << '\n';
  else out << csv.str();
}

void cmd_tables(const Request& r, std::ostream& out)
{
  std::vector<double> columns = r.z0sq;
  if (r.kind == Potential::Kind::sho) columns = {0.0};
  std::ostringstream csv;
  csv << "method,n";
  for (double c : columns) csv << ',' << (r.kind == Potential::Kind::sho ? std::string("sho") : "z0sq=" + format_real(c));
  csv << '\n';

  json doc{{"schema", 1}, {"command", "tables"}, {"potential", r.kind == Potential::Kind::dwp ? "dwp" : "sho"},
           {"digits", r.digits}};
  json tables = json::array();
  for (Method m : r.methods) {
    std::vector<MethodLevels> per_column;
    for (double c : columns) per_column.push_back(levels_for(m, r, make_potential(r, c), r.levels));
    json cols = json::array();
    for (std::size_t k = 0; k < columns.size(); ++k) {
      json vals = json::array();
      for (int n = 0; n < r.levels; ++n)
        vals.push_back(n < static_cast<int>(per_column[k].eps.size()) ? json(per_column[k].eps[n]) : json(nullptr));
      json col = json::object();
      if (r.kind == Potential::Kind::dwp) col["z0sq"] = columns[k];
      col["eps"] = vals;
      col["exhausted"] = per_column[k].exhausted;
      cols.push_back(col);
    }
    tables.push_back(json{{"method", to_string(m)}, {"columns", cols}});
    for (int n = 0; n < r.levels; ++n) {
      csv << to_string(m) << ',' << n;
      for (const auto& col : per_column)
        csv << ',' << (n < static_cast<int>(col.eps.size()) ? format_fixed(col.eps[n], r.digits) : "N/A");
      csv << '\n';
    }
  }
  doc["tables"] = tables;
  if (r.format == "json") out << doc.dump(2) << '\n';
  else out << csv.str();
}

void cmd_splitting(const Request& r, std::ostream& out)
{
  int top = 0;
  for (const auto& p : r.pairs) top = std::max(top, p.first);
  std::ostringstream csv;
  csv << "method,z0sq,pair,eps_even,eps_odd,delta,status\n";
  json rows = json::array();
  for (Method m : r.methods) {
    for (double z0sq : r.z0sq) {
      const auto found = levels_for(m, r, make_potential(r, z0sq), top + 1);
      for (const auto& [odd, even] : r.pairs) {
        const std::string pair = std::to_string(odd) + "-" + std::to_string(even);
        const bool ok = odd < static_cast<int>(found.eps.size());
        json row{{"method", to_string(m)}, {"z0sq", z0sq}, {"pair", pair}};
        csv << to_string(m) << ',' << format_real(z0sq) << ',' << pair << ',';
        if (ok) {
          const double e = found.eps[even], o = found.eps[odd];
          csv << format_real(e) << ',' << format_real(o) << ',' << format_real(o - e) << ",ok\n";
          row["eps_even"] = e;
          row["eps_odd"] = o;
          row["delta"] = o - e;
          row["status"] = "ok";
        } else {
          csv << ",,,exhausted\n";
          row["status"] = "exhausted";
        }
        rows.push_back(row);
      }
    }
  }
  if (r.format == "json") out << json{{"schema", 1}, {"command", "splitting"}, {"rows", rows}}.dump(2) << '\n';
  else out << csv.str();
}

void cmd_wavefunction(const Request& r, std::ostream& out)
{
  const Potential pot = make_potential(r, r.z0sq.empty() ? 0.0 : r.z0sq.front());
  const LevelModel m = build_level(r, pot, r.level, true);

  std::vector<double> grid;
  if (r.mirror)
    for (int i = r.points - 1; i > 0; --i) grid.push_back(-m.zmax * i / (r.points - 1.0));
  for (int i = 0; i < r.points; ++i) grid.push_back(m.zmax * i / (r.points - 1.0));

  std::vector<std::string> header{"z"};
  if (r.has(Method::exact)) header.push_back("exact");
  if (m.wkb_wf) header.insert(header.end(), {"wkb", "wkb_region", "wkb_bare", "wkb_patch"});
  if (m.maf_wf) header.insert(header.end(), {"maf", "maf_region"});

  json cols = json::object();
  for (const auto& h : header) cols[h] = json::array();
  std::ostringstream csv;
  for (std::size_t i = 0; i < header.size(); ++i) csv << (i ? "," : "") << header[i];
  csv << '\n';
  for (double z : grid) {
    std::vector<std::string> cells{format_real(z)};
    cols["z"].push_back(z);
    if (r.has(Method::exact)) {
      const double v = m.exact_value(z);
      cells.push_back(format_real(v));
      cols["exact"].push_back(v);
    }
    if (m.wkb_wf) {
      const auto& wf = *m.wkb_wf;
      const double v = wf(z);
      const auto& label = wf.regions()[wf.region_index(z)].label;
      const auto bare = bare_inside_patch(wf, z);
      const auto patch = patch_near(wf, z);
      cells.insert(cells.end(), {format_real(v), label, optional_csv(bare), optional_csv(patch)});
      cols["wkb"].push_back(v);
      cols["wkb_region"].push_back(label);
      cols["wkb_bare"].push_back(optional_json(bare));
      cols["wkb_patch"].push_back(optional_json(patch));
    }
    if (m.maf_wf) {
      const auto& wf = *m.maf_wf;
      const double v = wf(z);
      const auto& label = wf.regions()[wf.region_index(z)].label;
      cells.insert(cells.end(), {format_real(v), label});
      cols["maf"].push_back(v);
      cols["maf_region"].push_back(label);
    }
    for (std::size_t i = 0; i < cells.size(); ++i) csv << (i ? "," : "") << cells[i];
    csv << '\n';
  }

  if (r.format == "json") {
    json energies = json::object();
    if (r.has(Method::exact)) energies["exact"] = m.exact_eps;
    if (m.wkb_eps) energies["wkb"] = *m.wkb_eps;
    if (m.maf_eps) energies["maf"] = *m.maf_eps;
    json doc{{"schema", 1},
             {"command", "wavefunction"},
             {"potential", potential_json(pot)},
             {"config", config_json(m.cfg)},
             {"level", json{{"n", r.level}, {"parity", to_string(parity_of(r.level))}}},
             {"energies", energies}};
    if (m.wkb_wf) doc["delta_z"] = m.delta_z;
    doc["columns"] = cols;
    out << doc.dump(2) << '\n';
  } else {
    out << csv.str();
  }
}

json method_report(const PiecewiseWavefunction& wf, double eps, const LevelModel& m, int points)
{
  double dev = 0, peak = 0;
  for (int i = 0; i < points; ++i) {
    const double z = m.zmax * i / (points - 1.0);
    const double e = m.exact_value(z);
    peak = std::max(peak, std::abs(e));
    dev = std::max(dev, std::abs(wf(z) - e));
  }
  json jumps = json::array();
  double worst = 0;
  for (const auto& d : discontinuity_report(wf)) {
    jumps.push_back(json{{"z", d.z}, {"jump", d.jump}, {"relative_jump", d.relative_jump}});
    worst = std::max(worst, d.relative_jump);
  }
  return json{{"available", true},
              {"eps", eps},
              {"eps_error", eps - m.exact_eps},
              {"max_deviation", dev},
              {"max_relative_deviation", peak > 0 ? dev / peak : dev},
              {"max_relative_jump", worst},
              {"discontinuities", jumps}};
}

void cmd_compare(const Request& r, std::ostream& out)
{
  const Potential pot = make_potential(r, r.z0sq.empty() ? 0.0 : r.z0sq.front());
  json levels = json::array();
  json cfg;
  for (int n = 0; n < r.levels; ++n) {
    const LevelModel m = build_level(r, pot, n, false);
    if (n == 0) cfg = config_json(m.cfg);
    json methods = json::object();
    if (r.has(Method::wkb)) {
      methods["wkb"] = m.wkb_wf ? method_report(*m.wkb_wf, *m.wkb_eps, m, r.points)
                                : json{{"available", false}, {"reason", m.wkb_note}};
      if (m.wkb_wf) methods["wkb"]["delta_z"] = m.delta_z;
    }
    if (r.has(Method::maf))
      methods["maf"] = m.maf_wf ? method_report(*m.maf_wf, *m.maf_eps, m, r.points)
                                : json{{"available", false}, {"reason", "no MAF level below the barrier"}};
    levels.push_back(json{{"n", n},
                          {"parity", to_string(parity_of(n))},
                          {"exact", m.exact_eps},
                          {"zmax", m.zmax},
                          {"methods", methods}});
  }
  json doc{{"schema", 1}, {"command", "compare"}, {"potential", potential_json(pot)}, {"config", cfg}, {"levels", levels}};
  out << doc.dump(2) << '\n';
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(number) + ": expected key=value");
    const std::string key = normalize_key(trim(t.substr(0, eq)));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(number) + ": empty key");
    kv[key] = trim(t.substr(eq + 1));
  }
  return kv;
}

std::string format_real(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int digits)
{
  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_real_list(const std::string& text)
{
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("range must be start:stop:step");
    const double a = parse_real(parts[0], "range"), b = parse_real(parts[1], "range"),
                 s = parse_real(parts[2], "range");
    if (!(s > 0) || b < a) throw ConfigError("range needs step > 0 and stop >= start");
    const auto count = static_cast<long>(std::floor((b - a) / s * (1 + 1e-12))) + 1;
    if (count > 100000) throw ConfigError("range has too many points");
    for (long i = 0; i < count; ++i) out.push_back(a + s * static_cast<double>(i));
    return out;
  }
  for (const auto& item : split(text, ',')) out.push_back(parse_real(item, "list"));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Exact, WKB and modified-Airy solutions of the harmonic and cusped double-well oscillators"};
  app.set_help_flag("-h,--help", "Print help and exit");

  std::string command;
  app.add_option("command", command, "spectrum | wavefunction | tables | splitting | compare")
      ->required()
      ->check(CLI::IsMember({"spectrum", "wavefunction", "tables", "splitting", "compare"}));

  // every setting is collected as text and validated in one place, so a
  // config file and the flags go through the same checks
  std::map<std::string, std::string> flags;
  std::map<std::string, CLI::Option*> opts;
  auto text = [&](const std::string& name, const std::string& key, const std::string& help) {
    opts[key] = app.add_option(name, flags[key], help);
  };
  text("--potential", "potential", "sho or dwp");
  text("--z0sq", "z0sq", "barrier height(s): 9 | 4,9,16 | 2:16:0.5");
  text("--levels", "levels", "number of levels");
  text("--level", "level", "level index for wavefunction");
  text("--methods", "methods", "comma list of exact,wkb,maf");
  text("--zmax", "zmax", "largest z on the output grid");
  text("--points", "points", "grid points on [0, zmax]");
  text("--delta-z", "delta_z", "WKB patch half-width");
  text("--zc", "zc", "box width for the exact solver");
  text("--nmax", "nmax", "sine-basis size");
  text("--format", "format", "csv or json");
  text("--out", "out", "output file (default stdout)");
  text("--digits", "digits", "decimals in tables");
  text("--pairs", "pairs", "splitting pairs, e.g. 1-0,3-2");
  text("--quad-tol", "quad_tol", "quadrature tolerance");
  text("--root-tol", "root_tol", "root tolerance");
  std::string config_path;
  app.add_option("--config", config_path, "key=value settings file; flags override it");
  bool mirror = false;
  auto* mirror_flag = app.add_flag("--mirror", mirror, "emit z < 0 too, by parity reflection");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    std::map<std::string, std::string> settings;
    if (!config_path.empty()) settings = read_config_file(config_path);
    for (const auto& [key, opt] : opts)
      if (opt->count() > 0) settings[key] = flags[key];
    if (mirror_flag->count() > 0) settings["mirror"] = mirror ? "true" : "false";

    const Request request = build_request(command, settings);
    std::ostringstream buffer;
    if (command == "spectrum") cmd_spectrum(request, buffer);
    else if (command == "tables") cmd_tables(request, buffer);
    else if (command == "splitting") cmd_splitting(request, buffer);
    else if (command == "wavefunction") cmd_wavefunction(request, buffer);
    else cmd_compare(request, buffer);

    if (request.out.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(request.out, std::ios::binary);
      if (!file) throw ConfigError("cannot write '" + request.out + "'");
      file << buffer.str();
    }
    return exit_ok;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return exit_nonconvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

}  // namespace airywell::cli
