#include "zeno/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "zeno/absorber.hpp"
#include "zeno/constants.hpp"
#include "zeno/design.hpp"
#include "zeno/enhancement.hpp"
#include "zeno/format.hpp"
#include "zeno/gate.hpp"

namespace zeno::cli {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- parameter tables

struct ParamDef {
  std::string key;
  UnitKind kind;
  std::optional<double> def;
  std::string unit;  // default unit
  bool integer = false;
  std::string help;
};

struct OptionDef {
  std::string key;
  std::vector<std::string> allowed;
  std::string def;
};

struct CommandDef {
  std::string name;
  std::string help;
  std::vector<ParamDef> params;
  std::vector<OptionDef> options;
  std::vector<std::string> flags;  // parameters that can be given as bare switches (value 1)
};

constexpr auto D = UnitKind::dimensionless;

const std::vector<CommandDef>& command_table() {
  static const std::vector<CommandDef> t = {
      {"gate",
       "Exact and asymptotic error probabilities of a two- or three-branch gate",
       {{"branches", D, 2, "1", true, "branch count (2 or 3)"},
        {"N", D, 10, "1", true, "segment count"},
        {"kappa", D, 1000, "1", false, "xi_2gamma / xi_1gamma; optimal rates are used unless xi are given"},
        {"xi1", D, std::nullopt, "1", false, "one-photon loss exponent per segment"},
        {"xi2", D, std::nullopt, "1", false, "two-photon absorption exponent per segment"},
        {"eps", D, std::nullopt, "1", false, "splitter angle in radians (default pi/(2N) or pi/(sqrt2 N))"},
        {"xi_c", D, 0, "1", false, "control-photon loss exponent per segment"},
        {"control", D, 0, "1", true, "1 if the control photon is present"}},
       {},
       {"control"}},
      {"absorber",
       "Single three-level atom: two-photon absorption, one-photon scattering and their ratio",
       {{"wavelength", UnitKind::length, 500, "nm", false, "target photon wavelength"},
        {"detuning", UnitKind::energy, 3e12, "s^-1", false, "target detuning E12 - omega1"},
        {"control_detuning", UnitKind::energy, std::nullopt, "s^-1", false, "control detuning (default 10x)"},
        {"dipole_length", UnitKind::length, 6, "a_B", false, "dipole coupling length"},
        {"area", UnitKind::area, std::nullopt, "nm2", false, "beam cross section (default (lambda/2)^2)"},
        {"f", D, 1, "1", false, "coupling ratio g12/g23"},
        {"kappa", D, 22, "1", false, "target kappa for the required enhancement"}},
       {},
       {}},
      {"enhance",
       "Repeated inducing, Dicke enhancement and pump-sustained coherent excitation",
       {{"n", D, 16, "1", true, "number of passes"},
        {"k1L", D, 1.0, "1", false, "one-photon phase per pass k1 L"},
        {"pair_phase", D, 2.0 * constants::pi, "1", false, "two-photon phase per pass (k1+k2) L"},
        {"tau", D, 1e-3, "1", false, "per-pass interaction strength (couplings set to 1)"},
        {"S", D, 1.6e8, "1", true, "emitter count"},
        {"s", D, 2720, "1", true, "coherent excitations"},
        {"wavelength", UnitKind::length, 500, "nm", false, "photon wavelength"},
        {"detuning", UnitKind::energy, 3e12, "s^-1", false, "target detuning"},
        {"pump_detuning", UnitKind::energy, 3e14, "s^-1", false, "pump detuning from the middle level"},
        {"intensity", UnitKind::intensity, 1e10, "W/cm2", false, "intensity of each pump"},
        {"mc_emitters", D, 1e4, "1", true, "emitters per Monte-Carlo trial"},
        {"mc_trials", D, 200, "1", true, "Monte-Carlo trials"},
        {"mc_phase", D, 1e3, "1", false, "|dk| times box size"}},
       {},
       {}},
      {"design",
       "Minimal kappa per N and representative (N, kappa) choices for an error threshold",
       {{"P", D, 0.1, "1", false, "error threshold"},
        {"N_min", D, 1, "1", true, "smallest N searched"},
        {"N_max", D, 200, "1", true, "largest N searched"},
        {"kappa_max", D, 1e7, "1", false, "largest kappa searched"}},
       {{"strategy", {"all", "min_N", "balanced", "min_kappa"}, "all"},
        {"rule", {"formula", "minimax"}, "formula"}},
       {}},
      {"tables",
       "Example design tables: (P, N, kappa) overview and per-choice segment probabilities",
       {{"kappa_max", D, 1e7, "1", false, "largest kappa searched"}},
       {{"rule", {"formula", "minimax"}, "formula"}},
       {}},
      {"curve",
       "Error probabilities versus absorber scale at fixed kappa",
       {{"kappa", D, 1000, "1", false, "xi_2gamma / xi_1gamma"},
        {"N", D, 1000, "1", true, "segment count"},
        {"xi_min", D, 0, "1", false, "first xi_2gamma"},
        {"xi_max", D, 0.14, "1", false, "last xi_2gamma"},
        {"samples", D, 141, "1", true, "number of samples"},
        {"branches", D, 2, "1", true, "branch count (2 or 3)"}},
       {},
       {}},
      {"demo",
       "Survival probability of the double-well Zeno demonstration",
       {{"N", D, 10, "1", true, "number of measurements"}},
       {},
       {}},
  };
  return t;
}

const CommandDef& command_def(const std::string& name) {
  for (const auto& c : command_table())
    if (c.name == name) return c;
  throw UsageError("unknown command '" + name + "'");
}

bool same_dimension(UnitKind a, UnitKind b) {
  auto energy = [](UnitKind k) { return k == UnitKind::energy || k == UnitKind::angular_frequency; };
  return a == b || (energy(a) && energy(b));
}

// ---------------------------------------------------------------- emitted artifacts

using Cell = std::variant<double, std::uint64_t, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::string> units;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return fmt::num(*d);
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return fmt::num(*u);
  return std::get<std::string>(c);
}

json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return fmt::num(*d);
    return std::strtod(fmt::num(*d).c_str(), nullptr);  // same 12 digits as CSV
  }
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return *u;
  return std::get<std::string>(c);
}

std::string render(const std::vector<Table>& tables, const RunConfig& cfg) {
  std::ostringstream os;
  const std::string hash = fmt::hex64(config_hash(cfg));
  if (cfg.format == "json") {
    json j;
    j["provenance"] = {{"version", kVersion}, {"seed", cfg.seed}, {"config_hash", hash}};
    j["command"] = cfg.command;
    json arr = json::array();
    for (const Table& t : tables) {
      json jt;
      jt["name"] = t.name;
      json cols = json::array();
      for (std::size_t i = 0; i < t.columns.size(); ++i) cols.push_back({{"name", t.columns[i]}, {"unit", t.units[i]}});
      jt["columns"] = cols;
      json rows = json::array();
      for (const auto& r : t.rows) {
        json jr = json::array();
        for (const auto& c : r) jr.push_back(cell_json(c));
        rows.push_back(jr);
      }
      jt["rows"] = rows;
      arr.push_back(jt);
    }
    j["tables"] = arr;
    os << j.dump(2) << '\n';
    return os.str();
  }
  os << "# zeno " << kVersion << '\n' << "# seed: " << cfg.seed << '\n' << "# config_hash: " << hash << '\n';
  for (std::size_t k = 0; k < tables.size(); ++k) {
    const Table& t = tables[k];
    if (k) os << '\n';
    os << "# table: " << t.name << '\n';
    os << "# units: ";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i] << '=' << t.units[i];
    os << '\n';
    fmt::write_csv_row(os, t.columns);
    for (const auto& r : t.rows) {
      std::vector<std::string> cells;
      for (const auto& c : r) cells.push_back(cell_text(c));
      fmt::write_csv_row(os, cells);
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- parameter access

class Params {
 public:
  explicit Params(const RunConfig& c) : c_(c) {}
  bool has(const std::string& k) const { return c_.parameters.count(k) > 0; }
  double nat(const std::string& k) const {
    const ParamValue& p = c_.parameters.at(k);
    return natural(p.value, p.unit);
  }
  std::optional<double> opt_nat(const std::string& k) const {
    return has(k) ? std::optional<double>(nat(k)) : std::nullopt;
  }
  std::uint64_t count(const std::string& k) const { return static_cast<std::uint64_t>(nat(k)); }
  int small(const std::string& k) const { return static_cast<int>(nat(k)); }
  const std::string& option(const std::string& k) const { return c_.options.at(k); }

 private:
  const RunConfig& c_;
};

Table key_value(const std::string& name) { return {name, {"quantity", "value", "unit"}, {"-", "-", "-"}, {}}; }
void kv(Table& t, const std::string& q, Cell v, const std::string& unit) { t.rows.push_back({q, std::move(v), unit}); }

std::vector<Table> cmd_gate(const Params& p) {
  const int branches = p.small("branches");
  const std::uint64_t N = p.count("N");
  const GateGeometry g = p.has("eps") ? GateGeometry::make(branches, N, p.nat("eps")) : GateGeometry::make(branches, N);
  const double kappa = p.nat("kappa");
  AbsorberRates r;
  if (p.has("xi1") && p.has("xi2")) {
    r = {p.nat("xi1"), Decay{p.nat("xi2"), false}, 0.0};
  } else if (p.has("xi2")) {
    r = {p.nat("xi2") / kappa, Decay{p.nat("xi2"), false}, 0.0};
  } else if (p.has("xi1")) {
    r = {p.nat("xi1"), Decay{p.nat("xi1") * kappa, false}, 0.0};
  } else {
    const OptimalRates o = optimal_rates(kappa, N, branches);
    r = {o.xi1, Decay{o.xi2, false}, 0.0};
  }
  r.xi_c = p.nat("xi_c");
  const bool control = p.count("control") != 0;
  const ErrorPair ex = exact_errors(g, r);
  const ErrorPair lead = asymptotic_errors(g, r, Order::leading);
  const ErrorPair first = asymptotic_errors(g, r, Order::first);
  auto pick = [&](const ErrorPair& e) { return control ? e.p2 : e.p1; };
  Table t{"gate",
          {"branches", "N", "eps", "xi_1gamma", "xi_2gamma", "kappa", "control", "p_error", "p_error_leading",
           "p_error_first", "p_overall_formula", "p_overall_with_control_loss"},
          {"1", "1", "rad", "1", "1", "1", "1", "1", "1", "1", "1", "1"},
          {}};
  const double k_eff = r.kappa();
  t.rows.push_back({static_cast<std::uint64_t>(branches), N, g.eps, r.xi1, r.xi2.xi, k_eff,
                    static_cast<std::uint64_t>(control), pick(ex), pick(lead), pick(first),
                    constants::pi / std::sqrt(2.0 * k_eff), control_loss_adjusted(k_eff, N, r.xi_c)});
  return {t};
}

AtomSpec atom_from(const Params& p, const std::string& wl_key, const std::string& det_key) {
  return AtomSpec::optical(p.nat(wl_key), p.nat(det_key), p.opt_nat("control_detuning"), p.opt_nat("dipole_length"),
                           p.opt_nat("area"), p.has("f") ? p.nat("f") : 1.0);
}

std::vector<Table> cmd_absorber(const Params& p) {
  const AtomSpec a = atom_from(p, "wavelength", "detuning");
  const CouplingSet g = coupling_constants(a);
  const double p2 = two_photon_absorption_prob(a);
  const double p1_target = one_photon_scattering_prob(a, false, false);
  const double p1_full = one_photon_scattering_prob(a, true, true);
  const double p1_control = one_photon_scattering_prob(a, true, false) - p1_target;
  const UpconversionCheck up = upconversion_check(a);
  Table t = key_value("absorber");
  kv(t, "omega1", a.omega1, "eV");
  kv(t, "omega2", a.omega2, "eV");
  kv(t, "E12", a.E12, "eV");
  kv(t, "E23", a.E23, "eV");
  kv(t, "detuning", a.detuning(), "eV");
  kv(t, "control_detuning", a.control_detuning(), "eV");
  kv(t, "area", a.area, "eV^-2");
  kv(t, "P2gamma", p2, "1");
  kv(t, "P1gamma_target", p1_target, "1");
  kv(t, "P1gamma_control_fraction", p1_control / p1_target, "1");
  kv(t, "P1gamma_full", p1_full, "1");
  kv(t, "kappa0", absorption_ratio(a), "1");
  double k_full = std::numeric_limits<double>::infinity();
  try {
    k_full = absorption_ratio(a, {true, true});
  } catch (const RatioUnbounded&) {
  }
  kv(t, "kappa0_full", k_full, "1");
  kv(t, "g13_bound_over_g_eff", g.g13_bound / g.g_eff, "1");
  kv(t, "upconversion_suppression", up.suppression, "1");
  kv(t, "required_enhancement", required_enhancement(p.nat("kappa"), a), "1");
  return {t};
}

std::vector<Table> cmd_enhance(const Params& p, std::uint64_t seed) {
  Table t = key_value("enhance");
  MultiPassSpec m;
  m.n = p.count("n");
  m.L = 1.0;
  m.k1 = p.nat("k1L");
  m.k2 = p.nat("pair_phase") - m.k1;
  m.tau = p.nat("tau");
  m.g13 = m.g12 = m.g11 = 1.0;
  const MultiPassResult mp = multipass_probabilities(m);
  MultiPassSpec one = m;
  one.n = 1;
  const MultiPassResult sp = multipass_probabilities(one);
  kv(t, "multipass_p2_gain", mp.p2 / sp.p2, "1");
  kv(t, "multipass_p1_abs_gain", mp.p1_abs / sp.p1_abs, "1");
  kv(t, "multipass_p1_scatter_gain", mp.p1_scatter / sp.p1_scatter, "1");
  kv(t, "multipass_perturbative", static_cast<std::uint64_t>(mp.perturbative), "1");

  const std::uint64_t S = p.count("S"), s = p.count("s");
  const DickeFactors d = dicke_enhancement(S, s);
  kv(t, "dicke_two_photon_factor", d.two_photon, "1");
  kv(t, "dicke_scatter_bound", d.scatter_bound, "1");
  kv(t, "dicke_ratio_gain", d.two_photon / d.scatter_bound, "1");

  const AtomSpec a = AtomSpec::optical(p.nat("wavelength"), p.nat("detuning"));
  const double I = p.nat("intensity");
  const PumpState ps = pump_steady_state(PumpSpec::matched(a, p.nat("pump_detuning"), I, I, static_cast<double>(S)));
  kv(t, "pump_s_over_S", ps.s_over_S, "1");
  kv(t, "pump_alpha_g", ps.alpha_g, "1");
  kv(t, "pump_safe", static_cast<std::uint64_t>(ps.pump_safe), "1");
  kv(t, "pump_detuning_threshold", pump_detuning_threshold(I, a.ell), "eV");

  const double phase = p.nat("mc_phase") / std::sqrt(3.0);
  const PhaseSumStats mc = random_phase_sum(p.count("mc_emitters"), {phase, phase, phase}, 1.0, seed,
                                            p.count("mc_trials"));
  kv(t, "random_phase_mean", mc.mean, "1");
  kv(t, "random_phase_stderr", mc.stderr_, "1");
  kv(t, "seed", seed, "1");
  return {t};
}

DesignConfig design_config(const Params& p) {
  DesignConfig c;
  c.kappa_max = p.nat("kappa_max");
  c.rule = p.option("rule") == "minimax" ? RateRule::minimax_scale : RateRule::optimal_formula;
  return c;
}

const std::vector<std::string> kDesignCols = {"P_error", "N", "P2gamma_seg", "P1gamma_seg", "kappa", "enhancement"};
const std::vector<std::string> kDesignUnits = {"1", "1", "1", "1", "1", "1"};

std::vector<Cell> design_row(const DesignPoint& d) {
  return {d.p_target, d.N, d.p2_seg, d.p1_seg, d.kappa, d.enhancement};
}

std::vector<Table> cmd_design(const Params& p) {
  DesignConfig c = design_config(p);
  c.n_min = p.count("N_min");
  c.n_max = p.count("N_max");
  if (c.n_min == 0 || c.n_min > c.n_max) throw UsageError("parameter 'N_min': need 1 <= N_min <= N_max");
  const auto pts = search_feasible_nk(p.nat("P"), c);
  Table t{"design", {"strategy"}, {"-"}, {}};
  for (const auto& col : kDesignCols) t.columns.push_back(col);
  for (const auto& u : kDesignUnits) t.units.push_back(u);
  t.columns.insert(t.columns.end(), {"p1_exact", "p2_exact"});
  t.units.insert(t.units.end(), {"1", "1"});
  const std::string want = p.option("strategy");
  for (const DesignPoint& d : pts) {
    if (want != "all" && want != d.strategy) continue;
    std::vector<Cell> row{d.strategy};
    for (auto& c2 : design_row(d)) row.push_back(c2);
    row.push_back(d.p1);
    row.push_back(d.p2);
    t.rows.push_back(row);
  }
  return {t};
}

std::vector<Table> cmd_tables(const Params& p) {
  const TableSet ts = generate_tables(design_config(p));
  Table overview{"overview", {"P_error", "N", "kappa"}, {"1", "1", "1"}, {}};
  for (const auto& d : ts.overview) overview.rows.push_back({d.p_target, d.N, d.kappa});
  std::vector<Table> out{overview};
  const std::pair<const char*, const std::vector<DesignPoint>*> parts[] = {
      {"small_N", &ts.small_N}, {"balanced", &ts.balanced}, {"small_kappa", &ts.small_kappa}};
  for (const auto& [name, rows] : parts) {
    Table t{name, kDesignCols, kDesignUnits, {}};
    for (const auto& d : *rows) t.rows.push_back(design_row(d));
    out.push_back(t);
  }
  return out;
}

std::vector<Table> cmd_curve(const Params& p) {
  const auto rows = error_curve(p.nat("kappa"), p.count("N"), p.nat("xi_min"), p.nat("xi_max"),
                                static_cast<std::size_t>(p.count("samples")), p.small("branches"));
  Table t{"curve",
          {"xi_2gamma", "p1_exact", "p2_exact", "p1_approx", "p2_approx"},
          {"1", "1", "1", "1", "1"},
          {}};
  for (const auto& r : rows) t.rows.push_back({r.xi2, r.p1_exact, r.p2_exact, r.p1_approx, r.p2_approx});
  return {t};
}

std::vector<Table> cmd_demo(const Params& p) {
  const std::uint64_t N = p.count("N");
  return {Table{"demo", {"N", "survival"}, {"1", "1"}, {{N, zeno_demo_survival(N)}}}};
}

std::vector<Table> dispatch(const RunConfig& cfg) {
  const Params p(cfg);
  if (cfg.command == "gate") return cmd_gate(p);
  if (cfg.command == "absorber") return cmd_absorber(p);
  if (cfg.command == "enhance") return cmd_enhance(p, cfg.seed);
  if (cfg.command == "design") return cmd_design(p);
  if (cfg.command == "tables") return cmd_tables(p);
  if (cfg.command == "curve") return cmd_curve(p);
  if (cfg.command == "demo") return cmd_demo(p);
  throw UsageError("unknown command '" + cfg.command + "'");
}

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw IoError("failed writing output file '" + path + "'");
}

}  // namespace

// ---------------------------------------------------------------- public API

std::vector<std::string> commands() {
  std::vector<std::string> out;
  for (const auto& c : command_table()) out.push_back(c.name);
  return out;
}

ParamValue parse_quantity(const std::string& text) {
  const char* b = text.data();
  const char* e = b + text.size();
  while (b < e && *b == ' ') ++b;
  if (b < e && *b == '+') ++b;
  ParamValue v;
  const auto res = std::from_chars(b, e, v.value);
  if (res.ec != std::errc() || !std::isfinite(v.value)) throw UsageError("cannot parse quantity '" + text + "'");
  std::string unit(res.ptr, e);
  const auto first = unit.find_first_not_of(' ');
  unit = first == std::string::npos ? "" : unit.substr(first, unit.find_last_not_of(' ') - first + 1);
  v.unit = unit;
  return v;
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  RunConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (k == "command") {
      if (!v.is_string()) throw UsageError("config key 'command' must be a string");
      c.command = v.get<std::string>();
    } else if (k == "format") {
      if (!v.is_string()) throw UsageError("config key 'format' must be a string");
      c.format = v.get<std::string>();
    } else if (k == "output") {
      if (!v.is_string()) throw UsageError("config key 'output' must be a string");
      c.output = v.get<std::string>();
    } else if (k == "seed") {
      if (!v.is_number_unsigned()) throw UsageError("config key 'seed' must be a non-negative integer");
      c.seed = v.get<std::uint64_t>();
    } else if (k == "parameters") {
      if (!v.is_object()) throw UsageError("config key 'parameters' must be an object");
      for (auto p = v.begin(); p != v.end(); ++p) {
        const json& q = p.value();
        if (!q.is_object() || !q.contains("value") || !q["value"].is_number())
          throw UsageError("parameter '" + p.key() + "' must be {\"value\": number, \"unit\": string}");
        for (auto f = q.begin(); f != q.end(); ++f)
          if (f.key() != "value" && f.key() != "unit")
            throw UsageError("parameter '" + p.key() + "': unknown field '" + f.key() + "'");
        ParamValue pv;
        pv.value = q["value"].get<double>();
        if (q.contains("unit")) {
          if (!q["unit"].is_string()) throw UsageError("parameter '" + p.key() + "': unit must be a string");
          pv.unit = q["unit"].get<std::string>();
        }
        c.parameters[p.key()] = pv;
      }
    } else if (k == "options") {
      if (!v.is_object()) throw UsageError("config key 'options' must be an object");
      for (auto o = v.begin(); o != v.end(); ++o) {
        if (!o.value().is_string()) throw UsageError("option '" + o.key() + "' must be a string");
        c.options[o.key()] = o.value().get<std::string>();
      }
    } else {
      throw UsageError("unknown config key '" + k + "'");
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

RunConfig effective_config(const RunConfig& in) {
  if (in.command.empty()) throw UsageError("no command given");
  const CommandDef& def = command_def(in.command);
  if (in.format != "csv" && in.format != "json") throw UsageError("format must be csv or json, got '" + in.format + "'");
  RunConfig out = in;
  out.parameters.clear();
  out.options.clear();
  for (const auto& [key, pv] : in.parameters) {
    const auto it = std::find_if(def.params.begin(), def.params.end(), [&](const ParamDef& d) { return d.key == key; });
    if (it == def.params.end()) throw UsageError("unknown parameter '" + key + "' for command '" + in.command + "'");
    ParamValue v = pv;
    if (v.unit.empty()) v.unit = it->unit;
    UnitKind kind;
    try {
      kind = unit_info(v.unit).kind;
    } catch (const UnitError&) {
      throw UsageError("parameter '" + key + "': unknown unit '" + v.unit + "'");
    }
    if (!same_dimension(kind, it->kind))
      throw UsageError("parameter '" + key + "': unit '" + v.unit + "' is " + std::string(kind_name(kind)) +
                       ", expected " + std::string(kind_name(it->kind)));
    if (it->integer && (v.value < 0 || v.value != std::floor(v.value)))
      throw UsageError("parameter '" + key + "' must be a non-negative integer");
    out.parameters[key] = v;
  }
  for (const ParamDef& d : def.params)
    if (!out.parameters.count(d.key) && d.def) out.parameters[d.key] = {*d.def, d.unit};
  for (const auto& [key, val] : in.options) {
    const auto it = std::find_if(def.options.begin(), def.options.end(), [&](const OptionDef& d) { return d.key == key; });
    if (it == def.options.end()) throw UsageError("unknown option '" + key + "' for command '" + in.command + "'");
    if (std::find(it->allowed.begin(), it->allowed.end(), val) == it->allowed.end())
      throw UsageError("option '" + key + "': invalid value '" + val + "'");
    out.options[key] = val;
  }
  for (const OptionDef& d : def.options)
    if (!out.options.count(d.key)) out.options[d.key] = d.def;
  return out;
}

namespace {
json core_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  json params = json::object();
  for (const auto& [k, v] : c.parameters) params[k] = {{"value", v.value}, {"unit", v.unit}};
  j["parameters"] = params;
  json opts = json::object();
  for (const auto& [k, v] : c.options) opts[k] = v;
  j["options"] = opts;
  j["seed"] = c.seed;
  return j;
}
}  // namespace

std::string config_json(const RunConfig& c) {
  json j = core_json(c);
  j["format"] = c.format;
  if (!c.output.empty()) j["output"] = c.output;
  return j.dump(2) + "\n";
}

std::uint64_t config_hash(const RunConfig& c) { return fmt::fnv1a64(core_json(c).dump()); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Zeno gate simulator and design toolkit", "zeno"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  std::string format, output, config_path;
  std::uint64_t seed = 0;
  bool print_config = false;
  auto* o_format = app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  auto* o_output = app.add_option("--output", output, "output file (default stdout)");
  auto* o_seed = app.add_option("--seed", seed, "random seed (default 0)");
  app.add_option("--config", config_path, "JSON config file");
  app.add_flag("--print-config", print_config, "print the effective config and exit");

  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, std::map<std::string, bool>> flags;
  std::map<std::string, CLI::App*> subs;
  for (const CommandDef& c : command_table()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    subs[c.name] = sub;
    for (const ParamDef& d : c.params) {
      if (std::find(c.flags.begin(), c.flags.end(), d.key) != c.flags.end()) {
        sub->add_flag("--" + d.key, flags[c.name][d.key], d.help);
        continue;
      }
      std::string help = d.help + " [" + std::string(kind_name(d.kind)) + ", default unit " + d.unit + "]";
      sub->add_option("--" + d.key, raw[c.name][d.key], help);
    }
    for (const OptionDef& o : c.options) sub->add_option("--" + o.key, raw[c.name]["@" + o.key])->check(CLI::IsMember(o.allowed));
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    std::string sub_name;
    for (const auto& [name, sub] : subs)
      if (sub->parsed()) sub_name = name;
    if (!sub_name.empty()) {
      if (!cfg.command.empty() && cfg.command != sub_name)
        throw UsageError("command '" + sub_name + "' conflicts with config command '" + cfg.command + "'");
      cfg.command = sub_name;
      CLI::App* sub = subs[sub_name];
      for (const auto& [key, text] : raw[sub_name]) {
        const std::string name = key[0] == '@' ? key.substr(1) : key;
        if (sub->count("--" + name) == 0) continue;
        if (key[0] == '@') {
          cfg.options[name] = text;
        } else {
          try {
            cfg.parameters[name] = parse_quantity(text);
          } catch (const UsageError&) {
            throw UsageError("parameter '" + name + "': cannot parse '" + text + "'");
          }
        }
      }
      for (const auto& [key, on] : flags[sub_name])
        if (sub->count("--" + key)) cfg.parameters[key] = {on ? 1.0 : 0.0, "1"};
    }
    if (o_format->count()) cfg.format = format;
    if (o_output->count()) cfg.output = output;
    if (o_seed->count()) cfg.seed = seed;

    const RunConfig eff = effective_config(cfg);
    if (print_config) {
      write_text(config_json(eff), "", out);
      return ok;
    }
    const std::string text = render(dispatch(eff), eff);
    write_text(text, eff.output, out);
    return ok;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return io;
  } catch (const InfeasibleDesign& e) {
    err << "infeasible: " << e.what() << '\n';
    return infeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace zeno::cli
