#include "zeno/design.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "zeno/units.hpp"

namespace zeno {

namespace {

// Golden-section search for the minimum of a unimodal f on [a, b].
double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

RatedError evaluate(std::uint64_t N, int branches, double xi1, double xi2) {
  const GateGeometry g = GateGeometry::make(branches, N);
  const AbsorberRates r{xi1, Decay{xi2, false}, 0.0};
  const ErrorPair e = exact_errors(g, r);
  return {std::max(e.p1, e.p2), xi1, xi2, e};
}

DesignPoint make_point(double p_target, std::uint64_t N, double kappa, const RatedError& e) {
  DesignPoint d;
  d.p_target = p_target;
  d.N = N;
  d.kappa = kappa;
  d.xi1 = e.xi1;
  d.xi2 = e.xi2;
  d.p1 = e.errors.p1;
  d.p2 = e.errors.p2;
  const SegmentProbabilities s = segment_probabilities(N, kappa);
  d.p2_seg = s.p2;
  d.p1_seg = s.p1;
  return d;
}

DesignPoint pick(const std::vector<std::optional<DesignPoint>>& sweep, Strategy s) {
  const DesignPoint* best = nullptr;
  for (const auto& p : sweep) {
    if (!p) continue;
    if (!best) {
      best = &*p;
      if (s == Strategy::min_N) break;
      continue;
    }
    const bool better = s == Strategy::balanced
                            ? static_cast<double>(p->N) * std::sqrt(p->kappa) <
                                  static_cast<double>(best->N) * std::sqrt(best->kappa)
                            : p->kappa < best->kappa;
    if (better) best = &*p;
  }
  if (!best) throw InfeasibleDesign("no feasible design");
  DesignPoint out = *best;
  out.strategy = strategy_name(s);
  return out;
}

struct GridRow {
  double p;
  std::uint64_t n[3];  // small N, balanced, small kappa
};
constexpr GridRow kTableGrid[] = {{0.5, {8, 10, 40}}, {0.25, {20, 25, 70}}, {0.1, {50, 60, 160}}};

std::vector<CurveSample> curve_impl(double kappa, std::uint64_t N, double lo, double hi, std::size_t samples,
                                    int branches, bool parallel) {
  if (samples < 2) throw std::invalid_argument("error_curve: samples must be >= 2");
  if (!(kappa > 0.0)) throw std::invalid_argument("error_curve: kappa must be > 0");
  const GateGeometry g = GateGeometry::make(branches, N);
  std::vector<CurveSample> out(samples);
  const auto n = static_cast<std::int64_t>(samples);
  auto body = [&](std::int64_t i) {
    const double x2 = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
    const AbsorberRates r{x2 / kappa, Decay{x2, false}, 0.0};
    const ErrorPair e = exact_errors(g, r);
    ErrorPair a = asymptotic_errors(g, r, Order::leading);
    if (x2 == 0.0) a.p2 = 1.0;
    out[i] = {x2, e.p1, e.p2, std::min(a.p1, 1.0), std::min(a.p2, 1.0)};
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) body(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) body(i);
  }
  return out;
}

std::vector<std::optional<DesignPoint>> sweep_impl(double p, const std::vector<std::uint64_t>& ns,
                                                   const DesignConfig& cfg, bool parallel) {
  std::vector<std::optional<DesignPoint>> out(ns.size());
  const auto n = static_cast<std::int64_t>(ns.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) out[i] = minimal_kappa(p, ns[i], cfg);
  } else {
    for (std::int64_t i = 0; i < n; ++i) out[i] = minimal_kappa(p, ns[i], cfg);
  }
  return out;
}

}  // namespace

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::min_N: return "min_N";
    case Strategy::balanced: return "balanced";
    case Strategy::min_kappa: return "min_kappa";
  }
  return "?";
}

Strategy parse_strategy(const std::string& s) {
  if (s == "min_N") return Strategy::min_N;
  if (s == "balanced") return Strategy::balanced;
  if (s == "min_kappa") return Strategy::min_kappa;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

ScaleOptimum minimax_scale(std::uint64_t N, double kappa, int branches, double tol) {
  const OptimalRates o = optimal_rates(kappa, N, branches);
  auto at = [&](double u) {
    const double x2 = o.xi2 * std::exp(u);
    return evaluate(N, branches, x2 / kappa, x2);
  };
  const double u = golden_min([&](double v) { return at(v).max_error; }, std::log(1e-3), std::log(1e3), tol);
  return {std::exp(u), at(u)};
}

RatedError rated_error(std::uint64_t N, double kappa, const DesignConfig& cfg) {
  if (cfg.rule == RateRule::minimax_scale) return minimax_scale(N, kappa, cfg.branches, cfg.scale_tol).at;
  const OptimalRates o = optimal_rates(kappa, N, cfg.branches);
  return evaluate(N, cfg.branches, o.xi1, o.xi2);
}

std::optional<DesignPoint> minimal_kappa(double p_target, std::uint64_t N, const DesignConfig& cfg) {
  if (!(p_target > 0.0 && p_target < 1.0)) throw std::invalid_argument("design search: P must lie in (0, 1)");
  double lo = cfg.kappa_min, hi = cfg.kappa_max;
  RatedError at_hi = rated_error(N, hi, cfg);
  if (at_hi.max_error > p_target) return std::nullopt;
  const RatedError at_lo = rated_error(N, lo, cfg);
  if (at_lo.max_error <= p_target) return make_point(p_target, N, lo, at_lo);
  // bisection in log kappa; the feasible end is kept so the result is certified
  while (hi / lo - 1.0 > cfg.kappa_rel_tol) {
    const double mid = std::sqrt(lo * hi);
    const RatedError e = rated_error(N, mid, cfg);
    if (e.max_error <= p_target) {
      hi = mid;
      at_hi = e;
    } else {
      lo = mid;
    }
  }
  return make_point(p_target, N, hi, at_hi);
}

std::vector<std::optional<DesignPoint>> kappa_sweep(double p, const std::vector<std::uint64_t>& ns,
                                                    const DesignConfig& cfg) {
  return sweep_impl(p, ns, cfg, true);
}

std::vector<std::optional<DesignPoint>> kappa_sweep_serial(double p, const std::vector<std::uint64_t>& ns,
                                                           const DesignConfig& cfg) {
  return sweep_impl(p, ns, cfg, false);
}

std::vector<DesignPoint> search_feasible_nk(double p_target, const DesignConfig& cfg) {
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = cfg.n_min; n <= cfg.n_max; ++n) ns.push_back(n);
  const auto sweep = kappa_sweep(p_target, ns, cfg);
  const AtomSpec atom = table_atom();
  std::vector<DesignPoint> out;
  try {
    for (Strategy s : {Strategy::min_N, Strategy::balanced, Strategy::min_kappa}) {
      DesignPoint d = pick(sweep, s);
      d.enhancement = required_enhancement(d.kappa, atom);
      out.push_back(d);
    }
  } catch (const InfeasibleDesign&) {
    throw InfeasibleDesign("no N in [" + std::to_string(cfg.n_min) + ", " + std::to_string(cfg.n_max) +
                           "] reaches P = " + std::to_string(p_target) + " with kappa <= " +
                           std::to_string(cfg.kappa_max));
  }
  return out;
}

DesignPoint search_feasible_nk(double p_target, Strategy strategy, const DesignConfig& cfg) {
  for (const DesignPoint& d : search_feasible_nk(p_target, cfg))
    if (d.strategy == strategy_name(strategy)) return d;
  throw InfeasibleDesign("no feasible design");
}

SegmentProbabilities segment_probabilities(std::uint64_t N, double kappa) {
  const OptimalRates o = optimal_rates(kappa, N, 3);
  return {-std::expm1(-2.0 * o.xi2), -std::expm1(-2.0 * o.xi1)};
}

AtomSpec table_atom() {
  return AtomSpec::optical(natural(500.0, "nm"), natural(3e12, "s^-1"), natural(3e13, "s^-1"));
}

std::uint64_t required_enhancement(double kappa_target, const AtomSpec& spec) {
  double kappa0 = 0.0;
  try {
    kappa0 = absorption_ratio(spec, {true, true});
  } catch (const RatioUnbounded&) {
    return 1;
  }
  const double x = kappa_target / kappa0;
  // tolerate rounding so that kappa_target == kappa0 gives exactly 1
  return static_cast<std::uint64_t>(std::max(1.0, std::ceil(x * (1.0 - 1e-12))));
}

TableSet generate_tables(const DesignConfig& cfg) {
  const AtomSpec atom = table_atom();
  TableSet t;
  std::vector<DesignPoint>* by_choice[3] = {&t.small_N, &t.balanced, &t.small_kappa};
  const Strategy names[3] = {Strategy::min_N, Strategy::balanced, Strategy::min_kappa};
  for (const GridRow& row : kTableGrid) {
    const std::vector<std::uint64_t> ns(std::begin(row.n), std::end(row.n));
    const auto pts = kappa_sweep(row.p, ns, cfg);
    for (int i = 0; i < 3; ++i) {
      if (!pts[i]) throw InfeasibleDesign("table row infeasible below kappa_max");
      DesignPoint d = *pts[i];
      d.enhancement = required_enhancement(d.kappa, atom);
      d.strategy = strategy_name(names[i]);
      t.overview.push_back(d);
      by_choice[i]->push_back(d);
    }
  }
  return t;
}

std::vector<CurveSample> error_curve(double kappa, std::uint64_t N, double lo, double hi, std::size_t samples,
                                     int branches) {
  return curve_impl(kappa, N, lo, hi, samples, branches, true);
}

std::vector<CurveSample> error_curve_serial(double kappa, std::uint64_t N, double lo, double hi,
                                            std::size_t samples, int branches) {
  return curve_impl(kappa, N, lo, hi, samples, branches, false);
}

Crossing curve_crossing(double kappa, std::uint64_t N, double lo, double hi, int branches) {
  const GateGeometry g = GateGeometry::make(branches, N);
  auto diff = [&](double x2) {
    const ErrorPair e = exact_errors(g, AbsorberRates{x2 / kappa, Decay{x2, false}, 0.0});
    return e;
  };
  ErrorPair elo = diff(lo);
  if (elo.p1 - elo.p2 > 0.0 || diff(hi).p1 - diff(hi).p2 < 0.0)
    throw std::domain_error("curve_crossing: no sign change on the interval");
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const ErrorPair e = diff(mid);
    (e.p1 - e.p2 < 0.0 ? lo : hi) = mid;
  }
  const double x = 0.5 * (lo + hi);
  const ErrorPair e = diff(x);
  return {x, 0.5 * (e.p1 + e.p2)};
}

double optimal_eps_ratio(double kappa, std::uint64_t N, int branches) {
  const OptimalRates o = optimal_rates(kappa, N, branches);
  const double eps0 = GateGeometry::default_eps(branches, N);
  const AbsorberRates r{o.xi1, Decay{o.xi2, false}, 0.0};
  auto f = [&](double ratio) {
    const ErrorPair e = exact_errors(GateGeometry::make(branches, N, ratio * eps0), r);
    return std::max(e.p1, e.p2);
  };
  return golden_min(f, 0.8, 1.2, 1e-7);
}

}  // namespace zeno
