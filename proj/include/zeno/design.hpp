#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeno/absorber.hpp"
#include "zeno/gate.hpp"

namespace zeno {

// How absorber rates are chosen for a candidate (N, kappa).
enum class RateRule {
  optimal_formula,  // closed-form optimal rates for the three-branch gate
  minimax_scale,    // rescale those rates to minimize max(P1, P2) exactly
};

enum class Strategy { min_N, balanced, min_kappa };
std::string strategy_name(Strategy s);
Strategy parse_strategy(const std::string& s);

struct DesignConfig {
  int branches = 3;
  RateRule rule = RateRule::optimal_formula;
  double kappa_min = 1.0;
  double kappa_max = 1e7;
  std::uint64_t n_min = 1;
  std::uint64_t n_max = 200;
  double kappa_rel_tol = 1e-3;   // bisection width in kappa
  double scale_tol = 1e-6;       // golden-section width in log absorber scale
};

struct DesignPoint {
  double p_target = 0.0;
  std::uint64_t N = 0;
  double kappa = 0.0;
  double xi1 = 0.0, xi2 = 0.0;
  double p1 = 0.0, p2 = 0.0;          // exact errors at the stored rates
  double p2_seg = 0.0, p1_seg = 0.0;
  std::uint64_t enhancement = 0;      // n, s or n s
  std::string strategy;
};

class InfeasibleDesign : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RatedError {
  double max_error = 0.0;
  double xi1 = 0.0, xi2 = 0.0;
  ErrorPair errors;
};
// max(P1, P2) exact at the rates selected by the configured rule.
RatedError rated_error(std::uint64_t N, double kappa, const DesignConfig& cfg);

// Golden-section minimization of max(P1, P2) over the absorber scale at fixed kappa.
// Returns the scale factor relative to the closed-form optimum together with the errors.
struct ScaleOptimum {
  double scale = 1.0;
  RatedError at;
};
ScaleOptimum minimax_scale(std::uint64_t N, double kappa, int branches, double tol = 1e-6);

// Smallest kappa (to the configured relative width) with max error <= P at this N.
std::optional<DesignPoint> minimal_kappa(double p_target, std::uint64_t N, const DesignConfig& cfg);

// kappa(N) for every N in ns; OpenMP over N, results in input order.
std::vector<std::optional<DesignPoint>> kappa_sweep(double p_target, const std::vector<std::uint64_t>& ns,
                                                    const DesignConfig& cfg);
std::vector<std::optional<DesignPoint>> kappa_sweep_serial(double p_target, const std::vector<std::uint64_t>& ns,
                                                           const DesignConfig& cfg);

// Sweeps N in [n_min, n_max] and returns one point per strategy (min_N, balanced, min_kappa).
// Throws InfeasibleDesign if no N is feasible below kappa_max.
std::vector<DesignPoint> search_feasible_nk(double p_target, const DesignConfig& cfg = {});
DesignPoint search_feasible_nk(double p_target, Strategy strategy, const DesignConfig& cfg = {});

struct SegmentProbabilities {
  double p2 = 0.0;
  double p1 = 0.0;
};
SegmentProbabilities segment_probabilities(std::uint64_t N, double kappa);

// The single-atom configuration used for the example tables: 500 nm photons,
// Delta = 3e12 s^-1, Delta_c = 10 Delta, ell = 6 a_B, A = (lambda/2)^2.
AtomSpec table_atom();

// ceil(kappa / kappa0) with control scattering and the A^2 term included; 1 if kappa0 is unbounded.
std::uint64_t required_enhancement(double kappa_target, const AtomSpec& spec);

struct TableSet {
  std::vector<DesignPoint> overview;     // (P, N, kappa) grid, three choices per P
  std::vector<DesignPoint> small_N;
  std::vector<DesignPoint> balanced;
  std::vector<DesignPoint> small_kappa;
};
// Evaluates the reference (P, N) grid; each row is certified with exact errors.
TableSet generate_tables(const DesignConfig& cfg = {});

struct CurveSample {
  double xi2 = 0.0;
  double p1_exact = 0.0, p2_exact = 0.0;
  double p1_approx = 0.0, p2_approx = 0.0;  // leading order, capped at 1
};
// Sweeps the absorber scale at fixed kappa over samples points in [lo, hi] of xi_2gamma.
std::vector<CurveSample> error_curve(double kappa, std::uint64_t N, double lo, double hi, std::size_t samples,
                                     int branches = 2);
std::vector<CurveSample> error_curve_serial(double kappa, std::uint64_t N, double lo, double hi,
                                            std::size_t samples, int branches = 2);

struct Crossing {
  double xi2 = 0.0;
  double p = 0.0;
};
// Absorber scale where the exact P1 and P2 coincide (bisection on [lo, hi]).
Crossing curve_crossing(double kappa, std::uint64_t N, double lo, double hi, int branches = 2);

// Splitter angle minimizing max(P1, P2) at the optimal rates, relative to the default angle.
double optimal_eps_ratio(double kappa, std::uint64_t N, int branches);

}  // namespace zeno
