#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "zeno/absorber.hpp"

namespace zeno {

// --- repeated inducing: the photon pair passes the same absorber n times -------------------

struct MultiPassSpec {
  std::uint64_t n = 1;
  double k1 = 0.0, k2 = 0.0;  // wave numbers
  double L = 0.0;             // path length between passes (k L dimensionless)
  double tau = 0.0;           // per-pass interaction strength
  double g13 = 0.0, g12 = 0.0, g11 = 0.0;
};

struct MultiPassResult {
  double p2 = 0.0;          // coherent two-photon absorption
  double p1_abs = 0.0;      // coherent one-photon absorption
  double p1_scatter = 0.0;  // incoherent scattering, adds up in probability
  bool perturbative = true; // tau * max|g| * n <= 0.1
};

MultiPassResult multipass_probabilities(const MultiPassSpec& s);
// |sum_{mu=1..n} e^{i mu x}|^2 accumulated term by term.
double phase_sum_norm2(double x, std::uint64_t n);
// (cos n x - 1) / (cos x - 1); n^2 where cos x = 1.
double phase_sum_closed_form(double x, std::uint64_t n);

// --- Dicke / quasispin ensemble --------------------------------------------------------

enum class Ladder { raise, lower };

struct LadderResult {
  double coefficient = 0.0;
  std::uint64_t s = 0;
};
// Sigma^+ |s> = sqrt((S-s)(s+1)) |s+1>, Sigma^- |s> = sqrt((S-s+1) s) |s-1>; 0 at the boundaries.
LadderResult quasispin_apply(Ladder op, std::uint64_t s, std::uint64_t S);

struct DickeFactors {
  double two_photon = 0.0;     // (S - s)(s + 1)
  double scatter_bound = 0.0;  // O(S)
};
DickeFactors dicke_enhancement(std::uint64_t S, std::uint64_t s);

using Vec3 = std::array<double, 3>;

struct PhaseSumStats {
  double mean = 0.0;
  double stderr_ = 0.0;
};
// Monte-Carlo mean of |sum_l exp(i r_l . dk)|^2 over S emitters placed uniformly in [0, box]^3.
// Trials run in parallel; each draws from its own generator seeded by (seed, trial).
PhaseSumStats random_phase_sum(std::uint64_t S, const Vec3& dk, double box, std::uint64_t seed,
                               std::uint64_t trials);
// Serial reference with identical results.
PhaseSumStats random_phase_sum_serial(std::uint64_t S, const Vec3& dk, double box, std::uint64_t seed,
                                      std::uint64_t trials);
double phase_sum_trial(std::uint64_t S, const Vec3& dk, double box, std::uint64_t seed, std::uint64_t trial);

// --- pump-sustained coherent excitation ------------------------------------------------

struct PumpSpec {
  double I1 = 0.0, I2 = 0.0;      // intensities, natural units
  double delta_p = 0.0;           // pump detuning from the middle level
  double omega1p = 0.0, omega2p = 0.0;
  double S = 1.0;                 // emitter count
  AtomSpec atom;

  // Pumps detuned by delta_p below E12, phase matched to the photon pair.
  static PumpSpec matched(const AtomSpec& atom, double delta_p, double I1, double I2, double S = 1.0);
  void validate() const;
};

struct PumpState {
  double g = 0.0;          // effective collective two-photon pump coupling
  double alpha_g = 0.0;    // coherent amplitude, -g sqrt(S) / E13
  double s_over_S = 0.0;
  bool pump_safe = false;
};
PumpState pump_steady_state(const PumpSpec& p);

// Upconversion detunings are of optical size; the process is dropped from the totals.
struct UpconversionCheck {
  double min_detuning = 0.0;
  double suppression = 0.0;  // (Delta / min_detuning)^2 relative to the resonant channel
  bool negligible = false;
};
UpconversionCheck upconversion_check(const AtomSpec& s);

// n s kappa0 = kappa_target: the combined enhancement still needed on top of kappa0.
double required_combined_enhancement(double kappa_target, double kappa0);

}  // namespace zeno
