#pragma once

#include <complex>
#include <optional>
#include <stdexcept>

namespace zeno {

// Three-level absorber 1s -> 2p -> 3s driven by the target (omega1) and control (omega2) photons.
// All fields in natural units (eV powers). Detunings are derived: Delta = E12 - omega1 for the
// target photon and Delta_c = E12 - omega2 for the control photon.
struct AtomSpec {
  double E12 = 0.0;
  double E23 = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  double ell = 0.0;    // dipole coupling length
  double m = 0.0;      // electron mass
  double area = 0.0;   // transverse wave-packet cross section A
  double f = 1.0;      // g12 / g23 coupling ratio (f < 1: Lambda scheme)

  double detuning() const { return E12 - omega1; }
  double control_detuning() const { return E12 - omega2; }
  void validate() const;

  // Optical configuration: omega1 from the wavelength, E12 = omega1 + Delta, omega2 = E12 - Delta_c
  // (Delta_c defaults to 10 Delta), E23 from two-photon resonance, A defaults to (lambda/2)^2.
  static AtomSpec optical(double wavelength, double delta, std::optional<double> control_delta = std::nullopt,
                          std::optional<double> ell = std::nullopt, std::optional<double> area = std::nullopt,
                          double f = 1.0);
  // All four energies equal to omega, A = (pi/omega)^2; only meaningful for the ratio.
  static AtomSpec diffraction_limited(double omega, double ell, double f = 1.0);
};

struct CouplingSet {
  double g12 = 0.0;
  double g23 = 0.0;
  double g13_bound = 0.0;  // upper estimate of the direct two-photon coupling
  double g11 = 0.0;
  double g_eff = 0.0;      // g12 g23 / Delta
};

class RatioUnbounded : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

CouplingSet coupling_constants(const AtomSpec& s);
double two_photon_absorption_prob(const AtomSpec& s);
double one_photon_scattering_prob(const AtomSpec& s, bool include_control, bool include_A2_term);

struct ScatteringTerms {
  bool include_control = false;
  bool include_A2_term = false;
};
// kappa0 = P2 / P1. With both terms off this is the Delta-independent closed form; otherwise the
// full probabilities are divided. Throws RatioUnbounded if P1 vanishes.
double absorption_ratio(const AtomSpec& s, ScatteringTerms terms = {});

struct InterferencePoint {
  double omega = 0.0;
  double E23 = 0.0;
};
InterferencePoint destructive_interference_frequency(double E12, double ell, double m);
// E12^2 ell^2 (1/(E12-omega) + 1/(E12+omega)) - 1/m; zero at the destructive-interference frequency.
double interference_bracket(double E12, double omega, double ell, double m);

struct MiddleLevel {
  std::complex<double> amplitude;
  bool pump_safe = false;
};
// drive12 = g12^* A1, drive23 = g23 A2^*; psi1s/psi3s are the ground and upper amplitudes.
MiddleLevel middle_level_population(std::complex<double> drive12, std::complex<double> drive23, double delta_p,
                                    std::complex<double> psi1s = 1.0, std::complex<double> psi3s = 0.0);
// Drive |g A| for a classical field of intensity I on a transition E at frequency omega.
double pump_drive(double E, double omega, double intensity, double ell);
// sqrt(4 pi alpha I) ell; the pump detuning should exceed it by an order of magnitude.
double pump_detuning_threshold(double intensity, double ell);

}  // namespace zeno
