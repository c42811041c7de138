#include "zeno/absorber.hpp"

#include <algorithm>
#include <cmath>

#include "zeno/constants.hpp"
#include "zeno/units.hpp"

namespace zeno {

namespace {
using constants::alpha;
using constants::pi;
constexpr double kTwoPi2 = 4.0 * pi * pi;  // (2 pi)^2
constexpr double kSafetyFactor = 10.0;
}  // namespace

void AtomSpec::validate() const {
  if (!(area > 0.0)) throw std::invalid_argument("AtomSpec: area must be > 0");
  if (!(ell > 0.0)) throw std::invalid_argument("AtomSpec: dipole length must be > 0");
  if (!(f > 0.0)) throw std::invalid_argument("AtomSpec: coupling ratio f must be > 0");
  if (!(m > 0.0)) throw std::invalid_argument("AtomSpec: mass must be > 0");
  if (!(omega1 > 0.0 && omega2 > 0.0)) throw std::invalid_argument("AtomSpec: photon frequencies must be > 0");
  const double e13 = E12 + E23;
  if (std::abs(omega1 + omega2 - e13) > 1e-9 * std::abs(e13))
    throw std::invalid_argument("AtomSpec: omega1 + omega2 must equal E12 + E23");
}

AtomSpec AtomSpec::optical(double wavelength, double delta, std::optional<double> control_delta,
                           std::optional<double> ell, std::optional<double> area, double f) {
  AtomSpec s;
  s.omega1 = wavelength_to_omega(wavelength);
  s.E12 = s.omega1 + delta;
  s.omega2 = s.E12 - control_delta.value_or(10.0 * delta);
  s.E23 = s.omega1 + s.omega2 - s.E12;
  s.ell = ell.value_or(6.0 * natural(1.0, "a_B"));
  s.m = constants::electron_mass_eV;
  s.area = area.value_or(wavelength * wavelength / 4.0);
  s.f = f;
  s.validate();
  return s;
}

AtomSpec AtomSpec::diffraction_limited(double omega, double ell, double f) {
  AtomSpec s;
  s.E12 = s.E23 = s.omega1 = s.omega2 = omega;
  const double lambda = wavelength_to_omega(omega);  // 2 pi / omega
  s.area = lambda * lambda / 4.0;
  s.ell = ell;
  s.m = constants::electron_mass_eV;
  s.f = f;
  s.validate();
  return s;
}

CouplingSet coupling_constants(const AtomSpec& s) {
  s.validate();
  CouplingSet g;
  g.g12 = s.f * s.E12 * std::sqrt(alpha / (kTwoPi2 * s.omega1)) * s.ell;
  g.g23 = s.E23 * std::sqrt(alpha / (kTwoPi2 * s.omega2)) * s.ell;
  g.g11 = alpha / (kTwoPi2 * s.m * s.omega1);
  const double k = s.omega1 + s.omega2;
  g.g13_bound = alpha / (4.0 * kTwoPi2 * s.m) * k * k * s.ell * s.ell / std::sqrt(s.omega1 * s.omega2);
  const double delta = s.detuning();
  g.g_eff = delta != 0.0 ? g.g12 * g.g23 / delta : std::numeric_limits<double>::infinity();
  return g;
}

double two_photon_absorption_prob(const AtomSpec& s) {
  s.validate();
  const double d = s.detuning();
  if (d == 0.0) throw std::domain_error("two_photon_absorption_prob: zero detuning");
  const double l2 = s.ell * s.ell;
  return s.f * s.f * 4.0 * alpha * alpha / (pi * pi * s.omega1 * s.omega2) * (s.E12 * s.E12 * s.E23 * s.E23) /
         (d * d) * (l2 * l2) / (s.area * s.area);
}

namespace {
constexpr double kCancellationTol = 1e-12;
}  // namespace

double one_photon_scattering_prob(const AtomSpec& s, bool include_control, bool include_A2_term) {
  s.validate();
  const double l2 = s.ell * s.ell;
  const double direct = include_A2_term ? 1.0 / (s.m * l2) : 0.0;
  auto term = [&](double d) {
    if (d == 0.0) throw std::domain_error("one_photon_scattering_prob: zero detuning");
    const double resonant = s.f * s.f * s.E12 * s.E12 / d;
    double b = resonant - direct;
    // the two amplitudes cancel to rounding: destructive interference is exact
    if (std::abs(b) <= kCancellationTol * std::max(std::abs(resonant), std::abs(direct))) b = 0.0;
    return b * b;
  };
  double sum = term(s.detuning());
  if (include_control) sum += term(s.control_detuning());
  return 8.0 * alpha * alpha / (3.0 * pi) * sum * l2 * l2 / s.area;
}

double absorption_ratio(const AtomSpec& s, ScatteringTerms terms) {
  s.validate();
  if (!terms.include_control && !terms.include_A2_term)
    return 3.0 * s.E23 * s.E23 / (2.0 * pi * s.omega1 * s.omega2 * s.area * s.E12 * s.E12 * s.f * s.f);
  const double p1 = one_photon_scattering_prob(s, terms.include_control, terms.include_A2_term);
  if (p1 == 0.0) throw RatioUnbounded("absorption_ratio: one-photon scattering vanishes, ratio unbounded");
  return two_photon_absorption_prob(s) / p1;
}

InterferencePoint destructive_interference_frequency(double E12, double ell, double m) {
  const double x = 2.0 * m * ell * ell * E12;
  if (x > 1.0) throw std::domain_error("destructive_interference_frequency: 2 m ell^2 E12 > 1, no real solution");
  const double w = E12 * std::sqrt(1.0 - x);
  return {w, 2.0 * w - E12};
}

double interference_bracket(double E12, double omega, double ell, double m) {
  return E12 * E12 * ell * ell * (1.0 / (E12 - omega) + 1.0 / (E12 + omega)) - 1.0 / m;
}

MiddleLevel middle_level_population(std::complex<double> drive12, std::complex<double> drive23, double delta_p,
                                    std::complex<double> psi1s, std::complex<double> psi3s) {
  if (delta_p == 0.0) throw std::domain_error("middle_level_population: zero pump detuning");
  MiddleLevel r;
  r.amplitude = -(drive12 * psi1s + drive23 * psi3s) / delta_p;
  r.pump_safe = std::abs(delta_p) >= kSafetyFactor * std::max(std::abs(drive12), std::abs(drive23));
  return r;
}

double pump_drive(double E, double omega, double intensity, double ell) {
  return std::sqrt(4.0 * pi * alpha * intensity) * ell * E / omega;
}

double pump_detuning_threshold(double intensity, double ell) {
  return std::sqrt(4.0 * pi * alpha * intensity) * ell;
}

}  // namespace zeno
