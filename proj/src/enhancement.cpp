#include "zeno/enhancement.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "zeno/constants.hpp"

namespace zeno {

namespace {

using constants::alpha;
using constants::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

PhaseSumStats summarize(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double se = v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return {mean, se};
}

}  // namespace

namespace {

// e^{i k x} with the rounding error of the product k*x carried as a first-order correction
std::complex<double> expi_product(double k, double x) {
  const double p = k * x;
  const double e = std::fma(k, x, -p);
  const double c = std::cos(p), s = std::sin(p);
  return {c - e * s, s + e * c};
}

// sin(k x) with the same product compensation
double sin_product(double k, double x) {
  const double p = k * x;
  const double e = std::fma(k, x, -p);
  return std::sin(p) + e * std::cos(p);
}

}  // namespace

double phase_sum_norm2(double x, std::uint64_t n) {
  // Neumaier-compensated accumulation of the unit phasors
  double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
  auto add = [](double& sum, double& comp, double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  };
  for (std::uint64_t mu = 1; mu <= n; ++mu) {
    const std::complex<double> z = expi_product(static_cast<double>(mu), x);
    add(re, cre, z.real());
    add(im, cim, z.imag());
  }
  re += cre;
  im += cim;
  return re * re + im * im;
}

double phase_sum_closed_form(double x, std::uint64_t n) {
  // (cos n x - 1) / (cos x - 1) evaluated in the cancellation-free half-angle form
  const double den = std::sin(0.5 * x);
  if (den == 0.0) return static_cast<double>(n) * static_cast<double>(n);
  const double num = sin_product(static_cast<double>(n), 0.5 * x);
  return (num * num) / (den * den);
}

MultiPassResult multipass_probabilities(const MultiPassSpec& s) {
  if (s.n == 0) throw std::invalid_argument("multipass_probabilities: n must be >= 1");
  const double t2 = s.tau * s.tau;
  MultiPassResult r;
  r.p2 = t2 * s.g13 * s.g13 * phase_sum_norm2((s.k1 + s.k2) * s.L, s.n);
  r.p1_abs = t2 * s.g12 * s.g12 * phase_sum_norm2(s.k1 * s.L, s.n);
  r.p1_scatter = t2 * s.g11 * s.g11 * static_cast<double>(s.n);
  const double gmax = std::max({std::abs(s.g13), std::abs(s.g12), std::abs(s.g11)});
  r.perturbative = std::abs(s.tau) * gmax * static_cast<double>(s.n) <= 0.1;
  return r;
}

LadderResult quasispin_apply(Ladder op, std::uint64_t s, std::uint64_t S) {
  if (s > S) throw std::invalid_argument("quasispin_apply: s exceeds S");
  const double Sd = static_cast<double>(S), sd = static_cast<double>(s);
  if (op == Ladder::raise) {
    if (s == S) return {0.0, s};
    return {std::sqrt((Sd - sd) * (sd + 1.0)), s + 1};
  }
  if (s == 0) return {0.0, s};
  return {std::sqrt((Sd - sd + 1.0) * sd), s - 1};
}

DickeFactors dicke_enhancement(std::uint64_t S, std::uint64_t s) {
  if (s > S) throw std::invalid_argument("dicke_enhancement: s exceeds S");
  const double Sd = static_cast<double>(S), sd = static_cast<double>(s);
  return {(Sd - sd) * (sd + 1.0), Sd};
}

double phase_sum_trial(std::uint64_t S, const Vec3& dk, double box, std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                    static_cast<std::uint32_t>(splitmix64(seed ^ splitmix64(trial)))};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> u(0.0, box);
  std::complex<double> acc = 0.0;
  for (std::uint64_t l = 0; l < S; ++l) {
    const double x = u(rng), y = u(rng), z = u(rng);
    acc += std::polar(1.0, x * dk[0] + y * dk[1] + z * dk[2]);
  }
  return std::norm(acc);
}

PhaseSumStats random_phase_sum(std::uint64_t S, const Vec3& dk, double box, std::uint64_t seed,
                               std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("random_phase_sum: trials must be >= 1");
  std::vector<double> v(trials);
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < n; ++t) v[t] = phase_sum_trial(S, dk, box, seed, static_cast<std::uint64_t>(t));
  return summarize(v);
}

PhaseSumStats random_phase_sum_serial(std::uint64_t S, const Vec3& dk, double box, std::uint64_t seed,
                                      std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("random_phase_sum: trials must be >= 1");
  std::vector<double> v(trials);
  for (std::uint64_t t = 0; t < trials; ++t) v[t] = phase_sum_trial(S, dk, box, seed, t);
  return summarize(v);
}

PumpSpec PumpSpec::matched(const AtomSpec& atom, double delta_p, double I1, double I2, double S) {
  PumpSpec p;
  p.atom = atom;
  p.delta_p = delta_p;
  p.I1 = I1;
  p.I2 = I2;
  p.omega1p = atom.E12 - delta_p;
  p.omega2p = atom.omega1 + atom.omega2 - p.omega1p;
  p.S = S;
  p.validate();
  return p;
}

void PumpSpec::validate() const {
  atom.validate();
  if (delta_p == 0.0) throw std::domain_error("PumpSpec: zero pump detuning");
  if (!(I1 >= 0.0 && I2 >= 0.0)) throw std::invalid_argument("PumpSpec: intensities must be >= 0");
  if (!(omega1p > 0.0 && omega2p > 0.0)) throw std::invalid_argument("PumpSpec: pump frequencies must be > 0");
  const double e13 = atom.omega1 + atom.omega2;
  if (std::abs(omega1p + omega2p - e13) > 1e-9 * e13)
    throw std::invalid_argument("PumpSpec: pump frequencies must sum to omega1 + omega2");
}

PumpState pump_steady_state(const PumpSpec& p) {
  p.validate();
  const AtomSpec& a = p.atom;
  const double e13 = p.omega1p + p.omega2p;
  PumpState st;
  st.g = 4.0 * pi * alpha * a.E12 * a.E23 * a.ell * a.ell * std::sqrt(p.I1 * p.I2) /
         (p.omega1p * p.omega2p * p.delta_p);
  st.alpha_g = -st.g * std::sqrt(p.S) / e13;
  const double ratio = st.g / e13;
  st.s_over_S = ratio * ratio;
  const double d12 = pump_drive(a.E12, p.omega1p, p.I1, a.ell);
  const double d23 = pump_drive(a.E23, p.omega2p, p.I2, a.ell);
  st.pump_safe = middle_level_population(d12, d23, p.delta_p).pump_safe;
  return st;
}

UpconversionCheck upconversion_check(const AtomSpec& s) {
  s.validate();
  UpconversionCheck u;
  u.min_detuning = std::min({s.E23 + s.omega1, s.E12 + s.omega1, s.E23 + s.omega2, s.E12 + s.omega2});
  const double r = s.detuning() / u.min_detuning;
  u.suppression = r * r;
  u.negligible = u.suppression < 1e-4;
  return u;
}

double required_combined_enhancement(double kappa_target, double kappa0) {
  if (!(kappa0 > 0.0)) throw std::invalid_argument("required_combined_enhancement: kappa0 must be > 0");
  return kappa_target / kappa0;
}

}  // namespace zeno
