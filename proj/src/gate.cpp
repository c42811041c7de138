#include "zeno/gate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zeno/constants.hpp"

namespace zeno {

namespace {

using constants::pi;
const double kSqrt2 = std::sqrt(2.0);

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

ErrorPair errors_from(const GateGeometry& g, const AbsorberRates& r, int start) {
  Vec in;
  in.dim = g.branches;
  in.v[start] = 1.0;
  const int last = g.branches - 1;
  const int opposite = last - start;
  const Vec out1 = propagate(g, r, false, in);
  const Vec out2 = propagate(g, r, true, in);
  return {clamp01(1.0 - std::norm(out1.v[opposite])), clamp01(1.0 - std::norm(out2.v[start]))};
}

}  // namespace

double GateGeometry::default_eps(int branches, std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("GateGeometry: N must be >= 1");
  if (branches == 2) return pi / (2.0 * static_cast<double>(N));
  if (branches == 3) return pi / (kSqrt2 * static_cast<double>(N));
  throw std::invalid_argument("GateGeometry: branches must be 2 or 3");
}

GateGeometry GateGeometry::make(int branches, std::uint64_t N) {
  return make(branches, N, default_eps(branches, N));
}

GateGeometry GateGeometry::make(int branches, std::uint64_t N, double eps) {
  GateGeometry g{branches, N, eps};
  g.validate();
  return g;
}

void GateGeometry::validate() const {
  if (branches != 2 && branches != 3) throw std::invalid_argument("GateGeometry: branches must be 2 or 3");
  if (N == 0) throw std::invalid_argument("GateGeometry: N must be >= 1");
  // pi/sqrt2 (three branches, N = 1) must stay admissible, hence the bound pi rather than pi/2
  if (!(eps > 0.0 && eps < pi)) throw std::invalid_argument("GateGeometry: eps must lie in (0, pi)");
}

double Decay::transmission() const {
  if (perfect) return 0.0;
  if (!(xi >= 0.0)) throw std::invalid_argument("decay exponent must be >= 0");
  return std::exp(-xi);
}

AbsorberRates AbsorberRates::from_kappa(double xi1, double kappa) {
  return {xi1, Decay{kappa * xi1, false}, 0.0};
}

double AbsorberRates::kappa() const {
  if (xi2.perfect) return std::numeric_limits<double>::infinity();
  return xi2.xi / xi1;
}

void AbsorberRates::validate() const {
  if (!(xi1 >= 0.0) || !(xi_c >= 0.0) || (!xi2.perfect && !(xi2.xi >= 0.0)))
    throw std::invalid_argument("AbsorberRates: exponents must be >= 0");
}

ComplexMatrix segment_matrix(const GateGeometry& g, Decay d) {
  g.validate();
  const double e = d.transmission();
  const double c = std::cos(g.eps), s = std::sin(g.eps);
  if (g.branches == 2) return ComplexMatrix(2, {c, s, -e * s, e * c});
  // splitter(2,3) * absorber on the middle branch * splitter(1,2)
  return ComplexMatrix(3, {c, -s, 0.0,
                           e * s * c, e * c * c, -s,
                           e * s * s, e * s * c, c});
}

Vec propagate(const GateGeometry& g, const AbsorberRates& r, bool control_present, const Vec& input) {
  if (input.dim != g.branches) throw std::invalid_argument("propagate: state dimension does not match geometry");
  r.validate();
  const Decay d = control_present ? r.xi2 : Decay{r.xi1, false};
  return mat_power(segment_matrix(g, d), g.N) * input;
}

ClosedFormFactors closed_form_factors(double eps, Decay d) {
  const double e = d.transmission();
  const double c = std::cos(eps);
  const cplx r = std::sqrt(cplx((e + 1.0) * (e + 1.0) * c * c - 4.0 * e, 0.0));
  return {r, (e + 1.0) * c + r, (e + 1.0) * c - r, (e - 1.0) * c + r, (e - 1.0) * c - r};
}

ComplexMatrix closed_form_two_branch(double eps, Decay d, std::uint64_t N) {
  const ClosedFormFactors f = closed_form_factors(eps, d);
  if (std::abs(f.r) < 1e-9)
    throw DegenerateRootError("closed_form_two_branch: degenerate roots (|r| < 1e-9); use mat_power instead");
  const double e = d.transmission();
  const double s = std::sin(eps);
  // the common 1/2^N is folded into the powers to keep them finite for large N
  const auto n = static_cast<double>(N);
  const cplx ap = std::pow(f.alpha_p / 2.0, n), am = std::pow(f.alpha_m / 2.0, n);
  const cplx bp = f.beta_p / 2.0, bm = f.beta_m / 2.0;
  ComplexMatrix m(2);
  m(0, 0) = (bp * am - bm * ap) / f.r;
  m(0, 1) = (ap - am) * s / f.r;
  m(1, 0) = (am - ap) * e * s / f.r;
  m(1, 1) = (bp * ap - bm * am) / f.r;
  return m;
}

ErrorPair exact_errors(const GateGeometry& g, const AbsorberRates& r) { return errors_from(g, r, 0); }

ErrorPair exact_errors_mirrored(const GateGeometry& g, const AbsorberRates& r) {
  if (g.branches != 3) throw std::invalid_argument("exact_errors_mirrored: three-branch geometry only");
  return errors_from(g, r, 2);
}

ErrorPair asymptotic_errors(const GateGeometry& g, const AbsorberRates& r, Order order) {
  g.validate();
  r.validate();
  const double n = static_cast<double>(g.N);
  const double x1 = r.xi1;
  const bool perfect = r.xi2.perfect;
  const double x2 = r.xi2.xi;
  const double pi2 = pi * pi, pi4 = pi2 * pi2, pi6 = pi4 * pi2;
  ErrorPair p;
  if (g.branches == 2) {
    p.p1 = n * x1;
    p.p2 = perfect ? 0.0 : pi2 / (2.0 * n * x2);
    if (order == Order::first) {
      p.p1 += x1;
      p.p2 += (2.0 * pi2 - pi4) / (48.0 * n * n) + pi2 * x1 / (24.0 * n);
      // terms carrying xi_2gamma are dropped for a perfect absorber
      if (!perfect) p.p2 += (4.0 * pi4 + pi6) / (192.0 * n * n * n * x2) + pi2 * x2 / (24.0 * n);
    }
  } else {
    p.p1 = n * x1 / 2.0;
    p.p2 = perfect ? 0.0 : pi2 / (n * x2);
    if (order == Order::first) {
      p.p1 += x1;
      p.p2 += (4.0 * pi2 - 3.0 * pi4) / (48.0 * n * n) + pi2 * x1 / (12.0 * n);
      if (!perfect) p.p2 += (2.0 * pi4 + pi6) / (24.0 * n * n * n * x2) + pi2 * x2 / (12.0 * n);
    }
  }
  return p;
}

OptimalRates optimal_rates(double kappa, std::uint64_t N, int branches) {
  if (!(kappa > 0.0)) throw std::invalid_argument("optimal_rates: kappa must be > 0");
  if (N == 0) throw std::invalid_argument("optimal_rates: N must be >= 1");
  const double n = static_cast<double>(N);
  const double sk = std::sqrt(kappa);
  OptimalRates o;
  if (branches == 2) {
    o.xi1 = pi / (sk * kSqrt2 * n);
    o.xi2 = sk * pi / (kSqrt2 * n);
  } else if (branches == 3) {
    o.xi1 = kSqrt2 * pi / (sk * n);
    o.xi2 = sk * kSqrt2 * pi / n;
  } else {
    throw std::invalid_argument("optimal_rates: branches must be 2 or 3");
  }
  o.p_overall = pi / std::sqrt(2.0 * kappa);
  return o;
}

double required_kappa(double p_target) {
  if (!(p_target > 0.0)) throw std::invalid_argument("required_kappa: P must be > 0");
  return pi * pi / (2.0 * p_target * p_target);
}

FransonResult franson_errors(const AbsorberRates& r, std::uint64_t N) {
  r.validate();
  const double n = static_cast<double>(N);
  FransonResult f;
  f.p1 = 2.0 * n * r.xi1;
  f.p2 = 4.0 * n * r.xi1 + (r.xi2.perfect ? 0.0 : 2.0 * pi * pi / (n * r.xi2.xi));
  const double kappa = r.kappa();
  f.xi1_opt = pi / (std::sqrt(kappa) * kSqrt2 * n);
  f.xi2_opt = std::sqrt(kappa) * pi / (kSqrt2 * n);
  f.p_overall = 4.0 * kSqrt2 * pi / std::sqrt(kappa);
  return f;
}

double franson_required_kappa(double p_target) {
  if (!(p_target > 0.0)) throw std::invalid_argument("franson_required_kappa: P must be > 0");
  return 32.0 * pi * pi / (p_target * p_target);
}

double control_loss_adjusted(double kappa, std::uint64_t N, double xi_c) {
  if (!(kappa > 0.0)) throw std::invalid_argument("control_loss_adjusted: kappa must be > 0");
  return pi / std::sqrt(2.0 * kappa) + 2.0 * static_cast<double>(N) * xi_c;
}

double worst_case_control_loss(double kappa, std::uint64_t N, int branches) {
  return control_loss_adjusted(kappa, N, optimal_rates(kappa, N, branches).xi1);
}

double zeno_demo_survival(std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("zeno_demo_survival: N must be >= 1");
  const double n = static_cast<double>(N);
  return std::pow(std::cos(pi / (2.0 * n)), 2.0 * n);
}

}  // namespace zeno
