#pragma once

#include <cstdint>
#include <stdexcept>

#include "zeno/complex_matrix.hpp"

namespace zeno {

// Lattice traversed by the target photon: branch count, segment count, splitter angle.
struct GateGeometry {
  int branches = 2;
  std::uint64_t N = 1;
  double eps = 0.0;

  // eps defaults to pi/(2N) for two branches and pi/(sqrt2 N) for three.
  static GateGeometry make(int branches, std::uint64_t N);
  static GateGeometry make(int branches, std::uint64_t N, double eps);
  static double default_eps(int branches, std::uint64_t N);
  void validate() const;
};

// Per-segment amplitude decay exponent; `perfect` represents xi = infinity (e^-xi = 0).
struct Decay {
  double xi = 0.0;
  bool perfect = false;

  static Decay infinite() { return {0.0, true}; }
  double transmission() const;  // e^-xi
};

struct AbsorberRates {
  double xi1 = 0.0;         // one-photon loss exponent
  Decay xi2;                // two-photon absorption exponent
  double xi_c = 0.0;        // control-photon loss exponent

  static AbsorberRates from_kappa(double xi1, double kappa);
  double kappa() const;     // xi2 / xi1
  void validate() const;
};

struct ErrorPair {
  double p1 = 0.0;  // error without control photon
  double p2 = 0.0;  // error with control photon
};

class DegenerateRootError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

ComplexMatrix segment_matrix(const GateGeometry& g, Decay d);

// Applies segment_matrix^N, with the two-photon exponent if the control photon is present.
Vec propagate(const GateGeometry& g, const AbsorberRates& r, bool control_present, const Vec& input);

struct ClosedFormFactors {
  cplx r, alpha_p, alpha_m, beta_p, beta_m;
};
ClosedFormFactors closed_form_factors(double eps, Decay d);
// Two-branch N-segment matrix from the quadratic-root closed form; throws DegenerateRootError if |r| < 1e-9.
ComplexMatrix closed_form_two_branch(double eps, Decay d, std::uint64_t N);

// Exact projector error probabilities; the photon starts in branch 1 and must leave from the
// opposite end without the control photon, or stay put with it.
ErrorPair exact_errors(const GateGeometry& g, const AbsorberRates& r);
// Three-branch variant with the photon entering branch 3 (mirror of exact_errors).
ErrorPair exact_errors_mirrored(const GateGeometry& g, const AbsorberRates& r);

enum class Order { leading, first };
ErrorPair asymptotic_errors(const GateGeometry& g, const AbsorberRates& r, Order order);

struct OptimalRates {
  double xi1 = 0.0;
  double xi2 = 0.0;
  double p_overall = 0.0;
};
OptimalRates optimal_rates(double kappa, std::uint64_t N, int branches);
double required_kappa(double p_target);  // pi^2 / (2 P^2)

struct FransonResult {
  double p1 = 0.0;
  double p2 = 0.0;
  double p_overall = 0.0;  // 4 sqrt2 pi / sqrt(kappa)
  double xi1_opt = 0.0;
  double xi2_opt = 0.0;
};
FransonResult franson_errors(const AbsorberRates& r, std::uint64_t N);
double franson_required_kappa(double p_target);  // 32 pi^2 / P^2

double control_loss_adjusted(double kappa, std::uint64_t N, double xi_c);
// Overall error when the control photon loses amplitude as fast as the target at the optimal rates.
double worst_case_control_loss(double kappa, std::uint64_t N, int branches);

double zeno_demo_survival(std::uint64_t N);

}  // namespace zeno
