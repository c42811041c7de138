#pragma once

#include <numbers>

// Physical constants (CODATA 2018). Internally hbar = c = eps0 = 1 and energies are in eV.
namespace zeno::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double alpha = 7.2973525693e-3;          // fine-structure constant
inline constexpr double hbar_eVs = 6.582119569e-16;       // eV s
inline constexpr double c_mps = 299792458.0;              // m / s
inline constexpr double hbar_c_eVm = hbar_eVs * c_mps;    // eV m
inline constexpr double bohr_radius_m = 5.29177210903e-11;
inline constexpr double electron_mass_eV = 510998.95;
inline constexpr double joule_in_eV = 1.0 / 1.602176634e-19;

}  // namespace zeno::constants
