#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zeno {

enum class UnitKind { energy, angular_frequency, length, area, intensity, dimensionless };

std::string_view kind_name(UnitKind k);

class UnitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct UnitInfo {
  std::string label;
  UnitKind kind;
  double to_natural;  // multiply a value in this unit to get natural units (powers of eV)
};

// Looks up a unit label ("eV", "s^-1", "Hz", "nm", "a_B", "cm2", "W/cm2", "1", ...).
// "Hz" is read as angular frequency in s^-1.
const UnitInfo& unit_info(std::string_view label);
std::vector<std::string> unit_labels();
std::string_view natural_unit_label(UnitKind k);

// A value tagged with its unit; arithmetic requires matching kinds.
class Quantity {
 public:
  Quantity(double value, std::string_view unit);

  double value() const { return value_; }
  const std::string& unit() const { return unit_; }
  UnitKind kind() const;
  double natural() const;  // value expressed in natural units

  Quantity operator+(const Quantity& o) const;
  Quantity operator-(const Quantity& o) const;
  Quantity operator*(double s) const { return {value_ * s, unit_}; }

 private:
  double value_;
  std::string unit_;
};

// Converts q to the target unit. Compatible pairs: same kind, energy <-> angular frequency
// (via hbar), and length <-> energy / angular frequency read as wavelength (omega = 2 pi c / lambda).
Quantity convert(const Quantity& q, std::string_view target);

// Natural-unit helpers for callers that work in eV powers directly.
double natural(double value, std::string_view unit);
double from_natural(double value_nat, std::string_view unit);
double wavelength_to_omega(double lambda_nat);

}  // namespace zeno
