#include "zeno/units.hpp"

#include <map>

#include "zeno/constants.hpp"

namespace zeno {

namespace {

namespace k = constants;

const std::vector<UnitInfo>& table() {
  static const std::vector<UnitInfo> t = [] {
    const double m_nat = 1.0 / k::hbar_c_eVm;  // 1 m in eV^-1
    const double watt = k::joule_in_eV * k::hbar_eVs;  // 1 J/s in eV^2
    return std::vector<UnitInfo>{
        {"1", UnitKind::dimensionless, 1.0},
        {"dimensionless", UnitKind::dimensionless, 1.0},
        {"eV", UnitKind::energy, 1.0},
        {"meV", UnitKind::energy, 1e-3},
        {"keV", UnitKind::energy, 1e3},
        {"s^-1", UnitKind::angular_frequency, k::hbar_eVs},
        {"Hz", UnitKind::angular_frequency, k::hbar_eVs},
        {"rad/s", UnitKind::angular_frequency, k::hbar_eVs},
        {"m", UnitKind::length, m_nat},
        {"cm", UnitKind::length, 1e-2 * m_nat},
        {"mm", UnitKind::length, 1e-3 * m_nat},
        {"um", UnitKind::length, 1e-6 * m_nat},
        {"nm", UnitKind::length, 1e-9 * m_nat},
        {"a_B", UnitKind::length, k::bohr_radius_m * m_nat},
        {"eV^-1", UnitKind::length, 1.0},
        {"m2", UnitKind::area, m_nat * m_nat},
        {"cm2", UnitKind::area, 1e-4 * m_nat * m_nat},
        {"um2", UnitKind::area, 1e-12 * m_nat * m_nat},
        {"nm2", UnitKind::area, 1e-18 * m_nat * m_nat},
        {"eV^-2", UnitKind::area, 1.0},
        {"W/m2", UnitKind::intensity, watt / (m_nat * m_nat)},
        {"W/cm2", UnitKind::intensity, watt / (1e-4 * m_nat * m_nat)},
        {"eV4", UnitKind::intensity, 1.0},
    };
  }();
  return t;
}

bool energy_like(UnitKind kd) { return kd == UnitKind::energy || kd == UnitKind::angular_frequency; }

}  // namespace

std::string_view kind_name(UnitKind kd) {
  switch (kd) {
    case UnitKind::energy: return "energy";
    case UnitKind::angular_frequency: return "angular-frequency";
    case UnitKind::length: return "length";
    case UnitKind::area: return "area";
    case UnitKind::intensity: return "intensity";
    case UnitKind::dimensionless: return "dimensionless";
  }
  return "?";
}

const UnitInfo& unit_info(std::string_view label) {
  for (const auto& u : table())
    if (u.label == label) return u;
  throw UnitError("unknown unit '" + std::string(label) + "'");
}

std::vector<std::string> unit_labels() {
  std::vector<std::string> out;
  for (const auto& u : table()) out.push_back(u.label);
  return out;
}

std::string_view natural_unit_label(UnitKind kd) {
  switch (kd) {
    case UnitKind::energy:
    case UnitKind::angular_frequency: return "eV";
    case UnitKind::length: return "eV^-1";
    case UnitKind::area: return "eV^-2";
    case UnitKind::intensity: return "eV4";
    case UnitKind::dimensionless: return "1";
  }
  return "1";
}

Quantity::Quantity(double value, std::string_view unit) : value_(value), unit_(unit) {
  unit_info(unit_);  // validate
}

UnitKind Quantity::kind() const { return unit_info(unit_).kind; }

double Quantity::natural() const { return value_ * unit_info(unit_).to_natural; }

Quantity Quantity::operator+(const Quantity& o) const {
  if (o.kind() != kind())
    throw UnitError("cannot add " + std::string(kind_name(o.kind())) + " to " + std::string(kind_name(kind())));
  return {value_ + convert(o, unit_).value(), unit_};
}

Quantity Quantity::operator-(const Quantity& o) const { return *this + o * -1.0; }

double wavelength_to_omega(double lambda_nat) {
  if (!(lambda_nat > 0.0)) throw UnitError("wavelength must be positive");
  return 2.0 * constants::pi / lambda_nat;
}

Quantity convert(const Quantity& q, std::string_view target) {
  const UnitInfo& to = unit_info(target);
  const UnitKind from = q.kind();
  if (from == to.kind || (energy_like(from) && energy_like(to.kind)))
    return {q.natural() / to.to_natural, target};
  // wavelength <-> photon energy; the map omega = 2 pi / lambda is its own inverse
  if ((from == UnitKind::length && energy_like(to.kind)) || (energy_like(from) && to.kind == UnitKind::length))
    return {wavelength_to_omega(q.natural()) / to.to_natural, target};
  throw UnitError("cannot convert " + std::string(kind_name(from)) + " to " + std::string(kind_name(to.kind)));
}

double natural(double value, std::string_view unit) { return value * unit_info(unit).to_natural; }

double from_natural(double value_nat, std::string_view unit) { return value_nat / unit_info(unit).to_natural; }

}  // namespace zeno
