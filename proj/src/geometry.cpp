#include "dirac_sphere/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dirac_sphere/errors.hpp"

namespace dirac_sphere::geometry {

SphereChart::SphereChart(double radius) : radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    std::ostringstream os;
    os << "sphere radius must be positive and finite, got " << radius;
    throw DomainError(os.str());
  }
}

double SphereChart::conformal_factor(double w) const { return radius_ / std::cosh(w); }

double w_from_v(double v) {
  constexpr double half_pi = 0.5 * std::numbers::pi;
  if (!(std::abs(v) < half_pi)) {
    std::ostringstream os;
    os << "w_from_v: |v| must be below pi/2 (chart excludes the poles), got " << v;
    throw DomainError(os.str());
  }
  // Evaluated on |v| so the map is exactly odd. Near the poles tan + sec
  // overflows its digits; asinh(tan v) is the same function.
  const double a = std::abs(v);
  const double w = a > 1.0 ? std::asinh(std::tan(a)) : std::log(std::tan(a) + 1.0 / std::cos(a));
  return std::copysign(w, v);
}

double v_from_w(double w) { return std::atan(std::sinh(w)); }

}  // namespace dirac_sphere::geometry
