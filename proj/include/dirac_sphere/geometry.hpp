#pragma once

namespace dirac_sphere::geometry {

/// Round sphere of radius R in the isothermal chart (u, w), where the metric
/// reads ds^2 = (R sech w)^2 (du^2 + dw^2). Energies scale as 1/R.
class SphereChart {
 public:
  explicit SphereChart(double radius);

  double radius() const noexcept { return radius_; }

  /// e^sigma(w) = R sech w.
  double conformal_factor(double w) const;

 private:
  double radius_;
};

/// Latitude v in (-pi/2, pi/2) to the isothermal coordinate
/// w = ln(tan v + sec v). Throws DomainError at or beyond the poles.
double w_from_v(double v);

/// Inverse map: the v with cosh w = sec v and sign(v) = sign(w).
double v_from_w(double w);

inline double conformal_factor(const SphereChart& chart, double w) {
  return chart.conformal_factor(w);
}

}  // namespace dirac_sphere::geometry
