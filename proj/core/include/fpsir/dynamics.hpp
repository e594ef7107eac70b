#pragma once

#include <array>

namespace fpsir {

/// Epidemiological rates, noise strength and the control box.
struct ModelParams {
  double birth_rate = 0.01;
  double death_rate = 0.01;
  double infection_rate = 3.0;
  double recovery_rate = 1.0;
  /// Coefficient c in sigma_S^2 = sigma_I^2 = c (1 - alpha)^2 S^2 I^2.
  double noise_coeff = 0.02;
  double npi_max = 0.85;
  double vaccination_max = 0.1;
  double treatment_max = 0.25;

  /// Throws InvalidArgument unless every field is nonnegative and
  /// npi_max < 1.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

/// (S, I) coordinates of the reduced state space.
struct StatePoint {
  double s = 0.0;
  double i = 0.0;
};

/// Control action (alpha, v, eta).
struct ControlPoint {
  double npi = 0.0;
  double vaccination = 0.0;
  double treatment = 0.0;

  double& operator[](int c) { return c == 0 ? npi : (c == 1 ? vaccination : treatment); }
  double operator[](int c) const { return c == 0 ? npi : (c == 1 ? vaccination : treatment); }

  bool operator==(const ControlPoint&) const = default;
};

/// Upper bound of control component c in the box.
double control_upper(const ModelParams& p, int c);

/// True if every component of u lies inside the control box.
bool admissible(const ControlPoint& u, const ModelParams& p);

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

/// Drift vector F(x, u) of the reduced SDE.
Vec2 drift(const StatePoint& x, const ControlPoint& u, const ModelParams& p);

/// Squared noise amplitudes (sigma_1^2, sigma_2^2).  Both entries are equal.
Vec2 diffusion_sq(const StatePoint& x, const ControlPoint& u,
                  const ModelParams& p);

/// Analytic partial derivatives (d sigma_1^2/dS, d sigma_2^2/dI).
Vec2 diffusion_sq_gradient(const StatePoint& x, const ControlPoint& u,
                           const ModelParams& p);

/// Right-hand side of the deterministic three-compartment model.
Vec3 sir3_rhs(double s, double i, double r, const ControlPoint& u,
              const ModelParams& p);

}  // namespace fpsir
