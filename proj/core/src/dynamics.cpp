#include "fpsir/dynamics.hpp"

#include <string>

#include "fpsir/errors.hpp"

namespace fpsir {

void ModelParams::validate() const {
  const auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0))
      throw InvalidArgument(std::string("model parameter ") + name +
                            " must be nonnegative");
  };
  nonneg(birth_rate, "b");
  nonneg(death_rate, "delta");
  nonneg(infection_rate, "beta");
  nonneg(recovery_rate, "gamma");
  nonneg(noise_coeff, "noise_coeff");
  nonneg(npi_max, "alpha_max");
  nonneg(vaccination_max, "v_max");
  nonneg(treatment_max, "eta_max");
  if (!(npi_max < 1.0)) throw InvalidArgument("alpha_max must be < 1");
}

double control_upper(const ModelParams& p, int c) {
  switch (c) {
    case 0: return p.npi_max;
    case 1: return p.vaccination_max;
    default: return p.treatment_max;
  }
}

bool admissible(const ControlPoint& u, const ModelParams& p) {
  for (int c = 0; c < 3; ++c)
    if (!(u[c] >= 0.0 && u[c] <= control_upper(p, c))) return false;
  return true;
}

Vec2 drift(const StatePoint& x, const ControlPoint& u, const ModelParams& p) {
  const double infection = (1.0 - u.npi) * p.infection_rate * x.s * x.i;
  return {p.birth_rate - infection - (u.vaccination + p.death_rate) * x.s,
          infection - (p.recovery_rate + u.treatment + p.death_rate) * x.i};
}

Vec2 diffusion_sq(const StatePoint& x, const ControlPoint& u,
                  const ModelParams& p) {
  const double a = (1.0 - u.npi) * x.s * x.i;
  const double v = p.noise_coeff * a * a;
  return {v, v};
}

Vec2 diffusion_sq_gradient(const StatePoint& x, const ControlPoint& u,
                           const ModelParams& p) {
  const double k = 2.0 * p.noise_coeff * (1.0 - u.npi) * (1.0 - u.npi);
  return {k * x.s * x.i * x.i, k * x.s * x.s * x.i};
}

Vec3 sir3_rhs(double s, double i, double r, const ControlPoint& u,
              const ModelParams& p) {
  const double infection = (1.0 - u.npi) * p.infection_rate * s * i;
  return {p.birth_rate - infection - (u.vaccination + p.death_rate) * s,
          infection - (p.recovery_rate + u.treatment + p.death_rate) * i,
          (p.recovery_rate + u.treatment) * i + u.vaccination * s -
              p.death_rate * r};
}

}  // namespace fpsir
