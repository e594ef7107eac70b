#include "fpsir/hamiltonian.hpp"

#include <algorithm>

#include "fpsir/errors.hpp"

namespace fpsir {

CostateDerivatives costate_derivatives(const Field2D& q, const GridSpec& grid) {
  check_shape(q, grid);
  const int n = grid.nx;
  const double h = grid.spacing();
  const auto at = [&](int i, int j) {
    if (i < 0) i = 1;
    if (i >= n) i = n - 2;
    if (j < 0) j = 1;
    if (j >= n) j = n - 2;
    return q(i, j);
  };
  CostateDerivatives d{Field2D(n), Field2D(n), Field2D(n), Field2D(n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double c = q(i, j);
      const double e = at(i + 1, j), w = at(i - 1, j);
      const double no = at(i, j + 1), so = at(i, j - 1);
      d.ds(i, j) = (e - w) / (2.0 * h);
      d.di(i, j) = (no - so) / (2.0 * h);
      d.dss(i, j) = (e - 2.0 * c + w) / (h * h);
      d.dii(i, j) = (no - 2.0 * c + so) / (h * h);
    }
  }
  return d;
}

double HamiltonianCoeffs::eval(const ControlPoint& w) const {
  double v = offset;
  for (int c = 0; c < 3; ++c) v += w[c] * (lin[c] + quad[c] * w[c]);
  return v;
}

HamiltonianCoeffs extract_coeffs(const Field2D& f, const CostateDerivatives& dq,
                                 const CostSpec& spec, const ModelParams& p,
                                 const GridSpec& grid) {
  check_shape(f, grid);
  const auto wq = trapezoid_weights(grid.nx, grid.spacing());
  const ControlPoint zero{};
  // Field integrals of the control-independent transport part, the three
  // control sensitivities and the noise term.
  double transport0 = 0.0, npi = 0.0, vacc = 0.0, treat = 0.0, noise = 0.0;
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.nx; ++j) {
      const double wf = wq[i] * wq[j] * f(i, j);
      if (wf == 0.0) continue;
      const StatePoint x = grid.point(i, j);
      const Vec2 F0 = drift(x, zero, p);
      const double qs = dq.ds(i, j), qi = dq.di(i, j);
      transport0 += wf * (F0[0] * qs + F0[1] * qi);
      npi += wf * p.infection_rate * x.s * x.i * (qs - qi);
      vacc += wf * x.s * qs;
      treat += wf * x.i * qi;
      noise += wf * 0.5 * p.noise_coeff * x.s * x.s * x.i * x.i *
               (dq.dss(i, j) + dq.dii(i, j));
    }
  }
  HamiltonianCoeffs h;
  h.offset = -transport0 - noise;
  h.lin = {spec.beta1 - npi + 2.0 * noise, spec.beta1 + vacc, spec.beta1 + treat};
  h.quad = {0.5 * spec.beta2 - noise, 0.5 * spec.beta2, 0.5 * spec.beta2};
  return h;
}

HamiltonianCoeffs extract_coeffs(const Field2D& f, const Field2D& q,
                                 const CostSpec& spec, const ModelParams& p,
                                 const GridSpec& grid) {
  return extract_coeffs(f, costate_derivatives(q, grid), spec, p, grid);
}

double eval_H(const Field2D& f, const Field2D& q, const ControlPoint& w,
              const CostSpec& spec, const ModelParams& p, const GridSpec& grid) {
  check_shape(f, grid);
  const auto dq = costate_derivatives(q, grid);
  const auto wq = trapezoid_weights(grid.nx, grid.spacing());
  double integral = 0.0;
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.nx; ++j) {
      const StatePoint x = grid.point(i, j);
      const Vec2 F = drift(x, w, p);
      const Vec2 s2 = diffusion_sq(x, w, p);
      const double local = F[0] * dq.ds(i, j) + F[1] * dq.di(i, j) +
                           0.5 * (s2[0] * dq.dss(i, j) + s2[1] * dq.dii(i, j));
      integral += wq[i] * wq[j] * f(i, j) * local;
    }
  }
  return control_cost(w, spec) - integral;
}

double eval_H_eps(const HamiltonianCoeffs& h, const ControlPoint& w,
                  const ControlPoint& prev, double eps) {
  double prox = 0.0;
  for (int c = 0; c < 3; ++c) prox += (w[c] - prev[c]) * (w[c] - prev[c]);
  return h.eval(w) + eps * prox;
}

double minimize_quadratic(double a, double b, double lo, double hi) {
  if (a > 0.0) return std::clamp(-b / (2.0 * a), lo, hi);
  const double at_lo = lo * (a * lo + b);
  const double at_hi = hi * (a * hi + b);
  return at_hi < at_lo ? hi : lo;
}

ControlPoint minimize_H_eps(const HamiltonianCoeffs& h, const ControlPoint& prev,
                            double eps, const ModelParams& p) {
  ControlPoint w;
  for (int c = 0; c < 3; ++c) {
    const double a = h.quad[c] + eps;
    const double b = h.lin[c] - 2.0 * eps * prev[c];
    w[c] = minimize_quadratic(a, b, 0.0, control_upper(p, c));
  }
  return w;
}

}  // namespace fpsir
