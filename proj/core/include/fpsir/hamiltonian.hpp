#pragma once

#include "fpsir/cost.hpp"
#include "fpsir/dynamics.hpp"
#include "fpsir/grid.hpp"

namespace fpsir {

/// Centred first and second derivatives of a costate slice.  Ghost nodes
/// mirror the first interior node, so normal derivatives vanish on the
/// boundary.
struct CostateDerivatives {
  Field2D ds, di, dss, dii;
};
CostateDerivatives costate_derivatives(const Field2D& q, const GridSpec& grid);

/// H(w) = offset + sum_c (lin[c] w_c + quad[c] w_c^2).  H has no cross terms
/// between control components.
struct HamiltonianCoeffs {
  double offset = 0.0;
  Vec3 lin{};
  Vec3 quad{};

  double eval(const ControlPoint& w) const;
};

HamiltonianCoeffs extract_coeffs(const Field2D& f, const Field2D& q,
                                 const CostSpec& spec, const ModelParams& p,
                                 const GridSpec& grid);
HamiltonianCoeffs extract_coeffs(const Field2D& f, const CostateDerivatives& dq,
                                 const CostSpec& spec, const ModelParams& p,
                                 const GridSpec& grid);

/// Direct quadrature of the Pontryagin Hamiltonian at one time slice.
double eval_H(const Field2D& f, const Field2D& q, const ControlPoint& w,
              const CostSpec& spec, const ModelParams& p, const GridSpec& grid);

/// H + eps |w - prev|^2.
double eval_H_eps(const HamiltonianCoeffs& h, const ControlPoint& w,
                  const ControlPoint& prev, double eps);

/// Exact minimiser of H + eps |w - prev|^2 over the control box.
ControlPoint minimize_H_eps(const HamiltonianCoeffs& h, const ControlPoint& prev,
                            double eps, const ModelParams& p);

/// Minimiser of a w^2 + b w on [lo, hi]; ties go to the smaller value.
double minimize_quadratic(double a, double b, double lo, double hi);

}  // namespace fpsir
