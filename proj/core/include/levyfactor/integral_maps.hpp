// Random-integral mappings on Levy exponents. The exponential-decay
// integral acts as Phi(y) = int_0^inf psi(e^{-s} y) ds, the unit ramp
// as Phi(y) = int_0^1 psi(s y) ds; their inverses are dilation
// derivatives at 1. All operators return lazy exponents; quadrature
// and differentiation diagnostics are available through the *_value
// entry points.
#pragma once

#include <span>

#include "levyfactor/exponent.hpp"
#include "levyfactor/numerics.hpp"

namespace levyfactor {

struct MapOptions {
    double tol = 1e-10;       // quadrature target per evaluation
    double tail_tol = 1e-13;  // relative integrand size at truncation
    double s_max = 700.0;     // beyond this the tail is declared divergent
};

// Phi(y) = int_0^inf psi(e^{-s} y) ds with adaptive truncation.
// Throws numeric_error("...log-moment violation suspected") when the
// integrand has not decayed by s_max. psi.has_log_moment == no is
// rejected outright.
LevyExponent map_I(const LevyExponent& psi, MapOptions opts = {});
QuadResult<cdouble> map_I_value(const LevyExponent& psi, double t, MapOptions opts = {});

// Phi(y) = int_0^1 psi(s y) ds.
LevyExponent map_J(const LevyExponent& psi, MapOptions opts = {});
QuadResult<cdouble> map_J_value(const LevyExponent& psi, double t, MapOptions opts = {});

// Inverse of map_I: psi(y) = d/dt Phi(t y) at t = 1 (central
// differences, one Richardson level).
LevyExponent inv_I(const LevyExponent& phi);
QuadResult<cdouble> inv_I_value(const LevyExponent& phi, double t);

// Inverse of map_J: psi(y) = Phi(y) + d/dt Phi(t y) at t = 1.
LevyExponent inv_J(const LevyExponent& phi);
QuadResult<cdouble> inv_J_value(const LevyExponent& phi, double t);

// Inverse of the composed map: Psi(y) = [2 d/dt + d^2/dt^2] Phi(t y)
// at t = 1.
LevyExponent inv_JI(const LevyExponent& phi);
QuadResult<cdouble> inv_JI_value(const LevyExponent& phi, double t);

// Composed-map exponent in one quadrature:
// Phi(y) = int_0^1 w^{-2} int_0^w psi(u y) du dw, evaluated after the
// substitution w = e^{-tau} to keep the integrand smooth. Must agree
// with map_I(map_J(psi)).
LevyExponent lf_characteristic(const LevyExponent& psi, MapOptions opts = {});
QuadResult<cdouble> lf_characteristic_value(const LevyExponent& psi, double t,
                                            MapOptions opts = {});

// map_I composed n times; tail divergence at stage k is rethrown with
// the stage index. The input flag stands in for the higher log-power
// moments the iterated map needs.
LevyExponent iterate_I(const LevyExponent& psi, int n, MapOptions opts = {});

struct FactorizationReport {
    std::vector<double> grid;
    std::vector<cdouble> lhs;  // map_I(J(rho)) + J(rho)
    std::vector<cdouble> rhs;  // map_I(rho)
    double residual_sup = 0.0;
    double error_estimate = 0.0;
    bool verdict = false;
    bool inconclusive = false;
};

// Residual check of the factorization identity: with nu = map_J(rho),
// compares map_I(nu) + nu against map_I(rho) on the grid. verdict is
// true when the sup-residual is below tol; inconclusive when the
// residual is within a factor 10 of the quadrature error estimate.
FactorizationReport verify_factorization(const LevyExponent& rho,
                                         std::span<const double> grid,
                                         double tol = 1e-5, MapOptions opts = {});

// Convenience default grid for verification runs: [-20, 20], 401 points.
const std::vector<double>& verification_grid();

}  // namespace levyfactor
