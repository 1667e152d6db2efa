// Levy spectral measures on the punctured line, handled one side at a
// time: densities m(r) at radius r > 0, optional closed-form tails,
// and a finite atom list. The side maps realize the measure-level
// action of the exponential and ramp random integrals and their
// inverses; every map acts per side.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "levyfactor/numerics.hpp"

namespace levyfactor {

struct Atom {
    double position = 0.0;  // radius, > 0
    double mass = 0.0;      // >= 0
};

enum class Side { positive, negative };

struct SpectralSide {
    // Density of the measure at radius r on this side; may be empty when
    // the side carries atoms only (or nothing).
    std::function<double(double)> density;
    // Closed-form tail r -> measure{radius > r}, used instead of
    // quadrature when present. Covers the density part only; atom mass
    // is always added on top.
    std::function<double(double)> tail_fn;
    // Density treated as zero beyond this radius.
    double cutoff = std::numeric_limits<double>::infinity();
    std::vector<Atom> atoms;
    // Tabulated representation (strictly increasing radii); when
    // nonempty, density is interpolation over these nodes.
    std::vector<double> grid_r;
    std::vector<double> grid_m;

    bool empty() const { return !density && atoms.empty(); }
    bool tabulated() const { return !grid_r.empty(); }
};

struct SpectralDensity {
    SpectralSide pos;
    SpectralSide neg;

    const SpectralSide& side(Side s) const { return s == Side::positive ? pos : neg; }
    SpectralSide& side(Side s) { return s == Side::positive ? pos : neg; }
    bool tabulated() const { return pos.tabulated() || neg.tabulated(); }
};

// Builds one side from tabulated (r, m) rows; r must be strictly
// increasing and positive. Linear interpolation, zero outside.
SpectralSide tabulated_side(std::vector<double> r, std::vector<double> m);

// Symmetric two-sided density from a single radial profile.
SpectralDensity symmetric_density(std::function<double(double)> m, double cutoff);

// One-sided (positive) density.
SpectralDensity one_sided_density(std::function<double(double)> m, double cutoff);

// measure{|x| > r on side}; closed form when available, quadrature
// otherwise, atoms added exactly. Throws numeric_error when the tail
// integral diverges.
double tail(const SpectralDensity& d, Side s, double r, double tol = 1e-11);
double side_tail(const SpectralSide& side, double r, double tol = 1e-11);

// Pointwise density value (0 beyond cutoff / outside table).
double density_at(const SpectralSide& side, double r);

// k-function k(r) = r * m(r) of one side.
double k_function(const SpectralSide& side, double r);

// Numerical check that min(1, x^2) integrates against the measure:
// dyadic shells toward 0 plus the tail. Throws numeric_error on
// divergence.
void check_levy_integrability(const SpectralDensity& d);

// Finite log-moment of the restriction to {|x| > 1}; integral value of
// int_{|x|>1} log(1+|x|) dM when it settles.
struct LogMomentProbe {
    bool converged = false;
    bool diverged = false;
    double value = 0.0;
};
LogMomentProbe log_moment_probe(const SpectralDensity& d);

// Measure-level exponential-integral map: output k-function equals the
// input tail, i.e. m_out(r) = Gbar(r)/r per side. Requires a finite
// log-tail on the input.
SpectralDensity spectral_map_I(const SpectralDensity& g);

// Measure-level ramp map: tail_out(r) = r * int_r^inf Gbar(w)/w^2 dw,
// density n(r) = int_r^inf g(w)/w dw (+ atom terms).
SpectralDensity spectral_map_J(const SpectralDensity& g);

// Inverse of spectral_map_I: Gbar(r) = r*m(r), g(r) = -d/dr[r*m(r)].
// Scans the k-function and throws numeric_error("input not class L...")
// when it increases.
SpectralDensity spectral_inv_I(const SpectralDensity& m);

// Inverse of spectral_map_J: Gbar(r) = Nbar(r) + r*n(r). Throws
// numeric_error("input not class U...") when the computed tail goes
// negative.
SpectralDensity spectral_inv_J(const SpectralDensity& n);

// Image of the composed ramp-then-exponential map in one step:
// tail_out(r) = int_r^inf (w-r)/w^2 Gbar(w) dw; atoms contribute
// mass * (log(x0/r) - 1 + r/x0) for r < x0, in closed form.
SpectralDensity lm_from_G(const SpectralDensity& g);

struct ResidualReport {
    std::vector<double> grid;
    std::vector<double> lhs;
    std::vector<double> rhs;
    double residual_sup = 0.0;
};

// Checks d/dr[r * m(r)] = -int_r^inf g(w)/w dw on the grid, where m is
// the lm_from_G image of g. Valid away from atoms of g.
ResidualReport dderiv_relation(const SpectralDensity& g, const SpectralDensity& m,
                               std::span<const double> r_grid);

// Superposition and dilation (image under x -> c x) of measures.
SpectralDensity spectral_add(const SpectralDensity& a, const SpectralDensity& b);
SpectralDensity spectral_dilate(const SpectralDensity& d, double c);

}  // namespace levyfactor
