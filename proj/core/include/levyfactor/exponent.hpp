// Levy exponents of infinitely divisible laws on the real line:
// immutable function objects t -> Phi(t) with Phi(0) = 0, hermitian
// symmetry and Re Phi <= 0, plus the exact algebra (sums, dilations)
// and the continuous-branch logarithm of a raw characteristic function.
#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "levyfactor/numerics.hpp"
#include "levyfactor/spectral.hpp"

namespace levyfactor {

enum class Tristate { yes, no, unknown };

enum class ExponentKind { closed_form, quadrature_backed, spectral_backed };

struct LevyExponent {
    std::function<cdouble(double)> phi;
    ExponentKind kind = ExponentKind::closed_form;
    std::string name;
    Tristate has_log_moment = Tristate::unknown;

    cdouble operator()(double t) const { return phi(t); }
};

LevyExponent closed_form_exponent(std::string name, std::function<cdouble(double)> phi,
                                  Tristate log_moment = Tristate::unknown);

// Generating triple: shift a, Gaussian variance sigma^2, spectral measure.
struct Triple {
    double shift = 0.0;
    double gaussian_var = 0.0;
    std::optional<SpectralDensity> spectral;
};

// Phi(t) = i a t - sigma^2 t^2 / 2
//        + int (e^{itx} - 1 - itx 1_{|x|<=1}) dM(x), by quadrature over
// the spectral support. Rejects measures whose min(1,x^2) moment
// diverges.
LevyExponent exponent_from_triple(const Triple& tr, double tol = 1e-10);

// Pointwise sum (convolution of the laws). Log-moment flag is yes only
// when both inputs are yes, no when either is no.
LevyExponent exponent_add(const LevyExponent& p, const LevyExponent& q);

// Dilation at exponent level: result(t) = p(c t), c > 0.
LevyExponent exponent_dilate(const LevyExponent& p, double c);

// Continuous branch of log cf along the grid from 0 (cf(0) must be 1,
// grid must start at 0 and be fine enough that consecutive values stay
// within an argument half-turn).
struct SampledExponent {
    std::vector<double> t;
    std::vector<cdouble> log_cf;

    // Interpolating exponent (linear between nodes, hermitian across 0).
    LevyExponent to_exponent() const;
};

SampledExponent eval_distinguished_log(const std::function<cdouble(double)>& cf,
                                       std::span<const double> grid);

// Fits delta minimizing |p - q - i t delta| over the grid and reports
// the remaining sup-residual; used to compare exponents that differ by
// a compensator recentering.
struct LinearFit {
    double delta = 0.0;
    double residual_sup = 0.0;
};
LinearFit fit_linear_term(const LevyExponent& p, const LevyExponent& q,
                          std::span<const double> grid);

}  // namespace levyfactor
