#include "levyfactor/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace levyfactor {

namespace {

// e^{iu} - 1 - iu without cancellation for small u.
cdouble expi_m1_mi(double u) {
    const double s = std::sin(0.5 * u);
    const double re = -2.0 * s * s;  // cos u - 1
    double im;                       // sin u - u
    if (std::abs(u) < 1e-3) {
        const double u2 = u * u;
        im = -u * u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0));
    } else {
        im = std::sin(u) - u;
    }
    return {re, im};
}

// e^{iu} - 1, cancellation-safe.
cdouble expi_m1(double u) {
    const double s = std::sin(0.5 * u);
    return {-2.0 * s * s, std::sin(u)};
}

// One side's contribution to the Levy-Khintchine integral; sign is +1
// for jumps on the positive axis, -1 for the mirrored side.
cdouble side_integral(const SpectralSide& side, double t, double sign, double tol) {
    if (side.empty()) return {};
    cdouble acc{};
    for (const Atom& a : side.atoms) {
        const double u = sign * t * a.position;
        if (a.position <= 1.0)
            acc += a.mass * expi_m1_mi(u);
        else
            acc += a.mass * expi_m1(u);
    }
    if (!side.density) return acc;

    const double inner_hi = std::min(1.0, side.cutoff);
    auto inner = [&](double x) -> cdouble {
        return expi_m1_mi(sign * t * x) * density_at(side, x);
    };
    // [0,1]: integrand is bounded whenever x^2 m(x) is; start a hair
    // above zero to dodge a 0*inf at the origin.
    auto in = integrate_c(inner, 1e-14, inner_hi, tol * 0.5);
    acc += in.value;

    if (side.cutoff > 1.0) {
        auto outer = [&](double x) -> cdouble {
            return expi_m1(sign * t * x) * density_at(side, x);
        };
        if (std::isfinite(side.cutoff)) {
            acc += integrate_c(outer, 1.0, side.cutoff, tol * 0.5).value;
        } else {
            // Truncate where the remaining mass is negligible; the cut
            // tail contributes -Mbar(R) plus an oscillatory remainder
            // bounded by 2 m(R)/|t|.
            double hi = 2.0;
            while (hi < 1e9) {
                const double mass_beyond = side_tail(side, hi, tol);
                const double osc = std::abs(t) > 1e-12
                                       ? 2.0 * density_at(side, hi) / std::abs(t)
                                       : 0.0;
                if (mass_beyond < tol && osc < tol) break;
                if (std::abs(t) > 1e-12 && mass_beyond < 1e3 * tol && osc < tol) break;
                hi *= 2.0;
            }
            acc += integrate_c(outer, 1.0, hi, tol * 0.5).value;
            acc += -side_tail(side, hi, tol);
        }
    }
    return acc;
}

}  // namespace

LevyExponent closed_form_exponent(std::string name, std::function<cdouble(double)> phi,
                                  Tristate log_moment) {
    LevyExponent e;
    e.phi = std::move(phi);
    e.kind = ExponentKind::closed_form;
    e.name = std::move(name);
    e.has_log_moment = log_moment;
    return e;
}

LevyExponent exponent_from_triple(const Triple& tr, double tol) {
    if (tr.gaussian_var < 0.0)
        throw std::invalid_argument("exponent_from_triple: gaussian variance must be >= 0");
    if (tr.spectral) check_levy_integrability(*tr.spectral);

    const double a = tr.shift;
    const double var = tr.gaussian_var;
    std::optional<SpectralDensity> spec = tr.spectral;
    LevyExponent e;
    e.kind = spec ? ExponentKind::spectral_backed : ExponentKind::closed_form;
    e.name = "from_triple";
    e.phi = [a, var, spec, tol](double t) -> cdouble {
        cdouble v{-0.5 * var * t * t, a * t};
        if (spec) {
            v += side_integral(spec->pos, t, +1.0, tol);
            v += side_integral(spec->neg, t, -1.0, tol);
        }
        return v;
    };
    return e;
}

LevyExponent exponent_add(const LevyExponent& p, const LevyExponent& q) {
    LevyExponent e;
    e.phi = [pf = p.phi, qf = q.phi](double t) { return pf(t) + qf(t); };
    e.kind = (p.kind == ExponentKind::closed_form && q.kind == ExponentKind::closed_form)
                 ? ExponentKind::closed_form
                 : ExponentKind::quadrature_backed;
    e.name = p.name.empty() || q.name.empty() ? std::string{} : p.name + "+" + q.name;
    if (p.has_log_moment == Tristate::yes && q.has_log_moment == Tristate::yes)
        e.has_log_moment = Tristate::yes;
    else if (p.has_log_moment == Tristate::no || q.has_log_moment == Tristate::no)
        e.has_log_moment = Tristate::no;
    return e;
}

LevyExponent exponent_dilate(const LevyExponent& p, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("exponent_dilate: c must be positive");
    LevyExponent e = p;
    e.phi = [pf = p.phi, c](double t) { return pf(c * t); };
    return e;
}

SampledExponent eval_distinguished_log(const std::function<cdouble(double)>& cf,
                                       std::span<const double> grid) {
    if (grid.size() < 2 || std::abs(grid[0]) > 1e-14)
        throw std::invalid_argument("eval_distinguished_log: grid must start at 0");
    SampledExponent out;
    out.t.assign(grid.begin(), grid.end());
    out.log_cf.resize(grid.size());
    double arg_acc = 0.0;
    cdouble prev{1.0, 0.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cdouble w = i == 0 ? cdouble{1.0, 0.0} : cf(grid[i]);
        const double mag = std::abs(w);
        if (!(mag > 0.0) || !std::isfinite(mag))
            throw numeric_error("distinguished log: characteristic function vanishes on the path");
        if (i > 0) {
            const double step = std::arg(w / prev);
            if (std::abs(step) >= std::numbers::pi * 0.999)
                throw numeric_error("distinguished log: grid too coarse (argument jump >= pi)");
            arg_acc += step;
        }
        out.log_cf[i] = {std::log(mag), arg_acc};
        prev = w;
    }
    return out;
}

LevyExponent SampledExponent::to_exponent() const {
    LevyExponent e;
    e.kind = ExponentKind::quadrature_backed;
    e.name = "sampled";
    e.phi = [t = t, v = log_cf](double x) -> cdouble {
        const double ax = std::abs(x);
        if (ax > t.back()) throw std::out_of_range("sampled exponent: outside sampled range");
        auto it = std::upper_bound(t.begin(), t.end(), ax);
        cdouble val;
        if (it == t.end()) {
            val = v.back();
        } else {
            const std::size_t hi = static_cast<std::size_t>(it - t.begin());
            const std::size_t lo = hi == 0 ? 0 : hi - 1;
            if (hi == lo) {
                val = v[lo];
            } else {
                const double w = (ax - t[lo]) / (t[hi] - t[lo]);
                val = v[lo] + w * (v[hi] - v[lo]);
            }
        }
        return x < 0.0 ? std::conj(val) : val;
    };
    return e;
}

LinearFit fit_linear_term(const LevyExponent& p, const LevyExponent& q,
                          std::span<const double> grid) {
    // Least-squares slope of Im(p - q) against t.
    double num = 0.0, den = 0.0;
    std::vector<cdouble> diff(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        diff[i] = p(grid[i]) - q(grid[i]);
        num += grid[i] * diff[i].imag();
        den += grid[i] * grid[i];
    }
    LinearFit fit;
    fit.delta = den > 0.0 ? num / den : 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cdouble res = diff[i] - cdouble{0.0, fit.delta * grid[i]};
        fit.residual_sup = std::max(fit.residual_sup, std::abs(res));
    }
    return fit;
}

}  // namespace levyfactor
