#include "levyfactor/integral_maps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace levyfactor {

namespace {

void require_log_moment(const LevyExponent& psi, const char* who) {
    if (psi.has_log_moment == Tristate::no) {
        std::ostringstream msg;
        msg << who << ": input law has no finite log-moment";
        throw numeric_error(msg.str());
    }
}

// Truncation point for int_0^inf psi(e^{-s} t) ds: first s where the
// integrand is negligible relative to its size at s = 0.
double find_truncation(const std::function<cdouble(double)>& phi, double t,
                       const MapOptions& opts, const char* who) {
    const double scale = std::max(1.0, std::abs(phi(t)));
    const double floor = opts.tail_tol * scale;
    double s = 1.0;
    double prev = std::abs(phi(std::exp(-s) * t));
    if (prev <= floor) return s;
    while (s < opts.s_max) {
        const double s_next = s * 1.5;
        const double cur = std::abs(phi(std::exp(-s_next) * t));
        if (cur <= floor) return s_next;
        // No visible decay over a 1.5x stretch this deep in: suspect a
        // missing log-moment rather than a slow exponential.
        if (s_next > 64.0 && cur > 0.75 * prev) {
            std::ostringstream msg;
            msg << who << ": integrand still " << cur << " at s=" << s_next
                << "; log-moment violation suspected";
            throw numeric_error(msg.str());
        }
        prev = cur;
        s = s_next;
    }
    std::ostringstream msg;
    msg << who << ": tail integral still growing at s_max=" << opts.s_max
        << "; log-moment violation suspected";
    throw numeric_error(msg.str());
}

QuadResult<cdouble> map_I_impl(const std::function<cdouble(double)>& phi, double t,
                               const MapOptions& opts, const char* who) {
    if (std::abs(t) < 1e-300) return {cdouble{}, 0.0};
    const double S = find_truncation(phi, t, opts, who);
    auto integrand = [&phi, t](double s) { return phi(std::exp(-s) * t); };
    auto res = integrate_c(integrand, 0.0, S, opts.tol);
    // Remaining tail is below tail_tol * scale per unit length with at
    // least geometric decay; fold a conservative bound into the error.
    res.error += 2.0 * opts.tail_tol * std::max(1.0, std::abs(phi(t)));
    return res;
}

// Dilation step for derivatives at t: relative step `base` in the
// dilation factor, widened so the absolute displacement of the
// argument never drops below base.
double dilation_step(double t, double base) {
    const double at = std::abs(t);
    return std::min(0.25, base * std::max(1.0, 1.0 / at));
}

QuadResult<cdouble> dilation_derivative(const std::function<cdouble(double)>& phi,
                                        double t, double base) {
    if (std::abs(t) < 1e-300) return {cdouble{}, 0.0};
    const double h = dilation_step(t, base);
    auto central = [&](double step) {
        return (phi((1.0 + step) * t) - phi((1.0 - step) * t)) / (2.0 * step);
    };
    const cdouble d1 = central(h);
    const cdouble d2 = central(0.5 * h);
    const cdouble extrap = (4.0 * d2 - d1) / 3.0;
    return {extrap, std::abs(d2 - d1) / 3.0};
}

QuadResult<cdouble> dilation_second_derivative(const std::function<cdouble(double)>& phi,
                                               double t, double base) {
    if (std::abs(t) < 1e-300) return {cdouble{}, 0.0};
    const double h = dilation_step(t, base);
    const cdouble mid = phi(t);
    auto second = [&](double step) {
        return (phi((1.0 + step) * t) - 2.0 * mid + phi((1.0 - step) * t)) /
               (step * step);
    };
    const cdouble d1 = second(h);
    const cdouble d2 = second(0.5 * h);
    const cdouble extrap = (4.0 * d2 - d1) / 3.0;
    return {extrap, std::abs(d2 - d1) / 3.0};
}

void check_derivative(const QuadResult<cdouble>& d, const char* who) {
    if (d.error > 1e-2 * std::max(1.0, std::abs(d.value))) {
        std::ostringstream msg;
        msg << who << ": differentiation failed to settle (residual estimate "
            << d.error << ")";
        throw numeric_error(msg.str());
    }
}

}  // namespace

QuadResult<cdouble> map_I_value(const LevyExponent& psi, double t, MapOptions opts) {
    require_log_moment(psi, "map_I");
    return map_I_impl(psi.phi, t, opts, "map_I");
}

LevyExponent map_I(const LevyExponent& psi, MapOptions opts) {
    require_log_moment(psi, "map_I");
    LevyExponent e;
    e.kind = ExponentKind::quadrature_backed;
    e.name = psi.name.empty() ? std::string{} : "I(" + psi.name + ")";
    e.phi = [f = psi.phi, opts](double t) { return map_I_impl(f, t, opts, "map_I").value; };
    return e;
}

QuadResult<cdouble> map_J_value(const LevyExponent& psi, double t, MapOptions opts) {
    if (std::abs(t) < 1e-300) return {cdouble{}, 0.0};
    auto integrand = [&psi, t](double s) { return psi.phi(s * t); };
    return integrate_c(integrand, 0.0, 1.0, opts.tol);
}

LevyExponent map_J(const LevyExponent& psi, MapOptions opts) {
    LevyExponent e;
    e.kind = ExponentKind::quadrature_backed;
    e.name = psi.name.empty() ? std::string{} : "J(" + psi.name + ")";
    e.has_log_moment = psi.has_log_moment;  // ramp only shrinks the law
    e.phi = [f = psi.phi, opts](double t) -> cdouble {
        if (std::abs(t) < 1e-300) return {};
        auto integrand = [&f, t](double s) { return f(s * t); };
        return integrate_c(integrand, 0.0, 1.0, opts.tol).value;
    };
    return e;
}

QuadResult<cdouble> inv_I_value(const LevyExponent& phi, double t) {
    auto d = dilation_derivative(phi.phi, t, 1e-4);
    check_derivative(d, "inv_I");
    return d;
}

LevyExponent inv_I(const LevyExponent& phi) {
    LevyExponent e;
    e.kind = ExponentKind::quadrature_backed;
    e.name = phi.name.empty() ? std::string{} : "invI(" + phi.name + ")";
    e.phi = [f = phi.phi](double t) {
        auto d = dilation_derivative(f, t, 1e-4);
        check_derivative(d, "inv_I");
        return d.value;
    };
    return e;
}

QuadResult<cdouble> inv_J_value(const LevyExponent& phi, double t) {
    auto d = dilation_derivative(phi.phi, t, 1e-4);
    check_derivative(d, "inv_J");
    return {phi.phi(t) + d.value, d.error};
}

LevyExponent inv_J(const LevyExponent& phi) {
    LevyExponent e;
    e.kind = ExponentKind::quadrature_backed;
    e.name = phi.name.empty() ? std::string{} : "invJ(" + phi.name + ")";
    e.phi = [f = phi.phi](double t) {
        auto d = dilation_derivative(f, t, 1e-4);
        check_derivative(d, "inv_J");
        return f(t) + d.value;
    };
    return e;
}

QuadResult<cdouble> inv_JI_value(const LevyExponent& phi, double t) {
    // Wider step than the first derivative: the second difference
    // divides by h^2, so h = 1e-4 would drown in roundoff.
    auto d1 = dilation_derivative(phi.phi, t, 5e-3);
    auto d2 = dilation_second_derivative(phi.phi, t, 5e-3);
    check_derivative(d1, "inv_JI");
    check_derivative(d2, "inv_JI");
    return {2.0 * d1.value + d2.value, 2.0 * d1.error + d2.error};
}

LevyExponent inv_JI(const LevyExponent& phi) {
    LevyExponent e;
    e.kind = ExponentKind::quadrature_backed;
    e.name = phi.name.empty() ? std::string{} : "invJI(" + phi.name + ")";
    e.phi = [f = phi.phi](double t) {
        LevyExponent tmp;
        tmp.phi = f;
        return inv_JI_value(tmp, t).value;
    };
    return e;
}

QuadResult<cdouble> lf_characteristic_value(const LevyExponent& psi, double t,
                                            MapOptions opts) {
    require_log_moment(psi, "lf_characteristic");
    if (std::abs(t) < 1e-300) return {cdouble{}, 0.0};
    // After w = e^{-tau} the double integral becomes
    // int_0^inf e^{tau} H(e^{-tau}) dtau with H(w) = int_0^w psi(u t) du.
    auto inner = [&psi, t, &opts](double w) {
        auto f = [&psi, t](double u) { return psi.phi(u * t); };
        return integrate_c(f, 0.0, w, opts.tol * 0.1).value;
    };
    auto outer_integrand = [&inner](double tau) {
        return std::exp(tau) * inner(std::exp(-tau));
    };
    // Truncate like the exponential map: the integrand inherits the
    // decay of psi near 0.
    const double scale = std::max(1.0, std::abs(outer_integrand(0.0)));
    double S = 1.0;
    while (S < opts.s_max && std::abs(outer_integrand(S)) > opts.tail_tol * scale)
        S *= 1.5;
    if (S >= opts.s_max)
        throw numeric_error("lf_characteristic: tail did not decay; log-moment violation suspected");
    auto res = integrate_c(outer_integrand, 0.0, S, opts.tol);
    res.error += 2.0 * opts.tail_tol * scale;
    return res;
}

LevyExponent lf_characteristic(const LevyExponent& psi, MapOptions opts) {
    require_log_moment(psi, "lf_characteristic");
    LevyExponent e;
    e.kind = ExponentKind::quadrature_backed;
    e.name = psi.name.empty() ? std::string{} : "lf(" + psi.name + ")";
    e.phi = [p = psi, opts](double t) { return lf_characteristic_value(p, t, opts).value; };
    return e;
}

LevyExponent iterate_I(const LevyExponent& psi, int n, MapOptions opts) {
    if (n < 1) throw std::invalid_argument("iterate_I: n must be >= 1");
    require_log_moment(psi, "iterate_I");
    LevyExponent cur = psi;
    for (int stage = 1; stage <= n; ++stage) {
        LevyExponent next;
        next.kind = ExponentKind::quadrature_backed;
        next.name = cur.name.empty() ? std::string{} : "I(" + cur.name + ")";
        next.has_log_moment = psi.has_log_moment;
        next.phi = [f = cur.phi, opts, stage](double t) -> cdouble {
            try {
                return map_I_impl(f, t, opts, "iterate_I").value;
            } catch (const numeric_error& err) {
                std::ostringstream msg;
                msg << "iterate_I stage " << stage << ": " << err.what();
                throw numeric_error(msg.str());
            }
        };
        cur = std::move(next);
    }
    return cur;
}

FactorizationReport verify_factorization(const LevyExponent& rho,
                                         std::span<const double> grid,
                                         double tol, MapOptions opts) {
    require_log_moment(rho, "verify_factorization");
    FactorizationReport rep;
    rep.grid.assign(grid.begin(), grid.end());
    rep.lhs.resize(grid.size());
    rep.rhs.resize(grid.size());
    LevyExponent nu = map_J(rho, opts);
    nu.has_log_moment = rho.has_log_moment;
    // The truncation point at the largest |t| bounds the one needed at
    // every smaller |t|; scanning once saves a probe pass per point.
    double t_max = 0.0;
    for (double t : grid) t_max = std::max(t_max, std::abs(t));
    if (t_max == 0.0) t_max = 1.0;
    const double s_nu = find_truncation(nu.phi, t_max, opts, "verify_factorization");
    const double s_rho = find_truncation(rho.phi, t_max, opts, "verify_factorization");
    std::vector<double> errs(grid.size(), 0.0);
    parallel_for(grid.size(), [&](std::size_t i) {
        const double t = rep.grid[i];
        auto lhs_int = integrate_c(
            [&nu, t](double s) { return nu.phi(std::exp(-s) * t); }, 0.0, s_nu, opts.tol);
        auto rhs_int = integrate_c(
            [&rho, t](double s) { return rho.phi(std::exp(-s) * t); }, 0.0, s_rho,
            opts.tol);
        rep.lhs[i] = lhs_int.value + nu.phi(t);
        rep.rhs[i] = rhs_int.value;
        errs[i] = lhs_int.error + rhs_int.error;
    });
    for (std::size_t i = 0; i < grid.size(); ++i) {
        rep.residual_sup = std::max(rep.residual_sup, std::abs(rep.lhs[i] - rep.rhs[i]));
        rep.error_estimate = std::max(rep.error_estimate, errs[i]);
    }
    rep.verdict = rep.residual_sup < tol;
    rep.inconclusive = !rep.verdict && rep.residual_sup <= 10.0 * rep.error_estimate;
    return rep;
}

const std::vector<double>& verification_grid() {
    static const std::vector<double> g = make_grid(-20.0, 20.0, 401);
    return g;
}

}  // namespace levyfactor
