#include "levyfactor/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace levyfactor {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys,
                     double x) {
    if (x < xs.front() || x > xs.back()) return 0.0;
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return ys.front();
    if (it == xs.end()) return ys.back();
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + w * (ys[hi] - ys[lo]);
}

// Probe radii used for the precondition scans of the inverse maps.
std::vector<double> probe_radii(const SpectralSide& side) {
    const double hi = std::isfinite(side.cutoff) ? side.cutoff : 40.0;
    return geometric_grid(1e-3, std::max(hi, 2e-3) * 0.999, 64);
}

}  // namespace

SpectralSide tabulated_side(std::vector<double> r, std::vector<double> m) {
    if (r.size() != m.size()) throw std::invalid_argument("tabulated_side: size mismatch");
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] > 0.0) || (i > 0 && !(r[i] > r[i - 1])))
            throw std::invalid_argument("tabulated_side: radii must be positive and strictly increasing");
        if (m[i] < 0.0)
            throw std::invalid_argument("tabulated_side: density must be nonnegative");
    }
    SpectralSide side;
    side.grid_r = std::move(r);
    side.grid_m = std::move(m);
    if (!side.grid_r.empty()) {
        side.cutoff = side.grid_r.back();
        auto xs = side.grid_r;
        auto ys = side.grid_m;
        side.density = [xs = std::move(xs), ys = std::move(ys)](double x) {
            return interp_linear(xs, ys, x);
        };
    }
    return side;
}

SpectralDensity symmetric_density(std::function<double(double)> m, double cutoff) {
    SpectralDensity d;
    d.pos.density = m;
    d.pos.cutoff = cutoff;
    d.neg.density = std::move(m);
    d.neg.cutoff = cutoff;
    return d;
}

SpectralDensity one_sided_density(std::function<double(double)> m, double cutoff) {
    SpectralDensity d;
    d.pos.density = std::move(m);
    d.pos.cutoff = cutoff;
    return d;
}

double density_at(const SpectralSide& side, double r) {
    if (!side.density || r <= 0.0 || r > side.cutoff) return 0.0;
    return side.density(r);
}

double k_function(const SpectralSide& side, double r) {
    return r * density_at(side, r);
}

double side_tail(const SpectralSide& side, double r, double tol) {
    if (!(r > 0.0)) throw std::invalid_argument("tail: radius must be positive");
    double t = 0.0;
    for (const Atom& a : side.atoms)
        if (a.position > r) t += a.mass;
    if (!side.density) return t;
    if (side.tail_fn) return t + side.tail_fn(r);
    if (r >= side.cutoff) return t;
    auto f = [&side](double w) { return density_at(side, w); };
    if (std::isfinite(side.cutoff)) return t + integrate(f, r, side.cutoff, tol).value;
    return t + integrate_to_inf(f, r, tol).value;
}

double tail(const SpectralDensity& d, Side s, double r, double tol) {
    return side_tail(d.side(s), r, tol);
}

void check_levy_integrability(const SpectralDensity& d) {
    for (Side s : {Side::positive, Side::negative}) {
        const SpectralSide& side = d.side(s);
        if (!side.density) continue;
        // Shells [2^-(k+1), 2^-k]: contributions of x^2 m(x) must decay.
        double prev = kInf;
        int bad = 0;
        for (int k = 0; k < 34; ++k) {
            const double hi = std::ldexp(1.0, -k);
            const double lo = 0.5 * hi;
            auto shell = integrate(
                [&side](double x) { return x * x * density_at(side, x); }, lo, hi, 1e-12);
            if (shell.value > prev * 1.05 + 1e-14) {
                if (++bad >= 3)
                    throw numeric_error("spectral density: min(1,x^2) moment diverges near 0");
            } else {
                bad = 0;
            }
            prev = shell.value;
            if (shell.value < 1e-15) break;
        }
        // Mass beyond 1 must be finite; side_tail throws if the panels blow up.
        (void)side_tail(side, 1.0, 1e-8);
    }
}

LogMomentProbe log_moment_probe(const SpectralDensity& d) {
    LogMomentProbe probe;
    double total = 0.0;
    bool slow = false;
    for (Side s : {Side::positive, Side::negative}) {
        const SpectralSide& side = d.side(s);
        for (const Atom& a : side.atoms)
            if (a.position > 1.0) total += a.mass * std::log1p(a.position);
        if (!side.density) continue;
        auto f = [&side](double x) { return std::log1p(x) * density_at(side, x); };
        if (std::isfinite(side.cutoff)) {
            if (side.cutoff > 1.0) total += integrate(f, 1.0, side.cutoff, 1e-11).value;
            continue;
        }
        // Doubling cutoffs: increments must decay geometrically.
        double lo = 1.0;
        double acc = 0.0;
        double prev_inc = kInf;
        bool settled = false;
        for (int k = 0; k < 48; ++k) {
            const double hi = lo * 2.0;
            const double inc = integrate(f, lo, hi, 1e-12).value;
            acc += inc;
            if (inc < 1e-13 * std::max(1.0, acc)) {
                settled = true;
                break;
            }
            if (k > 6 && inc > 0.9 * prev_inc) {
                probe.diverged = true;
                return probe;
            }
            prev_inc = inc;
            lo = hi;
        }
        if (!settled) slow = true;
        total += acc;
    }
    probe.converged = !slow;
    probe.value = total;
    return probe;
}

SpectralDensity spectral_map_I(const SpectralDensity& g) {
    auto probe = log_moment_probe(g);
    if (probe.diverged)
        throw numeric_error("spectral_map_I: input has infinite log-moment");
    SpectralDensity out;
    for (Side s : {Side::positive, Side::negative}) {
        const SpectralSide in = g.side(s);
        SpectralSide& o = out.side(s);
        if (in.empty()) continue;
        // k_out(r) = Gbar(r); an atom of mass c at x0 contributes c/r on (0, x0).
        o.density = [in](double r) { return side_tail(in, r) / r; };
        o.tail_fn = [in](double r) {
            // int_r^inf Gbar(w)/w dw, atoms folded in by side_tail.
            auto f = [&in](double w) { return side_tail(in, w) / w; };
            double hi = in.cutoff;
            for (const Atom& a : in.atoms) hi = std::max(hi, a.position);
            if (std::isfinite(hi)) {
                if (r >= hi) return 0.0;
                return integrate(f, r, hi, 1e-11).value;
            }
            return integrate_to_inf(f, r, 1e-11).value;
        };
        o.cutoff = in.cutoff;
        for (const Atom& a : in.atoms) o.cutoff = std::max(o.cutoff, a.position);
    }
    return out;
}

SpectralDensity spectral_map_J(const SpectralDensity& g) {
    SpectralDensity out;
    for (Side s : {Side::positive, Side::negative}) {
        const SpectralSide in = g.side(s);
        SpectralSide& o = out.side(s);
        if (in.empty()) continue;
        // n(r) = int_r^inf g(w)/w dw + sum_{atoms > r} mass/x0.
        o.density = [in](double r) {
            double v = 0.0;
            for (const Atom& a : in.atoms)
                if (a.position > r) v += a.mass / a.position;
            if (in.density && r < in.cutoff) {
                auto f = [&in](double w) { return density_at(in, w) / w; };
                if (std::isfinite(in.cutoff))
                    v += integrate(f, r, in.cutoff, 1e-11).value;
                else
                    v += integrate_to_inf(f, r, 1e-11).value;
            }
            return v;
        };
        o.tail_fn = [in](double r) {
            // Nbar(r) = r * int_r^inf Gbar(w)/w^2 dw.
            auto f = [&in](double w) { return side_tail(in, w) / (w * w); };
            double hi = in.cutoff;
            for (const Atom& a : in.atoms) hi = std::max(hi, a.position);
            double v;
            if (std::isfinite(hi))
                v = r >= hi ? 0.0 : integrate(f, r, hi, 1e-12).value;
            else
                v = integrate_to_inf(f, r, 1e-12).value;
            return r * v;
        };
        o.cutoff = in.cutoff;
        for (const Atom& a : in.atoms) o.cutoff = std::max(o.cutoff, a.position);
    }
    return out;
}

SpectralDensity spectral_inv_I(const SpectralDensity& m) {
    SpectralDensity out;
    for (Side s : {Side::positive, Side::negative}) {
        const SpectralSide in = m.side(s);
        SpectralSide& o = out.side(s);
        if (in.empty()) continue;
        if (!in.atoms.empty())
            throw numeric_error("spectral_inv_I: input not class L (atom in spectral measure)");
        auto kfn = [in](double r) { return r * density_at(in, r); };
        // Class L precondition: k nonincreasing.
        const auto radii = probe_radii(in);
        for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
            const double k0 = kfn(radii[i]);
            const double k1 = kfn(radii[i + 1]);
            if (k1 > k0 + 1e-9 * std::max({1.0, k0, k1})) {
                std::ostringstream msg;
                msg << "spectral_inv_I: input not class L, k-function increases near r="
                    << radii[i];
                throw numeric_error(msg.str());
            }
        }
        if (in.tabulated()) {
            // Three-point stencils on the table nodes.
            const auto& r = in.grid_r;
            std::vector<double> k(r.size());
            for (std::size_t i = 0; i < r.size(); ++i) k[i] = r[i] * in.grid_m[i];
            std::vector<double> gdens(r.size());
            for (std::size_t i = 0; i < r.size(); ++i) {
                std::size_t a = i == 0 ? 0 : i - 1;
                std::size_t c = i + 1 == r.size() ? i : i + 1;
                if (a == c) continue;
                gdens[i] = -(k[c] - k[a]) / (r[c] - r[a]);
                if (gdens[i] < 0.0) gdens[i] = 0.0;
            }
            o = tabulated_side(r, gdens);
        } else {
            o.density = [kfn](double r) {
                const double h0 = 0.05 * std::max(r, 0.05);
                auto d = ridders_derivative(kfn, r, h0);
                return std::max(0.0, -d.value);
            };
            o.tail_fn = [kfn](double r) { return kfn(r); };  // Gbar = k
            o.cutoff = in.cutoff;
        }
    }
    return out;
}

SpectralDensity spectral_inv_J(const SpectralDensity& n) {
    SpectralDensity out;
    for (Side s : {Side::positive, Side::negative}) {
        const SpectralSide in = n.side(s);
        SpectralSide& o = out.side(s);
        if (in.empty()) continue;
        auto gbar = [in](double r) { return side_tail(in, r) + r * density_at(in, r); };
        const auto radii = probe_radii(in);
        for (double r : radii) {
            const double v = gbar(r);
            if (v < -1e-9 * std::max(1.0, std::abs(v))) {
                std::ostringstream msg;
                msg << "spectral_inv_J: input not class U, computed tail negative at r=" << r;
                throw numeric_error(msg.str());
            }
        }
        o.tail_fn = gbar;
        // g = -d/dr Gbar via adaptive central differences.
        o.density = [gbar](double r) {
            const double h0 = 0.05 * std::max(r, 0.05);
            auto d = ridders_derivative(gbar, r, h0);
            return std::max(0.0, -d.value);
        };
        o.cutoff = in.cutoff;
    }
    return out;
}

SpectralDensity lm_from_G(const SpectralDensity& g) {
    auto probe = log_moment_probe(g);
    if (probe.diverged) throw numeric_error("lm_from_G: input has infinite log-moment");
    SpectralDensity out;
    for (Side s : {Side::positive, Side::negative}) {
        const SpectralSide in = g.side(s);
        SpectralSide& o = out.side(s);
        if (in.empty()) continue;
        o.tail_fn = [in](double r) {
            double v = 0.0;
            // Atom at x0: mass * (log(x0/r) - 1 + r/x0) for r < x0, exactly.
            for (const Atom& a : in.atoms) {
                if (r < a.position) {
                    const double rho = r / a.position;
                    v += a.mass * (-std::log1p(rho - 1.0) - 1.0 + rho);
                }
            }
            if (in.density && r < in.cutoff) {
                auto f = [&in, r](double w) {
                    return (w - r) / (w * w) * side_tail(in, w);
                };
                if (std::isfinite(in.cutoff))
                    v += integrate(f, r, in.cutoff, 1e-12).value;
                else
                    v += integrate_to_inf(f, r, 1e-12).value;
            } else if (!in.density) {
                // Pure-atom input beyond handled above.
            }
            return v;
        };
        // m(r) = int_r^inf Gbar(w)/w^2 dw; atoms give mass*(1/r - 1/x0)+ on (0, x0).
        o.density = [in](double r) {
            double v = 0.0;
            for (const Atom& a : in.atoms)
                if (r < a.position) v += a.mass * (1.0 / r - 1.0 / a.position);
            if (in.density && r < in.cutoff) {
                auto f = [&in](double w) { return side_tail(in, w) / (w * w); };
                if (std::isfinite(in.cutoff))
                    v += integrate(f, r, in.cutoff, 1e-12).value;
                else
                    v += integrate_to_inf(f, r, 1e-12).value;
            }
            return v;
        };
        o.cutoff = in.cutoff;
        for (const Atom& a : in.atoms) o.cutoff = std::max(o.cutoff, a.position);
    }
    return out;
}

ResidualReport dderiv_relation(const SpectralDensity& g, const SpectralDensity& m,
                               std::span<const double> r_grid) {
    ResidualReport rep;
    rep.grid.assign(r_grid.begin(), r_grid.end());
    rep.lhs.resize(r_grid.size());
    rep.rhs.resize(r_grid.size());
    const SpectralSide& gp = g.pos;
    const SpectralSide& mp = m.pos;
    auto kfn = [&mp](double r) { return r * density_at(mp, r); };
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        const double r = r_grid[i];
        auto d = ridders_derivative(kfn, r, 0.05 * std::max(r, 0.05));
        rep.lhs[i] = d.value;
        double rhs = 0.0;
        for (const Atom& a : gp.atoms)
            if (a.position > r) rhs += a.mass / a.position;
        if (gp.density && r < gp.cutoff) {
            auto f = [&gp](double w) { return density_at(gp, w) / w; };
            if (std::isfinite(gp.cutoff))
                rhs += integrate(f, r, gp.cutoff, 1e-12).value;
            else
                rhs += integrate_to_inf(f, r, 1e-12).value;
        }
        rep.rhs[i] = -rhs;
        rep.residual_sup = std::max(rep.residual_sup, std::abs(rep.lhs[i] - rep.rhs[i]));
    }
    return rep;
}

namespace {

SpectralSide add_sides(const SpectralSide& a, const SpectralSide& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    SpectralSide out;
    out.density = [a, b](double r) { return density_at(a, r) + density_at(b, r); };
    if ((a.tail_fn || !a.density) && (b.tail_fn || !b.density)) {
        out.tail_fn = [a, b](double r) {
            double v = 0.0;
            if (a.tail_fn) v += a.tail_fn(r);
            if (b.tail_fn) v += b.tail_fn(r);
            return v;
        };
    }
    out.cutoff = std::max(a.cutoff, b.cutoff);
    out.atoms = a.atoms;
    out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
    return out;
}

SpectralSide dilate_side(const SpectralSide& in, double c) {
    if (in.empty()) return in;
    SpectralSide out;
    if (in.density)
        out.density = [in, c](double r) { return density_at(in, r / c) / c; };
    if (in.tail_fn)
        out.tail_fn = [in, c](double r) { return in.tail_fn(r / c); };
    out.cutoff = in.cutoff * c;
    for (const Atom& a : in.atoms) out.atoms.push_back({a.position * c, a.mass});
    if (in.tabulated()) {
        std::vector<double> r = in.grid_r;
        std::vector<double> m = in.grid_m;
        for (auto& x : r) x *= c;
        for (auto& y : m) y /= c;
        out = tabulated_side(std::move(r), std::move(m));
        for (const Atom& a : in.atoms) out.atoms.push_back({a.position * c, a.mass});
    }
    return out;
}

}  // namespace

SpectralDensity spectral_add(const SpectralDensity& a, const SpectralDensity& b) {
    SpectralDensity out;
    out.pos = add_sides(a.pos, b.pos);
    out.neg = add_sides(a.neg, b.neg);
    return out;
}

SpectralDensity spectral_dilate(const SpectralDensity& d, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("spectral_dilate: c must be positive");
    SpectralDensity out;
    out.pos = dilate_side(d.pos, c);
    out.neg = dilate_side(d.neg, c);
    return out;
}

}  // namespace levyfactor
