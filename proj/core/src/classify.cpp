#include "levyfactor/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace levyfactor {

namespace {

struct SideCheck {
    Verdict verdict = Verdict::member;
    std::vector<Witness> witnesses;
};

double sign_of(Side s) { return s == Side::positive ? 1.0 : -1.0; }

std::vector<double> probe_grid_for(const SpectralSide& side, const ClassifyOptions& opts) {
    if (side.tabulated()) return side.grid_r;
    double hi = std::isfinite(side.cutoff) ? side.cutoff : opts.probe_hi;
    hi = std::min(hi, opts.probe_hi);
    const double lo = std::min(opts.probe_lo, hi / 100.0);
    return geometric_grid(lo, hi * 0.9999, opts.probe_points);
}

// Nonincreasing check on sampled values; violations measured relative
// to the local value scale.
SideCheck check_nonincreasing(std::span<const double> r, std::span<const double> v,
                              Side side, const char* label, double tol, double band) {
    SideCheck out;
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    if (vmax == 0.0) return out;
    const double floor = vmax * 1e-12;
    Witness last_violation;
    bool have_last = false;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double scale = std::max({std::abs(v[i]), std::abs(v[i + 1]), floor});
        const double rel = (v[i + 1] - v[i]) / scale;
        if (rel <= tol) continue;
        Witness w{sign_of(side) * 0.5 * (r[i] + r[i + 1]), label, rel};
        if (rel >= band * tol) {
            out.verdict = Verdict::non_member;
            if (out.witnesses.size() < 8) out.witnesses.push_back(w);
            last_violation = w;
            have_last = true;
        } else if (out.verdict == Verdict::member) {
            out.verdict = Verdict::inconclusive;
        }
    }
    if (have_last &&
        (out.witnesses.empty() || out.witnesses.back().x != last_violation.x))
        out.witnesses.push_back(last_violation);
    return out;
}

// Convexity via slopes of consecutive chords: convex iff slopes are
// nondecreasing.
SideCheck check_convex(std::span<const double> r, std::span<const double> v, Side side,
                       const char* label, double tol, double band) {
    SideCheck out;
    if (r.size() < 3) return out;
    std::vector<double> slope(r.size() - 1);
    double smax = 0.0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        slope[i] = (v[i + 1] - v[i]) / (r[i + 1] - r[i]);
        smax = std::max(smax, std::abs(slope[i]));
    }
    if (smax == 0.0) return out;
    const double floor = smax * 1e-9;
    Witness last_violation;
    bool have_last = false;
    for (std::size_t i = 0; i + 1 < slope.size(); ++i) {
        const double scale = std::max({std::abs(slope[i]), std::abs(slope[i + 1]), floor});
        const double rel = (slope[i] - slope[i + 1]) / scale;
        if (rel <= tol) continue;
        Witness w{sign_of(side) * r[i + 1], label, rel};
        if (rel >= band * tol) {
            out.verdict = Verdict::non_member;
            if (out.witnesses.size() < 8) out.witnesses.push_back(w);
            last_violation = w;
            have_last = true;
        } else if (out.verdict == Verdict::member) {
            out.verdict = Verdict::inconclusive;
        }
    }
    if (have_last &&
        (out.witnesses.empty() || out.witnesses.back().x != last_violation.x))
        out.witnesses.push_back(last_violation);
    return out;
}

void merge(ClassificationReport& rep, const SideCheck& chk) {
    if (chk.verdict == Verdict::non_member)
        rep.verdict = Verdict::non_member;
    else if (chk.verdict == Verdict::inconclusive && rep.verdict == Verdict::member)
        rep.verdict = Verdict::inconclusive;
    rep.witnesses.insert(rep.witnesses.end(), chk.witnesses.begin(), chk.witnesses.end());
}

bool sparse_table(const SpectralSide& side) {
    return side.tabulated() && side.grid_r.size() < 8;
}

// Atoms in the spectral measure break concavity of the tail outright.
bool flag_atoms(const SpectralSide& side, Side s, ClassificationReport& rep) {
    if (side.atoms.empty()) return false;
    rep.verdict = Verdict::non_member;
    for (const Atom& a : side.atoms)
        rep.witnesses.push_back({sign_of(s) * a.position, "atom (tail has a jump)", a.mass});
    return true;
}

using StageFn = std::function<double(double)>;

// k-functions of the successive pullbacks through the exponential map:
// k_0(r) = r m(r), k_{j+1}(r) = -r k_j'(r). Closed-form inputs get
// adaptive central differences; tabulated inputs use three-point
// stencils on their own nodes.
std::vector<std::vector<double>> stage_k_values(const SpectralSide& side,
                                                std::span<const double> r, int stages) {
    std::vector<std::vector<double>> out;
    if (side.tabulated()) {
        std::vector<double> k(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) k[i] = r[i] * side.grid_m[i];
        out.push_back(k);
        for (int j = 1; j <= stages; ++j) {
            const auto& prev = out.back();
            std::vector<double> next(r.size(), 0.0);
            for (std::size_t i = 0; i < r.size(); ++i) {
                const std::size_t a = i == 0 ? 0 : i - 1;
                const std::size_t c = i + 1 == r.size() ? i : i + 1;
                if (a == c) continue;
                next[i] = -r[i] * (prev[c] - prev[a]) / (r[c] - r[a]);
            }
            out.push_back(std::move(next));
        }
        return out;
    }
    StageFn k0 = [side](double x) { return x * density_at(side, x); };
    std::vector<StageFn> fns{k0};
    for (int j = 1; j <= stages; ++j) {
        StageFn prev = fns.back();
        fns.push_back([prev](double x) {
            auto d = ridders_derivative(prev, x, 0.05 * std::max(x, 0.05));
            return -x * d.value;
        });
    }
    for (int j = 0; j <= stages; ++j) {
        std::vector<double> vals(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) vals[i] = fns[static_cast<std::size_t>(j)](r[i]);
        out.push_back(std::move(vals));
    }
    return out;
}

// Each numerical differentiation widens the band of indistinguishable
// slopes; stage tolerances grow accordingly.
double stage_tolerance(double base, int stage) {
    double t = base;
    for (int j = 0; j < stage; ++j) t *= 100.0;
    return std::min(t, 1e-3);
}

ClassificationReport classify_filtration(const SpectralDensity& d, int n,
                                         bool factorization, ClassifyOptions opts) {
    ClassificationReport rep;
    rep.class_tested = factorization ? DistClass::Lnf : DistClass::Ln;
    rep.n = n;
    rep.verdict = Verdict::member;
    rep.tolerance = opts.tolerance;
    if (n < 0) throw std::invalid_argument("classify_Ln: n must be >= 0");
    for (Side s : {Side::positive, Side::negative}) {
        const SpectralSide& side = d.side(s);
        if (side.empty()) continue;
        if (flag_atoms(side, s, rep)) {
            rep.failure_stage = 0;
            continue;
        }
        if (sparse_table(side)) {
            rep.verdict = Verdict::inconclusive;
            rep.note = "grid too sparse (< 8 points per side)";
            continue;
        }
        const auto r = probe_grid_for(side, opts);
        const auto ks = stage_k_values(side, r, n);
        for (int j = 0; j <= n; ++j) {
            const double tol_j = stage_tolerance(opts.tolerance, j);
            auto chk = check_nonincreasing(r, ks[static_cast<std::size_t>(j)], s,
                                           "k-function increases", tol_j, opts.band);
            // Implied density >= 0: k_j must stay nonnegative.
            for (std::size_t i = 0; i < r.size(); ++i) {
                const double v = ks[static_cast<std::size_t>(j)][i];
                if (v < -opts.band * tol_j * std::max(1.0, std::abs(v))) {
                    chk.verdict = Verdict::non_member;
                    chk.witnesses.push_back({sign_of(s) * r[i], "implied density negative", -v});
                    break;
                }
            }
            if (chk.verdict != Verdict::member) {
                merge(rep, chk);
                if (rep.failure_stage < 0 || j < rep.failure_stage) rep.failure_stage = j;
                break;  // deeper stages differentiate noise only
            }
        }
        if (factorization && rep.verdict == Verdict::member) {
            const double tol_n = stage_tolerance(opts.tolerance, n);
            auto chk = check_convex(r, ks[static_cast<std::size_t>(n)], s,
                                    "k-function not convex", tol_n, opts.band);
            if (chk.verdict != Verdict::member) {
                merge(rep, chk);
                rep.failure_stage = n;
            }
        }
    }
    return rep;
}

}  // namespace

ClassificationReport classify_L(const SpectralDensity& d, ClassifyOptions opts) {
    ClassificationReport rep;
    rep.class_tested = DistClass::L;
    rep.verdict = Verdict::member;
    rep.tolerance = opts.tolerance;
    for (Side s : {Side::positive, Side::negative}) {
        const SpectralSide& side = d.side(s);
        if (side.empty()) continue;
        if (flag_atoms(side, s, rep)) continue;
        if (sparse_table(side)) {
            rep.verdict = Verdict::inconclusive;
            rep.note = "grid too sparse (< 8 points per side)";
            continue;
        }
        const auto r = probe_grid_for(side, opts);
        std::vector<double> k(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) k[i] = k_function(side, r[i]);
        merge(rep, check_nonincreasing(r, k, s, "k-function increases", opts.tolerance,
                                       opts.band));
    }
    return rep;
}

ClassificationReport classify_U(const SpectralDensity& d, ClassifyOptions opts) {
    ClassificationReport rep;
    rep.class_tested = DistClass::U;
    rep.verdict = Verdict::member;
    rep.tolerance = opts.tolerance;
    for (Side s : {Side::positive, Side::negative}) {
        const SpectralSide& side = d.side(s);
        if (side.empty()) continue;
        if (flag_atoms(side, s, rep)) continue;
        if (sparse_table(side)) {
            rep.verdict = Verdict::inconclusive;
            rep.note = "grid too sparse (< 8 points per side)";
            continue;
        }
        const auto r = probe_grid_for(side, opts);
        std::vector<double> m(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) m[i] = density_at(side, r[i]);
        merge(rep, check_nonincreasing(r, m, s, "density increases", opts.tolerance,
                                       opts.band));
    }
    return rep;
}

ClassificationReport classify_Lf(const SpectralDensity& d, ClassifyOptions opts) {
    ClassificationReport rep;
    rep.class_tested = DistClass::Lf;
    rep.verdict = Verdict::member;
    rep.tolerance = opts.tolerance;
    for (Side s : {Side::positive, Side::negative}) {
        const SpectralSide& side = d.side(s);
        if (side.empty()) continue;
        if (flag_atoms(side, s, rep)) continue;
        if (sparse_table(side)) {
            rep.verdict = Verdict::inconclusive;
            rep.note = "grid too sparse (< 8 points per side)";
            continue;
        }
        const auto r = probe_grid_for(side, opts);
        std::vector<double> k(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) k[i] = k_function(side, r[i]);
        merge(rep, check_nonincreasing(r, k, s, "k-function increases", opts.tolerance,
                                       opts.band));
        merge(rep, check_convex(r, k, s, "k-function not convex", opts.tolerance,
                                opts.band));
    }
    return rep;
}

ClassificationReport classify_Lf_c3(const std::function<double(double)>& lm_second_deriv,
                                    Side side, std::span<const double> grid,
                                    ClassifyOptions opts) {
    ClassificationReport rep;
    rep.class_tested = DistClass::Lf;
    rep.verdict = Verdict::member;
    rep.tolerance = opts.tolerance;
    rep.note = "second-derivative form";
    if (grid.size() < 8) {
        rep.verdict = Verdict::inconclusive;
        rep.note = "grid too sparse (< 8 points per side)";
        return rep;
    }
    // r^2 L_M''(r) nondecreasing <=> negated sequence nonincreasing.
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        v[i] = -grid[i] * grid[i] * lm_second_deriv(grid[i]);
    merge(rep, check_nonincreasing(grid, v, side, "r^2 L_M'' decreases", opts.tolerance,
                                   opts.band));
    return rep;
}

ClassificationReport classify_Ln(const SpectralDensity& d, int n, ClassifyOptions opts) {
    return classify_filtration(d, n, false, opts);
}

ClassificationReport classify_Lnf(const SpectralDensity& d, int n, ClassifyOptions opts) {
    return classify_filtration(d, n, true, opts);
}

ClassificationReport logmoment_check(const SpectralDensity& d) {
    ClassificationReport rep;
    rep.class_tested = DistClass::IDlog;
    auto probe = log_moment_probe(d);
    if (probe.diverged) {
        rep.verdict = Verdict::non_member;
        rep.witnesses.push_back({0.0, "log-moment tail increments do not decay", 0.0});
    } else if (probe.converged) {
        rep.verdict = Verdict::member;
    } else {
        rep.verdict = Verdict::inconclusive;
        rep.note = "tail integral converging too slowly";
    }
    return rep;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::member: return "member";
        case Verdict::non_member: return "non_member";
        default: return "inconclusive";
    }
}

const char* to_string(DistClass c) {
    switch (c) {
        case DistClass::L: return "L";
        case DistClass::U: return "U";
        case DistClass::Lf: return "Lf";
        case DistClass::Ln: return "Ln";
        case DistClass::Lnf: return "Lnf";
        default: return "IDlog";
    }
}

}  // namespace levyfactor
