#include "levyfactor/catalogue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

namespace levyfactor {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double param(const std::map<std::string, double>& p, const std::string& key,
             double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) {
        std::ostringstream msg;
        msg << "catalogue: parameter " << what << " must be positive (got " << v << ")";
        throw std::invalid_argument(msg.str());
    }
}

// log(sinh z / z), stable near 0 and for large z.
double log_sinhc(double z) {
    const double az = std::abs(z);
    if (az < 1e-3) {
        const double z2 = z * z;
        return z2 / 6.0 - z2 * z2 / 180.0 + z2 * z2 * z2 / 2835.0 -
               z2 * z2 * z2 * z2 / 37800.0;
    }
    if (az > 30.0) return az - std::log(2.0 * az);  // sinh z ~ e^z / 2
    return std::log1p((std::sinh(az) - az) / az);
}

// z coth z - 1, stable near 0 and for large z.
double zcoth_m1(double z) {
    const double az = std::abs(z);
    if (az < 1e-3) {
        const double z2 = z * z;
        return z2 / 3.0 - z2 * z2 / 45.0 + 2.0 * z2 * z2 * z2 / 945.0 -
               z2 * z2 * z2 * z2 / 4725.0;
    }
    if (az > 30.0) return az - 1.0;  // coth z ~ 1 to machine precision
    return (az * std::cosh(az) - std::sinh(az)) / std::sinh(az);
}

// log cosh z without overflow.
double log_cosh(double z) {
    const double az = std::abs(z);
    if (az < 1e-3) {
        const double z2 = z * z;
        return z2 / 2.0 - z2 * z2 / 12.0 + z2 * z2 * z2 / 45.0 -
               17.0 * z2 * z2 * z2 * z2 / 2520.0;
    }
    if (az > 30.0) return az - std::log(2.0);
    return std::log(std::cosh(az));
}

// x / (e^x - 1) style helpers evaluated through e^{-x} to avoid overflow.
double inv_expm1(double x) {  // 1 / (e^x - 1)
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

double bose_density(double x) {  // e^x / (e^x - 1)^2 = e^{-x} / (1 - e^{-x})^2
    if (x > 700.0) return 0.0;
    const double em = std::exp(-x);
    const double d = 1.0 - em;
    return em / (d * d);
}

// Normalization linking the symmetric stable exponent -c|t|^alpha to its
// spectral density c_M |x|^{-1-alpha} per side:
//   c = 2 c_M Gamma(2-alpha) sin(pi(1-alpha)/2) / (alpha (1-alpha)).
double stable_density_constant(double c, double alpha) {
    double ratio;  // sin(pi(1-alpha)/2) / (1-alpha), smooth through alpha = 1
    const double om = 1.0 - alpha;
    if (std::abs(om) < 1e-8)
        ratio = kPi / 2.0;
    else
        ratio = std::sin(kPi * om / 2.0) / om;
    const double integral = std::tgamma(2.0 - alpha) * ratio / alpha;
    return c / (2.0 * integral);
}

LawSpec make_gamma(double alpha, double lambda) {
    LawSpec law;
    law.name = "gamma";
    law.params = {{"alpha", alpha}, {"lambda", lambda}};
    law.exponent = closed_form_exponent(
        "gamma",
        [alpha, lambda](double t) {
            return -alpha * std::log(cdouble{1.0, -t / lambda});
        },
        Tristate::yes);
    law.spectral = one_sided_density(
        [alpha, lambda](double x) { return alpha * std::exp(-lambda * x) / x; },
        40.0 / lambda);
    law.has_log_moment = Tristate::yes;
    law.known_classes = {{"U", Verdict::member},
                         {"L", Verdict::member},
                         {"Lf", Verdict::member},
                         {"L1", Verdict::non_member}};
    law.provenance =
        "spectral density alpha*exp(-lambda x)/x; driving law is compound Poisson "
        "with exponential jumps, which is s-selfdecomposable";
    return law;
}

LawSpec make_cp_exp(double alpha, double lambda) {
    LawSpec law;
    law.name = "cp_exp";
    law.params = {{"alpha", alpha}, {"lambda", lambda}};
    law.exponent = closed_form_exponent(
        "cp_exp",
        [alpha, lambda](double t) {
            return alpha * (lambda / cdouble{lambda, -t} - 1.0);
        },
        Tristate::yes);
    SpectralDensity d = one_sided_density(
        [alpha, lambda](double x) { return alpha * lambda * std::exp(-lambda * x); },
        40.0 / lambda);
    d.pos.tail_fn = [alpha, lambda](double r) { return alpha * std::exp(-lambda * r); };
    law.spectral = d;
    law.has_log_moment = Tristate::yes;
    law.known_classes = {{"U", Verdict::member},
                         {"L", Verdict::non_member},
                         {"Lf", Verdict::non_member}};
    law.provenance =
        "compound Poisson, rate alpha, exponential(lambda) jumps; density "
        "alpha*lambda*exp(-lambda x) is nonincreasing, so the law is "
        "s-selfdecomposable (indeed s-stable) but k(x) = x m(x) is unimodal";
    return law;
}

LawSpec make_bessel(double alpha) {
    LawSpec law;
    law.name = "bessel";
    law.params = {{"alpha", alpha}};
    LawSpec g = make_gamma(alpha, 1.0);
    LawSpec c = make_cp_exp(alpha, 1.0);
    law.exponent = exponent_add(g.exponent, c.exponent);
    law.exponent.name = "bessel";
    law.spectral = spectral_add(*g.spectral, *c.spectral);
    law.has_log_moment = Tristate::yes;
    law.known_classes = {{"U", Verdict::member},
                         {"L", Verdict::member},
                         {"Lf", Verdict::non_member}};
    law.provenance =
        "gamma(alpha,1) convolved with its compound-Poisson driving law; "
        "selfdecomposable because the driving law is s-selfdecomposable, but "
        "k(r) = alpha e^{-r}(1+r) is not convex";
    return law;
}

LawSpec make_laplace(double a) {
    LawSpec law;
    law.name = "laplace";
    law.params = {{"a", a}};
    law.exponent = closed_form_exponent(
        "laplace",
        [a](double t) { return cdouble{-std::log1p(a * a * t * t), 0.0}; },
        Tristate::yes);
    law.spectral = symmetric_density(
        [a](double x) { return std::exp(-x / a) / x; }, 40.0 * a);
    law.has_log_moment = Tristate::yes;
    law.known_classes = {{"U", Verdict::member},
                         {"L", Verdict::member},
                         {"Lf", Verdict::member}};
    law.provenance =
        "two-sided exponential with scale a; per-side k(r) = exp(-r/a) is "
        "convex and nonincreasing";
    return law;
}

LawSpec make_d1(double u) {
    LawSpec law;
    law.name = "d1";
    law.params = {{"u", u}};
    law.exponent = closed_form_exponent(
        "d1", [u](double t) { return cdouble{-log_sinhc(t * u), 0.0}; }, Tristate::yes);
    const double us = u / kPi;  // per-side scale of the spectral density
    law.spectral = symmetric_density(
        [us](double r) { return inv_expm1(r / us) / r; }, 40.0 * us);
    law.has_log_moment = Tristate::yes;
    law.known_classes = {{"U", Verdict::member},
                         {"L", Verdict::member},
                         {"Lf", Verdict::member}};
    law.provenance =
        "characteristic function t u / sinh(t u): the selfdecomposable factor of "
        "the conditioned planar Brownian area law; equals the Laplace series with "
        "coefficients u/(pi k); per-side k(r) = 1/(e^{pi r/u} - 1)";
    return law;
}

LawSpec make_d1_bdpd(double u) {
    LawSpec law;
    law.name = "d1_bdpd";
    law.params = {{"u", u}};
    law.exponent = closed_form_exponent(
        "d1_bdpd", [u](double t) { return cdouble{-zcoth_m1(t * u), 0.0}; },
        Tristate::yes);
    const double us = u / kPi;
    // Density is the negated derivative of d1's k-function:
    // g(r) = (1/us) e^{r/us} / (e^{r/us} - 1)^2; its own tail integrates
    // back to 1/(e^{r/us} - 1) in closed form.
    SpectralDensity d = symmetric_density(
        [us](double r) { return bose_density(r / us) / us; }, 40.0 * us);
    d.pos.tail_fn = [us](double r) { return inv_expm1(r / us); };
    d.neg.tail_fn = d.pos.tail_fn;
    law.spectral = d;
    law.has_log_moment = Tristate::yes;
    law.known_classes = {{"U", Verdict::member}};
    law.provenance =
        "driving law of d1, characteristic function exp(-(t u coth(t u) - 1)); "
        "its density decreases on each side, hence s-selfdecomposable";
    return law;
}

LawSpec make_half_d2(double /*unused*/) {
    LawSpec law;
    law.name = "half_d2";
    law.exponent = closed_form_exponent(
        "half_d2", [](double t) { return cdouble{-0.5 * log_cosh(t), 0.0}; },
        Tristate::yes);
    law.has_log_moment = Tristate::yes;
    law.known_classes = {{"Lf", Verdict::member},
                         {"L", Verdict::member},
                         {"U", Verdict::member}};
    law.provenance =
        "characteristic function (cosh t)^{-1/2}, the convolution square root of "
        "the odd-harmonic Laplace series 1/cosh t";
    return law;
}

LawSpec make_half_d2_bdpd(double /*unused*/) {
    LawSpec law;
    law.name = "half_d2_bdpd";
    law.exponent = closed_form_exponent(
        "half_d2_bdpd",
        [](double t) { return cdouble{-0.5 * t * std::tanh(t), 0.0}; }, Tristate::yes);
    law.has_log_moment = Tristate::yes;
    law.known_classes = {{"U", Verdict::member}};
    law.provenance =
        "driving law of half_d2, characteristic function exp(-t tanh(t)/2)";
    return law;
}

LawSpec make_sym_stable(double alpha, double c) {
    if (!(alpha > 0.0) || alpha > 2.0)
        throw std::invalid_argument("catalogue: stable index must satisfy 0 < alpha <= 2");
    require_positive(c, "c");
    LawSpec law;
    law.name = "sym_stable";
    law.params = {{"alpha", alpha}, {"c", c}};
    law.exponent = closed_form_exponent(
        "sym_stable",
        [alpha, c](double t) {
            return cdouble{t == 0.0 ? 0.0 : -c * std::pow(std::abs(t), alpha), 0.0};
        },
        Tristate::yes);
    if (alpha < 2.0) {
        const double cm = stable_density_constant(c, alpha);
        SpectralDensity d = symmetric_density(
            [cm, alpha](double x) { return cm * std::pow(x, -1.0 - alpha); }, kInf);
        d.pos.tail_fn = [cm, alpha](double r) { return cm / alpha * std::pow(r, -alpha); };
        d.neg.tail_fn = d.pos.tail_fn;
        law.spectral = d;
    }
    law.has_log_moment = Tristate::yes;
    law.known_classes = {{"U", Verdict::member},
                         {"L", Verdict::member},
                         {"Lf", Verdict::member},
                         {"L1", Verdict::member},
                         {"L2", Verdict::member},
                         {"L3", Verdict::member}};
    law.provenance =
        "symmetric stable exponent -c|t|^alpha; fixed (up to scale) by both "
        "random-integral maps, so it sits in every layer of the filtration";
    return law;
}

LawSpec make_sym_gamma(double alpha) {
    LawSpec law;
    law.name = "sym_gamma";
    law.params = {{"alpha", alpha}};
    law.exponent = closed_form_exponent(
        "sym_gamma",
        [alpha](double t) { return cdouble{-alpha * std::log1p(t * t), 0.0}; },
        Tristate::yes);
    law.spectral = symmetric_density(
        [alpha](double x) { return alpha * std::exp(-x) / x; }, 40.0);
    law.has_log_moment = Tristate::yes;
    law.known_classes = {{"U", Verdict::member},
                         {"L", Verdict::member},
                         {"Lf", Verdict::member}};
    law.provenance =
        "difference of two independent gamma(alpha,1) variables; per-side "
        "spectral density alpha e^{-|x|}/|x|";
    return law;
}

LawSpec make_k_measure(double alpha, double beta) {
    LawSpec law;
    law.name = "k_measure";
    law.params = {{"alpha", alpha}, {"beta", beta}};
    SpectralDensity d = one_sided_density(
        [alpha, beta](double r) { return r < beta ? alpha * (beta / r - 1.0) : 0.0; },
        beta);
    d.pos.tail_fn = [alpha, beta](double r) {
        if (r >= beta) return 0.0;
        const double rho = r / beta;
        return alpha * beta * (-std::log1p(rho - 1.0) - 1.0 + rho);
    };
    law.spectral = d;
    // Exponent is quadrature over the density; the law is spectral-first.
    Triple tr;
    tr.spectral = d;
    law.exponent = exponent_from_triple(tr);
    law.exponent.kind = ExponentKind::spectral_backed;
    law.exponent.name = "k_measure";
    law.exponent.has_log_moment = Tristate::yes;
    law.has_log_moment = Tristate::yes;
    law.known_classes = {{"U", Verdict::member},
                         {"L", Verdict::member},
                         {"Lf", Verdict::member}};
    law.provenance =
        "tail alpha [beta log(beta/r) - (beta - r)] on (0, beta): the image of a "
        "single atom at beta (mass alpha beta) under the composed ramp and "
        "exponential maps; k(r) = alpha (beta - r) is linear, hence convex";
    return law;
}

std::vector<double> explicit_coefficients(const std::map<std::string, double>& params) {
    std::vector<double> a;
    for (int k = 1;; ++k) {
        std::ostringstream key;
        key << "a" << k;
        auto it = params.find(key.str());
        if (it == params.end()) break;
        require_positive(it->second, key.str().c_str());
        a.push_back(it->second);
    }
    return a;
}

LawSpec make_laplace_series(const std::map<std::string, double>& params) {
    std::vector<double> a = explicit_coefficients(params);
    if (a.empty()) {
        const int count = static_cast<int>(param(params, "K", 2000));
        if (count < 1) throw std::invalid_argument("catalogue: K must be >= 1");
        const double u = param(params, "u", 1.0);
        require_positive(u, "u");
        a = param(params, "odd", 0.0) != 0.0 ? odd_harmonic_coefficients(count, u)
                                             : harmonic_coefficients(count, u);
    }
    LawSpec law;
    law.name = "laplace_series";
    law.params = params;
    auto coeffs = std::make_shared<std::vector<double>>(std::move(a));
    law.exponent = closed_form_exponent(
        "laplace_series",
        [coeffs](double t) {
            double v = 0.0;
            for (double ak : *coeffs) v += std::log1p(ak * ak * t * t);
            return cdouble{-v, 0.0};
        },
        Tristate::yes);
    const double amax = *std::max_element(coeffs->begin(), coeffs->end());
    law.spectral = symmetric_density(
        [coeffs](double x) {
            double v = 0.0;
            for (double ak : *coeffs) v += std::exp(-x / ak);
            return v / x;
        },
        40.0 * amax);
    law.has_log_moment = Tristate::yes;
    law.known_classes = {{"U", Verdict::member},
                         {"L", Verdict::member},
                         {"Lf", Verdict::member}};
    law.provenance =
        "sum_k a_k eta_k with i.i.d. standard Laplace eta; spectral density "
        "sum_k exp(-|x|/a_k)/|x| keeps every per-side k-function convex and "
        "nonincreasing";
    return law;
}

LawSpec make_zero() {
    LawSpec law;
    law.name = "zero";
    law.exponent = closed_form_exponent("zero", [](double) { return cdouble{}; },
                                        Tristate::yes);
    law.spectral = SpectralDensity{};
    law.has_log_moment = Tristate::yes;
    law.known_classes = {{"U", Verdict::member},
                         {"L", Verdict::member},
                         {"Lf", Verdict::member}};
    law.provenance = "point mass at the origin";
    return law;
}

}  // namespace

std::vector<double> harmonic_coefficients(int count, double u) {
    std::vector<double> a(static_cast<std::size_t>(count));
    for (int k = 1; k <= count; ++k)
        a[static_cast<std::size_t>(k - 1)] = u / (kPi * k);
    return a;
}

std::vector<double> odd_harmonic_coefficients(int count, double u) {
    std::vector<double> a(static_cast<std::size_t>(count));
    for (int k = 1; k <= count; ++k)
        a[static_cast<std::size_t>(k - 1)] = 2.0 * u / (kPi * (2 * k - 1));
    return a;
}

LawSpec get_law(const std::string& name, const std::map<std::string, double>& params) {
    const double alpha = param(params, "alpha", 1.0);
    const double lambda = param(params, "lambda", 1.0);
    if (name == "gamma") {
        require_positive(alpha, "alpha");
        require_positive(lambda, "lambda");
        return make_gamma(alpha, lambda);
    }
    if (name == "cp_exp") {
        require_positive(alpha, "alpha");
        require_positive(lambda, "lambda");
        return make_cp_exp(alpha, lambda);
    }
    if (name == "bessel") {
        require_positive(alpha, "alpha");
        return make_bessel(alpha);
    }
    if (name == "laplace") {
        const double a = param(params, "a", 1.0);
        require_positive(a, "a");
        return make_laplace(a);
    }
    if (name == "d1") {
        const double u = param(params, "u", 1.0);
        require_positive(u, "u");
        return make_d1(u);
    }
    if (name == "d1_bdpd") {
        const double u = param(params, "u", 1.0);
        require_positive(u, "u");
        return make_d1_bdpd(u);
    }
    if (name == "half_d2") return make_half_d2(0.0);
    if (name == "half_d2_bdpd") return make_half_d2_bdpd(0.0);
    if (name == "sym_stable")
        return make_sym_stable(param(params, "alpha", 1.5), param(params, "c", 1.0));
    if (name == "sym_gamma") {
        require_positive(alpha, "alpha");
        return make_sym_gamma(alpha);
    }
    if (name == "k_measure") {
        const double beta = param(params, "beta", 1.0);
        require_positive(alpha, "alpha");
        require_positive(beta, "beta");
        return make_k_measure(alpha, beta);
    }
    if (name == "laplace_series") return make_laplace_series(params);
    if (name == "zero") return make_zero();
    throw std::invalid_argument("catalogue: unknown law '" + name + "'");
}

std::vector<std::string> catalogue_names() {
    return {"gamma",   "cp_exp",      "bessel",    "laplace",        "d1",
            "d1_bdpd", "half_d2",     "half_d2_bdpd", "sym_stable", "sym_gamma",
            "k_measure", "laplace_series", "zero"};
}

std::vector<OracleEntry> oracle_table() {
    std::vector<OracleEntry> table;
    auto push = [&table](LawSpec law, std::map<std::string, Verdict> expected) {
        table.push_back({std::move(law), std::move(expected)});
    };

    push(get_law("gamma", {{"alpha", 2.0}, {"lambda", 1.0}}),
         {{"L", Verdict::member},
          {"U", Verdict::member},
          {"Lf", Verdict::member},
          {"L1", Verdict::non_member},
          {"IDlog", Verdict::member}});
    push(get_law("cp_exp", {{"alpha", 1.0}, {"lambda", 1.0}}),
         {{"U", Verdict::member},
          {"L", Verdict::non_member},
          {"Lf", Verdict::non_member},
          {"IDlog", Verdict::member}});
    push(get_law("bessel", {{"alpha", 2.0}}),
         {{"U", Verdict::member}, {"L", Verdict::member}, {"Lf", Verdict::non_member}});
    push(get_law("laplace", {{"a", 1.0}}),
         {{"U", Verdict::member}, {"L", Verdict::member}, {"Lf", Verdict::member}});
    push(get_law("d1", {{"u", 1.0}}),
         {{"U", Verdict::member}, {"L", Verdict::member}, {"Lf", Verdict::member}});
    push(get_law("d1_bdpd", {{"u", 1.0}}), {{"U", Verdict::member}});
    push(get_law("sym_stable", {{"alpha", 1.5}, {"c", 1.0}}),
         {{"U", Verdict::member},
          {"L", Verdict::member},
          {"Lf", Verdict::member},
          {"L1", Verdict::member},
          {"L3", Verdict::member},
          {"L3f", Verdict::member},
          {"IDlog", Verdict::member}});
    push(get_law("sym_gamma", {{"alpha", 1.5}}),
         {{"U", Verdict::member}, {"L", Verdict::member}, {"Lf", Verdict::member}});
    push(get_law("k_measure", {{"alpha", 1.0}, {"beta", 2.0}}),
         {{"U", Verdict::member}, {"L", Verdict::member}, {"Lf", Verdict::member}});

    // Uniform-jump compound Poisson: density 1 on (0,1); k(x) = x increases.
    LawSpec cp_uniform;
    cp_uniform.name = "cp_uniform";
    cp_uniform.spectral = one_sided_density([](double x) { return x < 1.0 ? 1.0 : 0.0; }, 1.0);
    cp_uniform.has_log_moment = Tristate::yes;
    cp_uniform.provenance = "synthetic: unit density on (0,1)";
    push(std::move(cp_uniform), {{"U", Verdict::member}, {"L", Verdict::non_member}});

    // k(x) = max(0, 1 - x^2): nonincreasing but concave where positive.
    LawSpec parabolic;
    parabolic.name = "parabolic_k";
    parabolic.spectral = one_sided_density(
        [](double x) { return x < 1.0 ? (1.0 - x * x) / x : 0.0; }, 1.0);
    parabolic.has_log_moment = Tristate::yes;
    parabolic.provenance = "synthetic: k(x) = max(0, 1 - x^2)";
    push(std::move(parabolic), {{"L", Verdict::member}, {"Lf", Verdict::non_member}});

    return table;
}

}  // namespace levyfactor
