#include "levyfactor/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "levyfactor/integral_maps.hpp"
#include "levyfactor/io.hpp"

namespace levyfactor {

double RngStream::exponential() { return -std::log1p(-uniform()); }

void RngStream::normal_pair(double& z1, double& z2) {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    z1 = r * std::cos(a);
    z2 = r * std::sin(a);
}

namespace {

void validate_coeffs(std::span<const double> coeffs) {
    if (coeffs.empty())
        throw std::invalid_argument("laplace series: empty coefficient list");
    double sq = 0.0;
    for (double a : coeffs) {
        if (!(a > 0.0) || !std::isfinite(a))
            throw std::invalid_argument("laplace series: coefficients must be positive and finite");
        sq += a * a;
    }
    if (!std::isfinite(sq))
        throw std::invalid_argument("laplace series: sum of squared coefficients diverges");
}

// Pairwise mean of e^{i t x} over a sample range, recursion on index
// blocks so the reduction tree is fixed by n alone.
cdouble cf_block(std::span<const double> xs, double t, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 64) {
        cdouble acc{};
        for (std::size_t i = lo; i < hi; ++i)
            acc += cdouble{std::cos(t * xs[i]), std::sin(t * xs[i])};
        return acc;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return cf_block(xs, t, lo, mid) + cf_block(xs, t, mid, hi);
}

double poisson_count_rate1(RngStream& rng) {
    // Sequential gaps; mean ~ 1 per call.
    double s = rng.exponential();
    double count = 0.0;
    while (s <= 1.0) {
        count += 1.0;
        s += rng.exponential();
    }
    return count;
}

}  // namespace

std::vector<double> sample_cp_path_integral(double rate, const JumpSampler& jumps,
                                            Decay decay, const SimConfig& cfg) {
    if (!(rate > 0.0)) throw std::invalid_argument("sample_cp_path_integral: rate must be > 0");
    if (cfg.n_samples < 1) throw std::invalid_argument("sample_cp_path_integral: need n >= 1");
    const double horizon = decay == Decay::exp_decay ? cfg.truncation : 1.0;
    if (!(horizon > 0.0)) throw std::invalid_argument("sample_cp_path_integral: horizon must be > 0");
    std::vector<double> out(cfg.n_samples, 0.0);
    parallel_for(cfg.n_samples, [&](std::size_t i) {
        RngStream rng(cfg.seed, i);
        double s = rng.exponential() / rate;
        double x = 0.0;
        while (s <= horizon) {
            const double w = jumps(rng);
            x += (decay == Decay::exp_decay ? std::exp(-s) : s) * w;
            s += rng.exponential() / rate;
        }
        out[i] = x;
    });
    return out;
}

std::vector<double> sample_laplace_series(std::span<const double> coeffs,
                                          const SimConfig& cfg, Innovation innovation) {
    validate_coeffs(coeffs);
    std::vector<double> out(cfg.n_samples, 0.0);
    parallel_for(cfg.n_samples, [&](std::size_t i) {
        RngStream rng(cfg.seed, i);
        double x = 0.0;
        if (innovation == Innovation::laplace) {
            // Exp(1) - Exp(1) drawn with a single log.
            for (double a : coeffs) {
                const double u1 = 1.0 - rng.uniform();
                const double u2 = 1.0 - rng.uniform();
                x += a * std::log(u1 / u2);
            }
        } else {
            for (double a : coeffs) {
                double z1, z2;
                rng.normal_pair(z1, z2);
                x += a * 0.5 * (z1 * z1 - z2 * z2);  // gamma(1/2,1) = Z^2/2
            }
        }
        out[i] = x;
    });
    return out;
}

std::vector<double> sample_laplace_series_bdpd(std::span<const double> coeffs,
                                               const SimConfig& cfg) {
    validate_coeffs(coeffs);
    std::vector<double> out(cfg.n_samples, 0.0);
    parallel_for(cfg.n_samples, [&](std::size_t i) {
        RngStream rng(cfg.seed, i);
        double x = 0.0;
        for (double a : coeffs) {
            const double np = poisson_count_rate1(rng);
            const double nm = poisson_count_rate1(rng);
            double v = 0.0;
            for (double k = 0; k < np; ++k) v += rng.exponential();
            for (double k = 0; k < nm; ++k) v -= rng.exponential();
            x += a * v;
        }
        out[i] = x;
    });
    return out;
}

SimResult empirical_cf(std::span<const double> samples, std::span<const double> t_grid) {
    if (samples.empty()) throw std::invalid_argument("empirical_cf: no samples");
    SimResult res;
    res.t.assign(t_grid.begin(), t_grid.end());
    res.empirical.resize(t_grid.size());
    res.n_samples = samples.size();
    res.ci_halfwidth = 2.0 / std::sqrt(static_cast<double>(samples.size()));
    res.rng_name = RngStream::algorithm();
    const double inv_n = 1.0 / static_cast<double>(samples.size());
    parallel_for(t_grid.size(), [&](std::size_t j) {
        res.empirical[j] = cf_block(samples, res.t[j], 0, samples.size()) * inv_n;
    });
    return res;
}

void attach_target(SimResult& result, const std::function<cdouble(double)>& target_cf) {
    result.target.resize(result.t.size());
    result.sup_distance = 0.0;
    for (std::size_t j = 0; j < result.t.size(); ++j) {
        result.target[j] = target_cf(result.t[j]);
        result.sup_distance =
            std::max(result.sup_distance, std::abs(result.empirical[j] - result.target[j]));
    }
}

SimResult verify_factorization_mc(const LawSpec& rho, const SimConfig& cfg) {
    if (rho.has_log_moment != Tristate::yes)
        throw std::invalid_argument("verify_factorization_mc: law must have a log-moment");
    SimResult res;
    if (rho.name == "zero") {
        std::vector<double> zeros(cfg.n_samples, 0.0);
        res = empirical_cf(zeros, cfg.t_grid);
        attach_target(res, [](double) { return cdouble{1.0, 0.0}; });
    } else if (rho.name == "cp_exp") {
        const double alpha = rho.params.at("alpha");
        const double lambda = rho.params.at("lambda");
        // nu = ramp image of rho: compound Poisson, rate alpha, jumps U*Exp.
        // X ~ exponential-decay integral of a nu-driven process, W ~ nu.
        std::vector<double> sum(cfg.n_samples, 0.0);
        parallel_for(cfg.n_samples, [&](std::size_t i) {
            RngStream rng(cfg.seed, i);
            double x = 0.0;
            double s = rng.exponential() / alpha;
            while (s <= cfg.truncation) {
                x += std::exp(-s) * rng.uniform() * rng.exponential() / lambda;
                s += rng.exponential() / alpha;
            }
            double w = 0.0;
            s = rng.exponential() / alpha;
            while (s <= 1.0) {
                w += s * rng.exponential() / lambda;
                s += rng.exponential() / alpha;
            }
            sum[i] = x + w;
        });
        res = empirical_cf(sum, cfg.t_grid);
        LevyExponent mapped = map_I(rho.exponent);
        attach_target(res, [mapped](double t) { return std::exp(mapped(t)); });
    } else if (rho.name == "d1") {
        // I(nu) is the series law itself; W is its driving variable,
        // a convergent sum of per-term compound Poisson components.
        const double u = rho.params.count("u") ? rho.params.at("u") : 1.0;
        const auto coeffs = harmonic_coefficients(cfg.series_cutoff, u);
        auto xs = sample_laplace_series(coeffs, cfg);
        SimConfig shifted = cfg;
        shifted.seed = cfg.seed ^ 0x5bf03635f0a4d1c5ULL;  // independent stream block
        auto ws = sample_laplace_series_bdpd(coeffs, shifted);
        std::vector<double> sum(cfg.n_samples);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = xs[i] + ws[i];
        res = empirical_cf(sum, cfg.t_grid);
        LawSpec bdpd = get_law("d1_bdpd", {{"u", u}});
        LevyExponent chi = exponent_add(rho.exponent, bdpd.exponent);
        attach_target(res, [chi](double t) { return std::exp(chi(t)); });
    } else {
        throw std::invalid_argument(
            "verify_factorization_mc: no exact sampler for law '" + rho.name + "'");
    }
    res.seed = cfg.seed;
    res.truncation = cfg.truncation;
    res.series_cutoff = cfg.series_cutoff;
    res.label = "factorization_mc:" + rho.name;
    return res;
}

std::string sim_result_csv(const SimResult& result) {
    std::ostringstream out;
    out << "# seed=" << result.seed << " n=" << result.n_samples
        << " T=" << format_double(result.truncation) << " K=" << result.series_cutoff
        << "\n";
    out << "# rng=" << result.rng_name << "\n";
    if (!result.label.empty()) out << "# label=" << result.label << "\n";
    out << "# sup_distance=" << format_double(result.sup_distance)
        << " ci_halfwidth=" << format_double(result.ci_halfwidth) << "\n";
    out << "t,re_emp,im_emp,re_target,im_target,abs_err\n";
    for (std::size_t j = 0; j < result.t.size(); ++j) {
        const cdouble e = result.empirical[j];
        const cdouble g = j < result.target.size() ? result.target[j] : cdouble{};
        out << format_double(result.t[j]) << ',' << format_double(e.real()) << ','
            << format_double(e.imag()) << ',' << format_double(g.real()) << ','
            << format_double(g.imag()) << ',' << format_double(std::abs(e - g)) << "\n";
    }
    return out.str();
}

}  // namespace levyfactor
