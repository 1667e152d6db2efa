// Monte Carlo layer: exact samplers for compound-Poisson random
// integrals and Laplace series, empirical characteristic functions and
// the sample-level factorization check. Identical configurations
// (seed included) produce bit-identical sample streams regardless of
// the worker count.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "levyfactor/catalogue.hpp"
#include "levyfactor/numerics.hpp"
#include "levyfactor/rng.hpp"

namespace levyfactor {

struct SimConfig {
    std::uint64_t seed = 1;
    std::size_t n_samples = 100000;
    double truncation = 40.0;  // horizon T of the exponential-decay integral
    int series_cutoff = 2000;  // K of the Laplace series
    std::vector<double> t_grid = make_grid(-10.0, 10.0, 201);
};

struct SimResult {
    std::vector<double> t;
    std::vector<cdouble> empirical;
    std::vector<cdouble> target;  // empty until a target is attached
    double sup_distance = 0.0;
    double ci_halfwidth = 0.0;  // ~ 2 / sqrt(n)
    // Metadata echoed into CSV headers.
    std::uint64_t seed = 0;
    std::size_t n_samples = 0;
    double truncation = 0.0;
    int series_cutoff = 0;
    std::string rng_name;
    std::string label;
};

using JumpSampler = std::function<double(RngStream&)>;

enum class Decay { exp_decay, linear_ramp };

// One draw per replicate of sum_i h(s_i) J_i over the Poisson jump
// times s_i of a rate-`rate` compound Poisson process, h(s) = e^{-s}
// on [0, T] or h(s) = s on [0, 1]. Exact in distribution (up to the
// horizon truncation in the exponential case).
std::vector<double> sample_cp_path_integral(double rate, const JumpSampler& jumps,
                                            Decay decay, const SimConfig& cfg);

enum class Innovation {
    laplace,         // standard two-sided exponential, cf 1/(1 + a^2 t^2)
    sym_gamma_half,  // difference of gamma(1/2,1) halves, cf (1 + a^2 t^2)^{-1/2}
};

// Draws of sum_k a_k X_k with i.i.d. innovations. Coefficients must be
// positive with a finite sum of squares.
std::vector<double> sample_laplace_series(std::span<const double> coeffs,
                                          const SimConfig& cfg,
                                          Innovation innovation = Innovation::laplace);

// Driving-law counterpart of the Laplace series: each term contributes
// a rate-1-per-side compound Poisson variable with exponential(1/a_k)
// jumps, which is exactly the driving variable of a_k * eta_k.
std::vector<double> sample_laplace_series_bdpd(std::span<const double> coeffs,
                                               const SimConfig& cfg);

// Empirical characteristic function (pairwise-summed means per grid
// point) with the 2/sqrt(n) confidence halfwidth.
SimResult empirical_cf(std::span<const double> samples, std::span<const double> t_grid);

// Fills `target` and the sup-distance against it.
void attach_target(SimResult& result, const std::function<cdouble(double)>& target_cf);

// Sample-level factorization run: simulates X ~ I(J(rho)) and W ~ J(rho)
// independently and compares the empirical cf of X + W against
// exp(map_I(rho)). Supported laws: "cp_exp" (exact compound-Poisson
// integrals), "d1" (series samplers), "zero". Others throw
// std::invalid_argument.
SimResult verify_factorization_mc(const LawSpec& rho, const SimConfig& cfg);

// CSV emission: '#'-prefixed metadata (seed, n, T, K, rng), then rows
// t, re_emp, im_emp, re_target, im_target, abs_err.
std::string sim_result_csv(const SimResult& result);

}  // namespace levyfactor
