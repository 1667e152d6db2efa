// Shared numerical kernels: adaptive quadrature, finite differences,
// deterministic summation, and the thread-cap helper.
#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace levyfactor {

using cdouble = std::complex<double>;

/// Thrown when a numerical procedure cannot meet its contract
/// (divergent tail, vanishing characteristic function, ...).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

template <typename T>
struct QuadResult {
    T value{};
    double error = 0.0;  // absolute error estimate
};

// Adaptive Simpson with Richardson correction. Works for real and
// complex integrands; tol is an absolute target.
QuadResult<double> integrate(const std::function<double(double)>& f,
                             double a, double b, double tol = 1e-10,
                             int max_depth = 48);
QuadResult<cdouble> integrate_c(const std::function<cdouble(double)>& f,
                                double a, double b, double tol = 1e-10,
                                int max_depth = 48);

// Integral over [a, inf): panel doubling, stops once two consecutive
// panels contribute below tol. Throws numeric_error if the panel sums
// keep growing past the panel budget.
QuadResult<double> integrate_to_inf(const std::function<double(double)>& f,
                                    double a, double tol = 1e-10);

struct DerivResult {
    double value = 0.0;
    double error = 0.0;
};

// Ridders-style central difference with a Neville tableau; h0 is the
// initial step, shrunk until the extrapolation stops improving.
DerivResult ridders_derivative(const std::function<double(double)>& f,
                               double x, double h0);

// Pairwise (cascade) summation; result is independent of how the input
// was produced, which keeps multi-threaded reductions bit-stable.
double pairwise_sum(std::span<const double> xs);
cdouble pairwise_sum(std::span<const cdouble> xs);

// Uniform grid [lo, hi] with n points (n >= 2).
std::vector<double> make_grid(double lo, double hi, int n);

// Default evaluation grid for exponent-level work: [-20, 20], 4001 points.
const std::vector<double>& default_grid();

// Geometric grid on (0, inf): n points from lo to hi.
std::vector<double> geometric_grid(double lo, double hi, int n);

// Worker cap from LEVYFACTOR_THREADS (0 = serial); falls back to the
// hardware count when unset.
int max_workers();

// Index-parallel loop over [0, n). Deterministic: body(i) must write
// only to slot i of preallocated storage.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace levyfactor
