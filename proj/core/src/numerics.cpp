#include "levyfactor/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace levyfactor {

namespace {

template <typename T>
T simpson(const std::function<T(double)>& f, double a, double b,
          T fa, T fm, T fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename T>
QuadResult<T> adaptive(const std::function<T(double)>& f, double a, double b,
                       T fa, T fm, T fb, T whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const T flm = f(0.5 * (a + m));
    const T frm = f(0.5 * (m + b));
    const T left = simpson(f, a, m, fa, flm, fm);
    const T right = simpson(f, m, b, fm, frm, fb);
    const T delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth <= 0) {
        return {left + right + delta / 15.0, std::abs(delta) / 15.0};
    }
    auto l = adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1);
    auto r = adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    return {l.value + r.value, l.error + r.error};
}

template <typename T>
QuadResult<T> integrate_impl(const std::function<T(double)>& f, double a,
                             double b, double tol, int max_depth) {
    if (a == b) return {T{}, 0.0};
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }
    const T fa = f(a);
    const T fb = f(b);
    const T fm = f(0.5 * (a + b));
    const T whole = simpson(f, a, b, fa, fm, fb);
    auto res = adaptive(f, a, b, fa, fm, fb, whole, tol, max_depth);
    res.value *= sign;
    return res;
}

}  // namespace

QuadResult<double> integrate(const std::function<double(double)>& f,
                             double a, double b, double tol, int max_depth) {
    return integrate_impl<double>(f, a, b, tol, max_depth);
}

QuadResult<cdouble> integrate_c(const std::function<cdouble(double)>& f,
                                double a, double b, double tol, int max_depth) {
    return integrate_impl<cdouble>(f, a, b, tol, max_depth);
}

QuadResult<double> integrate_to_inf(const std::function<double(double)>& f,
                                    double a, double tol) {
    // Panels [a, a+w], [a+w, a+3w], ... with doubling width.
    double lo = a;
    double width = std::max(1.0, std::abs(a));
    QuadResult<double> acc{0.0, 0.0};
    int quiet = 0;
    for (int panel = 0; panel < 64; ++panel) {
        const double hi = lo + width;
        auto part = integrate(f, lo, hi, tol * 0.25);
        acc.value += part.value;
        acc.error += part.error;
        if (std::abs(part.value) < tol * std::max(1.0, std::abs(acc.value))) {
            if (++quiet >= 2) return acc;
        } else {
            quiet = 0;
        }
        lo = hi;
        width *= 2.0;
    }
    throw numeric_error("integrate_to_inf: tail did not settle within panel budget");
}

DerivResult ridders_derivative(const std::function<double(double)>& f,
                               double x, double h0) {
    constexpr int kRounds = 12;
    constexpr double kShrink = 1.4;
    constexpr double kShrink2 = kShrink * kShrink;
    double tab[kRounds][kRounds];
    double h = h0;
    tab[0][0] = (f(x + h) - f(x - h)) / (2.0 * h);
    DerivResult best{tab[0][0], 1e30};
    for (int i = 1; i < kRounds; ++i) {
        h /= kShrink;
        tab[0][i] = (f(x + h) - f(x - h)) / (2.0 * h);
        double fac = kShrink2;
        for (int j = 1; j <= i; ++j) {
            tab[j][i] = (tab[j - 1][i] * fac - tab[j - 1][i - 1]) / (fac - 1.0);
            fac *= kShrink2;
            const double err = std::max(std::abs(tab[j][i] - tab[j - 1][i]),
                                        std::abs(tab[j][i] - tab[j - 1][i - 1]));
            if (err < best.error) {
                best.error = err;
                best.value = tab[j][i];
            }
        }
        if (std::abs(tab[i][i] - tab[i - 1][i - 1]) >= 2.0 * best.error) break;
    }
    return best;
}

namespace {

template <typename T>
T pairwise_impl(std::span<const T> xs) {
    if (xs.size() <= 64) {
        T acc{};
        for (const T& v : xs) acc += v;
        return acc;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_impl(xs.first(half)) + pairwise_impl(xs.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise_impl(xs); }
cdouble pairwise_sum(std::span<const cdouble> xs) { return pairwise_impl(xs); }

std::vector<double> make_grid(double lo, double hi, int n) {
    if (n < 2 || !(hi > lo)) throw std::invalid_argument("make_grid: bad grid spec");
    std::vector<double> g(static_cast<std::size_t>(n));
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + step * i;
    return g;
}

const std::vector<double>& default_grid() {
    static const std::vector<double> g = make_grid(-20.0, 20.0, 4001);
    return g;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw std::invalid_argument("geometric_grid: bad grid spec");
    std::vector<double> g(static_cast<std::size_t>(n));
    const double q = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo * std::exp(q * i);
    g.back() = hi;
    return g;
}

int max_workers() {
    if (const char* env = std::getenv("LEVYFACTOR_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v <= 0) return 1;
        return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const int workers = std::min<std::size_t>(static_cast<std::size_t>(max_workers()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < n;
                 i += static_cast<std::size_t>(workers))
                body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace levyfactor
