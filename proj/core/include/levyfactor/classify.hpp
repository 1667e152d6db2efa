// Membership tests for the nested distribution classes, driven by
// divided differences of the k-function k(r) = r m(r) and of the
// density itself. Verdicts are tolerance-banded: a clean pass is
// `member`, a clear violation is `non_member` (with witnesses), and
// anything inside the numerical band is `inconclusive`.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "levyfactor/spectral.hpp"

namespace levyfactor {

enum class DistClass { L, U, Lf, Ln, Lnf, IDlog };
enum class Verdict { member, non_member, inconclusive };

struct Witness {
    double x = 0.0;         // signed location (negative side reported as -r)
    std::string violated;   // which inequality failed
    double magnitude = 0.0; // relative size of the violation
};

struct ClassificationReport {
    DistClass class_tested = DistClass::L;
    int n = 0;  // filtration index for Ln / Lnf
    Verdict verdict = Verdict::inconclusive;
    std::vector<Witness> witnesses;
    double tolerance = 0.0;
    int failure_stage = -1;  // stage of first failure in the filtration
    std::string note;
};

struct ClassifyOptions {
    // Relative tolerance for divided-difference signs; a violation must
    // exceed band * tolerance to be conclusive.
    double tolerance = 1e-9;
    double band = 1e3;
    int probe_points = 257;
    double probe_lo = 1e-3;
    double probe_hi = 40.0;
};

// Selfdecomposable: k nonincreasing per side.
ClassificationReport classify_L(const SpectralDensity& d, ClassifyOptions opts = {});

// s-selfdecomposable: density nonincreasing per side.
ClassificationReport classify_U(const SpectralDensity& d, ClassifyOptions opts = {});

// Factorization class: k nonincreasing and convex per side.
ClassificationReport classify_Lf(const SpectralDensity& d, ClassifyOptions opts = {});

// Same class through the second-derivative form: r^2 L_M''(r)
// nondecreasing. Takes the second derivative of the spectral function
// (equivalently m'(r)) directly.
ClassificationReport classify_Lf_c3(const std::function<double(double)>& lm_second_deriv,
                                    Side side, std::span<const double> grid,
                                    ClassifyOptions opts = {});

// n-times-selfdecomposable filtration: pulls the measure back through
// the exponential map stage by stage; stage j checks that the j-th
// k-function is nonincreasing with a nonnegative implied density.
ClassificationReport classify_Ln(const SpectralDensity& d, int n,
                                 ClassifyOptions opts = {});

// Filtration with the factorization property: classify_Ln plus
// convexity of the n-th pullback's k-function.
ClassificationReport classify_Lnf(const SpectralDensity& d, int n,
                                  ClassifyOptions opts = {});

// Finite log-moment of the restriction to {|x| > 1}.
ClassificationReport logmoment_check(const SpectralDensity& d);

const char* to_string(Verdict v);
const char* to_string(DistClass c);

}  // namespace levyfactor
