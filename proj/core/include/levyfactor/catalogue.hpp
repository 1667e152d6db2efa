// Closed-form laws with exponents, spectral densities and known
// classifications. These entries are the oracles the rest of the
// library is tested against.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levyfactor/classify.hpp"
#include "levyfactor/exponent.hpp"
#include "levyfactor/spectral.hpp"

namespace levyfactor {

struct LawSpec {
    std::string name;
    std::map<std::string, double> params;
    LevyExponent exponent;
    std::optional<SpectralDensity> spectral;
    Tristate has_log_moment = Tristate::unknown;
    // Known class memberships ("L", "U", "Lf", "L1", ...) with the
    // verdict each classifier is expected to reproduce.
    std::map<std::string, Verdict> known_classes;
    std::string provenance;
};

// Registry lookup. Omitted parameters take documented defaults
// (alpha=1, lambda=1, a=1, u=1, c=1, beta=1, K=2000, odd=0); rate and
// shape parameters must be positive, the stable index must satisfy
// 0 < alpha <= 2. Unknown names and out-of-range parameters raise
// std::invalid_argument.
LawSpec get_law(const std::string& name, const std::map<std::string, double>& params = {});

std::vector<std::string> catalogue_names();

struct OracleEntry {
    LawSpec law;
    std::map<std::string, Verdict> expected;
};

// Fixed suite of (law, expected classifier verdicts) pairs consumed by
// the test harness; includes synthetic non-members alongside the
// registry entries.
std::vector<OracleEntry> oracle_table();

// Coefficient rules for the Laplace series laws. The scaling u/(pi k)
// makes the full series characteristic function exactly
// t u / sinh(t u); 2u/(pi (2k-1)) gives 1/cosh(u t).
std::vector<double> harmonic_coefficients(int count, double u);
std::vector<double> odd_harmonic_coefficients(int count, double u);

}  // namespace levyfactor
