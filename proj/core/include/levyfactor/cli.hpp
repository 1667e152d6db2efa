// Command implementations behind the levyfactor binary. Each returns a
// process exit code: 0 success / conclusive-true, 1 usage or input
// error, 2 numerical inconclusive or conclusive-false on verification.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "levyfactor/io.hpp"

namespace levyfactor::cli {

struct GridFlags {
    double lo = -20.0;
    double hi = 20.0;
    int points = 4001;
};

struct ClassifyFlags {
    std::string dist_class = "L";  // L, U, Lf, Ln, Lnf, IDlog
    int n = 1;                     // filtration index for Ln / Lnf
    double tolerance = 1e-9;
};

struct VerifyFlags {
    std::string mode = "exponent";  // exponent, spectral, mc
    double tolerance = 1e-5;
    double mc_tolerance = 0.03;
    std::uint64_t seed = 1;
    std::size_t n = 100000;
    std::string out_file;
};

struct SimulateFlags {
    std::uint64_t seed = 1;
    std::size_t n = 100000;
    double truncation = 40.0;
    int series_cutoff = 2000;
    bool ramp = false;  // compound-Poisson laws: sample the ramp integral
    GridFlags grid{-10.0, 10.0, 201};
    std::string out_file;
};

int cmd_classify(const LawDocument& doc, const ClassifyFlags& flags,
                 std::ostream& out, std::ostream& err);

int cmd_map(const LawDocument& doc, const std::string& op, const GridFlags& grid,
            bool force, const std::string& out_file, std::ostream& out,
            std::ostream& err);

int cmd_verify(const LawDocument& doc, const VerifyFlags& flags, std::ostream& out,
               std::ostream& err);

int cmd_simulate(const LawDocument& doc, const SimulateFlags& flags, std::ostream& out,
                 std::ostream& err);

int cmd_catalogue(bool as_json, const std::string& law_filter, std::ostream& out,
                  std::ostream& err);

}  // namespace levyfactor::cli
