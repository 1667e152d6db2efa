// Plain-format plumbing: JSON law documents, CSV density tables and
// locale-independent number formatting shared by the CLI and tests.
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "levyfactor/catalogue.hpp"
#include "levyfactor/spectral.hpp"

namespace levyfactor {

// Shortest round-trip decimal form, independent of the global locale.
std::string format_double(double v);

// Law document: either a catalogue reference {"law": name, "params":
// {...}} or an inline/tabulated density ({"table": [[x, m], ...]} or
// {"table_file": "path.csv"}). Exactly one of the two must be present.
struct LawDocument {
    std::optional<std::string> law;
    std::map<std::string, double> params;
    std::optional<SpectralDensity> table;
};

LawDocument parse_law_document(const std::string& json_text);
LawDocument load_law_document(const std::string& path);

// Tabulated density from CSV rows "x,density" (signed x selects the
// side); '#' lines and a non-numeric header row are skipped.
SpectralDensity read_density_csv(std::istream& in);
SpectralDensity read_density_csv_file(const std::string& path);

// Materializes a document: catalogue lookup, or a "table" LawSpec whose
// exponent integrates the tabulated measure.
LawSpec resolve_document(const LawDocument& doc);

}  // namespace levyfactor
