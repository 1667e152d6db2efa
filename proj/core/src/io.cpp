#include "levyfactor/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "levyfactor/exponent.hpp"

namespace levyfactor {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

LawDocument document_from_json(const nlohmann::json& j) {
    LawDocument doc;
    const bool has_law = j.contains("law");
    const bool has_table = j.contains("table") || j.contains("table_file");
    if (has_law == has_table)
        throw std::invalid_argument(
            "law document: exactly one of \"law\" or \"table\"/\"table_file\" required");
    if (has_law) {
        doc.law = j.at("law").get<std::string>();
        if (j.contains("params"))
            for (auto& [key, value] : j.at("params").items())
                doc.params[key] = value.get<double>();
        return doc;
    }
    if (j.contains("table_file")) {
        doc.table = read_density_csv_file(j.at("table_file").get<std::string>());
        return doc;
    }
    std::vector<std::pair<double, double>> rows;
    for (const auto& row : j.at("table")) {
        if (!row.is_array() || row.size() != 2)
            throw std::invalid_argument("law document: table rows must be [x, density]");
        rows.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    std::vector<double> rp, mp, rn, mn;
    std::sort(rows.begin(), rows.end());
    for (auto& [x, m] : rows) {
        if (x > 0.0) {
            rp.push_back(x);
            mp.push_back(m);
        } else if (x < 0.0) {
            rn.push_back(-x);
            mn.push_back(m);
        }
    }
    std::reverse(rn.begin(), rn.end());
    std::reverse(mn.begin(), mn.end());
    SpectralDensity d;
    if (!rp.empty()) d.pos = tabulated_side(std::move(rp), std::move(mp));
    if (!rn.empty()) d.neg = tabulated_side(std::move(rn), std::move(mn));
    doc.table = std::move(d);
    return doc;
}

}  // namespace

LawDocument parse_law_document(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    return document_from_json(j);
}

LawDocument load_law_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open law document: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    return document_from_json(j);
}

SpectralDensity read_density_csv(std::istream& in) {
    std::vector<std::pair<double, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double x, m;
        if (!(ls >> x >> m)) continue;  // header or malformed row
        rows.emplace_back(x, m);
    }
    if (rows.empty()) throw std::invalid_argument("density csv: no data rows");
    std::sort(rows.begin(), rows.end());
    std::vector<double> rp, mp, rn, mn;
    for (auto& [x, m] : rows) {
        if (x > 0.0) {
            rp.push_back(x);
            mp.push_back(m);
        } else if (x < 0.0) {
            rn.push_back(-x);
            mn.push_back(m);
        }
    }
    std::reverse(rn.begin(), rn.end());
    std::reverse(mn.begin(), mn.end());
    SpectralDensity d;
    if (!rp.empty()) d.pos = tabulated_side(std::move(rp), std::move(mp));
    if (!rn.empty()) d.neg = tabulated_side(std::move(rn), std::move(mn));
    return d;
}

SpectralDensity read_density_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open density csv: " + path);
    return read_density_csv(in);
}

LawSpec resolve_document(const LawDocument& doc) {
    if (doc.law) return get_law(*doc.law, doc.params);
    LawSpec law;
    law.name = "table";
    law.spectral = doc.table;
    Triple tr;
    tr.spectral = doc.table;
    law.exponent = exponent_from_triple(tr);
    law.exponent.kind = ExponentKind::spectral_backed;
    law.exponent.name = "table";
    law.has_log_moment = Tristate::unknown;
    return law;
}

}  // namespace levyfactor
