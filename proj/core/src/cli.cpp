#include "levyfactor/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "levyfactor/classify.hpp"
#include "levyfactor/integral_maps.hpp"
#include "levyfactor/simulate.hpp"

namespace levyfactor::cli {

namespace {

using nlohmann::json;

json witness_json(const Witness& w) {
    return json{{"x", w.x}, {"violated", w.violated}, {"magnitude", w.magnitude}};
}

json report_json(const ClassificationReport& rep) {
    json witnesses = json::array();
    for (const Witness& w : rep.witnesses) witnesses.push_back(witness_json(w));
    json j{{"class", to_string(rep.class_tested)},
           {"verdict", to_string(rep.verdict)},
           {"witnesses", witnesses},
           {"tolerance", rep.tolerance}};
    if (rep.class_tested == DistClass::Ln || rep.class_tested == DistClass::Lnf) {
        j["n"] = rep.n;
        j["failure_stage"] = rep.failure_stage;
    }
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

int write_out(const std::string& text, const std::string& out_file, std::ostream& out,
              std::ostream& err) {
    if (out_file.empty()) {
        out << text;
        return 0;
    }
    std::ofstream f(out_file);
    if (!f) {
        err << "error: cannot write " << out_file << "\n";
        return 1;
    }
    f << text;
    return 0;
}

}  // namespace

int cmd_classify(const LawDocument& doc, const ClassifyFlags& flags, std::ostream& out,
                 std::ostream& err) {
    LawSpec law;
    try {
        law = resolve_document(doc);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
    if (!law.spectral) {
        err << "error: law '" << law.name << "' carries no spectral density to classify\n";
        return 1;
    }
    ClassifyOptions opts;
    opts.tolerance = flags.tolerance;
    ClassificationReport rep;
    try {
        if (flags.dist_class == "L")
            rep = classify_L(*law.spectral, opts);
        else if (flags.dist_class == "U")
            rep = classify_U(*law.spectral, opts);
        else if (flags.dist_class == "Lf")
            rep = classify_Lf(*law.spectral, opts);
        else if (flags.dist_class == "Ln")
            rep = classify_Ln(*law.spectral, flags.n, opts);
        else if (flags.dist_class == "Lnf")
            rep = classify_Lnf(*law.spectral, flags.n, opts);
        else if (flags.dist_class == "IDlog")
            rep = logmoment_check(*law.spectral);
        else {
            err << "error: unknown class '" << flags.dist_class << "'\n";
            return 1;
        }
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    }
    out << report_json(rep).dump(2) << "\n";
    return rep.verdict == Verdict::inconclusive ? 2 : 0;
}

int cmd_map(const LawDocument& doc, const std::string& op, const GridFlags& grid,
            bool force, const std::string& out_file, std::ostream& out,
            std::ostream& err) {
    LawSpec law;
    try {
        law = resolve_document(doc);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
    const bool needs_log_moment = op == "I" || op == "lf";
    if (needs_log_moment && law.exponent.has_log_moment == Tristate::unknown && !force) {
        err << "error: log-moment flag of '" << law.name
            << "' is unknown; pass --force to map anyway\n";
        return 1;
    }
    std::vector<double> ts;
    try {
        ts = make_grid(grid.lo, grid.hi, grid.points);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
    LevyExponent exp = law.exponent;
    if (force && exp.has_log_moment == Tristate::unknown) exp.has_log_moment = Tristate::yes;

    std::ostringstream csv;
    csv << "# law=" << law.name << " op=" << op << " grid=[" << format_double(grid.lo)
        << "," << format_double(grid.hi) << "] points=" << grid.points << "\n";
    csv << "t,re,im,err_est\n";
    try {
        std::vector<QuadResult<cdouble>> vals(ts.size());
        parallel_for(ts.size(), [&](std::size_t i) {
            const double t = ts[i];
            if (op == "I")
                vals[i] = map_I_value(exp, t);
            else if (op == "J")
                vals[i] = map_J_value(exp, t);
            else if (op == "invI")
                vals[i] = inv_I_value(exp, t);
            else if (op == "invJ")
                vals[i] = inv_J_value(exp, t);
            else if (op == "invJI")
                vals[i] = inv_JI_value(exp, t);
            else if (op == "lf")
                vals[i] = lf_characteristic_value(exp, t);
            else
                throw std::invalid_argument("unknown map op '" + op + "'");
        });
        for (std::size_t i = 0; i < ts.size(); ++i)
            csv << format_double(ts[i]) << ',' << format_double(vals[i].value.real())
                << ',' << format_double(vals[i].value.imag()) << ','
                << format_double(vals[i].error) << "\n";
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    }
    return write_out(csv.str(), out_file, out, err);
}

int cmd_verify(const LawDocument& doc, const VerifyFlags& flags, std::ostream& out,
               std::ostream& err) {
    LawSpec law;
    try {
        law = resolve_document(doc);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
    try {
        if (flags.mode == "exponent") {
            auto rep = verify_factorization(law.exponent, verification_grid(),
                                            flags.tolerance);
            json j{{"mode", "exponent"},
                   {"law", law.name},
                   {"residual_sup", rep.residual_sup},
                   {"error_estimate", rep.error_estimate},
                   {"verdict", rep.verdict},
                   {"inconclusive", rep.inconclusive}};
            out << j.dump(2) << "\n";
            return rep.verdict ? 0 : 2;
        }
        if (flags.mode == "spectral") {
            if (!law.spectral) {
                err << "error: law '" << law.name << "' carries no spectral density\n";
                return 1;
            }
            auto image = lm_from_G(*law.spectral);
            const double hi =
                std::isfinite(law.spectral->pos.cutoff) ? law.spectral->pos.cutoff : 20.0;
            auto grid = geometric_grid(0.05, hi * 0.95, 41);
            auto rep = dderiv_relation(*law.spectral, image, grid);
            json j{{"mode", "spectral"},
                   {"law", law.name},
                   {"residual_sup", rep.residual_sup},
                   {"verdict", rep.residual_sup < flags.tolerance}};
            out << j.dump(2) << "\n";
            return rep.residual_sup < flags.tolerance ? 0 : 2;
        }
        if (flags.mode == "mc") {
            SimConfig cfg;
            cfg.seed = flags.seed;
            cfg.n_samples = flags.n;
            auto res = verify_factorization_mc(law, cfg);
            json j{{"mode", "mc"},
                   {"law", law.name},
                   {"seed", flags.seed},
                   {"n", flags.n},
                   {"sup_distance", res.sup_distance},
                   {"ci_halfwidth", res.ci_halfwidth},
                   {"verdict", res.sup_distance < flags.mc_tolerance}};
            out << j.dump(2) << "\n";
            if (!flags.out_file.empty()) {
                int rc = write_out(sim_result_csv(res), flags.out_file, out, err);
                if (rc != 0) return rc;
            }
            return res.sup_distance < flags.mc_tolerance ? 0 : 2;
        }
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    }
    err << "error: unknown verify mode '" << flags.mode << "'\n";
    return 1;
}

int cmd_simulate(const LawDocument& doc, const SimulateFlags& flags, std::ostream& out,
                 std::ostream& err) {
    LawSpec law;
    try {
        law = resolve_document(doc);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
    SimConfig cfg;
    cfg.seed = flags.seed;
    cfg.n_samples = flags.n;
    cfg.truncation = flags.truncation;
    cfg.series_cutoff = flags.series_cutoff;
    cfg.t_grid = make_grid(flags.grid.lo, flags.grid.hi, flags.grid.points);

    try {
        SimResult res;
        if (law.name == "zero") {
            std::vector<double> zeros(cfg.n_samples, 0.0);
            res = empirical_cf(zeros, cfg.t_grid);
            attach_target(res, [](double) { return cdouble{1.0, 0.0}; });
        } else if (law.name == "gamma") {
            const double alpha = law.params.at("alpha");
            const double lambda = law.params.at("lambda");
            auto xs = sample_cp_path_integral(
                alpha, [lambda](RngStream& r) { return r.exponential() / lambda; },
                Decay::exp_decay, cfg);
            res = empirical_cf(xs, cfg.t_grid);
            attach_target(res, [f = law.exponent.phi](double t) { return std::exp(f(t)); });
        } else if (law.name == "cp_exp") {
            const double alpha = law.params.at("alpha");
            const double lambda = law.params.at("lambda");
            const Decay decay = flags.ramp ? Decay::linear_ramp : Decay::exp_decay;
            auto xs = sample_cp_path_integral(
                alpha, [lambda](RngStream& r) { return r.exponential() / lambda; }, decay,
                cfg);
            res = empirical_cf(xs, cfg.t_grid);
            if (flags.ramp) {
                LevyExponent ramped = map_J(law.exponent);
                attach_target(res, [ramped](double t) { return std::exp(ramped(t)); });
            } else {
                LevyExponent mapped = map_I(law.exponent);
                attach_target(res, [mapped](double t) { return std::exp(mapped(t)); });
            }
            // Exponential decay of the cp_exp driving process integrates to gamma.
        } else if (law.name == "d1") {
            const double u = law.params.at("u");
            auto coeffs = harmonic_coefficients(cfg.series_cutoff, u);
            auto xs = sample_laplace_series(coeffs, cfg);
            res = empirical_cf(xs, cfg.t_grid);
            attach_target(res, [f = law.exponent.phi](double t) { return std::exp(f(t)); });
        } else if (law.name == "half_d2") {
            auto coeffs = odd_harmonic_coefficients(cfg.series_cutoff, 1.0);
            auto xs = sample_laplace_series(coeffs, cfg, Innovation::sym_gamma_half);
            res = empirical_cf(xs, cfg.t_grid);
            attach_target(res, [f = law.exponent.phi](double t) { return std::exp(f(t)); });
        } else if (law.name == "laplace") {
            const double a = law.params.at("a");
            const double coeff[] = {a};
            auto xs = sample_laplace_series(coeff, cfg);
            res = empirical_cf(xs, cfg.t_grid);
            attach_target(res, [f = law.exponent.phi](double t) { return std::exp(f(t)); });
        } else if (law.name == "laplace_series") {
            LawSpec spec = law;
            std::vector<double> coeffs;
            for (int k = 1;; ++k) {
                auto it = spec.params.find("a" + std::to_string(k));
                if (it == spec.params.end()) break;
                coeffs.push_back(it->second);
            }
            if (coeffs.empty()) {
                const int count = spec.params.count("K")
                                      ? static_cast<int>(spec.params.at("K"))
                                      : cfg.series_cutoff;
                const double u = spec.params.count("u") ? spec.params.at("u") : 1.0;
                coeffs = spec.params.count("odd") && spec.params.at("odd") != 0.0
                             ? odd_harmonic_coefficients(count, u)
                             : harmonic_coefficients(count, u);
            }
            auto xs = sample_laplace_series(coeffs, cfg);
            res = empirical_cf(xs, cfg.t_grid);
            attach_target(res, [f = law.exponent.phi](double t) { return std::exp(f(t)); });
        } else {
            err << "error: no exact sampler for law '" << law.name << "'\n";
            return 1;
        }
        res.seed = cfg.seed;
        res.truncation = cfg.truncation;
        res.series_cutoff = cfg.series_cutoff;
        res.label = "simulate:" + law.name + (flags.ramp ? " (ramp)" : "");
        return write_out(sim_result_csv(res), flags.out_file, out, err);
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    }
}

int cmd_catalogue(bool as_json, const std::string& law_filter, std::ostream& out,
                  std::ostream& err) {
    std::vector<std::string> names = catalogue_names();
    if (!law_filter.empty()) {
        if (std::find(names.begin(), names.end(), law_filter) == names.end()) {
            err << "error: unknown law '" << law_filter << "'\n";
            return 1;
        }
        names = {law_filter};
    }
    if (as_json) {
        json arr = json::array();
        for (const auto& name : names) {
            LawSpec law = get_law(name);
            json classes = json::object();
            for (const auto& [cls, verdict] : law.known_classes)
                classes[cls] = to_string(verdict);
            json params = json::object();
            for (const auto& [key, value] : law.params) params[key] = value;
            arr.push_back({{"name", law.name},
                           {"params", params},
                           {"classes", classes},
                           {"has_log_moment", law.has_log_moment == Tristate::yes},
                           {"provenance", law.provenance}});
        }
        out << arr.dump(2) << "\n";
        return 0;
    }
    for (const auto& name : names) {
        LawSpec law = get_law(name);
        out << law.name;
        if (!law.params.empty()) {
            out << " (defaults:";
            for (const auto& [key, value] : law.params)
                out << ' ' << key << '=' << format_double(value);
            out << ')';
        }
        out << "\n  classes:";
        if (law.known_classes.empty()) out << " (none recorded)";
        for (const auto& [cls, verdict] : law.known_classes)
            out << ' ' << cls << '=' << to_string(verdict);
        out << "\n  " << law.provenance << "\n";
    }
    return 0;
}

}  // namespace levyfactor::cli
