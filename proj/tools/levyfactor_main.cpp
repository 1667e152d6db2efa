// levyfactor command line: classify / map / verify / simulate / catalogue.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "levyfactor/cli.hpp"

namespace {

using levyfactor::LawDocument;

// Law selection shared by most subcommands: positional JSON document,
// or --law with repeated --param key=value.
struct LawArgs {
    std::string doc_path;
    std::string law;
    std::vector<std::string> params;

    void attach(CLI::App* cmd) {
        cmd->add_option("doc", doc_path, "law document (JSON file)");
        cmd->add_option("--law", law, "catalogue law name");
        cmd->add_option("--param", params, "law parameter key=value (repeatable)");
    }

    LawDocument resolve() const {
        if (!doc_path.empty() && !law.empty())
            throw std::invalid_argument("give either a document file or --law, not both");
        if (!doc_path.empty()) return levyfactor::load_law_document(doc_path);
        if (law.empty()) throw std::invalid_argument("no law given (document file or --law)");
        LawDocument doc;
        doc.law = law;
        for (const std::string& kv : params) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("bad --param '" + kv + "' (expected key=value)");
            doc.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
        return doc;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"factorization calculus of selfdecomposable laws"};
    app.require_subcommand(1);

    // classify
    auto* classify = app.add_subcommand("classify", "membership test for a distribution class");
    LawArgs classify_law;
    classify_law.attach(classify);
    levyfactor::cli::ClassifyFlags cflags;
    classify->add_option("--class", cflags.dist_class, "L, U, Lf, Ln, Lnf or IDlog")
        ->required();
    classify->add_option("--n", cflags.n, "filtration index for Ln/Lnf");
    classify->add_option("--tol", cflags.tolerance, "divided-difference tolerance");

    // map
    auto* map_cmd = app.add_subcommand("map", "apply a random-integral map to the exponent");
    LawArgs map_law;
    map_law.attach(map_cmd);
    std::string map_op;
    bool map_force = false;
    levyfactor::cli::GridFlags map_grid;
    std::string map_out;
    map_cmd->add_option("--op", map_op, "I, J, invI, invJ, invJI or lf")->required();
    map_cmd->add_option("--grid-min", map_grid.lo, "grid lower end");
    map_cmd->add_option("--grid-max", map_grid.hi, "grid upper end");
    map_cmd->add_option("--grid-points", map_grid.points, "grid point count");
    map_cmd->add_flag("--force", map_force, "map even when the log-moment flag is unknown");
    map_cmd->add_option("--out", map_out, "write CSV here instead of stdout");

    // verify
    auto* verify = app.add_subcommand("verify", "factorization identity checks");
    LawArgs verify_law;
    verify_law.attach(verify);
    levyfactor::cli::VerifyFlags vflags;
    verify->add_option("--mode", vflags.mode, "exponent, spectral or mc");
    verify->add_option("--tol", vflags.tolerance, "residual tolerance");
    verify->add_option("--mc-tol", vflags.mc_tolerance, "Monte Carlo sup-distance tolerance");
    verify->add_option("--seed", vflags.seed, "RNG seed (mc mode)");
    verify->add_option("--n", vflags.n, "sample count (mc mode)");
    verify->add_option("--out", vflags.out_file, "write the mc CSV curve here");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "sample a law and compare empirical cf");
    LawArgs sim_law;
    sim_law.attach(simulate);
    levyfactor::cli::SimulateFlags sflags;
    simulate->add_option("--seed", sflags.seed, "RNG seed");
    simulate->add_option("--n", sflags.n, "sample count");
    simulate->add_option("--T", sflags.truncation, "horizon of the exponential-decay integral");
    simulate->add_option("--K", sflags.series_cutoff, "Laplace series cutoff");
    simulate->add_flag("--ramp", sflags.ramp, "sample the ramp integral (compound Poisson laws)");
    simulate->add_option("--grid-min", sflags.grid.lo, "cf grid lower end");
    simulate->add_option("--grid-max", sflags.grid.hi, "cf grid upper end");
    simulate->add_option("--grid-points", sflags.grid.points, "cf grid point count");
    simulate->add_option("--out", sflags.out_file, "write CSV here instead of stdout");

    // catalogue
    auto* cat = app.add_subcommand("catalogue", "list the closed-form law registry");
    bool cat_json = false;
    std::string cat_law;
    cat->add_flag("--json", cat_json, "machine-readable listing");
    cat->add_option("--law", cat_law, "show a single law");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed())
            return levyfactor::cli::cmd_classify(classify_law.resolve(), cflags, std::cout,
                                                 std::cerr);
        if (map_cmd->parsed())
            return levyfactor::cli::cmd_map(map_law.resolve(), map_op, map_grid, map_force,
                                            map_out, std::cout, std::cerr);
        if (verify->parsed())
            return levyfactor::cli::cmd_verify(verify_law.resolve(), vflags, std::cout,
                                               std::cerr);
        if (simulate->parsed())
            return levyfactor::cli::cmd_simulate(sim_law.resolve(), sflags, std::cout,
                                                 std::cerr);
        if (cat->parsed())
            return levyfactor::cli::cmd_catalogue(cat_json, cat_law, std::cout, std::cerr);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}
