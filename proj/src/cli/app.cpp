#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "scarf/cli.hpp"
#include "scarf/error.hpp"

namespace scarf::cli {

namespace {

using Handler = CommandResult (*)(const RunConfig&);

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table{
        {"spectrum", cmd_spectrum},   {"scan", cmd_scan},   {"crossings", cmd_crossings},
        {"wavefunction", cmd_wavefunction}, {"poles", cmd_poles}, {"verify", cmd_verify},
        {"matrix-demo", cmd_matrix_demo}};
    return table;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral analysis of the complex PT-symmetric Scarf-II potential"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key = value configuration file")->envname("SCARF_CONFIG");

    RunConfig cfg;
    std::string format = "csv";
    app.add_option("--v1", cfg.v1, "Strength of the real part (V1 > 0)");
    app.add_option("--v2", cfg.v2, "Strength of the imaginary part");
    app.add_option("--v2-from", cfg.v2_from, "Scan start");
    app.add_option("--v2-to", cfg.v2_to, "Scan end");
    app.add_option("--steps", cfg.steps, "Scan samples (scan) or energy samples (poles)");
    app.add_option("--n", cfg.n, "Quantum number");
    app.add_option("--branch", cfg.branch, "Spectral branch")->check(CLI::IsMember({"plus", "minus"}));
    app.add_option("--emin", cfg.emin, "Lower end of the pole scan");
    app.add_option("--emax", cfg.emax, "Upper end of the pole scan");
    app.add_option("--grid-l", cfg.grid_l, "Grid half-width");
    app.add_option("--grid-h", cfg.grid_h, "Grid step");
    app.add_option("--tol", cfg.tol, "Shooting tolerance on the normalized mismatch");
    app.add_option("--nmax", cfg.nmax, "Largest degree for the identity suite");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out_path, "Write machine-readable output here");
    app.add_flag("--numerical", cfg.numerical, "Add the shooting oracle");

    app.add_subcommand("spectrum", "Closed-form levels (one table row)");
    app.add_subcommand("scan", "Eigenvalue curves E(V2) as CSV");
    app.add_subcommand("crossings", "Accidental crossings and coalescence point");
    app.add_subcommand("wavefunction", "Sampled eigenstate");
    app.add_subcommand("poles", "Bound-state poles of T(E) from the Jost coefficient");
    app.add_subcommand("verify", "Property suites: identity, wronskian, orthogonality, pt, all")
        ->add_option("suite", cfg.suite, "Suite name");
    app.add_subcommand("matrix-demo", "Non-diagonalizable matrices at exceptional points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidArguments;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.format = format == "json" ? Format::Json : Format::Csv;

    CommandResult res;
    try {
        cfg.validate();
        res = handlers().at(cfg.command)(cfg);
    } catch (const SolverError& e) {
        err << "error: solver failure: " << e.what() << "\n";
        return kSolverFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidArguments;
    }

    const std::string body =
        cfg.format == Format::Json ? to_json(res.table, cfg.command, res.summary) : to_csv(res.table);
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << cfg.out_path << "\n";
            return kInvalidArguments;
        }
        f << body;
        out << res.summary;
    } else {
        out << body;
        err << res.summary;
    }
    return res.exit_code;
}

} // namespace scarf::cli
