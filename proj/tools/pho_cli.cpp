#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pho/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Pseudoharmonic oscillator: spectrum, su(1,1) coherent states and their nonclassicality"};
    app.require_subcommand(1);
    app.fallthrough();

    pho::RunConfig cfg;
    double s = 1.0;
    double g = 0.0;
    std::string family = "gp";
    std::string grid;
    std::string z;
    unsigned nmax = 0;
    double tol = 0.0;

    auto* s_opt = app.add_option("--s", s, "Parameter s (default 1)");
    auto* g_opt = app.add_option("--g", g, "Coupling g = s(s+1)");
    s_opt->excludes(g_opt);
    app.add_option("--family", family, "Coherent-state family")->check(CLI::IsMember({"bg", "gp"}));
    app.add_option("--zmin", cfg.zmin, "Scan start (real z)");
    app.add_option("--zmax", cfg.zmax, "Scan end (real z)");
    app.add_option("--steps", cfg.steps, "Number of scan points");
    app.add_option("--trunc", cfg.trunc, "Fock truncation D (default: from the tail bound)");
    auto* nmax_opt = app.add_option("--nmax", nmax, "Highest level n");
    auto* tol_opt = app.add_option("--tol", tol, "Relative tolerance for identity-check");
    app.add_option("--out", cfg.out, "Write the CSV here instead of stdout");
    auto* grid_opt = app.add_option("--grid", grid, "Grid as min:max:count");
    app.add_option("--n", cfg.n, "Level for wavefn");
    auto* z_opt = app.add_option("--z", z, "State label as re or re,im");

    for (const auto& sub : pho::subcommands()) app.add_subcommand(sub.name, sub.summary);

    try {
        app.parse(argc, argv);
        cfg.command = app.get_subcommands().front()->get_name();
        if (*s_opt) cfg.s = s;
        if (*g_opt) cfg.g = g;
        if (*nmax_opt) cfg.nmax = nmax;
        if (*tol_opt) cfg.tol = tol;
        if (*grid_opt) cfg.grid = pho::parse_grid(grid);
        if (*z_opt) cfg.z = pho::parse_complex(z);
        cfg.family = pho::parse_family(family);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return pho::exit_usage;
    } catch (const pho::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return pho::exit_usage;
    }
    return pho::run(cfg, std::cout, std::cerr);
}
