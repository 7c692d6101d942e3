#pragma once

// Command dispatch behind the pho command-line tool. Parsing lives in
// tools/; everything here works on a filled-in RunConfig so tests can drive
// it without a process boundary.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "algebra.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "identity.hpp"
#include "nonclassical.hpp"
#include "params.hpp"
#include "spectrum.hpp"
#include "states.hpp"
#include "verify.hpp"

namespace pho {

enum ExitCode : int { exit_pass = 0, exit_check_failed = 1, exit_usage = 2 };

/// Parse or semantic error in the command line.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Subcommand {
    std::string name;
    std::string summary;
};

inline const std::vector<Subcommand>& subcommands() {
    static const std::vector<Subcommand> all{
        {"spectrum", "Energies E_n for n = 0..nmax"},
        {"wavefn", "Eigenfunction psi_n sampled on a grid"},
        {"state", "Fock coefficients of a BG or GP coherent state"},
        {"metrics-scan", "Squeezing and Mandel Q along real z"},
        {"identity-check", "Resolution-of-identity moments against closed forms"},
        {"algebra-check", "Truncated commutators and grid ladder residuals"},
        {"verify-all", "Every internal consistency check, as a table"},
    };
    return all;
}

struct RunConfig {
    std::string command;
    std::optional<double> s;
    std::optional<double> g;
    StateFamily family = StateFamily::gilmore_perelomov;
    double zmin = -0.95;
    double zmax = 0.95;
    std::size_t steps = 191;
    std::size_t trunc = 0; // 0 picks the dimension from the tail bound
    std::optional<unsigned> nmax;
    std::optional<double> tol;
    std::string out; // empty writes to the given stream
    std::optional<GridSpec> grid;
    unsigned n = 0;
    std::complex<double> z = 0.5;
};

inline ModelParams resolve_params(const RunConfig& cfg) {
    if (cfg.s && cfg.g) throw UsageError("--s and --g are mutually exclusive");
    if (cfg.g) return ModelParams::from_g(*cfg.g);
    return ModelParams::from_s(cfg.s.value_or(1.0));
}

inline StateFamily parse_family(std::string_view v) {
    if (v == "bg") return StateFamily::barut_girardello;
    if (v == "gp") return StateFamily::gilmore_perelomov;
    throw UsageError("--family must be bg or gp");
}

namespace detail {

inline double parse_double(std::string_view v, const char* what) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw UsageError(std::string(what) + ": cannot parse '" + std::string(v) + "'");
    return out;
}

} // namespace detail

/// "min:max:count", graded spacing.
inline GridSpec parse_grid(std::string_view v) {
    const auto a = v.find(':');
    const auto b = a == std::string_view::npos ? a : v.find(':', a + 1);
    if (b == std::string_view::npos) throw UsageError("--grid expects min:max:count");
    GridSpec g;
    g.x_min = detail::parse_double(v.substr(0, a), "--grid min");
    g.x_max = detail::parse_double(v.substr(a + 1, b - a - 1), "--grid max");
    const double count = detail::parse_double(v.substr(b + 1), "--grid count");
    if (!(count >= 8.0) || count != std::floor(count)) throw UsageError("--grid count must be an integer >= 8");
    g.count = static_cast<std::size_t>(count);
    try {
        g.validate();
    } catch (const DomainError& e) {
        throw UsageError(std::string("--grid: ") + e.what());
    }
    return g;
}

/// "re" or "re,im".
inline std::complex<double> parse_complex(std::string_view v) {
    const auto comma = v.find(',');
    if (comma == std::string_view::npos) return detail::parse_double(v, "--z");
    return {detail::parse_double(v.substr(0, comma), "--z"), detail::parse_double(v.substr(comma + 1), "--z")};
}

namespace detail {

inline int cmd_spectrum(const RunConfig& cfg, const ModelParams& p, std::ostream& os) {
    const unsigned nmax = cfg.nmax.value_or(10);
    os << "n,energy\n";
    for (unsigned n = 0; n <= nmax; ++n) os << n << ',' << format_number(energy(p, n)) << '\n';
    return exit_pass;
}

inline int cmd_wavefn(const RunConfig& cfg, const ModelParams& p, std::ostream& os) {
    const auto f = eigenfunction(p, cfg.n, cfg.grid.value_or(default_grid(p, cfg.n)));
    os << "x,psi\n";
    for (std::size_t i = 0; i < f.size(); ++i) os << format_number(f.nodes[i]) << ',' << format_number(f.values[i]) << '\n';
    return exit_pass;
}

inline int cmd_state(const RunConfig& cfg, const ModelParams& p, std::ostream& os) {
    StateTruncation t;
    t.dim = cfg.trunc != 0 ? cfg.trunc : required_dimension(cfg.family, p, std::abs(cfg.z), t.tail_threshold);
    const auto v = cfg.family == StateFamily::barut_girardello ? bg_state(p, cfg.z, t) : gp_state(p, cfg.z, t);
    os << "n,re,im,abs2\n";
    for (std::size_t n = 0; n < v.dim(); ++n)
        os << n << ',' << format_number(v.coeffs[n].real()) << ',' << format_number(v.coeffs[n].imag()) << ','
           << format_number(std::norm(v.coeffs[n])) << '\n';
    return exit_pass;
}

inline int cmd_metrics_scan(const RunConfig& cfg, const ModelParams& p, std::ostream& os, std::ostream& err) {
    double zmin = cfg.zmin;
    double zmax = cfg.zmax;
    if (zmin > zmax) throw UsageError("--zmin must not exceed --zmax");
    if (cfg.family == StateFamily::gilmore_perelomov) {
        constexpr double edge = 0.999;
        if (zmin < -edge || zmax > edge) {
            zmin = std::max(zmin, -edge);
            zmax = std::min(zmax, edge);
            err << "warning: gp range clipped to [" << format_number(zmin) << ", " << format_number(zmax)
                << "] inside the unit disk\n";
        }
        if (zmin > zmax) throw UsageError("gp range lies outside (-1, 1)");
    }
    write_metrics_csv(os, scan(cfg.family, p, zmin, zmax, cfg.steps));
    return exit_pass;
}

inline int cmd_identity(const RunConfig& cfg, const ModelParams& p, std::ostream& os, std::ostream& err) {
    const unsigned nmax = cfg.nmax.value_or(cfg.family == StateFamily::gilmore_perelomov ? 10 : 8);
    if (nmax > 12) throw UsageError("--nmax must be <= 12 for identity-check");
    const double tol = cfg.tol.value_or(default_identity_tolerance(cfg.family));
    try {
        const auto rep = verify_identity(cfg.family, p, nmax, tol);
        write_moment_table(os, rep);
        if (!rep.passed) {
            err << "identity-check: max relative error " << format_number(rep.max_rel_err) << " exceeds "
                << format_number(tol) << '\n';
            return exit_check_failed;
        }
        return exit_pass;
    } catch (const ConvergenceError& e) {
        err << e.what() << "\nper-n residuals:";
        for (double r : e.per_item()) err << ' ' << format_number(r);
        err << '\n';
        return exit_check_failed;
    }
}

inline int cmd_algebra(const RunConfig& cfg, const ModelParams& p, std::ostream& os) {
    const TruncationSpec t{cfg.trunc != 0 ? cfg.trunc : 256, 2};
    t.validate();
    const auto rep = commutator_check(p, t);
    CheckList list;
    const std::string mod = "algebra";
    const std::string dim = " (D=" + std::to_string(t.dim) + ")";
    list.at_most(mod, "[M-,M+] - 2M0" + dim, 1e-12, [&] { return rep.minus_plus / rep.scale; });
    list.at_most(mod, "[M0,M+] - M+" + dim, 1e-12, [&] { return rep.zero_plus / rep.scale; });
    list.at_most(mod, "[M0,M-] + M-" + dim, 1e-12, [&] { return rep.zero_minus / rep.scale; });
    list.at_most(mod, "H - [M-,M+]" + dim, 1e-12, [&] { return rep.hamiltonian / rep.scale; });
    for (unsigned n = 0; n <= 6; ++n) {
        const auto spec = cfg.grid.value_or(default_grid(p, n + 1));
        const auto ladder = grid_ladder_check(p, n, spec);
        const auto shift = grid_shift_check(p, n, spec);
        const std::string at = " n=" + std::to_string(n);
        list.at_most(mod, "grid M+" + at, 1e-4, [&] { return ladder.raise; });
        list.at_most(mod, "grid M-" + at, 1e-4, [&] { return ladder.lower; });
        list.at_most(mod, "grid A_n^+" + at, 1e-4, [&] { return shift.raise; });
        list.at_most(mod, "grid A_n" + at, 1e-4, [&] { return shift.lower; });
    }
    write_check_table(os, list);
    return list.all_passed() ? exit_pass : exit_check_failed;
}

inline int cmd_verify_all(std::ostream& os) {
    const auto list = run_all_checks();
    write_check_table(os, list);
    return list.all_passed() ? exit_pass : exit_check_failed;
}

inline int dispatch(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
    const auto p = resolve_params(cfg);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, p, os);
    if (cfg.command == "wavefn") return cmd_wavefn(cfg, p, os);
    if (cfg.command == "state") return cmd_state(cfg, p, os);
    if (cfg.command == "metrics-scan") return cmd_metrics_scan(cfg, p, os, err);
    if (cfg.command == "identity-check") return cmd_identity(cfg, p, os, err);
    if (cfg.command == "algebra-check") return cmd_algebra(cfg, p, os);
    if (cfg.command == "verify-all") return cmd_verify_all(os);
    throw UsageError("unknown subcommand '" + cfg.command + "'");
}

} // namespace detail

/// Runs one subcommand. Output goes to cfg.out when set, otherwise to os.
/// Returns 0 on success, 1 when a check fails, 2 on bad input.
inline int run(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
    try {
        if (cfg.out.empty()) return detail::dispatch(cfg, os, err);
        std::ostringstream buf;
        const int code = detail::dispatch(cfg, buf, err);
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) throw UsageError("cannot open --out path '" + cfg.out + "'");
        file << buf.str();
        return code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_check_failed;
    }
}

} // namespace pho
