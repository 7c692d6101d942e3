// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "pho/verify.hpp"

namespace {

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> checks; // names in the verify check list
    std::optional<double> time_limit; // seconds, summed over the checks
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "spectrum matches the iterated chain", {"chain recurrence matches closed forms"}, 1.0},
        {2, "eigenfunctions orthonormal and solve the Schrodinger equation",
         {"orthonormality (n<=10)", "Schrodinger residual (n<=10)"}, 10.0},
        {3, "factorization chain reproduces closed-form eigenfunctions",
         {"factorization chain vs closed form (n<=4)"}, std::nullopt},
        {4, "su(1,1) commutators and grid realization",
         {"interior commutators, relative (D in 16, 64, 256)", "grid ladder realization (n<=6)",
          "grid shift operators A_n, A_n^+ (n<=6)"},
         std::nullopt},
        {5, "BG states are eigenvectors of M-", {"BG eigen-residual on |z|<=3"}, std::nullopt},
        {6, "GP series equals the displacement exponential",
         {"GP series vs displacement exponential (|xi|<=1.2, D=256)"}, 30.0},
        {7, "BG fixed points S=0 and Q=-1", {"BG fixed points S=0, Q=-1 (|z|<=3)"}, std::nullopt},
        {8, "GP squeezing and Q sign structure", {"GP sign structure (s=1)"}, std::nullopt},
        {9, "resolution of identity moments",
         {"gp moments (n<=10)", "bg moments (n<=8)", "Meijer-G moments k=1..8"}, 60.0},
        {10, "oracle equivalence",
         {"expectation words vs brute-force double sum (D<=12)", "bg_state vs recursion solve"}, std::nullopt},
    };
    return all;
}

const pho::CheckResult* find(const pho::CheckList& list, const std::string& name) {
    for (const auto& r : list.results())
        if (r.name == name) return &r;
    return nullptr;
}

} // namespace

int main() {
    const auto list = pho::run_all_checks();
    int failed = 0;
    for (const auto& c : criteria()) {
        bool ok = true;
        double seconds = 0.0;
        std::string parts;
        for (const auto& name : c.checks) {
            const auto* r = find(list, name);
            if (!parts.empty()) parts += "; ";
            if (r == nullptr) {
                ok = false;
                parts += name + ": missing";
                continue;
            }
            ok = ok && r->passed;
            seconds += r->seconds;
            parts += name + ": " + pho::format_number(r->value);
            if (r->tolerance > 0.0) parts += " <= " + pho::format_number(r->tolerance);
            if (!r->detail.empty()) parts += " (" + r->detail + ")";
        }
        char time_text[64];
        std::snprintf(time_text, sizeof time_text, "%.2fs", seconds);
        std::string timing = time_text;
        if (c.time_limit) {
            ok = ok && seconds < *c.time_limit;
            std::snprintf(time_text, sizeof time_text, " < %.0fs", *c.time_limit);
            timing += time_text;
        }
        if (!ok) ++failed;
        std::cout << (ok ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << " | " << parts << " | " << timing
                  << '\n';
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
    return failed == 0 ? 0 : 1;
}
