// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>

#include "besselstop/acceptance.hpp"

int main() {
    besselstop::AcceptanceOptions opt;
    bool all = true;
    opt.on_row = [&](const besselstop::AcceptanceRow& r) {
        all = all && r.pass;
        std::printf("%s  %2d  %-30s  %8.3fs (limit %.0fs)  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.limit_seconds, r.detail.c_str());
        std::fflush(stdout);
    };
    besselstop::run_acceptance(opt);
    return all ? 0 : 1;
}
