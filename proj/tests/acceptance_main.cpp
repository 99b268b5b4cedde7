// Acceptance matrix: one PASS/FAIL line per criterion, failing checks listed
// underneath. Criterion 8 runs only with --include-sz32.

#include <cstring>
#include <iostream>

#include "acceptance.hpp"

using namespace hopfcert::acceptance;

int main(int argc, char** argv) {
    Options opts;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--include-sz32") == 0) opts.include_stretch = true;
    }
    bool ok = true;
    for (int id = 1; id <= kCriterionCount; ++id) {
        const CriterionResult r = run_criterion(id, opts);
        std::cout << summary_line(r) << "  (" << r.millis << " ms)\n";
        for (const auto& c : r.checks) {
            if (!c.pass) std::cout << "      failed: " << c.name << ": " << c.detail << "\n";
        }
        std::cout.flush();
        if (!r.skipped && !r.pass()) ok = false;
    }
    return ok ? 0 : 1;
}
