// Reference reproduction suite: one line per checkpoint, nonzero exit when a
// non-note checkpoint fails. Run with --criterion N to restrict to one group.

#include <cstring>
#include <iostream>
#include <string>

#include "nlew/reproduce.hpp"

int main(int argc, char** argv) {
    int criterion = 0;
    nlew::ReproduceOptions options;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            criterion = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--samples") == 0 && i + 1 < argc)
            options.battery_samples = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
            options.seed = std::strtoull(argv[++i], nullptr, 10);
        else {
            std::cerr << "usage: acceptance [--criterion N] [--samples N] [--seed N]\n";
            return 2;
        }
    }

    const auto results = nlew::run_reproduction(options, criterion);
    int failed = 0;
    for (const auto& r : results) {
        const char* tag = r.is_note ? "NOTE" : (r.passed ? "PASS" : "FAIL");
        if (!r.is_note && !r.passed) ++failed;
        std::cout << tag << " " << r.id << " — " << r.detail << "\n";
    }
    std::cout << (failed == 0 ? "all checkpoints passed"
                              : std::to_string(failed) + " checkpoint(s) failed")
              << " (" << results.size() << " total)\n";
    return failed == 0 ? 0 : 1;
}
