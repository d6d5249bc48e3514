// Acceptance suite: runs every sign-off criterion and prints one line per
// check.  Exit status is nonzero if any criterion fails.

#include <cstdio>
#include <string>

#include "szego/verify.hpp"

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    auto results = szego::run_acceptance_checks(only);
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] %2d  %s\n       %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.details.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("%zu checks, %d failed\n", results.size(), failures);
    return failures == 0 ? 0 : 1;
}
