#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "hhlab/acceptance.hpp"

// Usage: acceptance [id ...]   (default: every criterion)
int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    if (ids.empty()) ids = hh::criterion_ids();
    int failed = 0;
    for (int id : ids) {
        const auto r = hh::run_criterion(id);
        std::cout << hh::format_result(r) << std::endl;
        if (!r.passed) ++failed;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << ids.size() - failed << "/" << ids.size() << std::endl;
    return failed ? 1 : 0;
}
