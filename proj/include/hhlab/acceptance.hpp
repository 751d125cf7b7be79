#pragma once

#include <string>
#include <vector>

namespace hh {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // key=value pairs
    double seconds = 0;
};

std::vector<int> criterion_ids();
// Never throws: a library error inside a check is reported as a failure.
CriterionResult run_criterion(int id);
std::string format_result(const CriterionResult& r);

// Uniform-in-log grid whose innermost cell has width h0.
// Lives here because several checks need it; exposed for tests.
double ratio_for_first_cell(double r_max, std::size_t cells, double h0);

}  // namespace hh
