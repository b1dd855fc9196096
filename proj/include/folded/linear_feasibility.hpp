#pragma once

#include <optional>
#include <vector>

namespace folded {

// Feasibility of { x : lo <= x <= hi, A x <= b } via a phase-1 simplex with
// Bland's rule. Returns a feasible point or nullopt.
struct LinearSystem {
    int n = 0;
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    std::vector<double> lo, hi;

    void add_row(const std::vector<double>& row, double rhs) {
        A.push_back(row);
        b.push_back(rhs);
    }
};

std::optional<std::vector<double>> linear_feasible_point(const LinearSystem& sys,
                                                         double tol = 1e-9);

} // namespace folded
