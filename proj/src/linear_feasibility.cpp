#include "folded/linear_feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace folded {

std::optional<std::vector<double>> linear_feasible_point(const LinearSystem& sys, double tol) {
    const int n = sys.n;
    // Shift to y = x - lo with 0 <= y <= hi - lo; append upper bounds as rows.
    std::vector<std::vector<double>> A = sys.A;
    std::vector<double> b = sys.b;
    for (size_t i = 0; i < A.size(); ++i) {
        double shift = 0.0;
        for (int j = 0; j < n; ++j) shift += A[i][j] * sys.lo[j];
        b[i] -= shift;
    }
    for (int j = 0; j < n; ++j) {
        std::vector<double> row(n, 0.0);
        row[j] = 1.0;
        A.push_back(row);
        b.push_back(sys.hi[j] - sys.lo[j]);
    }
    const int m = (int)A.size();

    // Count artificials (rows with negative rhs after slack insertion).
    std::vector<int> artOf(m, -1);
    int nart = 0;
    for (int i = 0; i < m; ++i)
        if (b[i] < 0) artOf[i] = nart++;

    const int cols = n + m + nart; // y vars, slacks, artificials
    std::vector<std::vector<double>> T(m, std::vector<double>(cols + 1, 0.0));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        double sgn = b[i] < 0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) T[i][j] = sgn * A[i][j];
        T[i][n + i] = sgn * 1.0;
        T[i][cols] = sgn * b[i];
        if (artOf[i] >= 0) {
            T[i][n + m + artOf[i]] = 1.0;
            basis[i] = n + m + artOf[i];
        } else {
            basis[i] = n + i;
        }
    }
    if (nart == 0) {
        // b >= 0: the origin (x = lo) is feasible.
        return sys.lo;
    }

    // Objective: minimize sum of artificials == maximize -sum. Reduced-cost row
    // starts as the sum of artificial-carrying rows.
    std::vector<double> obj(cols + 1, 0.0);
    for (int i = 0; i < m; ++i)
        if (artOf[i] >= 0)
            for (int j = 0; j <= cols; ++j) obj[j] += T[i][j];
    for (int i = 0; i < m; ++i)
        if (artOf[i] >= 0) obj[basis[i]] = 0.0;

    const double piv_tol = 1e-11;
    long iterGuard = 4000L * (cols + m + 4);
    while (iterGuard-- > 0) {
        // Bland: entering = smallest index with positive reduced cost.
        int enter = -1;
        for (int j = 0; j < cols; ++j) {
            bool isBasic = false;
            for (int i = 0; i < m; ++i)
                if (basis[i] == j) { isBasic = true; break; }
            if (isBasic) continue;
            if (obj[j] > tol * 0.1) { enter = j; break; }
        }
        if (enter < 0) break;
        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            if (T[i][enter] > piv_tol) {
                double ratio = T[i][cols] / T[i][enter];
                if (ratio < best - piv_tol ||
                    (std::fabs(ratio - best) <= piv_tol &&
                     (leave < 0 || basis[i] < basis[leave]))) {
                    best = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) break; // unbounded improving direction (should not happen in phase 1)
        // Pivot.
        double p = T[leave][enter];
        for (int j = 0; j <= cols; ++j) T[leave][j] /= p;
        for (int i = 0; i < m; ++i) {
            if (i == leave) continue;
            double f = T[i][enter];
            if (f == 0.0) continue;
            for (int j = 0; j <= cols; ++j) T[i][j] -= f * T[leave][j];
        }
        double fo = obj[enter];
        if (fo != 0.0)
            for (int j = 0; j <= cols; ++j) obj[j] -= fo * T[leave][j];
        basis[leave] = enter;
    }

    if (obj[cols] > tol) return std::nullopt; // residual infeasibility

    std::vector<double> y(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) y[basis[i]] = T[i][cols];
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j)
        x[j] = std::clamp(y[j] + sys.lo[j], sys.lo[j], sys.hi[j]);
    return x;
}

} // namespace folded
