#include "mixnewton/exact_lp.hpp"

#include <cstddef>
#include <stdexcept>

namespace mixnewton {

// Phase-I simplex on A x >= b: substitute x = u - v with u, v >= 0, subtract a
// slack per row, flip rows to a nonnegative right-hand side and add artificial
// variables. Bland's rule guarantees termination; all pivots are exact.
LpResult lp_feasible(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b) {
    const std::size_t m = A.size();
    if (b.size() != m) throw std::invalid_argument("lp_feasible: A and b sizes differ");
    const std::size_t k = m == 0 ? 0 : A[0].size();
    if (m == 0) return {true, std::vector<Rational>(k, Rational(0))};
    for (const auto& row : A)
        if (row.size() != k) throw std::invalid_argument("lp_feasible: ragged constraint matrix");

    const std::size_t ncols = 2 * k + 2 * m;  // u, v, slack, artificial
    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(ncols + 1, Rational(0)));
    std::vector<std::size_t> basis(m);

    for (std::size_t i = 0; i < m; ++i) {
        const int sign = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < k; ++j) {
            T[i][j] = sign * A[i][j];
            T[i][k + j] = -sign * A[i][j];
        }
        T[i][2 * k + i] = Rational(-sign);  // slack of A x - s = b
        T[i][2 * k + m + i] = Rational(1);  // artificial
        T[i][ncols] = sign * b[i];
        basis[i] = 2 * k + m + i;
    }

    // Reduced costs for minimizing the artificial sum.
    std::vector<Rational> cost(ncols, Rational(0));
    Rational objective(0);
    for (std::size_t j = 0; j < 2 * k + m; ++j)
        for (std::size_t i = 0; i < m; ++i) cost[j] -= T[i][j];
    for (std::size_t i = 0; i < m; ++i) objective += T[i][ncols];

    while (true) {
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < ncols; ++j)
            if (cost[j] < 0) { enter = j; break; }  // Bland: smallest index
        if (enter == ncols) break;

        std::size_t leave = m;
        Rational best_ratio(0);
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            Rational ratio = T[i][ncols] / T[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) break;  // unbounded entering direction cannot occur in phase I with cost < 0, but stay safe

        const Rational pivot = T[leave][enter];
        for (std::size_t j = 0; j <= ncols; ++j) T[leave][j] /= pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            const Rational factor = T[i][enter];
            for (std::size_t j = 0; j <= ncols; ++j) T[i][j] -= factor * T[leave][j];
        }
        const Rational cfac = cost[enter];
        if (cfac != 0) {
            for (std::size_t j = 0; j < ncols; ++j) cost[j] -= cfac * T[leave][j];
            objective += cfac * T[leave][ncols];
        }
        basis[leave] = enter;
    }

    if (objective != 0) return {};

    LpResult out;
    out.feasible = true;
    out.point.assign(k, Rational(0));
    std::vector<Rational> values(ncols, Rational(0));
    for (std::size_t i = 0; i < m; ++i) values[basis[i]] = T[i][ncols];
    for (std::size_t j = 0; j < k; ++j) out.point[j] = values[j] - values[k + j];
    return out;
}

} // namespace mixnewton
