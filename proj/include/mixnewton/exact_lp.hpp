#ifndef MIXNEWTON_EXACT_LP_HPP
#define MIXNEWTON_EXACT_LP_HPP

#include <boost/multiprecision/gmp.hpp>
#include <vector>

namespace mixnewton {

using Rational = boost::multiprecision::mpq_rational;

struct LpResult {
    bool feasible = false;
    std::vector<Rational> point;  // a feasible point when feasible
};

// Exact feasibility of { x in Q^k : A x >= b } via a phase-I simplex with
// Bland's rule (free variables split as differences of nonnegative ones).
// Intended for the small systems arising from face geometry: k <= ~8,
// a few dozen constraints.
LpResult lp_feasible(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b);

} // namespace mixnewton

#endif
