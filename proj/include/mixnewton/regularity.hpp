#ifndef MIXNEWTON_REGULARITY_HPP
#define MIXNEWTON_REGULARITY_HPP

#include <vector>

#include "mixnewton/mixed_poly.hpp"

namespace mixnewton {

/**
 * Precomputed Wirtinger derivative data for one polynomial: the first
 * derivatives and all mixed second derivatives, so that pointwise quantities
 * and solver Jacobians evaluate without re-deriving. Immutable after
 * construction and safe to share across threads.
 *
 * Conventions: A_i(z) = conj((df/dz_i)(z, conj z)) and B_i(z) = (df/dzb_i)(z, conj z).
 * Real coordinates are interleaved: v = (x_1, y_1, ..., x_n, y_n).
 */
class GradientEvaluator {
public:
    explicit GradientEvaluator(MixedPolynomial f);

    int vars() const { return n_; }
    const MixedPolynomial& polynomial() const { return f_; }

    Complex value(const ComplexPoint& z) const { return f_.evaluate(z); }
    void value_with_gradient(const ComplexPoint& z, Complex& val, std::vector<Complex>& dval) const;

    void eval_AB(const ComplexPoint& z, std::vector<Complex>& A, std::vector<Complex>& B) const;
    // dA, dB are n x 2n (complex entries, derivative w.r.t. interleaved reals).
    void eval_AB_with_jacobian(const ComplexPoint& z, std::vector<Complex>& A, std::vector<Complex>& B,
                               std::vector<std::vector<Complex>>& dA,
                               std::vector<std::vector<Complex>>& dB) const;

    // 1 + |df| + |dbar f| at z; the yardstick for all zero tests.
    double scale(const ComplexPoint& z) const;

private:
    int n_;
    MixedPolynomial f_;
    std::vector<MixedPolynomial> dz_, dzbar_;
    std::vector<std::vector<MixedPolynomial>> dz_dz_, dz_dzbar_, dzbar_dz_, dzbar_dzbar_;
};

// KOS distance: min over unit phases of |mu conj(df) + conj(mu) dbar f| at z;
// equals the smallest singular value of the transposed real Jacobian of
// (Re f, Im f). In the holomorphic case this is |grad f|.
double nu(const MixedPolynomial& f, const ComplexPoint& z);
double nu(const GradientEvaluator& ge, const ComplexPoint& z);

// nu <= tol * (1 + gradient norms).
bool is_singular(const MixedPolynomial& f, const ComplexPoint& z, double tol);

struct MilnorResidual {
    double r;       // distance of the optimal w(theta) to the real line R.z
    double theta;   // minimizing phase of mu, in [0, 2pi)
    double lambda;  // optimal real multiplier with w(theta) ~ lambda z
};

// Residual of the Milnor-set equation lambda z = mu conj(df) + conj(mu) dbar f
// minimized over the phase; r vanishes exactly on M(f). z = 0 is rejected
// (the distance function is critical there).
MilnorResidual milnor_residual(const MixedPolynomial& f, const ComplexPoint& z);
MilnorResidual milnor_residual(const GradientEvaluator& ge, const ComplexPoint& z);

// (1 + |z|) nu(f, z), the quantity whose decay along unbounded sequences
// defines asymptotic critical values.
double kos_quantity(const MixedPolynomial& f, const ComplexPoint& z);
double kos_quantity(const GradientEvaluator& ge, const ComplexPoint& z);

struct RegularityReading {
    ComplexPoint z;
    double nu = 0.0;
    double milnor_residual = 0.0;
    double kos_quantity = 0.0;
    double best_phase = 0.0;
    double best_multiplier = 0.0;
};

RegularityReading regularity_reading(const GradientEvaluator& ge, const ComplexPoint& z);

double norm2(const ComplexPoint& z);

} // namespace mixnewton

#endif
