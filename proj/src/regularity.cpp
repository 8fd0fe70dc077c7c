#include "mixnewton/regularity.hpp"

#include <cassert>
#include <cmath>

namespace mixnewton {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double normalize_angle(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0) t += kTwoPi;
    return t;
}

struct PhaseData {
    double s = 0.0;  // |A|^2 + |B|^2
    Complex G{0.0, 0.0};  // <A, B> Hermitian
};

PhaseData phase_data(const std::vector<Complex>& A, const std::vector<Complex>& B) {
    PhaseData out;
    for (std::size_t i = 0; i < A.size(); ++i) {
        out.s += std::norm(A[i]) + std::norm(B[i]);
        out.G += A[i] * std::conj(B[i]);
    }
    return out;
}

#ifndef NDEBUG
// Slow grid-plus-refinement reference for the closed-form phase minimizations;
// sampled on a subset of calls so debug builds stay usable.
bool selfcheck_due() {
    thread_local unsigned counter = 0;
    return (counter++ % 257) == 0;
}

template <class Objective>
double grid_refine_min(const Objective& obj, int grid) {
    double best = obj(0.0);
    double best_t = 0.0;
    for (int k = 1; k < grid; ++k) {
        const double t = kTwoPi * k / grid;
        const double v = obj(t);
        if (v < best) best = v, best_t = t;
    }
    double lo = best_t - kTwoPi / grid, hi = best_t + kTwoPi / grid;
    const double gr = 0.6180339887498949;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = obj(x1), f2 = obj(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            hi = x2, x2 = x1, f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = obj(x1);
        } else {
            lo = x1, x1 = x2, f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = obj(x2);
        }
    }
    return std::min({best, f1, f2});
}

double grid_nu2(const std::vector<Complex>& A, const std::vector<Complex>& B) {
    auto obj = [&](double t) {
        const Complex w = std::polar(1.0, t);
        double acc = 0.0;
        for (std::size_t i = 0; i < A.size(); ++i) acc += std::norm(A[i] - w * B[i]);
        return acc;
    };
    return std::max(0.0, grid_refine_min(obj, 4096));
}

double grid_milnor2(const std::vector<Complex>& A, const std::vector<Complex>& B,
                    const ComplexPoint& z) {
    const double zn = std::sqrt(norm2(z));
    auto obj = [&](double t) {
        const Complex mu = std::polar(1.0, t);
        double wn = 0.0;
        Complex proj{0.0, 0.0};
        for (std::size_t i = 0; i < A.size(); ++i) {
            const Complex w = mu * A[i] + std::conj(mu) * B[i];
            wn += std::norm(w);
            proj += w * std::conj(z[i]);
        }
        const double u = proj.real() / zn;
        return wn - u * u;
    };
    return std::max(0.0, grid_refine_min(obj, 4096));
}
#endif

} // namespace

double norm2(const ComplexPoint& z) {
    double acc = 0.0;
    for (const Complex& c : z) acc += std::norm(c);
    return acc;
}

GradientEvaluator::GradientEvaluator(MixedPolynomial f) : n_(f.vars()), f_(std::move(f)) {
    dz_ = wirtinger_dz(f_);
    dzbar_ = wirtinger_dzbar(f_);
    dz_dz_.resize(n_);
    dz_dzbar_.resize(n_);
    dzbar_dz_.resize(n_);
    dzbar_dzbar_.resize(n_);
    for (int i = 0; i < n_; ++i) {
        dz_dz_[i] = wirtinger_dz(dz_[i]);
        dz_dzbar_[i] = wirtinger_dzbar(dz_[i]);
        dzbar_dz_[i] = wirtinger_dz(dzbar_[i]);
        dzbar_dzbar_[i] = wirtinger_dzbar(dzbar_[i]);
    }
}

void GradientEvaluator::value_with_gradient(const ComplexPoint& z, Complex& val,
                                            std::vector<Complex>& dval) const {
    val = f_.evaluate(z);
    dval.assign(2 * n_, Complex(0.0, 0.0));
    for (int k = 0; k < n_; ++k) {
        const Complex dzk = dz_[k].evaluate(z);
        const Complex dbk = dzbar_[k].evaluate(z);
        dval[2 * k] = dzk + dbk;
        dval[2 * k + 1] = Complex(0.0, 1.0) * (dzk - dbk);
    }
}

void GradientEvaluator::eval_AB(const ComplexPoint& z, std::vector<Complex>& A,
                                std::vector<Complex>& B) const {
    A.resize(n_);
    B.resize(n_);
    for (int i = 0; i < n_; ++i) {
        A[i] = std::conj(dz_[i].evaluate(z));
        B[i] = dzbar_[i].evaluate(z);
    }
}

void GradientEvaluator::eval_AB_with_jacobian(const ComplexPoint& z, std::vector<Complex>& A,
                                              std::vector<Complex>& B,
                                              std::vector<std::vector<Complex>>& dA,
                                              std::vector<std::vector<Complex>>& dB) const {
    eval_AB(z, A, B);
    dA.assign(n_, std::vector<Complex>(2 * n_));
    dB.assign(n_, std::vector<Complex>(2 * n_));
    const Complex I(0.0, 1.0);
    for (int i = 0; i < n_; ++i) {
        for (int k = 0; k < n_; ++k) {
            const Complex pzz = dz_dz_[i][k].evaluate(z);
            const Complex pzb = dz_dzbar_[i][k].evaluate(z);
            dA[i][2 * k] = std::conj(pzz + pzb);
            dA[i][2 * k + 1] = std::conj(I * (pzz - pzb));
            const Complex qzz = dzbar_dz_[i][k].evaluate(z);
            const Complex qzb = dzbar_dzbar_[i][k].evaluate(z);
            dB[i][2 * k] = qzz + qzb;
            dB[i][2 * k + 1] = I * (qzz - qzb);
        }
    }
}

double GradientEvaluator::scale(const ComplexPoint& z) const {
    std::vector<Complex> A, B;
    eval_AB(z, A, B);
    return 1.0 + std::sqrt(norm2(A)) + std::sqrt(norm2(B));
}

double nu(const GradientEvaluator& ge, const ComplexPoint& z) {
    std::vector<Complex> A, B;
    ge.eval_AB(z, A, B);
    const PhaseData pd = phase_data(A, B);
    const double value2 = std::max(0.0, pd.s - 2.0 * std::abs(pd.G));
#ifndef NDEBUG
    if (selfcheck_due()) {
        const double ref2 = grid_nu2(A, B);
        assert(std::abs(value2 - ref2) <= 1e-9 * (1.0 + pd.s));
    }
#endif
    return std::sqrt(value2);
}

double nu(const MixedPolynomial& f, const ComplexPoint& z) {
    return nu(GradientEvaluator(f), z);
}

bool is_singular(const MixedPolynomial& f, const ComplexPoint& z, double tol) {
    GradientEvaluator ge(f);
    return nu(ge, z) <= tol * ge.scale(z);
}

MilnorResidual milnor_residual(const GradientEvaluator& ge, const ComplexPoint& z) {
    const double zn2 = norm2(z);
    if (zn2 == 0.0)
        throw DimensionMismatch("the Milnor residual is undefined at the origin");
    const double zn = std::sqrt(zn2);

    std::vector<Complex> A, B;
    ge.eval_AB(z, A, B);
    const PhaseData pd = phase_data(A, B);

    // w(theta) = e^{i theta} A + e^{-i theta} B. With R = <A, zhat> + conj(<B, zhat>),
    // dist^2(w, R.z) = (s - |R|^2/2) + Re(e^{2 i theta} (2G - R^2/2)).
    Complex P{0.0, 0.0}, Q{0.0, 0.0};
    for (std::size_t i = 0; i < A.size(); ++i) {
        P += A[i] * std::conj(z[i]);
        Q += B[i] * std::conj(z[i]);
    }
    P /= zn;
    Q /= zn;
    const Complex R = P + std::conj(Q);
    const Complex C = 2.0 * pd.G - 0.5 * R * R;

    MilnorResidual out;
    const double r2 = pd.s - 0.5 * std::norm(R) - std::abs(C);
    out.r = std::sqrt(std::max(0.0, r2));
    double theta = 0.0;
    if (std::abs(C) > 0.0) theta = 0.5 * std::arg(-C);
    out.theta = normalize_angle(theta);
    const Complex phase = std::polar(1.0, out.theta);
    out.lambda = (phase * R).real() / zn;
#ifndef NDEBUG
    if (selfcheck_due()) {
        const double ref2 = grid_milnor2(A, B, z);
        assert(std::abs(std::max(0.0, r2) - ref2) <= 1e-9 * (1.0 + pd.s));
    }
#endif
    return out;
}

MilnorResidual milnor_residual(const MixedPolynomial& f, const ComplexPoint& z) {
    return milnor_residual(GradientEvaluator(f), z);
}

double kos_quantity(const GradientEvaluator& ge, const ComplexPoint& z) {
    return (1.0 + std::sqrt(norm2(z))) * nu(ge, z);
}

double kos_quantity(const MixedPolynomial& f, const ComplexPoint& z) {
    return kos_quantity(GradientEvaluator(f), z);
}

RegularityReading regularity_reading(const GradientEvaluator& ge, const ComplexPoint& z) {
    RegularityReading out;
    out.z = z;
    out.nu = nu(ge, z);
    const MilnorResidual mr = milnor_residual(ge, z);
    out.milnor_residual = mr.r;
    out.best_phase = mr.theta;
    out.best_multiplier = mr.lambda;
    out.kos_quantity = (1.0 + std::sqrt(norm2(z))) * out.nu;
    return out;
}

} // namespace mixnewton
