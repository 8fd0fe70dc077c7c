#ifndef MIXNEWTON_SRC_SYSTEMS_HPP
#define MIXNEWTON_SRC_SYSTEMS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "mixnewton/regularity.hpp"

namespace mixnewton::systems {

// Shared residual systems for the witness searches. Unknown layout: the first
// 2n entries are interleaved real coordinates (x_1, y_1, ..., x_n, y_n),
// followed by system-specific parameters. Complex residual rows are flattened
// as (Re, Im) pairs.

inline ComplexPoint point_from(const Eigen::VectorXd& u, int n) {
    ComplexPoint z(n);
    for (int i = 0; i < n; ++i) z[i] = Complex(u[2 * i], u[2 * i + 1]);
    return z;
}

inline void put_point(Eigen::VectorXd& u, const ComplexPoint& z) {
    for (std::size_t i = 0; i < z.size(); ++i) {
        u[2 * i] = z[i].real();
        u[2 * i + 1] = z[i].imag();
    }
}

// Singular-point system: F(z, theta) = A(z) - e^{i theta} B(z); a zero is a
// point where conj(df) = mu dbar f with mu = e^{i theta}. Optionally appends
// the value rows (Re f, Im f) for the Newton non-degeneracy test.
struct CriticalSystem {
    const GradientEvaluator* ge;
    bool with_value = false;
    bool pin_theta = false;   // phase swept by the caller instead of solved for
    double theta0 = 0.0;

    int unknowns() const { return 2 * ge->vars() + (pin_theta ? 0 : 1); }
    int residuals() const { return 2 * ge->vars() + (with_value ? 2 : 0); }

    void residual(const Eigen::VectorXd& u, Eigen::VectorXd& F) const {
        const int n = ge->vars();
        const ComplexPoint z = point_from(u, n);
        const Complex mu = std::polar(1.0, pin_theta ? theta0 : u[2 * n]);
        std::vector<Complex> A, B;
        ge->eval_AB(z, A, B);
        F.resize(residuals());
        for (int i = 0; i < n; ++i) {
            const Complex r = A[i] - mu * B[i];
            F[2 * i] = r.real();
            F[2 * i + 1] = r.imag();
        }
        if (with_value) {
            const Complex v = ge->value(z);
            F[2 * n] = v.real();
            F[2 * n + 1] = v.imag();
        }
    }

    void jacobian(const Eigen::VectorXd& u, Eigen::MatrixXd& J) const {
        const int n = ge->vars();
        const ComplexPoint z = point_from(u, n);
        const Complex mu = std::polar(1.0, pin_theta ? theta0 : u[2 * n]);
        const Complex imu = Complex(0.0, 1.0) * mu;
        std::vector<Complex> A, B;
        std::vector<std::vector<Complex>> dA, dB;
        ge->eval_AB_with_jacobian(z, A, B, dA, dB);
        J.setZero(residuals(), unknowns());
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < 2 * n; ++j) {
                const Complex d = dA[i][j] - mu * dB[i][j];
                J(2 * i, j) = d.real();
                J(2 * i + 1, j) = d.imag();
            }
            if (!pin_theta) {
                const Complex dtheta = -imu * B[i];
                J(2 * i, 2 * n) = dtheta.real();
                J(2 * i + 1, 2 * n) = dtheta.imag();
            }
        }
        if (with_value) {
            Complex val;
            std::vector<Complex> dval;
            ge->value_with_gradient(z, val, dval);
            for (int j = 0; j < 2 * n; ++j) {
                J(2 * n, j) = dval[j].real();
                J(2 * n + 1, j) = dval[j].imag();
            }
        }
    }
};

// Milnor system on the sphere of radius R:
// F(z, theta, lambda) = e^{i theta} A + e^{-i theta} B - lambda z, plus the
// normalized sphere equation (|z|^2 - R^2) / (2R).
struct MilnorSystem {
    const GradientEvaluator* ge;
    double radius = 1.0;
    bool pin_theta = false;
    double theta0 = 0.0;

    int theta_col() const { return 2 * ge->vars(); }
    int lambda_col() const { return 2 * ge->vars() + (pin_theta ? 0 : 1); }
    int unknowns() const { return 2 * ge->vars() + (pin_theta ? 1 : 2); }
    int residuals() const { return 2 * ge->vars() + 1; }

    void residual(const Eigen::VectorXd& u, Eigen::VectorXd& F) const {
        const int n = ge->vars();
        const ComplexPoint z = point_from(u, n);
        const Complex mu = std::polar(1.0, pin_theta ? theta0 : u[theta_col()]);
        const double lambda = u[lambda_col()];
        std::vector<Complex> A, B;
        ge->eval_AB(z, A, B);
        F.resize(residuals());
        for (int i = 0; i < n; ++i) {
            const Complex r = mu * A[i] + std::conj(mu) * B[i] - lambda * z[i];
            F[2 * i] = r.real();
            F[2 * i + 1] = r.imag();
        }
        F[2 * n] = (u.head(2 * n).squaredNorm() - radius * radius) / (2.0 * radius);
    }

    void jacobian(const Eigen::VectorXd& u, Eigen::MatrixXd& J) const {
        const int n = ge->vars();
        const ComplexPoint z = point_from(u, n);
        const Complex mu = std::polar(1.0, pin_theta ? theta0 : u[theta_col()]);
        const double lambda = u[lambda_col()];
        std::vector<Complex> A, B;
        std::vector<std::vector<Complex>> dA, dB;
        ge->eval_AB_with_jacobian(z, A, B, dA, dB);
        J.setZero(residuals(), unknowns());
        const Complex I(0.0, 1.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < 2 * n; ++j) {
                Complex d = mu * dA[i][j] + std::conj(mu) * dB[i][j];
                if (j == 2 * i) d -= lambda;
                if (j == 2 * i + 1) d -= lambda * I;
                J(2 * i, j) = d.real();
                J(2 * i + 1, j) = d.imag();
            }
            if (!pin_theta) {
                const Complex dtheta = I * mu * A[i] - I * std::conj(mu) * B[i];
                J(2 * i, theta_col()) = dtheta.real();
                J(2 * i + 1, theta_col()) = dtheta.imag();
            }
            J(2 * i, lambda_col()) = -z[i].real();
            J(2 * i + 1, lambda_col()) = -z[i].imag();
        }
        for (int j = 0; j < 2 * n; ++j) J(2 * n, j) = u[j] / radius;
    }
};

// KOS system on the sphere: F(z, theta) = A - e^{i theta} B plus the sphere
// row; its squared norm at the optimal theta is nu^2, so minimizing it on the
// sphere tracks the per-radius minimum of the KOS quantity.
struct KosSystem {
    const GradientEvaluator* ge;
    double radius = 1.0;
    bool pin_theta = false;
    double theta0 = 0.0;

    int unknowns() const { return 2 * ge->vars() + (pin_theta ? 0 : 1); }
    int residuals() const { return 2 * ge->vars() + 1; }

    void residual(const Eigen::VectorXd& u, Eigen::VectorXd& F) const {
        const int n = ge->vars();
        const ComplexPoint z = point_from(u, n);
        const Complex mu = std::polar(1.0, pin_theta ? theta0 : u[2 * n]);
        std::vector<Complex> A, B;
        ge->eval_AB(z, A, B);
        F.resize(residuals());
        for (int i = 0; i < n; ++i) {
            const Complex r = A[i] - mu * B[i];
            F[2 * i] = r.real();
            F[2 * i + 1] = r.imag();
        }
        F[2 * n] = (u.head(2 * n).squaredNorm() - radius * radius) / (2.0 * radius);
    }

    void jacobian(const Eigen::VectorXd& u, Eigen::MatrixXd& J) const {
        const int n = ge->vars();
        const ComplexPoint z = point_from(u, n);
        const Complex mu = std::polar(1.0, pin_theta ? theta0 : u[2 * n]);
        std::vector<Complex> A, B;
        std::vector<std::vector<Complex>> dA, dB;
        ge->eval_AB_with_jacobian(z, A, B, dA, dB);
        J.setZero(residuals(), unknowns());
        const Complex imu = Complex(0.0, 1.0) * mu;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < 2 * n; ++j) {
                const Complex d = dA[i][j] - mu * dB[i][j];
                J(2 * i, j) = d.real();
                J(2 * i + 1, j) = d.imag();
            }
            if (!pin_theta) {
                const Complex dtheta = -imu * B[i];
                J(2 * i, 2 * n) = dtheta.real();
                J(2 * i + 1, 2 * n) = dtheta.imag();
            }
        }
        for (int j = 0; j < 2 * n; ++j) J(2 * n, j) = u[j] / radius;
    }
};

} // namespace mixnewton::systems

#endif
