#include "mixnewton/solver.hpp"

#include <cmath>

namespace mixnewton {

namespace {

void project_sphere(Eigen::VectorXd& u, int len, double radius) {
    const double n = u.head(len).norm();
    if (n > 0.0) u.head(len) *= radius / n;
}

} // namespace

LMResult levenberg_marquardt(const ResidualFn& residual, const JacobianFn& jacobian,
                             Eigen::VectorXd u0, int residual_len, const LMOptions& opts) {
    const int m = static_cast<int>(u0.size());
    Eigen::VectorXd u = std::move(u0);
    if (opts.sphere_len > 0) project_sphere(u, opts.sphere_len, opts.sphere_radius);

    Eigen::VectorXd F(residual_len), Ftrial(residual_len);
    Eigen::MatrixXd J(residual_len, m);
    residual(u, F);
    double f2 = F.squaredNorm();
    double damping = opts.damping0;

    LMResult out;
    int it = 0;
    for (; it < opts.max_iters; ++it) {
        if (f2 <= opts.residual_target) break;
        jacobian(u, J);
        const Eigen::MatrixXd JtJ = J.transpose() * J;
        const Eigen::VectorXd g = J.transpose() * F;
        if (g.lpNorm<Eigen::Infinity>() <= 1e-14 * (1.0 + std::sqrt(f2))) break;

        bool accepted = false;
        while (damping <= opts.damping_max) {
            Eigen::MatrixXd H = JtJ;
            for (int i = 0; i < m; ++i) H(i, i) += damping * std::max(JtJ(i, i), 1e-12);
            const Eigen::VectorXd delta = H.ldlt().solve(-g);
            Eigen::VectorXd utrial = u + delta;
            if (opts.sphere_len > 0) project_sphere(utrial, opts.sphere_len, opts.sphere_radius);
            residual(utrial, Ftrial);
            const double f2trial = Ftrial.squaredNorm();
            if (f2trial < f2) {
                const double step = delta.norm();
                u = std::move(utrial);
                F = Ftrial;
                f2 = f2trial;
                damping = std::max(damping * opts.damping_down, 1e-12);
                accepted = true;
                if (step <= opts.step_tol * (1.0 + u.norm())) it = opts.max_iters;
                break;
            }
            damping *= opts.damping_up;
        }
        if (!accepted) break;
    }
    out.u = std::move(u);
    out.f2 = f2;
    out.iters = it;
    return out;
}

} // namespace mixnewton
