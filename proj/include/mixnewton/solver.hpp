#ifndef MIXNEWTON_SOLVER_HPP
#define MIXNEWTON_SOLVER_HPP

#include <Eigen/Dense>
#include <functional>

namespace mixnewton {

struct LMOptions {
    int max_iters = 200;
    double residual_target = 0.0;   // stop when |F|^2 <= residual_target
    double step_tol = 1e-15;
    double damping0 = 1e-3;
    double damping_up = 8.0;
    double damping_down = 0.25;
    double damping_max = 1e14;
    // When sphere_len > 0, the first sphere_len unknowns are projected back to
    // the sphere of the given radius after every trial step.
    int sphere_len = 0;
    double sphere_radius = 0.0;
};

struct LMResult {
    Eigen::VectorXd u;
    double f2 = 0.0;  // final squared residual norm
    int iters = 0;
};

using ResidualFn = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;
using JacobianFn = std::function<void(const Eigen::VectorXd&, Eigen::MatrixXd&)>;

// Damped Gauss-Newton (Levenberg-Marquardt) least squares with optional sphere
// projection. Deterministic: no randomness, no shared state.
LMResult levenberg_marquardt(const ResidualFn& residual, const JacobianFn& jacobian,
                             Eigen::VectorXd u0, int residual_len, const LMOptions& opts);

} // namespace mixnewton

#endif
