#include "natnet/diffusion.hpp"

#include <cmath>
#include <string>

#include "natnet/errors.hpp"

namespace natnet {

namespace {

// 1 / (1 + sum_i K_i l_i^2) for the edge between xv and xu.
double length_attenuation(const FeaturePoint& xv, const FeaturePoint& xu,
                          const Eigen::VectorXd& weights) {
    const Eigen::ArrayXd l = (xu - xv).array();
    return 1.0 / (1.0 + (weights.array() * l * l).sum());
}

constexpr double kGuardLo = -10.0;
constexpr double kGuardHi = 11.0;

}  // namespace

double edge_coefficient(const FeaturePoint& xv, const FeaturePoint& xu,
                        bool same_cluster, const DiffusionParams& params) {
    const double eps = same_cluster ? params.eps_forward : params.eps_backward;
    return eps * length_attenuation(xv, xu, params.weights);
}

double newcomer_coefficient(const FeaturePoint& xw, const FeaturePoint& xu,
                            const DiffusionParams& params) {
    const double g = params.eps_forward * length_attenuation(xw, xu, params.weights);
    return std::max(g - params.delta, 0.0);
}

StepSystem assemble_system(const NetworkState& state, const DiffusionParams& params) {
    params.validate(state.dim());
    if (!state.positions.allFinite()) {
        throw DivergenceError("non-finite position at step " + std::to_string(state.step));
    }
    const Eigen::Index n = state.size();

    StepSystem system;
    system.coeffs = Eigen::MatrixXd::Zero(n, n);
    system.rhs = state.positions;

    for (Eigen::Index v = 0; v < n; ++v) {
        const FeaturePoint xv = state.positions.row(v);
        const bool v_is_newcomer = state.newcomer && *state.newcomer == v;
        for (Eigen::Index u = v + 1; u < n; ++u) {
            const FeaturePoint xu = state.positions.row(u);
            const bool u_is_newcomer = state.newcomer && *state.newcomer == u;
            double g;
            if (v_is_newcomer || u_is_newcomer) {
                g = newcomer_coefficient(xv, xu, params);
            } else {
                g = edge_coefficient(xv, xu, state.labels[v] == state.labels[u], params);
            }
            const double c = params.tau * g;
            system.coeffs(v, u) = c;
            system.coeffs(u, v) = c;
        }
    }
    // Per-row sums keep diag(v) == 1 + coeffs.row(v).sum() bit-exact.
    system.diag.resize(n);
    for (Eigen::Index v = 0; v < n; ++v) {
        system.diag(v) = 1.0 + system.coeffs.row(v).sum();
    }
    return system;
}

Eigen::VectorXd sor_solve(const StepSystem& system, Eigen::Index coordinate,
                          const SorOptions& opts) {
    if (!(opts.omega > 0.0 && opts.omega < 2.0)) {
        throw Error("SOR relaxation factor must lie in (0, 2)");
    }
    const Eigen::Index n = system.diag.size();
    const Eigen::VectorXd b = system.rhs.col(coordinate);
    Eigen::VectorXd x = b;  // initial guess: previous positions

    const double b_norm = b.norm();
    // Relative residual against ||b||; absolute when b = 0.
    const double target = b_norm > 0.0 ? opts.tol * b_norm : opts.tol;

    double residual = (system.diag.asDiagonal() * x - system.coeffs * x - b).norm();
    if (residual <= target) return x;

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        for (Eigen::Index v = 0; v < n; ++v) {
            // A(v,v) = diag(v), A(v,u) = -coeffs(v,u); Gauss-Seidel update in
            // place uses the freshest neighbor values.
            const double gs = (b(v) + system.coeffs.row(v).dot(x)) / system.diag(v);
            x(v) += opts.omega * (gs - x(v));
        }
        residual = (system.diag.asDiagonal() * x - system.coeffs * x - b).norm();
        if (residual <= target) return x;
    }
    throw SolverError("SOR failed to converge within " + std::to_string(opts.max_iters) +
                          " sweeps (residual " + std::to_string(residual) + ")",
                      residual);
}

NetworkState step(const NetworkState& state, const DiffusionParams& params,
                  const SorOptions& opts) {
    const StepSystem system = assemble_system(state, params);

    NetworkState next = state;
    for (Eigen::Index i = 0; i < state.dim(); ++i) {
        next.positions.col(i) = sor_solve(system, i, opts);
    }
    next.step = state.step + 1;

    if (!next.positions.allFinite() ||
        (next.positions.array() < kGuardLo).any() ||
        (next.positions.array() > kGuardHi).any()) {
        throw DivergenceError("network diverged at step " + std::to_string(next.step));
    }
    return next;
}

}  // namespace natnet
