#pragma once

#include <Eigen/Core>

#include "natnet/graph.hpp"

namespace natnet {

// One semi-implicit time step assembled as a linear system. The same
// coefficient set serves all k coordinate systems; coefficients are frozen
// from the previous step's positions.
struct StepSystem {
    Eigen::VectorXd diag;    // N_V entries, 1 + sum of the row's coefficients
    Eigen::MatrixXd coeffs;  // N_V x N_V symmetric, tau * g_e, zero diagonal
    Eigen::MatrixXd rhs;     // N_V x k, previous positions
};

struct SorOptions {
    double omega = 1.3;
    double tol = 1e-12;   // relative residual target
    int max_iters = 1000;
};

// Edge coefficient between two labeled vertices: eps / (1 + sum_i K_i l_i^2)
// with eps = eps_forward inside a cluster and eps_backward across clusters.
double edge_coefficient(const FeaturePoint& xv, const FeaturePoint& xu,
                        bool same_cluster, const DiffusionParams& params);

// Forward-only coefficient on edges of the newcomer, clamped to zero outside
// the delta diffusion neighborhood: max(eps_forward / (1 + sum K l^2) - delta, 0).
double newcomer_coefficient(const FeaturePoint& xw, const FeaturePoint& xu,
                            const DiffusionParams& params);

// Builds the step system from the state's current positions. Newcomer rows
// and columns carry the cutoff coefficient symmetrically, so labeled points
// feel the newcomer too. Throws DivergenceError on non-finite positions.
StepSystem assemble_system(const NetworkState& state, const DiffusionParams& params);

// Solves the system for one coordinate with successive over-relaxation,
// starting from the previous positions. Throws SolverError when the relative
// residual fails to reach opts.tol within opts.max_iters sweeps.
Eigen::VectorXd sor_solve(const StepSystem& system, Eigen::Index coordinate,
                          const SorOptions& opts = {});

// Advances the state by one time step: assembles once, solves the k
// coordinate systems, increments the step counter. Throws DivergenceError
// when any coordinate leaves [-10, 11] or becomes non-finite.
NetworkState step(const NetworkState& state, const DiffusionParams& params,
                  const SorOptions& opts = {});

}  // namespace natnet
