#include "natnet/classify.hpp"

#include <cmath>
#include <limits>

#include "natnet/errors.hpp"

namespace natnet {

DynamicsResult run_dynamics(const NetworkState& state, const DiffusionParams& params,
                            const HistogramConfig& hist, const SorOptions& sor) {
    DynamicsResult result{state, false};
    while (true) {
        if (should_stop(result.state.positions, result.state.labels,
                        result.state.n_clusters, hist)) {
            result.criterion_met = true;
            return result;
        }
        if (result.state.step >= params.max_steps) return result;
        result.state = step(result.state, params, sor);
    }
}

Assignment assign_cluster(const NetworkState& final_state, const HistogramConfig& hist) {
    if (!final_state.newcomer) throw Error("state has no newcomer to assign");
    const Eigen::Index w = *final_state.newcomer;

    Assignment best;
    double best_dist = std::numeric_limits<double>::infinity();
    int best_label = -1;
    bool tie = false;
    for (Eigen::Index v = 0; v < final_state.size(); ++v) {
        if (v == w) continue;
        const double d = (final_state.positions.row(v) - final_state.positions.row(w)).norm();
        if (d < best_dist) {
            best_dist = d;
            best_label = final_state.labels[v];
            tie = false;
        } else if (d == best_dist && final_state.labels[v] != best_label) {
            tie = true;  // equal distance, different cluster; earliest index wins
        }
    }
    best.distance = best_dist;
    best.tie = tie;
    if (best_dist < 10.0 * hist.h) best.cluster = best_label;
    return best;
}

Eigen::MatrixXd centroids(const NetworkState& final_state) {
    const Eigen::Index k = final_state.dim();
    Eigen::MatrixXd cents = Eigen::MatrixXd::Zero(final_state.n_clusters, k);
    std::vector<int> counts(static_cast<std::size_t>(final_state.n_clusters), 0);
    for (Eigen::Index v = 0; v < final_state.size(); ++v) {
        const int l = final_state.labels[v];
        if (l < 0) continue;
        cents.row(l) += final_state.positions.row(v);
        ++counts[static_cast<std::size_t>(l)];
    }
    for (int c = 0; c < final_state.n_clusters; ++c) {
        if (counts[static_cast<std::size_t>(c)] == 0) {
            throw Error("cluster " + std::to_string(c + 1) + " has no members");
        }
        cents.row(c) /= counts[static_cast<std::size_t>(c)];
    }
    return cents;
}

namespace {

double logistic(double x, double lambda) {
    return 1.0 / (1.0 + std::exp(lambda * (0.5 - x)));
}

}  // namespace

RelevancyValue relevancy(const FeaturePoint& w0, const Eigen::MatrixXd& cents,
                         int assigned, double lambda) {
    const int n_clusters = static_cast<int>(cents.rows());
    if (n_clusters < 2) throw Error("relevancy needs at least two clusters");
    if (assigned < 0 || assigned >= n_clusters) throw Error("assigned cluster out of range");

    const double l1 = (cents.row(assigned).transpose() - w0).norm();
    double l2 = 0.0;
    for (int i = 0; i < n_clusters; ++i) {
        if (i == assigned) continue;
        l2 += (cents.row(i).transpose() - w0).norm();
    }
    l2 /= n_clusters - 1;

    RelevancyValue result;
    double rp;
    if (l1 + l2 == 0.0) {
        // Everything coincides with w0; take the l1 -> 0 limit.
        rp = 1.0;
        result.degenerate = true;
    } else {
        rp = 1.0 - l1 / (l1 + l2);
    }
    result.value = (logistic(rp, lambda) - logistic(0.0, lambda)) /
                   (logistic(1.0, lambda) - logistic(0.0, lambda));
    return result;
}

ClassificationResult classify(const LabeledDataset& dataset, const FeaturePoint& w,
                              const DiffusionParams& params, const HistogramConfig& hist,
                              double lambda, const SorOptions& sor) {
    const NetworkState initial = build_network(dataset, w);
    const DynamicsResult dyn = run_dynamics(initial, params, hist, sor);

    ClassificationResult result;
    result.final_state = dyn.state;
    result.criterion_met = dyn.criterion_met;
    result.steps_used = dyn.state.step;
    result.centroids = centroids(dyn.state);

    const Assignment assignment = assign_cluster(dyn.state, hist);
    result.tie = assignment.tie;
    if (assignment.cluster) {
        result.assigned = assignment.cluster;
        const RelevancyValue rel = relevancy(w, result.centroids, *assignment.cluster, lambda);
        result.relevancy = rel.value;
        result.degenerate = rel.degenerate;
    } else {
        result.assigned.reset();
        result.relevancy = 0.0;  // outlier scores zero in every cluster
    }
    return result;
}

}  // namespace natnet
