#pragma once

#include "heatmom/measures.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace heatmom {

/// Ground metric for transport costs. The theory is stated for the Euclidean
/// norm; the max norm is kept available for experiments.
enum class GroundMetric { euclidean, chebyshev };

double ground_distance(const std::vector<double>& a, const std::vector<double>& b, GroundMetric metric);

/// Optimal transport plan between the positive part P and negative part Q of
/// a signed difference measure: flow(i, j) >= 0 moves mass from P atom i to
/// Q atom j; row sums are the P masses, column sums the Q masses.
struct TransportPlan {
    std::vector<std::vector<double>> source_points;
    std::vector<std::vector<double>> target_points;
    Eigen::VectorXd source_mass;
    Eigen::VectorXd target_mass;
    Eigen::MatrixXd flow;
    double cost = 0.0;
};

/// Wasserstein-1 distance between equal-mass atomic measures: co-located
/// mass in mu1 - mu2 cancels first, the rest is a balanced transport LP
/// solved with the simplex module. Throws when the total masses differ
/// (relative 1e-9); the Kantorovich norm handles that case.
double w1_distance(const AtomicMeasure& mu1, const AtomicMeasure& mu2,
                   GroundMetric metric = GroundMetric::euclidean);

TransportPlan w1_transport(const AtomicMeasure& mu1, const AtomicMeasure& mu2,
                           GroundMetric metric = GroundMetric::euclidean);

/// Kantorovich norm of a signed atomic measure:
///   max sum_i v_i m_i  s.t.  |v_i| <= 1, |v_i - v_j| <= dist(x_i, x_j).
/// Restricting the test function to the support points loses nothing: an
/// optimizer on the support extends to all of Omega with the same bound and
/// Lipschitz constant (McShane extension), so the finite program attains the
/// norm. Evaluated through its LP dual (transport with unit-cost disposal),
/// which is already in standard form.
double kantorovich_norm(const AtomicMeasure& mu, GroundMetric metric = GroundMetric::euclidean);

struct ClusterOutcome {
    AtomicMeasure measure;
    std::vector<std::string> warnings;  // clusters dropped for near-zero net amplitude
};

/// Single-linkage merge of atoms at pairwise distance below the threshold;
/// every cluster collapses to its amplitude-weighted barycenter with the
/// summed amplitude. Clusters whose net amplitude is below 1e-12 in
/// magnitude have no meaningful barycenter and are dropped with a warning.
ClusterOutcome cluster(const AtomicMeasure& mu, double threshold,
                       GroundMetric metric = GroundMetric::euclidean);

}  // namespace heatmom
