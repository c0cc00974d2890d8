#pragma once

#include "heatmom/measures.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace heatmom {

enum class QuadratureKind { uniform, gauss_hermite };

std::string to_string(QuadratureKind kind);

/// Nodes and weights of the n-point Gauss-Hermite rule for the weight
/// function e^(-z^2). Nodes in increasing order; weights sum to sqrt(pi).
/// Valid for 1 <= n <= 200.
struct HermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

HermiteRule hermite_rule(int n);

/// Sensor layout for moment observation. Nodes are physical sensor
/// positions (n^d tensor grid); weights are the tensor-product quadrature
/// weights. The Gauss-Hermite scaling (2 sqrt(T))^(|alpha|+d) and the
/// e^(|z|^2) factor are applied in observe_moments, not stored here.
struct QuadratureRule {
    QuadratureKind kind = QuadratureKind::uniform;
    int dim = 1;
    std::vector<std::vector<double>> nodes;
    std::vector<double> weights;

    // uniform meta
    double half_width = 0.0;
    // shared meta: per-axis count
    int points_per_axis = 0;
    // gauss_hermite meta
    double horizon = 0.0;
    std::vector<double> base_nodes;    // 1D Hermite nodes z_i
    std::vector<double> base_weights;  // 1D Hermite weights w_i
};

inline constexpr std::int64_t kDefaultSensorBudget = 1'000'000;

/// Tensor midpoint grid over [-L, L]^d: per axis, the midpoints of n equal
/// cells, each node carrying weight (2L/n)^d.
QuadratureRule uniform_sensors(double L, int n, int dim,
                               std::int64_t sensor_budget = kDefaultSensorBudget);

/// Gauss-Hermite sensors scaled for horizon T: nodes 2 sqrt(T) (z_{i_1}, ..., z_{i_d})
/// over the tensor product of the 1D Hermite nodes.
QuadratureRule gh_sensors(int n, double T, int dim,
                          std::int64_t sensor_budget = kDefaultSensorBudget);

struct ObservedMoments {
    MomentVector y;
    QuadratureKind kind = QuadratureKind::uniform;
    int points_per_axis = 0;
    double horizon = 0.0;
};

/// Observed moments y_alpha from samples of u(., T) at the rule's nodes:
///   uniform:        y_alpha = (2L/n)^d sum_b x_b^alpha u(x_b, T)
///   gauss_hermite:  y_alpha = (2 sqrt(T))^(|alpha|+d)
///                     sum (prod_j w_{i_j} z_{i_j}^{alpha_j}) e^(sum_j z_{i_j}^2) u(2 sqrt(T) z, T)
/// Gauss-Hermite terms are assembled in log space: magnitudes below 1e-300
/// are skipped, magnitudes above 1e300 raise an error naming the node.
ObservedMoments observe_moments(const QuadratureRule& rule, const std::vector<double>& samples,
                                int order, double T);

}  // namespace heatmom
