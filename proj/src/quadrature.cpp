#include "heatmom/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace heatmom {

std::string to_string(QuadratureKind kind) {
    return kind == QuadratureKind::uniform ? "uniform" : "gauss_hermite";
}

HermiteRule hermite_rule(int n) {
    if (n < 1 || n > 200) throw std::invalid_argument("hermite_rule: n must be in [1, 200]");

    HermiteRule rule;
    rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
    rule.weights.assign(static_cast<std::size_t>(n), 0.0);

    constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^(-1/4)
    constexpr int kMaxIterations = 100;
    constexpr double kTolerance = 1e-15;

    // Newton iteration on the orthonormal three-term recurrence, one root per
    // symmetric pair, largest root first. Initial guesses follow the classic
    // Tricomi-style asymptotics.
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[static_cast<std::size_t>(i - 2)];
        }

        double derivative = 0.0;
        bool converged = false;
        for (int iter = 0; iter < kMaxIterations; ++iter) {
            double p1 = kPiQuarterInv;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            derivative = std::sqrt(2.0 * n) * p2;
            const double z_prev = z;
            z = z_prev - p1 / derivative;
            if (std::abs(z - z_prev) <= kTolerance * (1.0 + std::abs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw std::runtime_error("hermite_rule: Newton iteration failed to converge for n = " +
                                     std::to_string(n));
        }
        // store largest-first, mirror to the negative half
        rule.nodes[static_cast<std::size_t>(i)] = z;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = -z;
        const double w = 2.0 / (derivative * derivative);
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;

    // reorder ascending
    std::reverse(rule.nodes.begin(), rule.nodes.end());
    std::reverse(rule.weights.begin(), rule.weights.end());
    return rule;
}

namespace {

std::int64_t tensor_size(int n, int dim, std::int64_t budget, const char* who) {
    std::int64_t total = 1;
    for (int j = 0; j < dim; ++j) {
        total *= n;
        if (total > budget) {
            throw std::invalid_argument(std::string(who) + ": sensor count " + std::to_string(n) +
                                        "^" + std::to_string(dim) + " exceeds the budget of " +
                                        std::to_string(budget));
        }
    }
    return total;
}

/// Expand per-axis nodes/weights into the tensor grid, last axis fastest.
void tensor_expand(const std::vector<double>& axis_nodes, const std::vector<double>& axis_weights,
                   int dim, QuadratureRule& rule) {
    const int n = static_cast<int>(axis_nodes.size());
    std::vector<int> odometer(static_cast<std::size_t>(dim), 0);
    while (true) {
        std::vector<double> node(static_cast<std::size_t>(dim));
        double weight = 1.0;
        for (int j = 0; j < dim; ++j) {
            node[static_cast<std::size_t>(j)] = axis_nodes[static_cast<std::size_t>(odometer[static_cast<std::size_t>(j)])];
            weight *= axis_weights[static_cast<std::size_t>(odometer[static_cast<std::size_t>(j)])];
        }
        rule.nodes.push_back(std::move(node));
        rule.weights.push_back(weight);

        int j = dim - 1;
        while (j >= 0) {
            if (++odometer[static_cast<std::size_t>(j)] < n) break;
            odometer[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
    }
}

}  // namespace

QuadratureRule uniform_sensors(double L, int n, int dim, std::int64_t sensor_budget) {
    if (!(L > 0.0)) throw std::invalid_argument("uniform_sensors: L must be positive");
    if (n < 2) throw std::invalid_argument("uniform_sensors: n must be >= 2");
    if (dim < 1) throw std::invalid_argument("uniform_sensors: dim must be >= 1");
    tensor_size(n, dim, sensor_budget, "uniform_sensors");

    const double cell = 2.0 * L / n;
    std::vector<double> axis_nodes(static_cast<std::size_t>(n));
    std::vector<double> axis_weights(static_cast<std::size_t>(n), cell);
    for (int i = 0; i < n; ++i) axis_nodes[static_cast<std::size_t>(i)] = -L + (i + 0.5) * cell;

    QuadratureRule rule;
    rule.kind = QuadratureKind::uniform;
    rule.dim = dim;
    rule.half_width = L;
    rule.points_per_axis = n;
    tensor_expand(axis_nodes, axis_weights, dim, rule);
    return rule;
}

QuadratureRule gh_sensors(int n, double T, int dim, std::int64_t sensor_budget) {
    if (n < 1) throw std::invalid_argument("gh_sensors: n must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("gh_sensors: T must be positive");
    if (dim < 1) throw std::invalid_argument("gh_sensors: dim must be >= 1");
    tensor_size(n, dim, sensor_budget, "gh_sensors");

    const HermiteRule base = hermite_rule(n);
    const double sigma = 2.0 * std::sqrt(T);
    std::vector<double> axis_nodes(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) axis_nodes[static_cast<std::size_t>(i)] = sigma * base.nodes[static_cast<std::size_t>(i)];

    QuadratureRule rule;
    rule.kind = QuadratureKind::gauss_hermite;
    rule.dim = dim;
    rule.points_per_axis = n;
    rule.horizon = T;
    rule.base_nodes = base.nodes;
    rule.base_weights = base.weights;
    tensor_expand(axis_nodes, base.weights, dim, rule);
    return rule;
}

namespace {

ObservedMoments observe_uniform(const QuadratureRule& rule, const std::vector<double>& samples,
                                int order, double T) {
    const int d = rule.dim;
    const MultiIndexSet set(d, order);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(set.size());

    std::vector<std::vector<double>> powers(static_cast<std::size_t>(d),
                                            std::vector<double>(static_cast<std::size_t>(order + 1)));
    for (std::size_t node = 0; node < rule.nodes.size(); ++node) {
        const double wu = rule.weights[node] * samples[node];
        if (wu == 0.0) continue;
        for (int j = 0; j < d; ++j) {
            powers[static_cast<std::size_t>(j)][0] = 1.0;
            const double x = rule.nodes[node][static_cast<std::size_t>(j)];
            for (int e = 1; e <= order; ++e) {
                powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)] =
                    powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(e - 1)] * x;
            }
        }
        for (int i = 0; i < set.size(); ++i) {
            const MultiIndex& alpha = set.at(i);
            double monomial = 1.0;
            for (int j = 0; j < d; ++j) monomial *= powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(alpha[j])];
            y[i] += wu * monomial;
        }
    }
    return ObservedMoments{MomentVector(d, order, std::move(y)), QuadratureKind::uniform,
                           rule.points_per_axis, T};
}

ObservedMoments observe_gauss_hermite(const QuadratureRule& rule, const std::vector<double>& samples,
                                      int order, double T) {
    const int d = rule.dim;
    const int n = rule.points_per_axis;
    const MultiIndexSet set(d, order);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(set.size());

    const double log_floor = std::log(1e-300);
    const double log_ceiling = std::log(1e300);

    // per-axis tables for the 1D Hermite data
    std::vector<double> log_weight(static_cast<std::size_t>(n));
    std::vector<double> node_sq(static_cast<std::size_t>(n));
    std::vector<double> log_abs_node(static_cast<std::size_t>(n));
    std::vector<double> node_sign(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double z = rule.base_nodes[static_cast<std::size_t>(i)];
        log_weight[static_cast<std::size_t>(i)] = std::log(rule.base_weights[static_cast<std::size_t>(i)]);
        node_sq[static_cast<std::size_t>(i)] = z * z;
        log_abs_node[static_cast<std::size_t>(i)] = z == 0.0 ? 0.0 : std::log(std::abs(z));
        node_sign[static_cast<std::size_t>(i)] = z < 0.0 ? -1.0 : 1.0;
    }

    std::vector<int> odometer(static_cast<std::size_t>(d), 0);
    std::size_t flat = 0;
    while (true) {
        const double u = samples[flat];
        if (u != 0.0) {
            double base_log = std::log(std::abs(u));
            for (int j = 0; j < d; ++j) {
                const int i = odometer[static_cast<std::size_t>(j)];
                base_log += log_weight[static_cast<std::size_t>(i)] + node_sq[static_cast<std::size_t>(i)];
            }
            const double u_sign = u < 0.0 ? -1.0 : 1.0;
            for (int idx = 0; idx < set.size(); ++idx) {
                const MultiIndex& alpha = set.at(idx);
                double log_mag = base_log;
                double sign = u_sign;
                bool vanished = false;
                for (int j = 0; j < d; ++j) {
                    const int a = alpha[j];
                    if (a == 0) continue;
                    const int i = odometer[static_cast<std::size_t>(j)];
                    if (rule.base_nodes[static_cast<std::size_t>(i)] == 0.0) {
                        vanished = true;
                        break;
                    }
                    log_mag += a * log_abs_node[static_cast<std::size_t>(i)];
                    if (a % 2 == 1) sign *= node_sign[static_cast<std::size_t>(i)];
                }
                if (vanished || log_mag < log_floor) continue;
                if (log_mag > log_ceiling) {
                    std::string where = "(";
                    for (int j = 0; j < d; ++j) {
                        if (j) where += ", ";
                        where += std::to_string(rule.nodes[flat][static_cast<std::size_t>(j)]);
                    }
                    where += ")";
                    throw std::range_error("observe_moments: term overflow at node " +
                                           std::to_string(flat) + " " + where +
                                           " for moment index " + std::to_string(idx));
                }
                y[idx] += sign * std::exp(log_mag);
            }
        }

        int j = d - 1;
        while (j >= 0) {
            if (++odometer[static_cast<std::size_t>(j)] < n) break;
            odometer[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
        ++flat;
    }

    // (2 sqrt(T))^(|alpha| + d)
    const double sigma = 2.0 * std::sqrt(T);
    for (int idx = 0; idx < set.size(); ++idx) {
        y[idx] *= std::pow(sigma, set.at(idx).degree() + d);
    }
    return ObservedMoments{MomentVector(d, order, std::move(y)), QuadratureKind::gauss_hermite,
                           n, T};
}

}  // namespace

ObservedMoments observe_moments(const QuadratureRule& rule, const std::vector<double>& samples,
                                int order, double T) {
    if (samples.size() != rule.nodes.size()) {
        throw std::invalid_argument("observe_moments: got " + std::to_string(samples.size()) +
                                    " samples for " + std::to_string(rule.nodes.size()) + " nodes");
    }
    if (!(T > 0.0)) throw std::domain_error("observe_moments: T must be positive");
    if (order < 0) throw std::invalid_argument("observe_moments: order must be >= 0");
    if (rule.kind == QuadratureKind::uniform) return observe_uniform(rule, samples, order, T);
    return observe_gauss_hermite(rule, samples, order, T);
}

}  // namespace heatmom
