#include "heatmom/metrics.hpp"

#include "heatmom/lp_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace heatmom {

double ground_distance(const std::vector<double>& a, const std::vector<double>& b, GroundMetric metric) {
    double accum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = std::abs(a[j] - b[j]);
        if (metric == GroundMetric::euclidean) {
            accum += diff * diff;
        } else {
            accum = std::max(accum, diff);
        }
    }
    return metric == GroundMetric::euclidean ? std::sqrt(accum) : accum;
}

namespace {

struct SignedParts {
    std::vector<std::vector<double>> positive_points;
    std::vector<double> positive_mass;
    std::vector<std::vector<double>> negative_points;
    std::vector<double> negative_mass;  // stored as magnitudes
};

SignedParts split_signed(const AtomicMeasure& mu) {
    SignedParts parts;
    for (const auto& atom : mu.atoms()) {
        if (atom.amplitude > 0.0) {
            parts.positive_points.push_back(atom.position);
            parts.positive_mass.push_back(atom.amplitude);
        } else {
            parts.negative_points.push_back(atom.position);
            parts.negative_mass.push_back(-atom.amplitude);
        }
    }
    return parts;
}

AtomicMeasure signed_difference(const AtomicMeasure& mu1, const AtomicMeasure& mu2) {
    if (mu1.dim() != mu2.dim()) {
        throw std::invalid_argument("metrics: measures have different dimensions");
    }
    std::vector<Atom> atoms = mu1.atoms();
    for (const auto& atom : mu2.atoms()) {
        atoms.push_back(Atom{atom.position, -atom.amplitude});
    }
    return AtomicMeasure(mu1.dim(), std::move(atoms)).canonicalize();
}

}  // namespace

TransportPlan w1_transport(const AtomicMeasure& mu1, const AtomicMeasure& mu2, GroundMetric metric) {
    const double mass1 = mu1.mass();
    const double mass2 = mu2.mass();
    if (std::abs(mass1 - mass2) > 1e-9 * std::max(1.0, std::abs(mass1))) {
        throw std::invalid_argument(
            "w1_distance: total masses differ (" + std::to_string(mass1) + " vs " +
            std::to_string(mass2) + "); W1 is undefined for unequal masses, use the Kantorovich norm");
    }

    const SignedParts parts = split_signed(signed_difference(mu1, mu2));
    const int np = static_cast<int>(parts.positive_mass.size());
    const int nq = static_cast<int>(parts.negative_mass.size());

    TransportPlan plan;
    plan.source_points = parts.positive_points;
    plan.target_points = parts.negative_points;
    plan.source_mass = Eigen::Map<const Eigen::VectorXd>(parts.positive_mass.data(), np);
    plan.target_mass = Eigen::Map<const Eigen::VectorXd>(parts.negative_mass.data(), nq);
    plan.flow = Eigen::MatrixXd::Zero(np, nq);
    if (np == 0 || nq == 0) {
        // equal masses with an empty side: nothing (beyond tolerance) to move
        plan.cost = 0.0;
        return plan;
    }

    // balanced transport LP: variables f_ij >= 0 flattened row-major
    LPProblem lp;
    lp.cost.resize(static_cast<Eigen::Index>(np) * nq);
    for (int i = 0; i < np; ++i) {
        for (int j = 0; j < nq; ++j) {
            lp.cost[static_cast<Eigen::Index>(i) * nq + j] =
                ground_distance(parts.positive_points[static_cast<std::size_t>(i)],
                                parts.negative_points[static_cast<std::size_t>(j)], metric);
        }
    }
    lp.constraints = Eigen::MatrixXd::Zero(np + nq, static_cast<Eigen::Index>(np) * nq);
    lp.rhs.resize(np + nq);
    for (int i = 0; i < np; ++i) {
        for (int j = 0; j < nq; ++j) lp.constraints(i, static_cast<Eigen::Index>(i) * nq + j) = 1.0;
        lp.rhs[i] = parts.positive_mass[static_cast<std::size_t>(i)];
    }
    for (int j = 0; j < nq; ++j) {
        for (int i = 0; i < np; ++i) lp.constraints(np + j, static_cast<Eigen::Index>(i) * nq + j) = 1.0;
        lp.rhs[np + j] = parts.negative_mass[static_cast<std::size_t>(j)];
    }

    const LPSolution solution = solve(lp);
    if (solution.status != LPStatus::optimal) {
        throw std::runtime_error("w1_distance: transport LP returned status " + to_string(solution.status));
    }
    for (int i = 0; i < np; ++i) {
        for (int j = 0; j < nq; ++j) plan.flow(i, j) = solution.x[static_cast<Eigen::Index>(i) * nq + j];
    }
    plan.cost = solution.objective;
    return plan;
}

double w1_distance(const AtomicMeasure& mu1, const AtomicMeasure& mu2, GroundMetric metric) {
    return w1_transport(mu1, mu2, metric).cost;
}

double kantorovich_norm(const AtomicMeasure& mu, GroundMetric metric) {
    const AtomicMeasure canonical = mu.canonicalize();
    const int n = canonical.size();
    if (n == 0) return 0.0;

    // Dual of the support LP: per support point i,
    //   s+_i - s-_i + sum_{j != i} (f_ij - f_ji) = m_i
    // minimizing sum_i (s+_i + s-_i) + sum_{i != j} f_ij d_ij.
    // Variables: s+ (n), s- (n), then f_ij for ordered pairs i != j.
    const int pairs = n * (n - 1);
    LPProblem lp;
    lp.cost = Eigen::VectorXd::Zero(2 * n + pairs);
    lp.constraints = Eigen::MatrixXd::Zero(n, 2 * n + pairs);
    lp.rhs.resize(n);

    for (int i = 0; i < n; ++i) {
        lp.cost[i] = 1.0;
        lp.cost[n + i] = 1.0;
        lp.constraints(i, i) = 1.0;
        lp.constraints(i, n + i) = -1.0;
        lp.rhs[i] = canonical.atoms()[static_cast<std::size_t>(i)].amplitude;
    }
    int column = 2 * n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            lp.cost[column] = ground_distance(canonical.atoms()[static_cast<std::size_t>(i)].position,
                                              canonical.atoms()[static_cast<std::size_t>(j)].position, metric);
            lp.constraints(i, column) = 1.0;
            lp.constraints(j, column) = -1.0;
            ++column;
        }
    }

    const LPSolution solution = solve(lp);
    if (solution.status != LPStatus::optimal) {
        throw std::runtime_error("kantorovich_norm: LP returned status " + to_string(solution.status));
    }
    return solution.objective;
}

ClusterOutcome cluster(const AtomicMeasure& mu, double threshold, GroundMetric metric) {
    if (!(threshold > 0.0)) throw std::invalid_argument("cluster: threshold must be positive");
    const int n = mu.size();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };

    // single linkage: any pair below the threshold joins its clusters
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (ground_distance(mu.atoms()[static_cast<std::size_t>(i)].position,
                                mu.atoms()[static_cast<std::size_t>(j)].position, metric) < threshold) {
                parent[static_cast<std::size_t>(find(i))] = find(j);
            }
        }
    }

    std::vector<int> roots;
    for (int i = 0; i < n; ++i) {
        if (std::find(roots.begin(), roots.end(), find(i)) == roots.end()) roots.push_back(find(i));
    }

    ClusterOutcome outcome{AtomicMeasure(mu.dim()), {}};
    std::vector<Atom> merged;
    for (int root : roots) {
        double net = 0.0;
        int members = 0;
        std::vector<double> barycenter(static_cast<std::size_t>(mu.dim()), 0.0);
        for (int i = 0; i < n; ++i) {
            if (find(i) != root) continue;
            const Atom& atom = mu.atoms()[static_cast<std::size_t>(i)];
            net += atom.amplitude;
            ++members;
            for (int j = 0; j < mu.dim(); ++j) {
                barycenter[static_cast<std::size_t>(j)] += atom.amplitude * atom.position[static_cast<std::size_t>(j)];
            }
        }
        if (std::abs(net) <= 1e-12) {
            if (members > 0) {
                outcome.warnings.push_back("dropped cluster of " + std::to_string(members) +
                                           " atoms with net amplitude " + std::to_string(net) +
                                           " (barycenter undefined)");
            }
            continue;
        }
        for (double& c : barycenter) c /= net;
        merged.push_back(Atom{std::move(barycenter), net});
    }
    outcome.measure = AtomicMeasure(mu.dim(), std::move(merged));
    return outcome;
}

}  // namespace heatmom
