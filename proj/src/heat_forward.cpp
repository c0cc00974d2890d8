#include "heatmom/heat_forward.hpp"

#include "heatmom/combinatorics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace heatmom {

double heat_kernel(std::span<const double> x, double t) {
    if (!(t > 0.0)) throw std::domain_error("heat_kernel: t must be positive");
    const int d = static_cast<int>(x.size());
    double norm_sq = 0.0;
    for (double c : x) norm_sq += c * c;
    const double prefactor = std::pow(4.0 * std::numbers::pi * t, -0.5 * d);
    return prefactor * std::exp(-norm_sq / (4.0 * t));
}

double heat_solution(const AtomicMeasure& mu0, std::span<const double> x, double T) {
    if (!(T > 0.0)) throw std::domain_error("heat_solution: T must be positive");
    if (static_cast<int>(x.size()) != mu0.dim()) {
        throw std::invalid_argument("heat_solution: point dimension does not match measure");
    }
    std::vector<double> shifted(x.size());
    double value = 0.0;
    for (const auto& atom : mu0.atoms()) {
        for (std::size_t j = 0; j < x.size(); ++j) shifted[j] = x[j] - atom.position[j];
        value += atom.amplitude * heat_kernel(shifted, T);
    }
    return value;
}

MomentVector heat_moments_exact(const AtomicMeasure& mu0, int order, double T) {
    if (!(T > 0.0)) throw std::domain_error("heat_moments_exact: T must be positive");
    const int d = mu0.dim();
    const MultiIndexSet set(d, order);
    Eigen::VectorXd values = Eigen::VectorXd::Zero(set.size());

    // Enumerate even beta <= alpha per index; orders stay small (k <= 20 by the
    // 64-bit coefficient guard), so the nested loop cost is negligible.
    std::vector<int> beta(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < set.size(); ++i) {
        const MultiIndex& alpha = set.at(i);
        double total = 0.0;
        // iterate beta_j in {0, 2, 4, ...} up to alpha_j, odometer style
        std::fill(beta.begin(), beta.end(), 0);
        while (true) {
            int beta_degree = 0;
            double coeff = 1.0;
            for (int j = 0; j < d; ++j) {
                beta_degree += beta[static_cast<std::size_t>(j)];
                coeff *= static_cast<double>(binomial(alpha[j], beta[static_cast<std::size_t>(j)]));
                coeff *= static_cast<double>(double_factorial(beta[static_cast<std::size_t>(j)] - 1));
            }
            coeff *= std::pow(2.0 * T, 0.5 * beta_degree);
            double atom_sum = 0.0;
            for (const auto& atom : mu0.atoms()) {
                double monomial = 1.0;
                for (int j = 0; j < d; ++j) {
                    const int e = alpha[j] - beta[static_cast<std::size_t>(j)];
                    for (int r = 0; r < e; ++r) monomial *= atom.position[static_cast<std::size_t>(j)];
                }
                atom_sum += atom.amplitude * monomial;
            }
            total += coeff * atom_sum;

            int j = 0;
            while (j < d) {
                beta[static_cast<std::size_t>(j)] += 2;
                if (beta[static_cast<std::size_t>(j)] <= alpha[j]) break;
                beta[static_cast<std::size_t>(j)] = 0;
                ++j;
            }
            if (j == d) break;
        }
        values[i] = total;
    }
    return MomentVector(d, order, std::move(values));
}

std::vector<HeatSample> sample_solution(const AtomicMeasure& mu0,
                                        const std::vector<std::vector<double>>& positions,
                                        double T, const NoiseSpec& noise) {
    std::vector<HeatSample> samples;
    samples.reserve(positions.size());
    std::mt19937_64 rng(noise.seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    for (const auto& position : positions) {
        HeatSample s;
        s.position = position;
        s.time = T;
        s.value = heat_solution(mu0, position, T);
        if (noise.level != 0.0) s.value += noise.level * uniform(rng);
        samples.push_back(std::move(s));
    }
    return samples;
}

}  // namespace heatmom
