#pragma once

#include "heatmom/measures.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace heatmom {

/// One sensor reading: value of the solution at a position and time.
struct HeatSample {
    std::vector<double> position;
    double time = 0.0;
    double value = 0.0;
};

/// Gaussian heat kernel G(x, t) = (4*pi*t)^(-d/2) exp(-|x|^2 / (4t)).
/// Throws std::domain_error for t <= 0.
double heat_kernel(std::span<const double> x, double t);

/// Pointwise solution value sum_i m_i G(x - x_i, T) for atomic initial data.
double heat_solution(const AtomicMeasure& mu0, std::span<const double> x, double T);

/// Closed-form moments of the solution at time T:
///   M_alpha(T) = sum_i m_i sum_{beta <= alpha, beta even}
///                C(alpha, beta) x_i^(alpha-beta) (2T)^(|beta|/2) prod_j (beta_j - 1)!!
/// Test oracle and right-hand-side generator only; the recovery pipeline
/// consumes pointwise samples, never this function.
MomentVector heat_moments_exact(const AtomicMeasure& mu0, int order, double T);

/// Optional additive i.i.d. uniform noise on sample values, seeded
/// deterministically. level = 0 leaves samples exact.
struct NoiseSpec {
    double level = 0.0;
    std::uint64_t seed = 0;
};

/// Evaluate the solution at the given sensor positions.
std::vector<HeatSample> sample_solution(const AtomicMeasure& mu0,
                                        const std::vector<std::vector<double>>& positions,
                                        double T, const NoiseSpec& noise = {});

}  // namespace heatmom
