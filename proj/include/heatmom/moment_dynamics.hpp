#pragma once

#include "heatmom/measures.hpp"

#include <Eigen/Core>

#include <cstdint>

namespace heatmom {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Generator of the moment ODE dM/dt = A M. Entry (alpha, alpha') equals
/// alpha_i (alpha_i - 1) when alpha' = alpha - 2 e_i and 0 otherwise, in the
/// canonical multi-index order. A is nilpotent: A^(floor(k/2)+1) = 0.
class MomentMatrix {
public:
    MomentMatrix(int dim, int order);

    int dim() const { return dim_; }
    int order() const { return order_; }
    int size() const { return static_cast<int>(entries_.rows()); }
    std::int64_t entry(int row, int col) const { return entries_(row, col); }
    const IntMatrix& entries() const { return entries_; }

    /// Exact integer power A^p (overflow past 64 bits is a hard error).
    IntMatrix power(int p) const;

private:
    int dim_;
    int order_;
    IntMatrix entries_;
};

MomentMatrix build_moment_matrix(int dim, int order);

/// Backward propagator e^(-T A) = sum_{j=0}^{floor(k/2)} (-T)^j A^j / j!,
/// a finite sum because A is nilpotent. Integer powers of A are computed
/// exactly and scaled by real coefficients.
class Propagator {
public:
    Propagator(const MomentMatrix& A, double horizon);

    int dim() const { return dim_; }
    int order() const { return order_; }
    double horizon() const { return horizon_; }
    const Eigen::MatrixXd& matrix() const { return matrix_; }

    /// Propagator applied to a moment vector; accumulation in extended
    /// precision to limit cancellation.
    MomentVector apply(const MomentVector& y) const;

private:
    int dim_;
    int order_;
    double horizon_;
    Eigen::MatrixXd matrix_;
};

Propagator backward_propagator(const MomentMatrix& A, double T);

/// M(0) = e^(-T A) y. Builds the generator for (y.dim, y.order) internally.
MomentVector invert_moments(const MomentVector& y, double T);

/// Growth factor of the backward propagation and its Stirling majorant:
///   sum      = sum_{j=0}^{floor(k/2)} k^j (k-1)^j T^j / j!
///   majorant = sqrt(k/pi) exp(k + (k/2) ln k) max{T^floor(k/2), 1}
/// The sum never exceeds the majorant.
struct GrowthBound {
    double sum = 0.0;
    double majorant = 0.0;
};

GrowthBound growth_bound(int order, double T);

/// Diagnostic evaluation of the reconstruction error bound
///   C_d R tv_true / k + C_{d,R}(k) max{T^floor(k/2), 1} eps_inf,
///   C_{d,R}(k) = (sqrt(k/pi) + C_d R / sqrt(pi k)) exp(k (1 + 2d/R + ln sqrt(k))).
/// The dimensional constant C_d of the polynomial approximation step is not
/// pinned down by the theory; it is exposed as a parameter with default 1.
double error_bound(int dim, double R, int order, double T, double eps_inf, double tv_true,
                   double jackson_constant = 1.0);

}  // namespace heatmom
