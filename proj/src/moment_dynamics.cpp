#include "heatmom/moment_dynamics.hpp"

#include "heatmom/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace heatmom {

namespace {

/// Row-sparse view of an integer matrix; A and its powers have at most a
/// handful of nonzeros per row, so powers are cheapest row by row.
using SparseRows = std::vector<std::vector<std::pair<int, std::int64_t>>>;

SparseRows to_sparse(const IntMatrix& m) {
    SparseRows rows(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (m(r, c) != 0) rows[static_cast<std::size_t>(r)].emplace_back(static_cast<int>(c), m(r, c));
        }
    }
    return rows;
}

SparseRows sparse_multiply(const SparseRows& a, const SparseRows& b, int n) {
    SparseRows out(static_cast<std::size_t>(n));
    std::vector<std::int64_t> accum(static_cast<std::size_t>(n), 0);
    std::vector<int> touched;
    for (int r = 0; r < n; ++r) {
        touched.clear();
        for (const auto& [mid, av] : a[static_cast<std::size_t>(r)]) {
            for (const auto& [col, bv] : b[static_cast<std::size_t>(mid)]) {
                if (accum[static_cast<std::size_t>(col)] == 0 &&
                    std::find(touched.begin(), touched.end(), col) == touched.end()) {
                    touched.push_back(col);
                }
                accum[static_cast<std::size_t>(col)] =
                    checked_add(accum[static_cast<std::size_t>(col)], checked_mul(av, bv));
            }
        }
        for (int col : touched) {
            if (accum[static_cast<std::size_t>(col)] != 0) {
                out[static_cast<std::size_t>(r)].emplace_back(col, accum[static_cast<std::size_t>(col)]);
            }
            accum[static_cast<std::size_t>(col)] = 0;
        }
        std::sort(out[static_cast<std::size_t>(r)].begin(), out[static_cast<std::size_t>(r)].end());
    }
    return out;
}

IntMatrix to_dense(const SparseRows& rows, int n) {
    IntMatrix m = IntMatrix::Zero(n, n);
    for (int r = 0; r < n; ++r) {
        for (const auto& [c, v] : rows[static_cast<std::size_t>(r)]) m(r, c) = v;
    }
    return m;
}

std::int64_t max_abs(const SparseRows& rows) {
    std::int64_t best = 0;
    for (const auto& row : rows) {
        for (const auto& [c, v] : row) best = std::max(best, std::abs(v));
    }
    return best;
}

}  // namespace

MomentMatrix::MomentMatrix(int dim, int order) : dim_(dim), order_(order) {
    const MultiIndexSet set(dim, order);
    entries_ = IntMatrix::Zero(set.size(), set.size());
    std::vector<int> shifted(static_cast<std::size_t>(dim));
    for (int row = 0; row < set.size(); ++row) {
        const MultiIndex& alpha = set.at(row);
        for (int i = 0; i < dim; ++i) {
            if (alpha[i] < 2) continue;
            for (int j = 0; j < dim; ++j) shifted[static_cast<std::size_t>(j)] = alpha[j];
            shifted[static_cast<std::size_t>(i)] -= 2;
            const int col = set.index_of(shifted);
            entries_(row, col) = static_cast<std::int64_t>(alpha[i]) * (alpha[i] - 1);
        }
    }
}

IntMatrix MomentMatrix::power(int p) const {
    if (p < 0) throw std::invalid_argument("MomentMatrix::power: negative exponent");
    const int n = size();
    if (p == 0) return IntMatrix::Identity(n, n);
    SparseRows base = to_sparse(entries_);
    SparseRows result = base;
    for (int j = 1; j < p; ++j) result = sparse_multiply(result, base, n);
    return to_dense(result, n);
}

MomentMatrix build_moment_matrix(int dim, int order) { return MomentMatrix(dim, order); }

Propagator::Propagator(const MomentMatrix& A, double horizon)
    : dim_(A.dim()), order_(A.order()), horizon_(horizon) {
    const int n = A.size();
    const int terms = A.order() / 2;  // A^(terms+1) = 0

    matrix_ = Eigen::MatrixXd::Identity(n, n);
    SparseRows base = to_sparse(A.entries());
    SparseRows current = base;
    double coeff = 1.0;
    for (int j = 1; j <= terms; ++j) {
        if (j > 1) current = sparse_multiply(current, base, n);
        coeff *= -horizon / j;
        // representability guard: reject horizons whose propagator entries
        // would leave the double range
        const double scale = std::abs(coeff) * static_cast<double>(max_abs(current));
        if (!std::isfinite(scale) || scale > 1e300) {
            throw std::domain_error("backward_propagator: |T|^" + std::to_string(j) +
                                    " * max|A^" + std::to_string(j) +
                                    "| exceeds 1e300; reduce the order or the horizon");
        }
        for (int r = 0; r < n; ++r) {
            for (const auto& [c, v] : current[static_cast<std::size_t>(r)]) {
                matrix_(r, c) += coeff * static_cast<double>(v);
            }
        }
    }
}

MomentVector Propagator::apply(const MomentVector& y) const {
    if (y.dim() != dim_ || y.order() != order_) {
        throw std::invalid_argument("Propagator::apply: moment vector shape mismatch");
    }
    const int n = static_cast<int>(matrix_.rows());
    Eigen::VectorXd out(n);
    for (int r = 0; r < n; ++r) {
        long double acc = 0.0L;
        for (int c = 0; c < n; ++c) {
            if (matrix_(r, c) != 0.0) acc += static_cast<long double>(matrix_(r, c)) * y[c];
        }
        out[r] = static_cast<double>(acc);
    }
    return MomentVector(dim_, order_, std::move(out));
}

Propagator backward_propagator(const MomentMatrix& A, double T) { return Propagator(A, T); }

MomentVector invert_moments(const MomentVector& y, double T) {
    const MomentMatrix A(y.dim(), y.order());
    return Propagator(A, T).apply(y);
}

GrowthBound growth_bound(int order, double T) {
    if (order < 1) throw std::invalid_argument("growth_bound: order must be >= 1");
    if (T < 0.0) throw std::invalid_argument("growth_bound: T must be nonnegative");
    const int half = order / 2;
    const double k = static_cast<double>(order);

    GrowthBound b;
    double term = 1.0;
    b.sum = 1.0;
    for (int j = 1; j <= half; ++j) {
        term *= k * (k - 1.0) * T / j;
        b.sum += term;
    }
    b.majorant = std::sqrt(k / std::numbers::pi) * std::exp(k + 0.5 * k * std::log(k)) *
                 std::max(std::pow(T, half), 1.0);
    return b;
}

double error_bound(int dim, double R, int order, double T, double eps_inf, double tv_true,
                   double jackson_constant) {
    if (order < 1) throw std::invalid_argument("error_bound: order must be >= 1");
    if (!(R > 0.0)) throw std::invalid_argument("error_bound: R must be positive");
    const double k = static_cast<double>(order);
    const double cd = jackson_constant;
    const double first = cd * R * tv_true / k;
    const double prefactor = std::sqrt(k / std::numbers::pi) + cd * R / std::sqrt(std::numbers::pi * k);
    const double growth = std::exp(k * (1.0 + 2.0 * dim / R + std::log(std::sqrt(k))));
    const double second = prefactor * growth * std::max(std::pow(T, order / 2), 1.0) * eps_inf;
    return first + second;
}

}  // namespace heatmom
