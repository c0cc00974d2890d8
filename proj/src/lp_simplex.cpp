#include "heatmom/lp_simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace heatmom {

std::string to_string(LPStatus status) {
    switch (status) {
        case LPStatus::optimal: return "optimal";
        case LPStatus::infeasible: return "infeasible";
        case LPStatus::unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

/// Neumaier-compensated dot product; keeps residuals meaningful when the
/// terms span many orders of magnitude.
double compensated_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double sum = 0.0, comp = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double term = a[i] * b[i];
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

class Tableau {
public:
    Tableau(const LPProblem& problem, const SimplexOptions& options)
        : options_(options),
          m_(static_cast<int>(problem.constraints.rows())),
          n_(static_cast<int>(problem.constraints.cols())),
          work_(problem.constraints),
          rhs_(problem.rhs),
          cost_(problem.cost),
          row_flip_(Eigen::VectorXd::Ones(problem.constraints.rows())) {
        // nonnegative right-hand side: flip rows, remember the signs for duals
        for (int i = 0; i < m_; ++i) {
            if (rhs_[i] < 0.0) {
                work_.row(i) = -work_.row(i);
                rhs_[i] = -rhs_[i];
                row_flip_[i] = -1.0;
            }
        }
        feas_tol_ = 1e-8 * (1.0 + rhs_.lpNorm<Eigen::Infinity>());
        max_iters_ = options.max_iters > 0 ? options.max_iters : 10 * (n_ + m_);

        table_.resize(m_, n_ + m_);
        table_ << work_, Eigen::MatrixXd::Identity(m_, m_);
        xb_ = rhs_;
        basis_.resize(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i) basis_[static_cast<std::size_t>(i)] = n_ + i;

        if (!options_.iteration_log_path.empty()) {
            log_ = std::fopen(options_.iteration_log_path.c_str(), "w");
            if (log_) std::fprintf(log_, "iter,objective,entering,leaving\n");
        }
    }

    ~Tableau() {
        if (log_) std::fclose(log_);
    }

    LPSolution run() {
        // phase 1: minimize the sum of artificial variables
        Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(n_ + m_);
        phase1_cost.tail(m_).setOnes();
        iterate(phase1_cost, /*phase1=*/true);

        if (phase1_objective() > feas_tol_) {
            LPSolution solution;
            solution.status = LPStatus::infeasible;
            solution.x = Eigen::VectorXd::Zero(n_);
            solution.objective = std::numeric_limits<double>::quiet_NaN();
            solution.iterations = iterations_;
            return solution;
        }
        purge_artificials();

        // phase 2: original costs, artificial columns never re-enter
        Eigen::VectorXd phase2_cost = Eigen::VectorXd::Zero(n_ + m_);
        phase2_cost.head(n_) = cost_;
        const bool bounded = iterate(phase2_cost, /*phase1=*/false);

        LPSolution solution;
        solution.iterations = iterations_;
        if (!bounded) {
            solution.status = LPStatus::unbounded;
            solution.x = Eigen::VectorXd::Zero(n_);
            solution.objective = -std::numeric_limits<double>::infinity();
            return solution;
        }
        finalize(solution);
        return solution;
    }

private:
    double phase1_objective() const {
        double sum = 0.0;
        for (int i = 0; i < m_; ++i) {
            if (basis_[static_cast<std::size_t>(i)] >= n_) sum += xb_[i];
        }
        return sum;
    }

    /// Reduced costs priced against the original columns via the dual vector,
    /// read off the identity block of the tableau (which carries B^-1).
    Eigen::VectorXd reduced_costs(const Eigen::VectorXd& cost) const {
        Eigen::VectorXd cb(m_);
        for (int i = 0; i < m_; ++i) cb[i] = cost[basis_[static_cast<std::size_t>(i)]];
        const Eigen::RowVectorXd y = cb.transpose() * table_.rightCols(m_);
        Eigen::VectorXd reduced = cost.head(n_) - (y * work_).transpose();
        return reduced;
    }

    bool is_basic(int column) const {
        return std::find(basis_.begin(), basis_.end(), column) != basis_.end();
    }

    /// Runs the simplex loop for the given cost vector. Returns false when an
    /// unbounded descent direction is found (phase 2 only).
    bool iterate(const Eigen::VectorXd& cost, bool phase1) {
        const double tol = options_.pivot_tol;
        int stalled = 0;
        bool bland = false;
        double best_objective = std::numeric_limits<double>::infinity();

        while (true) {
            const Eigen::VectorXd reduced = reduced_costs(cost);

            int entering = -1;
            double most_negative = -tol;
            for (int j = 0; j < n_; ++j) {
                if (reduced[j] >= -tol || is_basic(j)) continue;
                if (bland) {
                    entering = j;
                    break;
                }
                if (reduced[j] < most_negative) {
                    most_negative = reduced[j];
                    entering = j;
                }
            }
            if (entering < 0) return true;  // optimal for this phase

            // ratio test; ties broken by the lowest basis column index
            const Eigen::VectorXd direction = table_.col(entering);
            int leaving_row = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m_; ++i) {
                if (direction[i] <= tol) continue;
                const double ratio = xb_[i] / direction[i];
                if (ratio < best_ratio - 1e-12 ||
                    (ratio <= best_ratio + 1e-12 && leaving_row >= 0 &&
                     basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leaving_row)])) {
                    best_ratio = ratio;
                    leaving_row = i;
                }
            }
            if (leaving_row < 0) {
                if (phase1) {
                    throw std::runtime_error("simplex: phase-1 subproblem unbounded (numerical breakdown)");
                }
                return false;
            }

            if (iterations_ >= max_iters_) {
                throw SimplexIterationError("simplex: iteration limit of " +
                                            std::to_string(max_iters_) + " exceeded");
            }
            ++iterations_;
            if (log_) {
                std::fprintf(log_, "%d,%.17g,%d,%d\n", iterations_, objective_value(cost), entering,
                             basis_[static_cast<std::size_t>(leaving_row)]);
            }

            pivot(leaving_row, entering);

            const double objective = objective_value(cost);
            if (objective < best_objective - tol * (1.0 + std::abs(best_objective))) {
                best_objective = objective;
                stalled = 0;
            } else if (++stalled > 3 * (n_ + m_) && !bland) {
                bland = true;  // anti-cycling fallback, kept on for the rest of the phase
            }

            if (++pivots_since_refactor_ >= 50) refactorize();
        }
    }

    double objective_value(const Eigen::VectorXd& cost) const {
        double value = 0.0;
        for (int i = 0; i < m_; ++i) value += cost[basis_[static_cast<std::size_t>(i)]] * xb_[i];
        return value;
    }

    void pivot(int row, int entering) {
        const double pivot_value = table_(row, entering);
        table_.row(row) /= pivot_value;
        xb_[row] /= pivot_value;
        for (int i = 0; i < m_; ++i) {
            if (i == row) continue;
            const double factor = table_(i, entering);
            if (factor == 0.0) continue;
            table_.row(i) -= factor * table_.row(row);
            xb_[i] -= factor * xb_[row];
        }
        // pivot column becomes exactly a unit vector
        table_.col(entering).setZero();
        table_(row, entering) = 1.0;
        basis_[static_cast<std::size_t>(row)] = entering;
        for (int i = 0; i < m_; ++i) {
            if (xb_[i] < 0.0 && xb_[i] > -feas_tol_) xb_[i] = 0.0;
        }
    }

    /// Rebuild the tableau from the original data with a fresh factorization
    /// of the current basis; caps pivot-accumulated drift.
    void refactorize() {
        pivots_since_refactor_ = 0;
        Eigen::MatrixXd basis_matrix(m_, m_);
        for (int i = 0; i < m_; ++i) {
            const int column = basis_[static_cast<std::size_t>(i)];
            if (column < n_) {
                basis_matrix.col(i) = work_.col(column);
            } else {
                basis_matrix.col(i) = Eigen::VectorXd::Unit(m_, column - n_);
            }
        }
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
        Eigen::MatrixXd full(m_, n_ + m_);
        full << work_, Eigen::MatrixXd::Identity(m_, m_);
        table_ = lu.solve(full);
        xb_ = lu.solve(rhs_);
        for (int i = 0; i < m_; ++i) {
            if (xb_[i] < 0.0 && xb_[i] > -feas_tol_) xb_[i] = 0.0;
        }
    }

    /// After phase 1: pivot basic artificials out on any eligible original
    /// column; rows that admit no pivot are redundant and get dropped.
    void purge_artificials() {
        std::vector<int> redundant;
        for (int i = 0; i < m_; ++i) {
            if (basis_[static_cast<std::size_t>(i)] < n_) continue;
            int entering = -1;
            for (int j = 0; j < n_; ++j) {
                if (!is_basic(j) && std::abs(table_(i, j)) > options_.pivot_tol) {
                    entering = j;
                    break;
                }
            }
            if (entering >= 0) {
                pivot(i, entering);
            } else {
                redundant.push_back(i);
            }
        }
        if (redundant.empty()) return;

        std::vector<int> keep;
        for (int i = 0; i < m_; ++i) {
            if (std::find(redundant.begin(), redundant.end(), i) == redundant.end()) keep.push_back(i);
        }
        const int new_m = static_cast<int>(keep.size());
        Eigen::MatrixXd new_work(new_m, n_);
        Eigen::VectorXd new_rhs(new_m);
        Eigen::VectorXd new_flip(new_m);
        std::vector<int> new_basis;
        for (int r = 0; r < new_m; ++r) {
            new_work.row(r) = work_.row(keep[static_cast<std::size_t>(r)]);
            new_rhs[r] = rhs_[keep[static_cast<std::size_t>(r)]];
            new_flip[r] = row_flip_[keep[static_cast<std::size_t>(r)]];
            new_basis.push_back(basis_[static_cast<std::size_t>(keep[static_cast<std::size_t>(r)])]);
        }
        work_ = std::move(new_work);
        rhs_ = std::move(new_rhs);
        row_flip_ = std::move(new_flip);
        basis_ = std::move(new_basis);
        m_ = new_m;
        refactorize();
    }

    /// Re-solve the basic system from the original data and refine once with
    /// a compensated residual, then assemble the solution.
    void finalize(LPSolution& solution) {
        Eigen::MatrixXd basis_matrix(m_, m_);
        Eigen::VectorXd cb(m_);
        for (int i = 0; i < m_; ++i) {
            const int column = basis_[static_cast<std::size_t>(i)];
            basis_matrix.col(i) = work_.col(column);
            cb[i] = cost_[column];
        }
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
        Eigen::VectorXd xb = lu.solve(rhs_);
        Eigen::VectorXd residual(m_);
        for (int i = 0; i < m_; ++i) {
            residual[i] = rhs_[i] - compensated_dot(basis_matrix.row(i).transpose(), xb);
        }
        xb += lu.solve(residual);

        solution.status = LPStatus::optimal;
        solution.x = Eigen::VectorXd::Zero(n_);
        for (int i = 0; i < m_; ++i) {
            const double value = std::max(xb[i], 0.0);
            solution.x[basis_[static_cast<std::size_t>(i)]] = value;
        }
        solution.objective = compensated_dot(cost_, solution.x);
        solution.basis = basis_;

        Eigen::VectorXd y = lu.transpose().solve(cb);
        solution.dual = row_flip_.cwiseProduct(y);  // back in original row orientation
    }

    const SimplexOptions& options_;
    int m_;
    int n_;
    Eigen::MatrixXd work_;
    Eigen::VectorXd rhs_;
    Eigen::VectorXd cost_;
    Eigen::VectorXd row_flip_;
    Eigen::MatrixXd table_;
    Eigen::VectorXd xb_;
    std::vector<int> basis_;
    double feas_tol_ = 0.0;
    int max_iters_ = 0;
    int iterations_ = 0;
    int pivots_since_refactor_ = 0;
    std::FILE* log_ = nullptr;
};

}  // namespace

LPSolution solve(const LPProblem& problem, const SimplexOptions& options) {
    const auto m = problem.constraints.rows();
    const auto n = problem.constraints.cols();
    if (m < 1) throw std::invalid_argument("lp_simplex: need at least one constraint");
    if (m > n) throw std::invalid_argument("lp_simplex: more constraints than variables");
    if (problem.cost.size() != n || problem.rhs.size() != m) {
        throw std::invalid_argument("lp_simplex: inconsistent problem dimensions");
    }
    if (!problem.constraints.allFinite() || !problem.cost.allFinite() || !problem.rhs.allFinite()) {
        throw std::invalid_argument("lp_simplex: non-finite entries in the problem data");
    }
    Tableau tableau(problem, options);
    return tableau.run();
}

}  // namespace heatmom
