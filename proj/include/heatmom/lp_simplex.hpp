#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace heatmom {

/// Standard-form linear program: min cost . x  s.t.  constraints x = rhs, x >= 0.
struct LPProblem {
    Eigen::VectorXd cost;
    Eigen::MatrixXd constraints;
    Eigen::VectorXd rhs;
};

enum class LPStatus { optimal, infeasible, unbounded };

std::string to_string(LPStatus status);

/// Basic solution returned by the simplex method. When optimal, x is a vertex
/// of the feasible polytope: at most m entries are nonzero.
struct LPSolution {
    LPStatus status = LPStatus::optimal;
    Eigen::VectorXd x;
    double objective = 0.0;
    std::vector<int> basis;
    Eigen::VectorXd dual;  // multipliers of the equality constraints (original row signs)
    int iterations = 0;
};

struct SimplexOptions {
    double pivot_tol = 1e-9;
    int max_iters = -1;  // -1: 10 * (n + m)
    std::string iteration_log_path;  // optional CSV dump: iter, objective, entering, leaving
};

/// Raised when the iteration limit is exceeded; deliberately distinct from
/// the optimal/infeasible/unbounded statuses.
class SimplexIterationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two-phase dense tableau simplex with explicit artificial variables.
/// Dantzig pricing with a Bland fallback against cycling; tableau rebuilt
/// from a fresh factorization every 50 pivots; the final basic solution is
/// re-solved from the original data with one step of iterative refinement.
LPSolution solve(const LPProblem& problem, const SimplexOptions& options = {});

}  // namespace heatmom
