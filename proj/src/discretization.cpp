#include "heatmom/discretization.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heatmom {

Mesh uniform_mesh(double R, int n_per_axis, int dim) {
    if (!(R > 0.0)) throw std::invalid_argument("uniform_mesh: R must be positive");
    if (n_per_axis < 1) throw std::invalid_argument("uniform_mesh: n_per_axis must be >= 1");
    if (dim < 1) throw std::invalid_argument("uniform_mesh: dim must be >= 1");

    const double spacing = 2.0 * R / n_per_axis;
    std::vector<double> axis(static_cast<std::size_t>(n_per_axis));
    for (int i = 0; i < n_per_axis; ++i) axis[static_cast<std::size_t>(i)] = -R + spacing * i;

    Mesh mesh;
    mesh.dim = dim;
    mesh.kind = MeshKind::uniform_grid;
    std::vector<int> odometer(static_cast<std::size_t>(dim), 0);
    while (true) {
        std::vector<double> point(static_cast<std::size_t>(dim));
        for (int j = 0; j < dim; ++j) point[static_cast<std::size_t>(j)] = axis[static_cast<std::size_t>(odometer[static_cast<std::size_t>(j)])];
        mesh.points.push_back(std::move(point));
        int j = dim - 1;
        while (j >= 0) {
            if (++odometer[static_cast<std::size_t>(j)] < n_per_axis) break;
            odometer[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
    }
    return mesh;
}

Mesh padua_points(int degree) {
    if (degree < 2 || degree % 2 != 0) {
        throw std::invalid_argument("padua_points: degree must be even and positive");
    }
    Mesh mesh;
    mesh.dim = 2;
    mesh.kind = MeshKind::padua;
    for (int i = 0; i <= degree; ++i) {
        const double first = std::cos(i * std::numbers::pi / degree);
        for (int j = 0; j <= degree / 2; ++j) {
            const double second = (i % 2 == 1)
                                      ? std::cos(2.0 * j * std::numbers::pi / (degree + 1))
                                      : std::cos((2.0 * j + 1.0) * std::numbers::pi / (degree + 1));
            mesh.points.push_back({first, second});
        }
    }
    return mesh;
}

Mesh build_mesh(const MeshSpec& spec, double R, int dim) {
    switch (spec.kind) {
        case MeshKind::uniform_grid:
            return uniform_mesh(R, spec.n_per_axis, dim);
        case MeshKind::padua:
            if (dim != 2) throw std::invalid_argument("build_mesh: padua points require dim = 2");
            return padua_points(spec.n_per_axis);
        case MeshKind::explicit_points: {
            Mesh mesh;
            mesh.dim = dim;
            mesh.kind = MeshKind::explicit_points;
            mesh.points = spec.explicit_points;
            if (mesh.points.empty()) throw std::invalid_argument("build_mesh: empty explicit mesh");
            return mesh;
        }
    }
    throw std::invalid_argument("build_mesh: unknown mesh kind");
}

namespace {

Eigen::MatrixXd vandermonde_matrix(const Mesh& mesh, int order) {
    const MultiIndexSet set(mesh.dim, order);
    Eigen::MatrixXd B(set.size(), mesh.size());
    std::vector<std::vector<double>> powers(
        static_cast<std::size_t>(mesh.dim), std::vector<double>(static_cast<std::size_t>(order + 1), 1.0));
    for (int i = 0; i < mesh.size(); ++i) {
        const auto& point = mesh.points[static_cast<std::size_t>(i)];
        for (int j = 0; j < mesh.dim; ++j) {
            for (int e = 1; e <= order; ++e) {
                powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)] =
                    powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(e - 1)] * point[static_cast<std::size_t>(j)];
            }
        }
        for (int row = 0; row < set.size(); ++row) {
            const MultiIndex& alpha = set.at(row);
            double value = 1.0;
            for (int j = 0; j < mesh.dim; ++j) value *= powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(alpha[j])];
            B(row, i) = value;
        }
    }
    return B;
}

}  // namespace

bool is_unisolvent(const Mesh& mesh, int degree) {
    const auto needed = binomial(degree + mesh.dim, mesh.dim);
    if (mesh.size() < needed) return false;
    Eigen::MatrixXd B = vandermonde_matrix(mesh, degree);
    for (Eigen::Index r = 0; r < B.rows(); ++r) {
        const double scale = B.row(r).cwiseAbs().maxCoeff();
        if (scale > 0.0) B.row(r) /= scale;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(B);
    qr.setThreshold(1e-10);
    return qr.rank() == B.rows();
}

ConstraintSystem build_constraints(const Mesh& mesh, const MomentVector& initial_moments) {
    if (mesh.dim != initial_moments.dim()) {
        throw std::invalid_argument("build_constraints: mesh and moments disagree on dimension");
    }
    ConstraintSystem system;
    system.mesh = mesh;
    system.order = initial_moments.order();
    system.vandermonde = vandermonde_matrix(mesh, system.order);
    system.row_scale = system.vandermonde.cwiseAbs().rowwise().maxCoeff();
    for (Eigen::Index r = 0; r < system.row_scale.size(); ++r) {
        if (system.row_scale[r] == 0.0) system.row_scale[r] = 1.0;
    }
    system.scaled = system.row_scale.cwiseInverse().asDiagonal() * system.vandermonde;
    system.rhs = initial_moments;
    return system;
}

LPProblem assemble_lp(const ConstraintSystem& system) {
    const auto rows = system.scaled.rows();
    const auto cols = system.scaled.cols();
    if (cols < rows) {
        throw std::invalid_argument("assemble_lp: mesh not unisolvent at degree " +
                                    std::to_string(system.order) + " (only " + std::to_string(cols) +
                                    " points for " + std::to_string(rows) + " constraints)");
    }
    {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(system.scaled);
        qr.setThreshold(1e-10);
        if (qr.rank() != rows) {
            throw std::invalid_argument("assemble_lp: mesh not unisolvent at degree " +
                                        std::to_string(system.order));
        }
    }

    LPProblem lp;
    lp.cost = Eigen::VectorXd::Ones(2 * cols);
    lp.constraints.resize(rows, 2 * cols);
    lp.constraints << system.scaled, -system.scaled;
    lp.rhs = system.row_scale.cwiseInverse().asDiagonal() * system.rhs.values();
    return lp;
}

namespace {

double compensated_row_dot(const Eigen::MatrixXd& B, Eigen::Index row, const Eigen::VectorXd& m) {
    double sum = 0.0, comp = 0.0;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        if (m[i] == 0.0) continue;
        const double term = B(row, i) * m[i];
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

}  // namespace

RecoveryResult recover_from_initial(const RecoveryConfig& config, const MomentVector& initial_moments) {
    if (initial_moments.order() != config.order) {
        throw std::invalid_argument("recover: config order " + std::to_string(config.order) +
                                    " does not match moment order " +
                                    std::to_string(initial_moments.order()));
    }
    const Mesh mesh = build_mesh(config.mesh, config.R, config.dim);
    const ConstraintSystem system = build_constraints(mesh, initial_moments);
    const LPProblem lp = assemble_lp(system);
    const LPSolution solution = solve(lp, config.solver);
    if (solution.status != LPStatus::optimal) {
        // cannot happen on a unisolvent mesh; if it does, the solver broke down
        throw std::runtime_error("recover: LP returned status " + to_string(solution.status));
    }

    const int N = mesh.size();
    Eigen::VectorXd amplitudes(N);
    std::vector<Atom> atoms;
    for (int i = 0; i < N; ++i) {
        const double m = solution.x[i] - solution.x[N + i];
        amplitudes[i] = m;
        if (std::abs(m) > config.atom_threshold) {
            atoms.push_back(Atom{mesh.points[static_cast<std::size_t>(i)], m});
        }
    }

    RecoveryResult result{AtomicMeasure(config.dim, std::move(atoms)), 0.0, solution.objective,
                          0.0, 0.0, solution.iterations};
    result.tv = total_variation(result.measure);
    result.rhs_max_abs = initial_moments.max_abs();
    for (Eigen::Index r = 0; r < system.vandermonde.rows(); ++r) {
        const double lhs = compensated_row_dot(system.vandermonde, r, amplitudes);
        result.residual = std::max(result.residual, std::abs(lhs - initial_moments[static_cast<int>(r)]));
    }
    return result;
}

RecoveryResult recover(const RecoveryConfig& config, const ObservedMoments& observed) {
    MomentVector y = observed.y;
    if (y.order() > config.order) y = y.truncated(config.order);
    const MomentVector initial = invert_moments(y, observed.horizon);
    return recover_from_initial(config, initial);
}

int auto_select_k(std::span<const double> tv_by_order, double jump_ratio) {
    if (tv_by_order.empty()) throw std::invalid_argument("auto_select_k: empty sequence");
    for (std::size_t k = 0; k + 1 < tv_by_order.size(); ++k) {
        if (tv_by_order[k + 1] > jump_ratio * tv_by_order[k]) return static_cast<int>(k);
    }
    return static_cast<int>(tv_by_order.size()) - 1;
}

}  // namespace heatmom
