#pragma once

#include "heatmom/lp_simplex.hpp"
#include "heatmom/measures.hpp"
#include "heatmom/moment_dynamics.hpp"
#include "heatmom/quadrature.hpp"

#include <Eigen/Core>

#include <span>
#include <string>
#include <vector>

namespace heatmom {

enum class MeshKind { uniform_grid, padua, explicit_points };

/// Candidate support set Omega_h for the recovered measure.
struct Mesh {
    int dim = 1;
    MeshKind kind = MeshKind::uniform_grid;
    std::vector<std::vector<double>> points;

    int size() const { return static_cast<int>(points.size()); }
};

/// Tensor grid of n_per_axis^d points on [-R, R]^d with spacing 2R/n per
/// axis, anchored at -R (half-open: the +R face is excluded). With N = 2R/h
/// points this puts every h-multiple of the axis on the grid, which is what
/// lets sources with short decimal coordinates be recovered exactly.
Mesh uniform_mesh(double R, int n_per_axis, int dim);

/// Padua points of even degree k on [-1, 1]^2: (cos(i pi / k), z_j) for
/// 0 <= i <= k, 0 <= j <= k/2, where z_j = cos(2 j pi / (k+1)) for odd i and
/// cos((2j+1) pi / (k+1)) for even i. Exactly C(k+2, 2) points, unisolvent
/// of degree k.
Mesh padua_points(int degree);

/// True iff the Vandermonde matrix of the mesh at the given degree has full
/// row rank C(degree+dim, dim); rank-revealing QR with relative threshold
/// 1e-10 on the equilibrated matrix.
bool is_unisolvent(const Mesh& mesh, int degree);

/// Moment-matching constraints B m = rhs with b[alpha, i] = x_i^alpha.
/// Rows are equilibrated by their max-abs entry (an equivalent system; the
/// raw alpha-rows span ~R^k in magnitude). After that every column has
/// max-abs entry exactly 1 (attained on the alpha = 0 row), so no separate
/// column scaling remains to undo on the amplitudes.
struct ConstraintSystem {
    Mesh mesh;
    int order = 0;
    Eigen::MatrixXd vandermonde;      // raw B
    Eigen::VectorXd row_scale;        // max-abs per row of B
    Eigen::MatrixXd scaled;           // diag(1/row_scale) * B
    MomentVector rhs;                 // inverted moments e^(-TA) y (raw)
};

ConstraintSystem build_constraints(const Mesh& mesh, const MomentVector& initial_moments);

/// The split-variable linear program
///   min <1, m+ + m->  s.t.  B (m+ - m-) = rhs,  m+ >= 0, m- >= 0
/// over the equilibrated system. Throws when the mesh is not unisolvent at
/// the system's degree.
LPProblem assemble_lp(const ConstraintSystem& system);

struct MeshSpec {
    MeshKind kind = MeshKind::uniform_grid;
    int n_per_axis = 0;
    std::vector<std::vector<double>> explicit_points;
};

struct RecoveryConfig {
    int dim = 1;
    double R = 5.0;
    MeshSpec mesh;
    int order = 0;                    // moment order k
    SimplexOptions solver;
    double atom_threshold = 1e-12;    // |m_i| below this is LP numerical zero
};

struct RecoveryResult {
    AtomicMeasure measure;
    double tv = 0.0;           // total variation of the extracted measure
    double objective = 0.0;    // LP optimum (includes sub-threshold dust)
    double residual = 0.0;     // max-abs of B m - rhs on the raw system
    double rhs_max_abs = 0.0;
    int lp_iterations = 0;
};

/// Full recovery from observed terminal moments: invert the moment dynamics,
/// then solve the total-variation program on the mesh.
RecoveryResult recover(const RecoveryConfig& config, const ObservedMoments& observed);

/// Recovery from already-inverted initial moments (the staged pipeline).
RecoveryResult recover_from_initial(const RecoveryConfig& config, const MomentVector& initial_moments);

/// Practical order selection: the largest k before the first jump
/// tv[k+1] > jump_ratio * tv[k]; the last index when no jump occurs.
int auto_select_k(std::span<const double> tv_by_order, double jump_ratio = 5.0);

Mesh build_mesh(const MeshSpec& spec, double R, int dim);

}  // namespace heatmom
