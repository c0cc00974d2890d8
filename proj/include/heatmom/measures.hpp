#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

namespace heatmom {

/// Multi-index alpha in Z_+^d with |alpha|_1 = degree.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<int> exponents);

    int dim() const { return static_cast<int>(exponents_.size()); }
    int degree() const { return degree_; }
    int operator[](int i) const { return exponents_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& exponents() const { return exponents_; }

    bool operator==(const MultiIndex& other) const { return exponents_ == other.exponents_; }

private:
    std::vector<int> exponents_;
    int degree_ = 0;
};

/// Graded lexicographic order: first by degree, then lexicographically on the
/// exponent tuple. This is the one ordering shared by every moment vector and
/// matrix in the project.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

/// All alpha with |alpha|_1 <= order, in graded lexicographic order.
/// The zero index sits at position 0 and the list has C(order+dim, dim) entries.
std::vector<MultiIndex> multi_index_set(int dim, int order);

/// Ordered multi-index enumeration with position lookup.
class MultiIndexSet {
public:
    MultiIndexSet(int dim, int order);

    int dim() const { return dim_; }
    int order() const { return order_; }
    int size() const { return static_cast<int>(list_.size()); }
    const MultiIndex& at(int i) const { return list_[static_cast<std::size_t>(i)]; }
    const std::vector<MultiIndex>& list() const { return list_; }

    /// Position of the given exponent tuple, or -1 if outside the set
    /// (negative exponent or degree above order).
    int index_of(std::span<const int> exponents) const;

private:
    int dim_;
    int order_;
    std::vector<MultiIndex> list_;
};

struct Atom {
    std::vector<double> position;
    double amplitude = 0.0;
};

/// Finite signed sum of Dirac masses. Atoms with amplitude exactly zero are
/// dropped on construction; duplicate positions are allowed and merged by
/// canonicalize(). Immutable after construction.
class AtomicMeasure {
public:
    explicit AtomicMeasure(int dim, std::vector<Atom> atoms = {});

    int dim() const { return dim_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    int size() const { return static_cast<int>(atoms_.size()); }
    bool empty() const { return atoms_.empty(); }

    /// Sum of amplitudes (the measure of the whole space).
    double mass() const;

    /// Merge atoms at exactly equal positions by summing amplitudes; merged
    /// atoms with zero net amplitude disappear. Atom order follows the first
    /// occurrence of each position.
    AtomicMeasure canonicalize() const;

private:
    int dim_;
    std::vector<Atom> atoms_;
};

/// Total variation norm: sum of |amplitude| over atoms.
double total_variation(const AtomicMeasure& mu);

/// Moments of the measure indexed by the canonical multi-index order,
/// length C(order+dim, dim).
class MomentVector {
public:
    MomentVector(int dim, int order, Eigen::VectorXd values);

    int dim() const { return dim_; }
    int order() const { return order_; }
    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int i) const { return values_[i]; }
    const Eigen::VectorXd& values() const { return values_; }
    Eigen::VectorXd& values() { return values_; }

    double max_abs() const { return values_.size() == 0 ? 0.0 : values_.cwiseAbs().maxCoeff(); }

    /// Restriction to |alpha|_1 <= new_order (a prefix in graded order).
    MomentVector truncated(int new_order) const;

private:
    int dim_;
    int order_;
    Eigen::VectorXd values_;
};

/// values[alpha] = sum_i m_i x_i^alpha.
MomentVector exact_moments(const AtomicMeasure& mu, int order);

}  // namespace heatmom
