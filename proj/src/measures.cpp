#include "heatmom/measures.hpp"

#include "heatmom/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace heatmom {

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
    if (exponents_.empty()) throw std::invalid_argument("MultiIndex: empty exponent tuple");
    for (int e : exponents_) {
        if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
        degree_ += e;
    }
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.exponents() < b.exponents();
}

namespace {

void enumerate_degree(int dim, int degree, std::vector<int>& scratch, int position, int remaining,
                      std::vector<MultiIndex>& out) {
    if (position == dim - 1) {
        scratch[static_cast<std::size_t>(position)] = remaining;
        out.emplace_back(scratch);
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        scratch[static_cast<std::size_t>(position)] = e;
        enumerate_degree(dim, degree, scratch, position + 1, remaining - e, out);
    }
}

}  // namespace

std::vector<MultiIndex> multi_index_set(int dim, int order) {
    if (dim < 1) throw std::invalid_argument("multi_index_set: dim must be >= 1");
    if (order < 0) throw std::invalid_argument("multi_index_set: order must be >= 0");
    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(binomial(order + dim, dim)));
    std::vector<int> scratch(static_cast<std::size_t>(dim), 0);
    for (int degree = 0; degree <= order; ++degree) {
        // within a degree the recursion emits exponent tuples in lexicographic order
        enumerate_degree(dim, degree, scratch, 0, degree, out);
    }
    return out;
}

MultiIndexSet::MultiIndexSet(int dim, int order)
    : dim_(dim), order_(order), list_(multi_index_set(dim, order)) {}

int MultiIndexSet::index_of(std::span<const int> exponents) const {
    if (static_cast<int>(exponents.size()) != dim_) return -1;
    int degree = 0;
    for (int e : exponents) {
        if (e < 0) return -1;
        degree += e;
    }
    if (degree > order_) return -1;
    MultiIndex probe(std::vector<int>(exponents.begin(), exponents.end()));
    auto it = std::lower_bound(list_.begin(), list_.end(), probe, graded_lex_less);
    if (it == list_.end() || !(*it == probe)) return -1;
    return static_cast<int>(it - list_.begin());
}

AtomicMeasure::AtomicMeasure(int dim, std::vector<Atom> atoms) : dim_(dim) {
    if (dim_ < 1) throw std::invalid_argument("AtomicMeasure: dim must be >= 1");
    atoms_.reserve(atoms.size());
    for (auto& atom : atoms) {
        if (static_cast<int>(atom.position.size()) != dim_) {
            throw std::invalid_argument("AtomicMeasure: atom position has wrong dimension");
        }
        if (!std::isfinite(atom.amplitude)) {
            throw std::invalid_argument("AtomicMeasure: non-finite amplitude");
        }
        for (double c : atom.position) {
            if (!std::isfinite(c)) throw std::invalid_argument("AtomicMeasure: non-finite position");
        }
        if (atom.amplitude != 0.0) atoms_.push_back(std::move(atom));
    }
}

double AtomicMeasure::mass() const {
    double sum = 0.0, comp = 0.0;  // Neumaier compensation
    for (const auto& atom : atoms_) {
        double t = sum + atom.amplitude;
        if (std::abs(sum) >= std::abs(atom.amplitude)) {
            comp += (sum - t) + atom.amplitude;
        } else {
            comp += (atom.amplitude - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

AtomicMeasure AtomicMeasure::canonicalize() const {
    std::vector<Atom> merged;
    merged.reserve(atoms_.size());
    for (const auto& atom : atoms_) {
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const Atom& a) { return a.position == atom.position; });
        if (it == merged.end()) {
            merged.push_back(atom);
        } else {
            it->amplitude += atom.amplitude;
        }
    }
    return AtomicMeasure(dim_, std::move(merged));  // ctor drops zero-amplitude atoms
}

double total_variation(const AtomicMeasure& mu) {
    double tv = 0.0;
    for (const auto& atom : mu.atoms()) tv += std::abs(atom.amplitude);
    return tv;
}

MomentVector::MomentVector(int dim, int order, Eigen::VectorXd values)
    : dim_(dim), order_(order), values_(std::move(values)) {
    if (dim_ < 1 || order_ < 0) throw std::invalid_argument("MomentVector: bad dim/order");
    const auto expected = binomial(order_ + dim_, dim_);
    if (values_.size() != expected) {
        throw std::invalid_argument("MomentVector: expected length " + std::to_string(expected) +
                                    ", got " + std::to_string(values_.size()));
    }
}

MomentVector MomentVector::truncated(int new_order) const {
    if (new_order < 0 || new_order > order_) {
        throw std::invalid_argument("MomentVector::truncated: order out of range");
    }
    const auto length = binomial(new_order + dim_, dim_);
    return MomentVector(dim_, new_order, values_.head(length));
}

MomentVector exact_moments(const AtomicMeasure& mu, int order) {
    const MultiIndexSet set(mu.dim(), order);
    Eigen::VectorXd values = Eigen::VectorXd::Zero(set.size());
    for (const auto& atom : mu.atoms()) {
        for (int i = 0; i < set.size(); ++i) {
            const MultiIndex& alpha = set.at(i);
            double monomial = 1.0;
            for (int j = 0; j < mu.dim(); ++j) {
                for (int e = 0; e < alpha[j]; ++e) monomial *= atom.position[static_cast<std::size_t>(j)];
            }
            values[i] += atom.amplitude * monomial;
        }
    }
    return MomentVector(mu.dim(), order, std::move(values));
}

}  // namespace heatmom
