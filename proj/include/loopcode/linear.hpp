#pragma once

#include <optional>
#include <vector>

#include "loopcode/field.hpp"

namespace loopcode {

// F_q^dim with elements addressed by canonical index: index = sum coord[i] * q^i,
// so coordinate 0 varies fastest in enumeration order.
class VSpace {
  public:
    VSpace() = default;
    VSpace(std::shared_ptr<const Fq> field, int dim);

    const Fq& field() const { return *F_; }
    std::shared_ptr<const Fq> field_ptr() const { return F_; }
    int dim() const { return dim_; }
    long long count() const { return N_; }  // q^dim

    std::vector<int> coords(long long v) const;
    long long index(const std::vector<int>& c) const;
    long long basis(int i) const;  // e_i

    long long add(long long a, long long b) const;
    long long sub(long long a, long long b) const;
    long long neg(long long a) const;
    long long scale(int lambda, long long a) const;
    int coord(long long v, int i) const;

    bool operator==(const VSpace& o) const { return dim_ == o.dim_ && F_->spec() == o.F_->spec(); }

  private:
    std::shared_ptr<const Fq> F_;
    int dim_ = 0;
    long long N_ = 1;
    std::vector<long long> pow_;
};

// Row-reduced matrix utilities over F_q (rows are coordinate vectors).
using FqMatrix = std::vector<std::vector<int>>;

// In-place RREF; returns rank. Rows below rank are zeroed and dropped.
int rref(FqMatrix& m, const Fq& F);
// Solve x * A = b for a row vector x (A given by rows); nullopt if inconsistent.
std::optional<std::vector<int>> solve_left(const FqMatrix& a, const std::vector<int>& b, const Fq& F);
// Basis of { x : x * A = 0 }.
FqMatrix left_kernel(const FqMatrix& a, const Fq& F);

// Subspace of a VSpace, kept in canonical RREF so equal subspaces compare equal.
class Subspace {
  public:
    Subspace() = default;
    static Subspace span(const VSpace& space, const FqMatrix& vectors);
    static Subspace span_indices(const VSpace& space, const std::vector<long long>& vecs);
    static Subspace zero(const VSpace& space);
    static Subspace full(const VSpace& space);

    const VSpace& space() const { return space_; }
    int dim() const { return (int)basis_.size(); }
    const FqMatrix& basis() const { return basis_; }
    long long basis_index(int i) const { return space_.index(basis_[i]); }
    long long size() const;  // q^dim

    bool contains(long long v) const;
    bool contains_coords(const std::vector<int>& c) const;
    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;
    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

    // All element indices in lexicographic basis-coefficient order (coefficient 0 fastest).
    std::vector<long long> enumerate(long long bound = (1ll << 20)) const;
    // Coefficients of v over the basis; nullopt if v not in the subspace.
    std::optional<std::vector<int>> coefficients(long long v) const;
    // Deterministic complement: greedily extend the basis by standard vectors.
    Subspace complement() const;

  private:
    VSpace space_;
    FqMatrix basis_;  // RREF rows
};

}  // namespace loopcode
