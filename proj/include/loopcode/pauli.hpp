#pragma once

#include "loopcode/cyclotomic.hpp"
#include "loopcode/linear.hpp"

namespace loopcode {

struct DimensionBoundExceeded : Error {
    DimensionBoundExceeded() : Error("DimensionBoundExceeded") {}
};

// Permutation-with-phases operator on C^dim: M|j> = zeta_m^{phase[j]} |perm[j]>.
// Closed under products and adjoints; exact phases as exponents mod m.
struct MonomialOp {
    int dim = 0;
    int m = 1;                // phase conductor
    std::vector<int> perm;    // j -> image index
    std::vector<int> phase;   // exponent of zeta_m attached to source j

    static MonomialOp identity(int dim, int m);
    MonomialOp then(const MonomialOp& second) const;  // second ∘ this
    MonomialOp dagger() const;
    MonomialOp scaled(int phase_exp) const;
    bool operator==(const MonomialOp& o) const;
    Cyc trace() const;
    CycMatrix to_matrix() const;
    CycVector apply(const CycVector& v) const;
    bool commutes_with(const MonomialOp& o) const;
};

// Generalized Pauli operators on (C^q)^{⊗n}, q = p^r. Basis |a>, a in F_q^n,
// indexed with coordinate 0 fastest; each F_q coordinate decomposes into r base-p
// digits carrying the single-factor T (cyclic shift) and R (phase) actions.
class PauliContext {
  public:
    PauliContext(FieldSpec spec, int n, long long dim_bound = 6561);

    int p() const { return spec_.p; }
    int r() const { return spec_.r; }
    int n() const { return n_; }
    long long q() const { return spec_.q(); }
    long long dim() const { return dim_; }
    int conductor() const { return spec_.p; }
    const VSpace& coordinate_space() const { return coords_; }

    MonomialOp T_single() const;  // p-dimensional shift
    MonomialOp R_single() const;  // diag(1, zeta, ..., zeta^{p-1})
    // E_{a,b} = T_a R_b, with a, b in F_q^n given as coordinate-space indices.
    MonomialOp error_op(long long a, long long b) const;
    // number of q-ary factors where (a_i, b_i) != (0, 0)
    int weight(long long a, long long b) const;

  private:
    FieldSpec spec_;
    int n_;
    long long dim_;
    VSpace coords_;  // F_q^n
    std::shared_ptr<const Fq> F_;
};

struct GramReport {
    bool diagonal_ok = true;    // Tr(E†E) = q^n for all E
    bool offdiag_ok = true;     // Tr(E†E') = 0 for E != E'
    Cyc diagonal_value;
    std::vector<long long> witness;  // (a,b,a',b') on failure
};
GramReport error_basis_gram(const PauliContext& ctx);

}  // namespace loopcode
