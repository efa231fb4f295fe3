#pragma once

#include <string>
#include <vector>

#include "loopcode/bigint.hpp"
#include "loopcode/field.hpp"

namespace loopcode {

struct IdentityCheck {
    bool ok = true;
    std::string note;
    std::vector<int> witness;
    explicit operator bool() const { return ok; }
};

// Bilinear operation on a d-dimensional algebra: e_i · e_j = sum_k c[i][j][k] e_k.
// Coefficients are exact rationals (p == 0) or a prime field F_p.
struct BilinearOp {
    int dim = 0;
    int p = 0;
    std::vector<std::vector<std::vector<BigRational>>> c;

    static BilinearOp zero(int dim, int p = 0);
    void set(int i, int j, int k, BigRational v);
    IdentityCheck validate() const;
};

using AlgVec = std::vector<BigRational>;

AlgVec apply_op(const BilinearOp& op, const AlgVec& x, const AlgVec& y);
AlgVec basis_vec(int dim, int i);
bool vec_zero(const AlgVec& v, int p);

struct NotAntisymmetric : Error {
    NotAntisymmetric() : Error("NotAntisymmetric") {}
};
struct CircNotCommAssoc : Error {
    CircNotCommAssoc() : Error("CircNotCommAssoc") {}
};
struct BracketNotLie : Error {
    BracketNotLie() : Error("BracketNotLie") {}
};

// Malcev identity [[x,y],[x,z]] = [[[x,y],z],x] + [[[y,z],x],x] + [[[z,x],x],y],
// verified on basis triples plus basis-pair sums in the repeated slot (linear in y
// and z, quadratic in x, so basis vectors and pairwise basis sums for x suffice).
// Throws NotAntisymmetric if the bracket is not antisymmetric alternating.
IdentityCheck check_malcev(const BilinearOp& bracket);

// F-identity P_{X∘Y}(Z,W) = X∘P_Y(Z,W) + Y∘P_X(Z,W) with
// P_X(Z,W) = [X, Z∘W] - [X,Z]∘W - Z∘[X,W], verified on all basis quadruples.
// Preconditions checked: ∘ commutative associative; bracket antisymmetric + Jacobi.
IdentityCheck check_f_identity(const BilinearOp& circ, const BilinearOp& bracket);

// Both sides of the Malcev identity at arbitrary vectors; used by the spot-check
// tests comparing direct evaluation against basis expansion.
AlgVec malcev_lhs(const BilinearOp& b, const AlgVec& x, const AlgVec& y, const AlgVec& z);
AlgVec malcev_rhs(const BilinearOp& b, const AlgVec& x, const AlgVec& y, const AlgVec& z);

BilinearOp sl2_bracket();  // [h,e]=2e, [h,f]=-2f, [e,f]=h over Q

}  // namespace loopcode
