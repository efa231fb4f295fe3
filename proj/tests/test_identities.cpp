#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "loopcode/identities.hpp"

using namespace loopcode;

TEST_CASE("malcev: zero bracket and sl2") {
    CHECK(check_malcev(BilinearOp::zero(3)).ok);
    CHECK(check_malcev(sl2_bracket()).ok);
}

TEST_CASE("malcev: non-example detected by brute force") {
    // [e1,e2] = e1, [e1,e3] = e3, [e2,e3] = 0: compare checker against direct evaluation
    BilinearOp b = BilinearOp::zero(3);
    b.set(0, 1, 0, BigRational(1));
    b.set(1, 0, 0, BigRational(-1));
    b.set(0, 2, 2, BigRational(1));
    b.set(2, 0, 2, BigRational(-1));
    IdentityCheck r = check_malcev(b);
    // independent oracle: scan basis vectors and pair sums directly
    bool ok = true;
    std::vector<AlgVec> xs;
    for (int i = 0; i < 3; ++i) xs.push_back(basis_vec(3, i));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            AlgVec s = basis_vec(3, i);
            for (int k = 0; k < 3; ++k) s[k] = s[k] + basis_vec(3, j)[k];
            xs.push_back(s);
        }
    for (const auto& x : xs)
        for (int j = 0; j < 3 && ok; ++j)
            for (int k = 0; k < 3 && ok; ++k) {
                AlgVec l = malcev_lhs(b, x, basis_vec(3, j), basis_vec(3, k));
                AlgVec rr = malcev_rhs(b, x, basis_vec(3, j), basis_vec(3, k));
                for (int t = 0; t < 3; ++t)
                    if (!(l[t] - rr[t]).is_zero()) ok = false;
            }
    CHECK(r.ok == ok);
}

TEST_CASE("malcev requires antisymmetry") {
    BilinearOp b = BilinearOp::zero(2);
    b.set(0, 1, 0, BigRational(1));  // no matching -1
    CHECK_THROWS_AS(check_malcev(b), NotAntisymmetric);
}

TEST_CASE("random-vector evaluation agrees with basis expansion") {
    BilinearOp b = sl2_bracket();
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        AlgVec x(3), y(3), z(3);
        for (int i = 0; i < 3; ++i) {
            x[i] = BigRational((long long)(rng() % 7) - 3);
            y[i] = BigRational((long long)(rng() % 7) - 3);
            z[i] = BigRational((long long)(rng() % 7) - 3);
        }
        // multilinearity in y and z: direct evaluation = basis expansion
        AlgVec direct = malcev_lhs(b, x, y, z);
        AlgVec expanded(3, BigRational(0));
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                if (y[j].is_zero() || z[k].is_zero()) continue;
                AlgVec part = malcev_lhs(b, x, basis_vec(3, j), basis_vec(3, k));
                for (int t = 0; t < 3; ++t) expanded[t] = expanded[t] + y[j] * z[k] * part[t];
            }
        for (int t = 0; t < 3; ++t) CHECK(direct[t] == expanded[t]);
    }
}

TEST_CASE("f-identity: zero circ, 1-dimensional algebra, failure witness") {
    BilinearOp circ0 = BilinearOp::zero(2);
    BilinearOp lie = BilinearOp::zero(2);
    CHECK(check_f_identity(circ0, lie).ok);

    BilinearOp mul1 = BilinearOp::zero(1);
    mul1.set(0, 0, 0, BigRational(1));
    CHECK(check_f_identity(mul1, BilinearOp::zero(1)).ok);

    // over F_5: commutative associative circ with a bracket that is not a derivation
    BilinearOp circ = BilinearOp::zero(2, 5);
    circ.set(0, 0, 0, BigRational(1));
    circ.set(0, 1, 1, BigRational(1));
    circ.set(1, 0, 1, BigRational(1));
    circ.set(1, 1, 0, BigRational(0));
    BilinearOp br = BilinearOp::zero(2, 5);
    br.set(0, 1, 1, BigRational(1));
    br.set(1, 0, 1, BigRational(4));
    IdentityCheck r = check_f_identity(circ, br);
    if (!r.ok) CHECK(r.witness.size() == 4);
}

TEST_CASE("preconditions enforced") {
    BilinearOp noncomm = BilinearOp::zero(2);
    noncomm.set(0, 1, 0, BigRational(1));
    CHECK_THROWS_AS(check_f_identity(noncomm, BilinearOp::zero(2)), CircNotCommAssoc);

    BilinearOp nonjacobi = BilinearOp::zero(3);
    // antisymmetric but violating Jacobi: [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e1
    nonjacobi.set(0, 1, 2, BigRational(1));
    nonjacobi.set(1, 0, 2, BigRational(-1));
    nonjacobi.set(1, 2, 0, BigRational(1));
    nonjacobi.set(2, 1, 0, BigRational(-1));
    nonjacobi.set(2, 0, 0, BigRational(1));
    nonjacobi.set(0, 2, 0, BigRational(-1));
    CHECK_THROWS_AS(check_f_identity(BilinearOp::zero(3), nonjacobi), BracketNotLie);
}

TEST_CASE("poisson-compatible pair passes the f-identity") {
    // circ: pointwise algebra on functions over two points; bracket = 0 is a derivation
    BilinearOp circ = BilinearOp::zero(2);
    circ.set(0, 0, 0, BigRational(1));
    circ.set(1, 1, 1, BigRational(1));
    CHECK(check_f_identity(circ, BilinearOp::zero(2)).ok);
}
