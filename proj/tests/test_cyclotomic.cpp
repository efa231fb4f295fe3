#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "loopcode/cyclotomic.hpp"

using namespace loopcode;

TEST_CASE("roots of unity: order and reduction") {
    for (int m : {2, 3, 4, 5}) {
        Cyc z = Cyc::root(m, 1);
        Cyc acc(m, 1);
        for (int i = 0; i < m; ++i) acc *= z;
        CHECK(acc == Cyc(m, 1));
        // sum over all m-th roots vanishes
        Cyc s(m);
        for (int i = 0; i < m; ++i) s += Cyc::root(m, i);
        CHECK(s.is_zero());
    }
}

TEST_CASE("conjugation and norm") {
    Cyc z = Cyc::root(5, 2) + Cyc::root(5, 0) * BigRational(3);
    Cyc n = z.norm_sq();
    CHECK(n == n.conj());
    auto zc = z.to_complex();
    CHECK(std::abs(n.to_complex().real() - std::norm(zc)) < 1e-9);
    CHECK(std::abs(n.to_complex().imag()) < 1e-9);
}

TEST_CASE("inverse") {
    Cyc z = Cyc::root(3, 1) - Cyc(3, 2);
    Cyc inv = z.inverse();
    CHECK(z * inv == Cyc(3, 1));
    CHECK_THROWS_AS(Cyc(4).inverse(), DivisionByZero);
    // i inverse = -i
    CHECK(Cyc::root(4, 1).inverse() == Cyc::root(4, 3));
}

TEST_CASE("rank and image basis") {
    int m = 4;
    CycMatrix a = {
        {Cyc(m, 1), Cyc::root(m, 1), Cyc(m, 0)},
        {Cyc(m, 2), Cyc::root(m, 1) * BigRational(2), Cyc(m, 0)},
        {Cyc(m, 0), Cyc(m, 0), Cyc(m, 1)},
    };
    CHECK(matrix_rank(a) == 2);
    auto img = column_image_basis(a);
    CHECK(img.size() == 2);
}

TEST_CASE("gram-schmidt produces orthogonal exact vectors") {
    int m = 3;
    std::vector<CycVector> vs = {
        {Cyc(m, 1), Cyc::root(m, 1), Cyc(m, 0)},
        {Cyc(m, 1), Cyc(m, 1), Cyc(m, 1)},
        {Cyc(m, 0), Cyc(m, 1), Cyc::root(m, 2)},
    };
    auto os = gram_schmidt(vs);
    for (size_t i = 0; i < os.size(); ++i)
        for (size_t j = i + 1; j < os.size(); ++j) CHECK(inner_product(os[i], os[j]).is_zero());
    CHECK(os.size() == matrix_rank({{vs[0][0], vs[1][0], vs[2][0]},
                                    {vs[0][1], vs[1][1], vs[2][1]},
                                    {vs[0][2], vs[1][2], vs[2][2]}}));
}

TEST_CASE("matrix algebra sanity") {
    int m = 5;
    CycMatrix id = identity_matrix(3, m);
    CycMatrix a = id;
    a[0][1] = Cyc::root(m, 2);
    CHECK(mat_equal(mat_mul(a, id), a));
    CycVector v = {Cyc(m, 1), Cyc(m, 2), Cyc(m, 0)};
    auto av = mat_apply(a, v);
    CHECK(av[0] == Cyc(m, 1) + Cyc::root(m, 2) * BigRational(2));
}
