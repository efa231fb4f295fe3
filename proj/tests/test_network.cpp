#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "loopcode/tensor_network.hpp"

using namespace loopcode;

namespace {

TensorNetwork two_vertex_dot(const std::vector<std::complex<double>>& u,
                             const std::vector<std::complex<double>>& v) {
    TensorNetwork net;
    net.q = (int)u.size();
    net.g.nvertices = 2;
    net.g.boundary = {0, 1};
    net.g.involution = {1, 0};
    net.vertex_tensors = {Tensor{{net.q}, u}, Tensor{{net.q}, v}};
    net.vertex_flags = {{0}, {1}};
    return net;
}

TensorNetwork delta_cycle(int nv, int q) {
    // cycle of delta tensors: each vertex has 2 legs glued to neighbours
    TensorNetwork net;
    net.q = q;
    net.g.nvertices = nv;
    net.g.boundary.assign(2 * nv, 0);
    net.g.involution.assign(2 * nv, 0);
    for (int v = 0; v < nv; ++v) {
        net.g.boundary[2 * v] = v;      // left leg
        net.g.boundary[2 * v + 1] = v;  // right leg
    }
    for (int v = 0; v < nv; ++v) {
        int f1 = 2 * v + 1, f2 = 2 * ((v + 1) % nv);
        net.g.involution[f1] = f2;
        net.g.involution[f2] = f1;
    }
    Tensor delta;
    delta.dims = {q, q};
    delta.a.assign((size_t)q * q, 0.0);
    for (int i = 0; i < q; ++i) delta.a[(size_t)i * q + i] = 1.0;
    net.vertex_tensors.assign(nv, delta);
    net.vertex_flags.resize(nv);
    for (int v = 0; v < nv; ++v) net.vertex_flags[v] = {2 * v, 2 * v + 1};
    return net;
}

std::shared_ptr<AlmostSymplecticSpace> standard_odd(int p, int dim) {
    auto f = std::make_shared<Fq>(FieldSpec::prime_field(p));
    auto sp = std::make_shared<AlmostSymplecticSpace>();
    sp->V = VSpace(f, dim);
    sp->A = Codomain::field(f);
    sp->omega = FormTable::standard_symplectic(sp->V, sp->A);
    return sp;
}

}  // namespace

TEST_CASE("flag graph validation") {
    FlagGraph g;
    g.nvertices = 2;
    g.boundary = {0, 1, 0};
    g.involution = {1, 0, 2};
    CHECK(g.validate().ok);
    CHECK(g.internal_edges().size() == 1);
    CHECK(g.external_flags() == std::vector<int>{2});
    CHECK(g.degree(0) == 2);
    CHECK(g.connected());

    FlagGraph bad = g;
    bad.involution = {1, 0, 1};
    CHECK_FALSE(bad.validate().ok);
}

TEST_CASE("contract: dot product, single vertex, delta cycle") {
    Tensor amp = contract(two_vertex_dot({1, 2, 3}, {4, 5, 6}));
    REQUIRE(amp.dims.empty());
    CHECK(std::abs(amp.a[0] - std::complex<double>(32, 0)) < 1e-12);

    // single vertex with one external leg: the tensor itself
    TensorNetwork solo;
    solo.q = 3;
    solo.g.nvertices = 1;
    solo.g.boundary = {0};
    solo.g.involution = {0};
    solo.vertex_tensors = {Tensor{{3}, {1, 2, 3}}};
    solo.vertex_flags = {{0}};
    Tensor t = contract(solo);
    REQUIRE(t.dims == std::vector<int>{3});
    CHECK(std::abs(t.a[1] - std::complex<double>(2, 0)) < 1e-12);

    // 4-cycle of deltas over q=2: amplitude = trace of identity walk = 2
    Tensor cyc = contract(delta_cycle(4, 2));
    REQUIRE(cyc.dims.empty());
    CHECK(std::abs(cyc.a[0] - std::complex<double>(2, 0)) < 1e-12);
}

TEST_CASE("contraction order independence on a 3-vertex path") {
    // path a - b - c with one external leg on each end; vertex relabeling changes the
    // greedy merge order, the contracted state must agree entrywise
    std::vector<std::complex<double>> ta = {0.5, -1, 2, 0.25};   // legs (ext0, bond1)
    std::vector<std::complex<double>> tb = {1, 0.5, -2, 1.5};    // legs (bond1, bond2)
    std::vector<std::complex<double>> tc = {0, 2, 1, -1};        // legs (bond2, ext3)
    TensorNetwork net;
    net.q = 2;
    net.g.nvertices = 3;
    //        flags: 0=ext(a) 1=a-b 2=b-a 3=b-c 4=c-b 5=ext(c)
    net.g.boundary = {0, 0, 1, 1, 2, 2};
    net.g.involution = {0, 2, 1, 4, 3, 5};
    net.vertex_tensors = {Tensor{{2, 2}, ta}, Tensor{{2, 2}, tb}, Tensor{{2, 2}, tc}};
    net.vertex_flags = {{0, 1}, {2, 3}, {4, 5}};
    Tensor r1 = contract(net);

    TensorNetwork rev;  // same network, vertices listed c, b, a
    rev.q = 2;
    rev.g.nvertices = 3;
    rev.g.boundary = {2, 2, 1, 1, 0, 0};
    rev.g.involution = {0, 2, 1, 4, 3, 5};
    rev.vertex_tensors = {Tensor{{2, 2}, tc}, Tensor{{2, 2}, tb}, Tensor{{2, 2}, ta}};
    rev.vertex_flags = {{4, 5}, {2, 3}, {0, 1}};
    Tensor r2 = contract(rev);
    REQUIRE(r1.a.size() == r2.a.size());
    for (size_t i = 0; i < r1.a.size(); ++i) CHECK(std::abs(r1.a[i] - r2.a[i]) < 1e-9);
}

TEST_CASE("cut sets") {
    // path of 3 vertices: each internal edge is a singleton cut set
    TensorNetwork net;
    net.q = 2;
    net.g.nvertices = 3;
    net.g.boundary = {0, 1, 1, 2};
    net.g.involution = {1, 0, 3, 2};
    auto cuts = cut_sets(net.g, 1);
    CHECK(cuts.size() == 2);

    // complete graph K4: no single-edge cut set
    FlagGraph k4;
    k4.nvertices = 4;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            int f = (int)k4.boundary.size();
            k4.boundary.push_back(i);
            k4.boundary.push_back(j);
            k4.involution.push_back(f + 1);
            k4.involution.push_back(f);
        }
    CHECK(cut_sets(k4, 1).empty());
    CHECK_FALSE(cut_sets(k4, 3).empty());
}

TEST_CASE("cut identity |alpha| = |<psi1, psi2>| on the 4-cycle") {
    TensorNetwork net = delta_cycle(4, 2);
    Tensor amp = contract(net);
    double alpha = std::abs(amp.a[0]);
    auto cuts = cut_sets(net.g, 2);
    REQUIRE(!cuts.empty());
    bool any2 = false;
    for (const auto& cut : cuts) {
        if (cut.size() != 2) continue;
        any2 = true;
        CutStates cs = cut_states(net, cut);
        REQUIRE(cs.side1.a.size() == cs.side2.a.size());
        std::complex<double> ip = 0;
        for (size_t i = 0; i < cs.side1.a.size(); ++i) ip += std::conj(cs.side1.a[i]) * cs.side2.a[i];
        CHECK(std::abs(std::abs(ip) - alpha) < 1e-9);
    }
    CHECK(any2);
}

TEST_CASE("entropy: product state zero, EPR log q, complement symmetry") {
    // product state on 2 legs
    TensorNetwork prod;
    prod.q = 3;
    prod.g.nvertices = 1;
    prod.g.boundary = {0, 0};
    prod.g.involution = {0, 1};
    std::vector<std::complex<double>> t(9, 0.0);
    t[0] = 1.0;  // |0>|0>
    prod.vertex_tensors = {Tensor{{3, 3}, t}};
    prod.vertex_flags = {{0, 1}};
    CHECK(entanglement_entropy(prod, {0}) == doctest::Approx(0.0).epsilon(1e-9));

    for (int q : {2, 3, 5}) {
        TensorNetwork epr;
        epr.q = q;
        epr.g.nvertices = 1;
        epr.g.boundary = {0, 0};
        epr.g.involution = {0, 1};
        std::vector<std::complex<double>> e((size_t)q * q, 0.0);
        for (int i = 0; i < q; ++i) e[(size_t)i * q + i] = 1.0;
        epr.vertex_tensors = {Tensor{{q, q}, e}};
        epr.vertex_flags = {{0, 1}};
        double s0 = entanglement_entropy(epr, {0});
        double s1 = entanglement_entropy(epr, {1});
        CHECK(s0 == doctest::Approx(std::log((double)q)).epsilon(1e-9));
        CHECK(s0 == doctest::Approx(s1).epsilon(1e-9));
    }
}

TEST_CASE("entropy of the 4-leg perfect tensor") {
    auto sp = standard_odd(3, 8);
    FqMatrix m = {{0, 1, 1, 1}, {1, 0, 1, 2}, {1, 1, 0, 0}, {1, 2, 0, 0}};
    FqMatrix rows;
    for (int i = 0; i < 4; ++i) {
        std::vector<int> r(8, 0);
        r[i] = 1;
        for (int j = 0; j < 4; ++j) r[4 + j] = m[i][j];
        rows.push_back(r);
    }
    PerfectTensorResult pt = perfect_tensor_from_lagrangian(sp, Subspace::span(sp->V, rows), std::nullopt, true);
    REQUIRE(pt.report.perfect);
    TensorNetwork single;
    single.q = 3;
    single.g.nvertices = 1;
    single.g.boundary = {0, 0, 0, 0};
    single.g.involution = {0, 1, 2, 3};
    Tensor t;
    t.dims = {3, 3, 3, 3};
    t.a.resize(81);
    for (int i = 0; i < 81; ++i) t.a[i] = pt.tensor[i].to_complex();
    single.vertex_tensors = {t};
    single.vertex_flags = {{0, 1, 2, 3}};
    double log3 = std::log(3.0);
    CHECK(entanglement_entropy(single, {0}) == doctest::Approx(log3).epsilon(1e-9));
    CHECK(entanglement_entropy(single, {1, 2}) == doctest::Approx(2 * log3).epsilon(1e-9));
    // S(A) = S(complement) for every subset
    for (int mask = 1; mask < 15; ++mask) {
        std::vector<int> a, b;
        for (int i = 0; i < 4; ++i) ((mask >> i) & 1 ? a : b).push_back(i);
        CHECK(entanglement_entropy(single, a) == doctest::Approx(entanglement_entropy(single, b)).epsilon(1e-9));
    }
}

TEST_CASE("perfect network for n=1, q=3") {
    auto sp = standard_odd(3, 2);
    Subspace l = Subspace::span(sp->V, {{1, 1}});
    PerfectNetworkResult r = build_perfect_network(sp, l, std::nullopt);
    CHECK(r.n == 1);
    CHECK(r.net.g.nvertices == 9);
    for (int v = 0; v < 9; ++v) CHECK(r.net.g.degree(v) == 2);
    CHECK(r.net.g.internal_edges().size() == 9);
    CHECK(r.net.validate().ok);
    CHECK(r.vertex_tensor_report.perfect);  // 2-leg section tensor is unitary up to scale

    // the support splits into three triangles; entropy profile per component
    auto comp = r.net.g.component_of();
    int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
    CHECK(ncomp == 3);
    TensorNetwork tri = component_subnetwork(r.net, 0);
    CHECK(tri.g.nvertices == 3);
    CHECK(tri.validate().ok);
    auto cuts = cut_sets(tri.g, 2);
    bool found = false;
    for (const auto& cut : cuts) {
        if (cut.size() != 2) continue;
        CutStates cs = cut_states(tri, cut);
        DensityMatrix rho = reduced_density_matrix(cs.side1, {0});
        double s = entropy_of_density(rho);
        CHECK(s >= -1e-9);
        CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-9));
        found = true;
        break;
    }
    CHECK(found);
}

TEST_CASE("perfect network for n=2, q=3: counts and vertex-tensor split structure") {
    auto sp = standard_odd(3, 4);
    Subspace l = Subspace::span(sp->V, {{1, 0, 0, 1}, {0, 1, 1, 0}});
    REQUIRE(is_lagrangian(l, sp->omega));
    PerfectNetworkResult r = build_perfect_network(sp, l, std::nullopt);
    CHECK(r.net.g.nvertices == 27);
    for (int v = 0; v < 27; ++v) CHECK(r.net.g.degree(v) == 4);
    CHECK((int)r.net.g.internal_edges().size() == 27 * 4 / 2);
    // the 4-leg vertex tensor is isometric exactly on the bipartitions that separate
    // the conjugate pairs (pos_i, mom_i); the split {pos_0, mom_0} is the lone failure
    for (const auto& s : r.vertex_tensor_report.splits) {
        std::set<int> in_s(s.legs_in_s.begin(), s.legs_in_s.end());
        bool has_pair = false;
        for (int i = 0; i < 2; ++i)
            if (in_s.count(i) && in_s.count(2 + i)) has_pair = true;
        CHECK(s.isometry == !has_pair);
    }
}
