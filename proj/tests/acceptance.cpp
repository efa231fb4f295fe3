// Acceptance suite: one PASS/FAIL line per criterion, every tolerance pinned in code.
// Criterion 3 is expected to FAIL: the swept equivalence is disproved by explicit
// counterexamples (cyclic-but-not-Moufang tables); the suite pins the documented
// analysis instead of forcing the line green.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>

#include "loopcode/codes.hpp"
#include "loopcode/designs.hpp"
#include "loopcode/identities.hpp"
#include "loopcode/quantum.hpp"
#include "loopcode/tensor_network.hpp"

using namespace loopcode;

namespace {

void verdict(int criterion, bool pass, const std::string& what) {
    std::printf("ACCEPTANCE %02d [%s] %s\n", criterion, pass ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::shared_ptr<AlmostSymplecticSpace> standard_odd(int p, int dim) {
    auto f = std::make_shared<Fq>(FieldSpec::prime_field(p));
    auto sp = std::make_shared<AlmostSymplecticSpace>();
    sp->V = VSpace(f, dim);
    sp->A = Codomain::field(f);
    sp->omega = FormTable::standard_symplectic(sp->V, sp->A);
    return sp;
}

std::shared_ptr<AlmostSymplecticSpace> standard_char2(int dim) {
    auto f = std::make_shared<Fq>(FieldSpec::prime_field(2));
    auto sp = std::make_shared<AlmostSymplecticSpace>();
    sp->V = VSpace(f, dim);
    sp->A = Codomain::ring(std::make_shared<GaloisRing>(FieldSpec::prime_field(2)));
    sp->beta = FormTable::standard_polarization(sp->V, sp->A);
    sp->omega = FormTable::standard_symplectic(sp->V, sp->A);
    sp->reduction_tagged = true;
    return sp;
}

std::shared_ptr<AlmostSymplecticSpace> char2_space_from_beta(const FormTable& beta) {
    auto sp = std::make_shared<AlmostSymplecticSpace>();
    sp->V = beta.domain();
    sp->A = beta.codomain();
    sp->beta = beta.materialize();
    sp->omega = FormTable::from_function(2, sp->V, sp->A, [&](const std::vector<long long>& a) {
        return sp->A.sub(sp->beta->value2(a[0], a[1]), sp->beta->value2(a[1], a[0]));
    });
    return sp;
}

// seeded corpus for criteria 1-2: random normalized tables plus 2R-valued random
// bilinear matrices (the Moufang representatives; nonassociative Moufang tables do
// not exist at this size — see the notes in the repository README)
std::vector<FormTable> beta_corpus(int count) {
    auto f2 = std::make_shared<Fq>(FieldSpec::prime_field(2));
    VSpace v(f2, 2);
    Codomain c = Codomain::ring(std::make_shared<GaloisRing>(FieldSpec::prime_field(2)));
    std::vector<FormTable> out;
    std::mt19937_64 rng(20260808);
    for (int i = 0; i < count; ++i) {
        if (i % 4 == 0) {
            std::vector<std::vector<int>> m(2, std::vector<int>(2));
            for (auto& row : m)
                for (int& x : row) x = 2 * (int)(rng() % 2);
            out.push_back(FormTable::from_bilinear_matrix(v, c, m).materialize());
        } else {
            out.push_back(FormTable::random(2, v, c, rng(), true));
        }
    }
    return out;
}

bool form_zero(const FormTable& f) {
    FormTable d = f.materialize();
    long long n = d.domain().count(), total = 1;
    for (int i = 0; i < d.arity(); ++i) total *= n;
    std::vector<long long> args(d.arity());
    for (long long t = 0; t < total; ++t) {
        long long tt = t;
        for (int i = d.arity() - 1; i >= 0; --i) {
            args[i] = tt % n;
            tt /= n;
        }
        if (d.value(args) != 0) return false;
    }
    return true;
}

std::vector<Subspace> all_isotropic_subspaces(const AlmostSymplecticSpace& sp, int dim) {
    std::set<FqMatrix> seen;
    std::vector<Subspace> out;
    long long n = sp.V.count();
    std::function<void(Subspace)> grow = [&](Subspace s) {
        if (s.dim() == dim) {
            if (seen.insert(s.basis()).second && is_isotropic(s, sp.omega)) out.push_back(s);
            return;
        }
        for (long long v = 1; v < n; ++v) {
            if (s.contains(v)) continue;
            Subspace bigger = s.sum(Subspace::span_indices(sp.V, {v}));
            if (bigger.dim() != s.dim() + 1) continue;
            grow(bigger);
        }
    };
    grow(Subspace::zero(sp.V));
    return out;
}

const PerfectTensorResult& fixture_tensor_f3_8() {
    static PerfectTensorResult pt = [] {
        auto sp = standard_odd(3, 8);
        FqMatrix m = {{0, 1, 1, 1}, {1, 0, 1, 2}, {1, 1, 0, 0}, {1, 2, 0, 0}};
        FqMatrix rows;
        for (int i = 0; i < 4; ++i) {
            std::vector<int> r(8, 0);
            r[i] = 1;
            for (int j = 0; j < 4; ++j) r[4 + j] = m[i][j];
            rows.push_back(r);
        }
        return perfect_tensor_from_lagrangian(sp, Subspace::span(sp->V, rows), std::nullopt, true);
    }();
    return pt;
}

Tensor tensor_as_float(const CycVector& t, int legs, int q) {
    Tensor out;
    out.dims.assign(legs, q);
    out.a.resize(t.size());
    for (size_t i = 0; i < t.size(); ++i) out.a[i] = t[i].to_complex();
    return out;
}

}  // namespace

TEST_CASE("criterion 1: moufang equivalence over >= 1000 seeded tables") {
    auto t0 = std::chrono::steady_clock::now();
    auto corpus = beta_corpus(1000);
    int agree = 0, moufang_seen = 0, non_moufang_seen = 0;
    for (const auto& beta : corpus) {
        auto sp = char2_space_from_beta(beta);
        bool predicate = moufang_condition(hochschild_d(*sp->beta)).ok;
        auto loop = build_loop(sp);
        MoufangReport mr = is_moufang(*loop);
        if (predicate == mr.three_variable && predicate == mr.four_variable) ++agree;
        (predicate ? moufang_seen : non_moufang_seen)++;
    }
    double el = seconds_since(t0);
    bool pass = agree == (int)corpus.size() && moufang_seen > 0 && non_moufang_seen > 0 && el < 60.0;
    CHECK(agree == (int)corpus.size());
    CHECK(moufang_seen > 0);
    CHECK(non_moufang_seen > 0);
    CHECK(el < 60.0);
    verdict(1, pass,
            "cohomological Moufang predicate agrees with exhaustive loop checks on " +
                std::to_string(corpus.size()) + " tables (" + std::to_string(moufang_seen) +
                " Moufang, " + std::to_string(el).substr(0, 5) + " s)");
}

TEST_CASE("criterion 2: consequences of the Moufang condition on every sampled Moufang beta") {
    auto corpus = beta_corpus(1000);
    int moufang_count = 0;
    long long violations = 0;
    for (const auto& beta : corpus) {
        FormTable gamma = hochschild_d(beta);
        const VSpace& v = beta.domain();
        const Codomain& c = beta.codomain();
        long long n = v.count();
        // (i) holds for every normalized beta
        for (long long x = 0; x < n; ++x)
            for (long long y = 0; y < n; ++y)
                if (gamma.value3(0, x, y) != 0 || gamma.value3(x, 0, y) != 0 ||
                    gamma.value3(x, y, 0) != 0)
                    ++violations;
        if (!moufang_condition(gamma).ok) continue;
        ++moufang_count;
        for (long long x = 0; x < n; ++x)
            for (long long y = 0; y < n; ++y) {
                if (gamma.value3(x, x, y) != 0 || gamma.value3(x, y, x) != 0 ||
                    gamma.value3(y, x, x) != 0)
                    ++violations;
                int om = c.sub(beta.value2(x, y), beta.value2(y, x));
                if (c.add(om, om) != 0) ++violations;
                for (long long w = 0; w < n; ++w)
                    if (gamma.value3(v.add(x, y), w, x) != gamma.value3(x, y, w)) ++violations;
            }
    }
    bool pass = violations == 0 && moufang_count > 0;
    CHECK(violations == 0);
    CHECK(moufang_count > 0);
    verdict(2, pass,
            "zero violations of properties (i)-(iv) across " + std::to_string(moufang_count) +
                " Moufang samples");
}

TEST_CASE("criterion 3: full sweep over trilinear gamma on F_2^2 (honest fail)") {
    // The criterion asserts Moufang <=> cyclic over the multilinear trilinear tables.
    // The sweep disproves the converse: cyclic + multilinear does not control values
    // on repeated-entry tuples (gamma(u,v,u) = gamma(u,u,v) != 0 survives), which the
    // Moufang identity forbids. Both the literal verdict and the corrected-hypothesis
    // equivalence (repeated-entry vanishing added) are computed and pinned here.
    auto f2 = std::make_shared<Fq>(FieldSpec::prime_field(2));
    VSpace v(f2, 2);
    Codomain c = Codomain::ring(std::make_shared<GaloisRing>(FieldSpec::prime_field(2)));
    const Fq& F = v.field();
    long long swept = 0, multilinear_count = 0, disagree = 0;
    long long moufang_not_cyclic = 0;
    long long corrected_agree = 0, corrected_total = 0;
    long long pw8 = 1;
    for (int i = 0; i < 8; ++i) pw8 *= 4;
    for (long long code = 0; code < pw8; ++code) {
        int bv[2][2][2];
        long long t = code;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) {
                    bv[i][j][k] = (int)(t % 4);
                    t /= 4;
                }
        FormTable g = FormTable::from_function(3, v, c, [&](const std::vector<long long>& a) {
            int acc = 0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k) {
                        int m = F.mul(F.mul(v.coord(a[0], i), v.coord(a[1], j)), v.coord(a[2], k));
                        if (m) acc = c.add(acc, bv[i][j][k]);
                    }
            return acc;
        });
        ++swept;
        if (!is_multilinear(g).ok) continue;
        ++multilinear_count;
        bool mf = moufang_condition(g).ok;
        bool cy = is_cyclic(g).ok;
        if (mf != cy) ++disagree;
        if (mf && !cy) ++moufang_not_cyclic;
        bool repeated_zero = true;
        for (long long x = 0; x < 4 && repeated_zero; ++x)
            for (long long y = 0; y < 4; ++y)
                if (g.value3(x, x, y) != 0 || g.value3(x, y, x) != 0 || g.value3(y, x, x) != 0) {
                    repeated_zero = false;
                    break;
                }
        if (repeated_zero) {
            ++corrected_total;
            if (mf == cy) ++corrected_agree;
        }
    }
    bool literal_pass = disagree == 0;
    verdict(3, literal_pass,
            "Moufang <=> cyclic over the full sweep: " + std::to_string(disagree) + "/" +
                std::to_string(multilinear_count) +
                " multilinear tables disagree (all cyclic-but-not-Moufang); adding "
                "repeated-entry vanishing restores the equivalence " +
                std::to_string(corrected_agree) + "/" + std::to_string(corrected_total));
    // pinned analysis: the criterion fails exactly as documented, one direction only
    CHECK(swept == 65536);
    CHECK(multilinear_count == 256);
    CHECK(disagree == 15);
    CHECK(moufang_not_cyclic == 0);  // Moufang => cyclic holds throughout
    CHECK(corrected_agree == corrected_total);
    CHECK_FALSE(literal_pass);
}

TEST_CASE("criterion 4: d.d = 0 and gamma_r - gamma_l = d beta, exhaustively") {
    bool pass = true;
    for (int which = 0; which < 2; ++which) {
        auto f = std::make_shared<Fq>(FieldSpec::prime_field(which ? 3 : 2));
        VSpace v(f, 2);
        Codomain c = which ? Codomain::field(f)
                           : Codomain::ring(std::make_shared<GaloisRing>(FieldSpec::prime_field(2)));
        for (uint64_t seed = 1; seed <= 100; ++seed) {
            FormTable f1 = FormTable::random(1, v, c, seed * 2654435761ull, false);
            FormTable f2t = FormTable::random(2, v, c, seed * 40503ull + 7, false);
            pass = pass && form_zero(hochschild_d(hochschild_d(f1)));
            pass = pass && form_zero(hochschild_d(hochschild_d(f2t)));
            auto [gl, gr] = gamma_defects(f2t);
            FormTable diff = gr.add(gl.scaled(c.neg(c.one())));
            pass = pass && diff.same_table(hochschild_d(f2t));
        }
    }
    CHECK(pass);
    verdict(4, pass, "d.d = 0 and gamma_r - gamma_l = d beta on all sampled tables (F_2^2/Z4, F_3^2)");
}

TEST_CASE("criterion 5: pauli relations and error-basis gram") {
    bool pass = true;
    for (int p : {2, 3, 5}) {
        PauliContext ctx(FieldSpec::prime_field(p), 1);
        MonomialOp t = ctx.T_single(), r = ctx.R_single();
        pass = pass && (r.then(t) == t.then(r).scaled(1));  // TR = zeta RT
        MonomialOp tp = t, rp = r;
        for (int i = 1; i < p; ++i) {
            tp = tp.then(t);
            rp = rp.then(r);
        }
        pass = pass && (tp == MonomialOp::identity(p, p)) && (rp == MonomialOp::identity(p, p));
    }
    for (int p : {2, 3})
        for (int n = 1; n <= 2; ++n) {
            PauliContext ctx(FieldSpec::prime_field(p), n);
            GramReport g = error_basis_gram(ctx);
            pass = pass && g.diagonal_ok && g.offdiag_ok && g.diagonal_value == Cyc(p, ctx.dim());
        }
    CHECK(pass);
    verdict(5, pass, "TR = zeta RT, T^p = R^p = id (q = 2,3,5); gram = q^n I (q = 2,3; n <= 2)");
}

TEST_CASE("criterion 6: crss dimensions over every isotropic subspace") {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    long long checked = 0;

    auto sp3 = standard_odd(3, 4);
    for (int k = 1; k <= 2; ++k) {
        auto subspaces = all_isotropic_subspaces(*sp3, k);
        pass = pass && !subspaces.empty();
        long long expected_dim = 1;
        for (int i = 0; i < 2 - k; ++i) expected_dim *= 3;
        for (const auto& c : subspaces) {
            CrssResult r = crss_code(sp3, c, std::nullopt);
            pass = pass && r.commuting && r.projectors_idempotent && r.projectors_orthogonal &&
                   r.projectors_complete;
            for (const auto& code : r.codes) pass = pass && code.dim == expected_dim;
            ++checked;
        }
    }

    auto sp2 = standard_char2(2);
    for (auto vec : {std::vector<int>{1, 0}, {0, 1}, {1, 1}}) {
        Subspace c = Subspace::span(sp2->V, {vec});
        auto alpha = find_enhancement(c, *sp2->beta);
        pass = pass && alpha.has_value();
        if (!alpha) continue;
        CrssResult r = crss_code(sp2, c, alpha);
        pass = pass && r.commuting && r.projectors_idempotent && r.projectors_orthogonal &&
               r.projectors_complete;
        for (const auto& code : r.codes) pass = pass && code.dim == 1;
        ++checked;
    }
    double el = seconds_since(t0);
    pass = pass && el < 120.0;
    CHECK(pass);
    verdict(6, pass,
            "eigenspace dimensions q^(n-k) with exact projector algebra over " +
                std::to_string(checked) + " isotropic subspaces (" +
                std::to_string(el).substr(0, 5) + " s)");
}

TEST_CASE("criterion 7: perfect tensor from the fixture lagrangian in F_3^8") {
    const PerfectTensorResult& pt = fixture_tensor_f3_8();
    bool pass = pt.legs == 4 && pt.report.perfect && pt.report.splits.size() == 7;
    for (const auto& s : pt.report.splits) pass = pass && s.isometry;

    Tensor tf = tensor_as_float(pt.tensor, 4, 3);
    for (const auto& s : pt.report.splits) {
        DensityMatrix rho = reduced_density_matrix(tf, s.legs_in_s);
        long long da = 1;
        for (size_t i = 0; i < s.legs_in_s.size(); ++i) da *= 3;
        for (long long i = 0; i < da; ++i)
            for (long long j = 0; j < da; ++j) {
                std::complex<double> want = (i == j) ? 1.0 / (double)da : 0.0;
                pass = pass && std::abs(rho.rho[i][j] - want) < 1e-9;
            }
    }

    auto sp = standard_odd(3, 8);
    FqMatrix pos_rows;
    for (int i = 0; i < 4; ++i) {
        std::vector<int> r(8, 0);
        r[i] = 1;
        pos_rows.push_back(r);
    }
    bool rejected = false;
    try {
        perfect_tensor_from_lagrangian(sp, Subspace::span(sp->V, pos_rows), std::nullopt, true);
    } catch (const NotGeneralPosition&) {
        rejected = true;
    }
    pass = pass && rejected;
    CHECK(pass);
    verdict(7, pass,
            "4-leg tensor passes all 7 bipartition isometries exactly; reduced states maximally "
            "mixed (1e-9); standard-position lagrangian rejected");
}

TEST_CASE("criterion 8: entropy sanity") {
    bool pass = true;
    double tol = 1e-9;
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
        pass = pass && std::abs(entanglement_entropy(epr, {0}) - std::log((double)q)) < tol;
    }

    const PerfectTensorResult& pt = fixture_tensor_f3_8();
    TensorNetwork single;
    single.q = 3;
    single.g.nvertices = 1;
    single.g.boundary = {0, 0, 0, 0};
    single.g.involution = {0, 1, 2, 3};
    single.vertex_tensors = {tensor_as_float(pt.tensor, 4, 3)};
    single.vertex_flags = {{0, 1, 2, 3}};
    double log3 = std::log(3.0);
    pass = pass && std::abs(entanglement_entropy(single, {0}) - log3) < tol;
    pass = pass && std::abs(entanglement_entropy(single, {1, 2}) - 2 * log3) < tol;
    for (int mask = 1; mask < 15; ++mask) {
        std::vector<int> a, b;
        for (int i = 0; i < 4; ++i) ((mask >> i) & 1 ? a : b).push_back(i);
        pass = pass &&
               std::abs(entanglement_entropy(single, a) - entanglement_entropy(single, b)) < tol;
    }
    CHECK(pass);
    verdict(8, pass, "EPR entropy log q; T_L gives log 3 and 2 log 3; S(A) = S(A^c), all within 1e-9");
}

TEST_CASE("criterion 9: design counts for the order-16 code loop") {
    auto sp = standard_char2(2);
    auto loop = build_loop(sp);
    LatinSquareDesign d = thomsen_design(*loop);
    FlagGraph g = design_graph(d);
    bool pass = g.nvertices == 48 && g.internal_edges().size() == 768;
    for (int v = 0; v < g.nvertices; ++v) pass = pass && g.degree(v) == 32;

    Subspace c = Subspace::span(sp->V, {{1, 0}});
    auto alpha = find_enhancement(c, *sp->beta);
    pass = pass && alpha.has_value();
    CodeLoop cl(sp);
    std::vector<int> pts;
    for (long long v : c.enumerate()) pts.push_back(cl.encode(v, alpha->at(v)));
    SubdesignResult sub = subdesign(d, pts);
    pass = pass && sub.graph.nvertices == 6 && sub.graph.internal_edges().size() == 12;
    pass = pass && order2_subdesign_check(sub.design).holds;
    CHECK(pass);
    verdict(9, pass, "48 vertices, 768 edges, valence 32; subdesign 3q^k / 3q^2k; order-2 property");
}

TEST_CASE("criterion 10: thomsen round trip and central designs on the fixture corpus") {
    std::vector<std::pair<std::string, TableLoop>> corpus;
    corpus.emplace_back("Z1", TableLoop::cyclic(1));
    corpus.emplace_back("Z3", TableLoop::cyclic(3));
    corpus.emplace_back("Z4", TableLoop::cyclic(4));
    corpus.emplace_back("Z6", TableLoop::cyclic(6));
    corpus.emplace_back("S3", symmetric_group_s3());
    corpus.emplace_back("M(S3,2)", chein_double(symmetric_group_s3()));
    {
        auto sp = standard_char2(2);
        corpus.emplace_back("L(F_2^2,beta)", TableLoop::from_loop(*build_loop(sp)));
        auto f2 = std::make_shared<Fq>(FieldSpec::prime_field(2));
        VSpace v(f2, 2);
        Codomain cr = Codomain::ring(std::make_shared<GaloisRing>(FieldSpec::prime_field(2)));
        for (uint64_t seed = 1;; ++seed) {
            FormTable beta = FormTable::random(2, v, cr, seed, true);
            if (moufang_condition(hochschild_d(beta)).ok) continue;
            corpus.emplace_back("nonmoufang16",
                                TableLoop::from_loop(*build_loop(char2_space_from_beta(beta))));
            break;
        }
    }
    bool pass = true;
    bool moufang_witness = false, non_moufang_witness = false;
    for (auto& [name, loop] : corpus) {
        LatinSquareDesign d = thomsen_design(loop);
        int li = d.line_through(0, loop.one(), 1, loop.one());
        TableLoop back = thomsen_loop(d, d.lines[li]);
        bool iso = loops_isotopic(loop, back);
        bool central = central_automorphism_checks(d).is_central_design;
        bool moufang = is_moufang(loop).three_variable;
        pass = pass && iso && (central == moufang);
        (moufang ? moufang_witness : non_moufang_witness) = true;
    }
    pass = pass && moufang_witness && non_moufang_witness;
    CHECK(pass);
    verdict(10, pass,
            "loop -> design -> loop isotopic on " + std::to_string(corpus.size()) +
                " fixtures; central design <=> Moufang with both witnesses present");
}

TEST_CASE("criterion 11: griess pipeline on the extended hamming code") {
    LinearCode ham = extended_hamming_8_4();
    bool pass = is_doubly_even(ham);
    GriessResult g = griess_code_loop(ham.enumerate_bitmasks(), ham.n);
    pass = pass && g.loop->size() == 32;
    auto t0 = std::chrono::steady_clock::now();
    MoufangReport mr = is_moufang(*g.loop);
    double el = seconds_since(t0);
    pass = pass && mr.three_variable && el < 5.0;
    // the literal four-variable identity is associativity in disguise; it must fail here
    pass = pass && !mr.four_variable;
    LoopInvariants inv = loop_invariants(*g.loop);
    pass = pass && !inv.associator_trivial;
    CHECK(pass);
    verdict(11, pass,
            "order-32 loop is Moufang (exhaustive scan, " + std::to_string(el).substr(0, 5) +
                " s) with a nontrivial associator");
}

TEST_CASE("criterion 12: classical code parameters") {
    bool pass = true;
    CodeParams rep3 = code_params(repetition_code(3));
    pass = pass && rep3.d == 3 && rep3.point.rate == BigRational::of(1, 3) &&
           rep3.point.distance == BigRational(1);
    CodeParams ham = code_params(extended_hamming_8_4());
    pass = pass && ham.d == 4 && ham.point.rate == BigRational::of(1, 2);
    CodeParams golay = code_params(extended_golay_24_12());
    pass = pass && golay.n == 24 && golay.k == 12 && golay.d == 8;
    pass = pass && min_pairwise_distance(repetition_code(3)) == 3;
    CHECK(pass);
    verdict(12, pass, "enumeration oracle: d = 3, 4, 8 for repetition, hamming, golay; exact points");
}

TEST_CASE("criterion 13: quasigroup, malcev, and reflection checks") {
    bool pass = true;
    FiniteMagma m;
    m.labels = {"0", "1", "2"};
    m.table.assign(3, std::vector<int>(3));
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) m.table[x][y] = ((6 - x - y) % 3);
    QuasigroupReport qr = quasigroup_checks(m);
    pass = pass && qr.symmetric && qr.abelian && qr.ch;

    TableLoop cml = cml_from_ch(m, 0);
    FiniteMagma back = ch_from_cml(cml, 0);
    pass = pass && back.table == m.table;

    pass = pass && check_malcev(sl2_bracket()).ok;

    ReflectionFamily fam;
    fam.s.assign(3, std::vector<int>(3));
    for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) fam.s[c][d] = ((2 * c - d) % 3 + 3) % 3;
    ReflectionReport rr = reflection_quasigroup(fam);
    pass = pass && rr.relations_hold && rr.quasigroup_report.symmetric && rr.quasigroup_report.abelian;

    bool threw = false;
    try {
        reflections_from_cml(TableLoop::cyclic(3), 0);  // builder verifies the relations
    } catch (const Error&) {
        threw = true;
    }
    pass = pass && !threw;
    CHECK(pass);
    verdict(13, pass, "symmetric/abelian/CH quasigroup, CML round trip, sl2 Malcev, reflection family");
}
