#include "loopcode/quantum.hpp"

#include <algorithm>
#include <numeric>

namespace loopcode {

namespace {

// weighted union-find over Z_m phases: f(i) = zeta^{w_i} f(parent(i))
struct PhasedDSU {
    std::vector<int> parent, w;
    std::vector<bool> dead;
    int m;
    explicit PhasedDSU(int n, int mod) : parent(n), w(n, 0), dead(n, false), m(mod) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::pair<int, int> find(int x) {  // (root, phase of x relative to root)
        if (parent[x] == x) return {x, 0};
        auto [r, wp] = find(parent[x]);
        parent[x] = r;
        w[x] = (w[x] + wp) % m;
        return {r, w[x]};
    }
    // impose f(a) = zeta^d f(b)
    void relate(int a, int b, int d) {
        auto [ra, wa] = find(a);
        auto [rb, wb] = find(b);
        if (ra == rb) {
            if ((wa - wb - d) % m != 0) dead[ra] = true;
            return;
        }
        bool da = dead[ra], db = dead[rb];
        parent[ra] = rb;
        w[ra] = (((wb + d - wa) % m) + m) % m;
        if (da || db) dead[rb] = true;
    }
};

}  // namespace

ModelSpace ModelSpace::build(std::shared_ptr<const AlmostSymplecticSpace> space, const Subspace& l0,
                             const std::optional<Enhancement>& alpha0, const DarbouxDecomposition* frame) {
    ModelSpace ms;
    ms.space_ = space;
    ms.loop_ = std::make_shared<CodeLoop>(space);
    const auto& S = *space;
    ms.m_ = S.A.char_conductor();
    const int npts = ms.loop_->size();
    const int asize = S.A.size();

    if (2 * l0.dim() != S.V.dim() || !is_isotropic(l0, S.omega)) throw NotLagrangian();
    if (S.char2() && !alpha0.has_value()) throw NoEnhancement("Lagrangian enhancement required for p = 2");

    PhasedDSU dsu(npts, ms.m_);
    // central shifts: f((0,x)*h) = chi(x) f(h)
    for (int x = 1; x < asize; ++x) {
        int g = ms.loop_->encode(0, x);
        int d = S.A.char_exp(x);
        for (int h = 0; h < npts; ++h) dsu.relate(ms.loop_->mul(g, h), h, d);
    }
    // Lagrangian section: f(tau(l)*h) = f(h)
    for (long long l : l0.enumerate()) {
        if (l == 0) continue;
        int xl = S.char2() ? alpha0->at(l) : 0;
        int g = ms.loop_->encode(l, xl);
        for (int h = 0; h < npts; ++h) dsu.relate(ms.loop_->mul(g, h), h, 0);
    }

    // canonical coset representative of v + L0: RREF reduction by the L0 basis
    const Fq& F = S.V.field();
    auto coset_rep = [&](long long v) -> long long {
        std::vector<int> c = S.V.coords(v);
        for (const auto& row : l0.basis()) {
            int lead = -1;
            for (int j = 0; j < (int)row.size(); ++j)
                if (row[j] != 0) {
                    lead = j;
                    break;
                }
            if (lead < 0) continue;
            int f = c[lead];
            if (f == 0) continue;
            for (int j = 0; j < (int)row.size(); ++j) c[j] = F.sub(c[j], F.mul(f, row[j]));
        }
        return S.V.index(c);
    };

    // collect live roots and their anchors (v*, 0)
    std::map<int, int> root_to_anchor;
    ms.orbit_of_.assign(npts, -1);
    ms.phase_of_.assign(npts, 0);
    for (int h = 0; h < npts; ++h) {
        auto [r, wp] = dsu.find(h);
        (void)wp;
        if (dsu.dead[r]) continue;
        if (!root_to_anchor.count(r)) {
            long long rep = coset_rep(ms.loop_->vpart(h));
            root_to_anchor[r] = ms.loop_->encode(rep, 0);
        }
    }
    for (const auto& [r, a] : root_to_anchor) {
        auto [ra, wa] = dsu.find(a);
        if (ra != r) throw StabilizerError("anchor left its orbit");
        (void)wa;
    }
    {
        std::set<int> dead_roots;
        for (int h = 0; h < npts; ++h) {
            auto [r, wp] = dsu.find(h);
            (void)wp;
            if (dsu.dead[r]) dead_roots.insert(r);
        }
        ms.dead_orbits_ = (int)dead_roots.size();
    }

    // order the basis: by leg tuple when a Darboux frame is given, else by anchor index
    std::vector<std::pair<long long, int>> order;  // (sort key, anchor point)
    if (frame) {
        ms.legs_ = (int)frame->blocks.size();
        FqMatrix dbasis;
        for (const auto& b : frame->blocks) dbasis.push_back(S.V.coords(b.u));
        for (const auto& b : frame->blocks) dbasis.push_back(S.V.coords(b.v));
        for (const auto& [r, a] : root_to_anchor) {
            auto sol = solve_left(dbasis, S.V.coords(ms.loop_->vpart(a)), F);
            if (!sol) throw StabilizerError("anchor not in the Darboux span");
            long long key = 0;
            for (int i = ms.legs_ - 1; i >= 0; --i) key = key * F.q() + (*sol)[ms.legs_ + i];
            order.emplace_back(key, a);
        }
    } else {
        for (const auto& [r, a] : root_to_anchor) order.emplace_back(a, a);
    }
    std::sort(order.begin(), order.end());
    for (size_t i = 0; i + 1 < order.size(); ++i)
        if (order[i].first == order[i + 1].first) throw StabilizerError("leg labels collide");
    ms.anchors_.clear();
    for (auto& [k, a] : order) ms.anchors_.push_back(a);

    // orbit index + phase relative to the anchor
    std::map<int, int> root_to_idx;
    for (int i = 0; i < (int)ms.anchors_.size(); ++i) {
        auto [r, wa] = dsu.find(ms.anchors_[i]);
        (void)wa;
        root_to_idx[r] = i;
    }
    for (int h = 0; h < npts; ++h) {
        auto [r, wh] = dsu.find(h);
        if (dsu.dead[r]) continue;
        auto it = root_to_idx.find(r);
        if (it == root_to_idx.end()) continue;
        auto [r2, wa] = dsu.find(ms.anchors_[it->second]);
        (void)r2;
        ms.orbit_of_[h] = it->second;
        ms.phase_of_[h] = (((wh - wa) % ms.m_) + ms.m_) % ms.m_;
    }

    // a Lagrangian section must cut the point count down to q^n orbits
    long long expected = 1;
    for (int i = 0; i < l0.dim(); ++i) expected *= F.q();
    if ((long long)ms.anchors_.size() != expected)
        throw StabilizerError("model space dimension " + std::to_string(ms.anchors_.size()) +
                              " != expected " + std::to_string(expected));
    return ms;
}

bool ModelSpace::basis_value(int basis_index, int point, int* phase_exp) const {
    if (orbit_of_[point] != basis_index) return false;
    if (phase_exp) *phase_exp = phase_of_[point];
    return true;
}

int ModelSpace::tau(long long v, const std::optional<Enhancement>& alpha) const {
    int x = 0;
    if (space_->char2()) {
        if (!alpha) throw NoEnhancement("section of a char-2 subspace needs an enhancement");
        x = alpha->at(v);
    }
    return loop_->encode(v, x);
}

int ModelSpace::chi_exp(int a_code) const { return space_->A.char_exp(a_code); }

MonomialOp ModelSpace::right_translation(int g) const {
    MonomialOp op;
    op.dim = dim();
    op.m = m_;
    op.perm.assign(op.dim, -1);
    op.phase.assign(op.dim, 0);
    // (pi(g) B_i)(anchor_j) = B_i(anchor_j * g): row j hits column i = orbit(anchor_j * g)
    for (int j = 0; j < op.dim; ++j) {
        int hp = loop_->mul(anchors_[j], g);
        int i = orbit_of_[hp];
        if (i < 0) throw StabilizerError("translation maps anchor into a dead orbit");
        if (op.perm[i] != -1) throw StabilizerError("translation not monomial");
        op.perm[i] = j;
        op.phase[i] = phase_of_[hp];
    }
    for (int i = 0; i < op.dim; ++i)
        if (op.perm[i] < 0) throw StabilizerError("translation not surjective on the basis");
    // full preservation check: orbit and phase increments must be coherent pointwise
    std::vector<int> col_of_row(op.dim);
    for (int c = 0; c < op.dim; ++c) col_of_row[op.perm[c]] = c;
    const int npts = loop_->size();
    for (int h = 0; h < npts; ++h) {
        int i0 = orbit_of_[h];
        int hp = loop_->mul(h, g);
        int i1 = orbit_of_[hp];
        if (i0 < 0) {
            if (i1 >= 0) throw StabilizerError("dead orbit maps onto live orbit");
            continue;
        }
        int expect_col = col_of_row[i0];
        if (i1 != expect_col) throw StabilizerError("orbit image incoherent: space not preserved");
        int want = (op.phase[expect_col] + phase_of_[h]) % m_;
        if (phase_of_[hp] != want) throw StabilizerError("phase incoherent: space not preserved");
    }
    return op;
}

CrssResult crss_code(std::shared_ptr<const AlmostSymplecticSpace> space, const Subspace& c,
                     const std::optional<Enhancement>& alpha, bool enforce_isotropic) {
    const auto& S = *space;
    if (enforce_isotropic && !is_isotropic(c, S.omega)) throw NotIsotropic();
    if (S.char2() && !alpha.has_value()) throw NoEnhancement("stabilizer enhancement required for p = 2");

    DarbouxDecomposition frame = darboux_decomposition(S);
    if (frame.residual.dim() != 0) throw NotLCS();
    // model Lagrangian: the position half spanned by the block u-vectors
    std::vector<long long> upos;
    for (const auto& b : frame.blocks) upos.push_back(b.u);
    Subspace l0 = Subspace::span_indices(S.V, upos);
    std::optional<Enhancement> alpha0;
    if (S.char2()) {
        EnhancementFailure why;
        alpha0 = find_enhancement(l0, *S.beta, &why);
        if (!alpha0) throw NoEnhancement(why.reason);
    }

    CrssResult res{ModelSpace::build(space, l0, alpha0, &frame), c, {}, {}, true, {-1, -1},
                   true,  true,
                   true,  {}};
    const ModelSpace& ms = res.model;
    const Fq& F = S.V.field();
    int m = ms.conductor();

    auto elems = c.enumerate();
    res.stabilizer_elems = elems;
    for (long long v : elems) res.stabilizer_ops.push_back(ms.right_translation(ms.tau(v, alpha)));

    for (size_t i = 0; i < res.stabilizer_ops.size() && res.commuting; ++i)
        for (size_t j = i + 1; j < res.stabilizer_ops.size(); ++j)
            if (!res.stabilizer_ops[i].commutes_with(res.stabilizer_ops[j])) {
                res.commuting = false;
                res.noncommuting_witness = {(int)i, (int)j};
                break;
            }
    if (!res.commuting) {
        if (enforce_isotropic) throw NonCommutingOperators(res.noncommuting_witness.first,
                                                           res.noncommuting_witness.second);
        return res;
    }

    // characters of tau(C) ≅ (C, +): psi_s(v) = chi_base(sum_i s_i t_i), t = coefficients of v
    int k = c.dim();
    long long nchars = 1;
    for (int i = 0; i < k; ++i) nchars *= F.q();
    int scale = m / F.p();  // embed p-th root exponents into the model conductor

    CycMatrix sum_all;  // completeness accumulator
    std::vector<CycMatrix> projectors;
    BigRational inv_size = BigRational(1) / BigRational((long long)elems.size());
    for (long long s = 0; s < nchars; ++s) {
        std::vector<int> scoef(k);
        {
            long long t = s;
            for (int i = 0; i < k; ++i) {
                scoef[i] = (int)(t % F.q());
                t /= F.q();
            }
        }
        CycMatrix p;
        for (size_t e = 0; e < elems.size(); ++e) {
            auto coeff = c.coefficients(elems[e]);
            int exp = 0;
            for (int i = 0; i < k; ++i) exp = (exp + F.coeff_sum(F.mul(scoef[i], (*coeff)[i]))) % F.p();
            // psi(v)^-1 = zeta^{-exp}
            CycMatrix term = res.stabilizer_ops[e].to_matrix();
            term = mat_scale(term, Cyc::root(m, ((m - exp * scale) % m + m) % m));
            p = p.empty() ? term : mat_add(p, term);
        }
        for (auto& row : p)
            for (auto& x : row) x = x * inv_size;
        QuantumCode code;
        code.psi = scoef;
        code.projector = p;
        auto img = column_image_basis(p);
        code.basis = gram_schmidt(img);
        code.dim = (int)code.basis.size();
        // eigenspace property: pi(tau(v)) b = psi(v) b
        for (size_t e = 0; e < elems.size(); ++e) {
            auto coeff = c.coefficients(elems[e]);
            int exp = 0;
            for (int i = 0; i < k; ++i) exp = (exp + F.coeff_sum(F.mul(scoef[i], (*coeff)[i]))) % F.p();
            Cyc want = Cyc::root(m, (exp * scale) % m);
            for (const auto& b : code.basis) {
                CycVector image = res.stabilizer_ops[e].apply(b);
                for (size_t t = 0; t < b.size(); ++t)
                    if (image[t] != want * b[t]) throw StabilizerError("eigenvector property fails");
            }
        }
        projectors.push_back(p);
        res.codes.push_back(std::move(code));
        sum_all = sum_all.empty() ? p : mat_add(sum_all, p);
    }

    for (size_t i = 0; i < projectors.size(); ++i) {
        if (!mat_equal(mat_mul(projectors[i], projectors[i]), projectors[i]))
            res.projectors_idempotent = false;
        for (size_t j = i + 1; j < projectors.size(); ++j) {
            CycMatrix prod = mat_mul(projectors[i], projectors[j]);
            bool zero = true;
            for (const auto& row : prod)
                for (const auto& x : row) zero = zero && x.is_zero();
            if (!zero) res.projectors_orthogonal = false;
        }
    }
    if (!mat_equal(sum_all, identity_matrix(ms.dim(), m))) res.projectors_complete = false;
    return res;
}

namespace {

// subsets of legs identifying each unordered bipartition once: |S| < legs/2, plus
// half-size subsets containing leg 0
std::vector<std::vector<int>> bipartition_subsets(int legs) {
    std::vector<std::vector<int>> out;
    for (int mask = 1; mask < (1 << legs) - 1; ++mask) {
        int sz = __builtin_popcount(mask);
        if (2 * sz > legs) continue;
        if (2 * sz == legs && !(mask & 1)) continue;
        std::vector<int> s;
        for (int i = 0; i < legs; ++i)
            if (mask & (1 << i)) s.push_back(i);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

}  // namespace

PerfectTensorReport is_perfect_tensor(const CycVector& t, int legs, int q) {
    PerfectTensorReport rep;
    long long total = 1;
    for (int i = 0; i < legs; ++i) total *= q;
    if ((long long)t.size() != total) throw Error("ShapeMismatch");
    int m = t.empty() ? 1 : t[0].conductor();

    // stabilizer tensors have entries 0 or zeta^e: classify once so inner products
    // reduce to exact exponent tallies instead of cyclotomic multiplication
    std::vector<int> expo(t.size(), -2);
    bool monomial = true;
    {
        std::vector<Cyc> roots;
        for (int e = 0; e < m; ++e) roots.push_back(Cyc::root(m, e));
        for (size_t i = 0; i < t.size(); ++i) {
            if (t[i].is_zero()) {
                expo[i] = -1;
                continue;
            }
            int found = -2;
            for (int e = 0; e < m; ++e)
                if (t[i] == roots[e]) {
                    found = e;
                    break;
                }
            expo[i] = found;
            if (found == -2) monomial = false;
        }
    }

    std::map<size_t, BigRational> constant_by_size;
    for (const auto& s : bipartition_subsets(legs)) {
        long long rows = 1;
        for (size_t i = 0; i < s.size(); ++i) rows *= q;
        long long cols = total / rows;
        std::vector<int> in_s(legs, 0);
        for (int i : s) in_s[i] = 1;
        auto entry = [&](long long row, long long col) -> const Cyc& {
            long long idx = 0, mult = 1, tr = row, tc = col;
            for (int leg = 0; leg < legs; ++leg) {
                int digit;
                if (in_s[leg]) {
                    digit = (int)(tr % q);
                    tr /= q;
                } else {
                    digit = (int)(tc % q);
                    tc /= q;
                }
                idx += digit * mult;
                mult *= q;
            }
            return t[(size_t)idx];
        };
        auto entry_index = [&](long long row, long long col) -> size_t {
            long long idx = 0, mult = 1, tr = row, tc = col;
            for (int leg = 0; leg < legs; ++leg) {
                int digit;
                if (in_s[leg]) {
                    digit = (int)(tr % q);
                    tr /= q;
                } else {
                    digit = (int)(tc % q);
                    tc /= q;
                }
                idx += digit * mult;
                mult *= q;
            }
            return (size_t)idx;
        };
        SplitCheck chk;
        chk.legs_in_s = s;
        chk.isometry = true;
        Cyc c0(m);
        bool have_c = false;
        std::vector<long long> tally(m);
        for (long long r1 = 0; r1 < rows && chk.isometry; ++r1)
            for (long long r2 = r1; r2 < rows; ++r2) {
                Cyc acc(m);
                if (monomial) {
                    std::fill(tally.begin(), tally.end(), 0);
                    for (long long col = 0; col < cols; ++col) {
                        int e1 = expo[entry_index(r1, col)], e2 = expo[entry_index(r2, col)];
                        if (e1 < 0 || e2 < 0) continue;
                        tally[((e2 - e1) % m + m) % m]++;
                    }
                    for (int e = 0; e < m; ++e)
                        if (tally[e]) acc += Cyc::root(m, e) * BigRational(tally[e]);
                } else {
                    for (long long col = 0; col < cols; ++col)
                        acc += entry(r1, col).conj() * entry(r2, col);
                }
                if (r1 == r2) {
                    if (!have_c) {
                        c0 = acc;
                        have_c = true;
                        if (!c0.is_rational() || !(BigRational(0) < c0.rational_part())) {
                            chk.isometry = false;
                            break;
                        }
                    } else if (acc != c0) {
                        chk.isometry = false;
                        break;
                    }
                } else if (!acc.is_zero()) {
                    chk.isometry = false;
                    break;
                }
            }
        if (chk.isometry) chk.constant = c0.rational_part();
        rep.perfect = rep.perfect && chk.isometry;
        if (chk.isometry) {
            auto it = constant_by_size.find(s.size());
            if (it == constant_by_size.end())
                constant_by_size[s.size()] = chk.constant;
            else if (!(it->second == chk.constant))
                rep.constants_uniform_per_size = false;
        }
        rep.splits.push_back(std::move(chk));
    }
    rep.perfect = rep.perfect && rep.constants_uniform_per_size;
    return rep;
}

PerfectTensorReport is_perfect_tensor(const std::vector<std::complex<double>>& t, int legs, int q,
                                      double tol) {
    PerfectTensorReport rep;
    long long total = 1;
    for (int i = 0; i < legs; ++i) total *= q;
    if ((long long)t.size() != total) throw Error("ShapeMismatch");
    std::map<size_t, double> constant_by_size;
    for (const auto& s : bipartition_subsets(legs)) {
        long long rows = 1;
        for (size_t i = 0; i < s.size(); ++i) rows *= q;
        long long cols = total / rows;
        std::vector<int> in_s(legs, 0);
        for (int i : s) in_s[i] = 1;
        auto entry = [&](long long row, long long col) {
            long long idx = 0, mult = 1, tr = row, tc = col;
            for (int leg = 0; leg < legs; ++leg) {
                int digit;
                if (in_s[leg]) {
                    digit = (int)(tr % q);
                    tr /= q;
                } else {
                    digit = (int)(tc % q);
                    tc /= q;
                }
                idx += digit * mult;
                mult *= q;
            }
            return t[(size_t)idx];
        };
        SplitCheck chk;
        chk.legs_in_s = s;
        chk.isometry = true;
        double c0 = 0;
        bool have_c = false;
        for (long long r1 = 0; r1 < rows && chk.isometry; ++r1)
            for (long long r2 = r1; r2 < rows; ++r2) {
                std::complex<double> acc = 0;
                for (long long col = 0; col < cols; ++col)
                    acc += std::conj(entry(r1, col)) * entry(r2, col);
                if (r1 == r2) {
                    if (!have_c) {
                        c0 = acc.real();
                        have_c = true;
                        if (c0 <= tol) chk.isometry = false;
                    } else if (std::abs(acc - c0) > tol) {
                        chk.isometry = false;
                    }
                } else if (std::abs(acc) > tol) {
                    chk.isometry = false;
                }
            }
        rep.perfect = rep.perfect && chk.isometry;
        if (chk.isometry) {
            auto it = constant_by_size.find(s.size());
            if (it == constant_by_size.end())
                constant_by_size[s.size()] = c0;
            else if (std::abs(it->second - c0) > tol)
                rep.constants_uniform_per_size = false;
        }
        rep.splits.push_back(std::move(chk));
    }
    rep.perfect = rep.perfect && rep.constants_uniform_per_size;
    return rep;
}

PerfectTensorResult perfect_tensor_from_lagrangian(std::shared_ptr<const AlmostSymplecticSpace> space,
                                                   const Subspace& l,
                                                   const std::optional<Enhancement>& alpha,
                                                   bool check_all_splits) {
    const auto& S = *space;
    if (!is_lagrangian(l, S.omega)) throw NotLagrangian();
    if (S.char2() && !alpha.has_value()) throw NoEnhancement("Lagrangian enhancement required for p = 2");

    DarbouxDecomposition frame = darboux_decomposition(S);
    if (frame.residual.dim() != 0)
        throw NotLCS();
    int n = (int)frame.blocks.size();
    const Fq& F = S.V.field();

    if (check_all_splits) {
        // minimal intersection with every block bipartition W = ⊕_{i∈S} V_i
        for (int mask = 1; mask < (1 << n) - 1; ++mask) {
            int sz = __builtin_popcount(mask);
            if (2 * sz > n) continue;
            FqMatrix wrows, wprows;
            for (int i = 0; i < n; ++i) {
                auto& dst = (mask & (1 << i)) ? wrows : wprows;
                dst.push_back(S.V.coords(frame.blocks[i].u));
                dst.push_back(S.V.coords(frame.blocks[i].v));
            }
            Subspace w = Subspace::span(S.V, wrows), wp = Subspace::span(S.V, wprows);
            int expect_w = std::max(0, l.dim() + w.dim() - S.V.dim());
            int expect_wp = std::max(0, l.dim() + wp.dim() - S.V.dim());
            if (l.intersect(w).dim() != expect_w || l.intersect(wp).dim() != expect_wp)
                throw NotGeneralPosition("block subset mask " + std::to_string(mask));
        }
    }

    std::vector<long long> upos;
    for (const auto& b : frame.blocks) upos.push_back(b.u);
    Subspace l0 = Subspace::span_indices(S.V, upos);
    std::optional<Enhancement> alpha0;
    if (S.char2()) {
        EnhancementFailure why;
        alpha0 = find_enhancement(l0, *S.beta, &why);
        if (!alpha0) throw NoEnhancement(why.reason);
    }

    PerfectTensorResult res{{}, n, (int)F.q(), frame, ModelSpace::build(space, l0, alpha0, &frame),
                            {},  alpha};
    const ModelSpace& ms = res.model;

    // trivial-character projector of the stabilizer tau(L). The operators are first
    // verified to form a group of monomials (closure under composition); the group
    // average is then an exact projector whose rank equals its trace, and any nonzero
    // column spans the fixed space once the rank is 1.
    auto elems = l.enumerate();
    std::vector<MonomialOp> ops;
    for (long long v : elems) ops.push_back(ms.right_translation(ms.tau(v, alpha)));
    int m = ms.conductor();
    int dim = ms.dim();
    {
        std::map<long long, size_t> index_of;
        for (size_t i = 0; i < elems.size(); ++i) index_of[elems[i]] = i;
        for (size_t i = 0; i < elems.size(); ++i)
            for (size_t j = 0; j < elems.size(); ++j) {
                size_t k = index_of.at(S.V.add(elems[i], elems[j]));
                if (!(ops[i].then(ops[j]) == ops[k]))
                    throw StabilizerError("stabilizer operators do not close as a group");
            }
    }
    // rank = trace of the group average
    Cyc trace_sum(m);
    for (const auto& op : ops) trace_sum += op.trace();
    Cyc rank = trace_sum * (BigRational(1) / BigRational((long long)elems.size()));
    if (!(rank == Cyc(m, 1))) {
        long long r = rank.is_rational() && rank.rational_part().den() == BigInt(1)
                          ? rank.rational_part().num().to_ll()
                          : -1;
        throw StabilizerNotMaximal((int)r);
    }
    // first nonzero column of the projector, assembled from the monomial data
    CycVector t;
    for (int j = 0; j < dim && t.empty(); ++j) {
        CycVector col(dim, Cyc(m));
        for (const auto& op : ops) col[op.perm[j]] += Cyc::root(m, op.phase[j]);
        if (!vector_is_zero(col)) t = std::move(col);
    }
    if (t.empty()) throw StabilizerError("projector has no nonzero column despite rank 1");
    for (const auto& x : t)
        if (!x.is_zero()) {
            Cyc inv = x.inverse();
            for (auto& y : t) y *= inv;
            break;
        }
    for (const auto& op : ops)
        if (op.apply(t) != t) throw StabilizerError("tensor not fixed by the stabilizer");
    res.tensor = std::move(t);
    res.report = is_perfect_tensor(res.tensor, n, (int)F.q());
    return res;
}

CycVector tensor_on_v(const PerfectTensorResult& r) {
    const ModelSpace& ms = r.model;
    const auto& S = ms.space();
    const Fq& F = S.V.field();
    int n = r.legs;
    int m = ms.conductor();
    FqMatrix dbasis;
    for (const auto& b : r.frame.blocks) dbasis.push_back(S.V.coords(b.u));
    for (const auto& b : r.frame.blocks) dbasis.push_back(S.V.coords(b.v));
    long long total = 1;
    for (int i = 0; i < 2 * n; ++i) total *= F.q();
    CycVector out((size_t)total, Cyc(m));
    for (long long t = 0; t < total; ++t) {
        // digits: positions a_1..a_n then momenta b_1..b_n, leg 0 fastest
        std::vector<int> digits(2 * n);
        long long tt = t;
        for (int i = 0; i < 2 * n; ++i) {
            digits[i] = (int)(tt % F.q());
            tt /= F.q();
        }
        long long v = 0;
        for (int i = 0; i < 2 * n; ++i) {
            long long base = S.V.index(dbasis[i]);
            v = S.V.add(v, S.V.scale(digits[i], base));
        }
        int point = ms.loop().encode(v, 0);
        int orb = ms.orbit_of(point);
        if (orb < 0) continue;  // dead orbit: value 0
        out[(size_t)t] = Cyc::root(m, ms.phase_of(point)) * r.tensor[orb];
    }
    return out;
}

MonomialOp left_translation(const Loop& l, int a) {
    MonomialOp op = MonomialOp::identity(l.size(), 1);
    for (int h = 0; h < l.size(); ++h) op.perm[h] = l.mul(a, h);
    return op;
}

MonomialOp right_translation(const Loop& l, int a) {
    MonomialOp op = MonomialOp::identity(l.size(), 1);
    for (int h = 0; h < l.size(); ++h) op.perm[h] = l.mul(h, a);
    return op;
}

LoopRepReport loop_representation_checks(const Loop& l) {
    LoopRepReport rep;
    int n = l.size();
    for (int a = 0; a < n && rep.moufang_identity1 && rep.moufang_identity2; ++a)
        for (int b = 0; b < n && rep.moufang_identity1 && rep.moufang_identity2; ++b)
            for (int h = 0; h < n; ++h) {
                if (l.mul(h, l.mul(b, l.mul(a, b))) != l.mul(l.mul(l.mul(h, b), a), b)) {
                    rep.moufang_identity1 = false;
                    rep.witness = {a, b, h};
                    break;
                }
                if (l.mul(l.mul(l.mul(a, b), a), h) != l.mul(a, l.mul(b, l.mul(a, h)))) {
                    rep.moufang_identity2 = false;
                    rep.witness = {a, b, h};
                    break;
                }
            }
    // formal associator [a,b,h] = (a*b)*h - a*(b*h) skew-symmetric in C[L]
    auto assoc = [&](int a, int b, int h) { return std::make_pair(l.mul(l.mul(a, b), h), l.mul(a, l.mul(b, h))); };
    for (int a = 0; a < n && rep.associator_skew; ++a)
        for (int b = 0; b < n && rep.associator_skew; ++b)
            for (int h = 0; h < n; ++h) {
                auto [p1, m1] = assoc(a, b, h);
                // transposition (a b): [b,a,h] must equal -[a,b,h]
                auto [p2, m2] = assoc(b, a, h);
                bool swap_ab = (p2 == m1 && m2 == p1) || (p1 == m1 && p2 == m2);
                // transposition (b h): [a,h,b] must equal -[a,b,h]
                auto [p3, m3] = assoc(a, h, b);
                bool swap_bh = (p3 == m1 && m3 == p1) || (p1 == m1 && p3 == m3);
                if (!swap_ab || !swap_bh) {
                    rep.associator_skew = false;
                    rep.witness = {a, b, h};
                    break;
                }
            }
    return rep;
}

DistanceReport code_distance_check(const QuantumCode& code, const ModelSpace& ms, int d, bool search) {
    DistanceReport rep;
    const auto& S = ms.space();
    const Fq& F = S.V.field();
    int n = ms.legs();
    if (n == 0) throw Error("code_distance_check: model space has no leg structure");
    PauliContext ctx(F.spec(), n);
    int m = ms.conductor();
    int scale = m / F.p();
    CycMatrix p = code.projector;

    auto compresses = [&](long long a, long long b) {
        MonomialOp e = ctx.error_op(a, b);
        // lift to the model conductor
        MonomialOp em;
        em.dim = e.dim;
        em.m = m;
        em.perm = e.perm;
        em.phase.resize(e.dim);
        for (int i = 0; i < e.dim; ++i) em.phase[i] = (e.phase[i] * scale) % m;
        CycMatrix pep = mat_mul(p, mat_mul(em.to_matrix(), p));
        // find lambda from the first nonzero entry of P
        for (size_t r = 0; r < p.size(); ++r)
            for (size_t c2 = 0; c2 < p.size(); ++c2)
                if (!p[r][c2].is_zero()) {
                    Cyc lambda = pep[r][c2] * p[r][c2].inverse();
                    return mat_equal(pep, mat_scale(p, lambda));
                }
        return true;  // zero projector compresses trivially
    };

    long long qn = 1;
    for (int i = 0; i < n; ++i) qn *= F.q();
    auto check_below = [&](int dd) -> bool {
        for (long long a = 0; a < qn; ++a)
            for (long long b = 0; b < qn; ++b) {
                if (a == 0 && b == 0) continue;
                if (ctx.weight(a, b) >= dd) continue;
                if (!compresses(a, b)) {
                    rep.witness_a = a;
                    rep.witness_b = b;
                    return false;
                }
            }
        return true;
    };

    if (search) {
        // largest d such that every error of weight < d compresses
        int best = 1;
        for (int cand = 2; cand <= n + 1; ++cand) {
            rep.witness_a = rep.witness_b = -1;
            if (!check_below(cand)) break;
            best = cand;
        }
        rep.max_d = best;
        rep.holds = best >= d;
        rep.checked_below = best;
        return rep;
    }
    rep.holds = check_below(d);
    rep.checked_below = d;
    return rep;
}

HeisenbergMatchReport heisenberg_error_op_match(std::shared_ptr<const AlmostSymplecticSpace> space) {
    HeisenbergMatchReport rep;
    const auto& S = *space;
    DarbouxDecomposition frame = darboux_decomposition(S);
    std::vector<long long> upos;
    for (const auto& b : frame.blocks) upos.push_back(b.u);
    Subspace l0 = Subspace::span_indices(S.V, upos);
    std::optional<Enhancement> alpha0;
    if (S.char2()) {
        EnhancementFailure why;
        alpha0 = find_enhancement(l0, *S.beta, &why);
        if (!alpha0) throw NoEnhancement(why.reason);
    }
    ModelSpace ms = ModelSpace::build(space, l0, alpha0, &frame);
    const Fq& F = S.V.field();
    int n = ms.legs();
    int m = ms.conductor();
    PauliContext ctx(F.spec(), n);
    int scale = m / F.p();

    long long qn = 1;
    for (int i = 0; i < n; ++i) qn *= F.q();
    FqMatrix dbasis;
    for (const auto& b : frame.blocks) dbasis.push_back(S.V.coords(b.u));
    for (const auto& b : frame.blocks) dbasis.push_back(S.V.coords(b.v));

    for (long long a = 0; a < qn; ++a)
        for (long long b = 0; b < qn; ++b) {
            // candidate V-part: positions -b, momenta a (Darboux coordinates)
            long long v = 0;
            {
                long long ta = a, tb = b;
                for (int i = 0; i < n; ++i) {
                    int ai = (int)(ta % F.q());
                    int bi = (int)(tb % F.q());
                    ta /= F.q();
                    tb /= F.q();
                    v = S.V.add(v, S.V.scale(F.neg(bi), S.V.index(dbasis[i])));
                    v = S.V.add(v, S.V.scale(ai, S.V.index(dbasis[n + i])));
                }
            }
            MonomialOp e = ctx.error_op(a, b);
            MonomialOp em;
            em.dim = e.dim;
            em.m = m;
            em.perm = e.perm;
            em.phase.resize(e.dim);
            for (int i = 0; i < e.dim; ++i) em.phase[i] = (e.phase[i] * scale) % m;

            MonomialOp base = ms.right_translation(ms.loop().encode(v, 0));
            if (base.perm != em.perm) {
                rep.ok = false;
                rep.witness_a = a;
                rep.witness_b = b;
                return rep;
            }
            // phases must differ by a constant realizable as chi(x) for a central x
            int diff = (em.phase[0] - base.phase[0] + m) % m;
            bool constant = true;
            for (int i = 0; i < base.dim; ++i)
                if ((base.phase[i] + diff) % m != em.phase[i]) {
                    constant = false;
                    break;
                }
            bool matched = false;
            if (constant) {
                for (int x = 0; x < S.A.size() && !matched; ++x) {
                    if (S.A.char_exp(x) % m == diff) {
                        MonomialOp exact = ms.right_translation(ms.loop().encode(v, x));
                        matched = exact == em;
                    }
                }
            }
            if (!matched) {
                rep.ok = false;
                rep.witness_a = a;
                rep.witness_b = b;
                return rep;
            }
        }
    return rep;
}

}  // namespace loopcode
