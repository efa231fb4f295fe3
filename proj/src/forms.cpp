#include "loopcode/forms.hpp"

#include <algorithm>
#include <random>

namespace loopcode {

namespace {
long long ipow(long long b, int e) {
    long long v = 1;
    while (e--) v *= b;
    return v;
}
}  // namespace

FormTable FormTable::zero(int arity, VSpace dom, Codomain cod) {
    FormTable f;
    f.arity_ = arity;
    f.dom_ = std::move(dom);
    f.cod_ = std::move(cod);
    long long sz = ipow(f.dom_.count(), arity);
    if (sz > kDefaultDenseBound) throw FormBoundExceeded();
    f.dense_.assign((size_t)sz, 0);
    return f;
}

FormTable FormTable::from_function(int arity, VSpace dom, Codomain cod,
                                   const std::function<int(const std::vector<long long>&)>& fn,
                                   long long bound) {
    FormTable f;
    f.arity_ = arity;
    f.dom_ = std::move(dom);
    f.cod_ = std::move(cod);
    long long n = f.dom_.count();
    long long sz = ipow(n, arity);
    if (sz > bound) throw FormBoundExceeded();
    f.dense_.resize((size_t)sz);
    std::vector<long long> args(arity, 0);
    for (long long t = 0; t < sz; ++t) {
        long long tt = t;
        for (int i = arity - 1; i >= 0; --i) {
            args[i] = tt % n;
            tt /= n;
        }
        f.dense_[(size_t)t] = (uint16_t)fn(args);
    }
    return f;
}

FormTable FormTable::from_bilinear_matrix(VSpace dom, Codomain cod, const std::vector<std::vector<int>>& m) {
    if ((int)m.size() != dom.dim()) throw SpecMismatch();
    for (const auto& row : m)
        if ((int)row.size() != dom.dim()) throw SpecMismatch();
    FormTable f;
    f.arity_ = 2;
    f.dom_ = std::move(dom);
    f.cod_ = std::move(cod);
    f.bil_ = m;
    return f;
}

FormTable FormTable::random(int arity, VSpace dom, Codomain cod, uint64_t seed, bool normalized,
                            long long bound) {
    std::mt19937_64 rng(seed);
    int csize = cod.size();
    return from_function(
        arity, std::move(dom), std::move(cod),
        [&](const std::vector<long long>& args) -> int {
            int v = (int)(rng() % csize);  // drawn unconditionally to keep the stream seed-stable
            if (normalized)
                for (long long a : args)
                    if (a == 0) return 0;
            return v;
        },
        bound);
}

FormTable FormTable::standard_symplectic(VSpace dom, Codomain cod) {
    int d = dom.dim();
    if (d % 2 != 0) throw Error("standard_symplectic: dimension must be even");
    int n = d / 2;
    std::vector<std::vector<int>> m(d, std::vector<int>(d, 0));
    int one = cod.one();
    int unit = cod.is_ring() ? cod.ring().embed2(1) : one;  // 2·1 in the ring convention
    for (int i = 0; i < n; ++i) {
        m[i][n + i] = unit;
        m[n + i][i] = cod.neg(unit);
    }
    return from_bilinear_matrix(std::move(dom), std::move(cod), m);
}

FormTable FormTable::standard_polarization(VSpace dom, Codomain cod) {
    int d = dom.dim();
    if (d % 2 != 0) throw Error("standard_polarization: dimension must be even");
    int n = d / 2;
    std::vector<std::vector<int>> m(d, std::vector<int>(d, 0));
    int unit = cod.is_ring() ? cod.ring().embed2(1) : cod.one();
    for (int i = 0; i < n; ++i) m[i][n + i] = unit;
    return from_bilinear_matrix(std::move(dom), std::move(cod), m);
}

long long FormTable::idx(const std::vector<long long>& args) const {
    long long n = dom_.count(), t = 0;
    for (int i = 0; i < arity_; ++i) t = t * n + args[i];
    return t;
}

int FormTable::value(const std::vector<long long>& args) const {
    if ((int)args.size() != arity_) throw SpecMismatch();
    if (!bil_.empty()) return value2(args[0], args[1]);
    return dense_[(size_t)idx(args)];
}

int FormTable::value1(long long u) const { return dense_[(size_t)u]; }

int FormTable::value2(long long u, long long v) const {
    if (bil_.empty()) return dense_[(size_t)(u * dom_.count() + v)];
    const Fq& F = dom_.field();
    int acc = 0;
    const int d = dom_.dim();
    for (int i = 0; i < d; ++i) {
        int ui = dom_.coord(u, i);
        if (ui == 0) continue;
        for (int j = 0; j < d; ++j) {
            int vj = dom_.coord(v, j);
            if (vj == 0 || bil_[i][j] == 0) continue;
            int term = cod_.scale(ui, bil_[i][j], F);
            term = cod_.scale(vj, term, F);
            acc = cod_.add(acc, term);
        }
    }
    return acc;
}

int FormTable::value3(long long u, long long v, long long w) const {
    long long n = dom_.count();
    return dense_[(size_t)((u * n + v) * n + w)];
}

int FormTable::value4(long long u, long long v, long long w, long long t) const {
    long long n = dom_.count();
    return dense_[(size_t)(((u * n + v) * n + w) * n + t)];
}

FormTable FormTable::materialize(long long bound) const {
    if (bil_.empty()) return *this;
    return from_function(
        2, dom_, cod_, [&](const std::vector<long long>& a) { return value2(a[0], a[1]); }, bound);
}

void FormTable::set(const std::vector<long long>& args, int code) {
    if (!bil_.empty()) throw Error("FormTable::set on matrix-backed table");
    dense_[(size_t)idx(args)] = (uint16_t)code;
}

FormTable FormTable::scaled(int factor) const {
    FormTable f = materialize();
    for (auto& v : f.dense_) v = (uint16_t)cod_.mul(factor, v);
    return f;
}

FormTable FormTable::add(const FormTable& o) const {
    if (arity_ != o.arity_ || !(dom_ == o.dom_) || !cod_.same_as(o.cod_)) throw SpecMismatch();
    FormTable a = materialize(), b = o.materialize();
    for (size_t i = 0; i < a.dense_.size(); ++i) a.dense_[i] = (uint16_t)cod_.add(a.dense_[i], b.dense_[i]);
    return a;
}

bool FormTable::same_table(const FormTable& o) const {
    if (arity_ != o.arity_ || !(dom_ == o.dom_) || !cod_.same_as(o.cod_)) return false;
    FormTable a = materialize(), b = o.materialize();
    return a.dense_ == b.dense_;
}

FormTable hochschild_d(const FormTable& f, long long bound) {
    const VSpace& V = f.domain();
    const Codomain& A = f.codomain();
    int k = f.arity();
    switch (k) {
        case 1:
            return FormTable::from_function(
                2, V, A,
                [&](const std::vector<long long>& a) {
                    int s = f.value1(V.add(a[0], a[1]));
                    s = A.sub(s, f.value1(a[0]));
                    s = A.sub(s, f.value1(a[1]));
                    return s;
                },
                bound);
        case 2:
            return FormTable::from_function(
                3, V, A,
                [&](const std::vector<long long>& a) {
                    int s = f.value2(a[1], a[2]);
                    s = A.sub(s, f.value2(V.add(a[0], a[1]), a[2]));
                    s = A.add(s, f.value2(a[0], V.add(a[1], a[2])));
                    s = A.sub(s, f.value2(a[0], a[1]));
                    return s;
                },
                bound);
        case 3:
            return FormTable::from_function(
                4, V, A,
                [&](const std::vector<long long>& a) {
                    int s = f.value3(a[1], a[2], a[3]);
                    s = A.sub(s, f.value3(V.add(a[0], a[1]), a[2], a[3]));
                    s = A.add(s, f.value3(a[0], V.add(a[1], a[2]), a[3]));
                    s = A.sub(s, f.value3(a[0], a[1], V.add(a[2], a[3])));
                    s = A.add(s, f.value3(a[0], a[1], a[2]));
                    return s;
                },
                bound);
        default:
            throw Error("hochschild_d: arity must be 1, 2 or 3");
    }
}

std::pair<FormTable, FormTable> gamma_defects(const FormTable& beta, GammaRConvention conv) {
    const VSpace& V = beta.domain();
    const Codomain& A = beta.codomain();
    FormTable gl = FormTable::from_function(3, V, A, [&](const std::vector<long long>& a) {
        int s = beta.value2(V.add(a[0], a[1]), a[2]);
        s = A.sub(s, beta.value2(a[0], a[2]));
        s = A.sub(s, beta.value2(a[1], a[2]));
        return s;
    });
    FormTable gr = FormTable::from_function(3, V, A, [&](const std::vector<long long>& a) {
        int s = beta.value2(a[0], V.add(a[1], a[2]));
        if (conv == GammaRConvention::Corrected) {
            s = A.sub(s, beta.value2(a[0], a[1]));
            s = A.sub(s, beta.value2(a[0], a[2]));
        } else {
            s = A.sub(s, beta.value2(a[0], a[2]));
            s = A.sub(s, beta.value2(a[1], a[2]));
        }
        return s;
    });
    return {gl, gr};
}

FormCheck is_almost_symplectic(const FormTable& omega) {
    FormCheck res;
    if (omega.arity() != 2) throw SpecMismatch();
    const VSpace& V = omega.domain();
    const Codomain& A = omega.codomain();
    long long n = V.count();

    if (omega.matrix_backed()) {
        // bilinear case: skewness is the entrywise condition M_ij = -M_ji (basis
        // evaluation makes it necessary, expansion makes it sufficient), and
        // nondegeneracy is invertibility of the coefficient matrix
        const auto& mtx = omega.bilinear_matrix();
        int d = V.dim();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (mtx[i][j] != A.neg(mtx[j][i])) {
                    res.ok = false;
                    res.witness = {V.basis(i), V.basis(j)};
                    res.note = "skew-symmetry fails";
                    return res;
                }
        const Fq& F = V.field();
        FqMatrix rows(d, std::vector<int>(d, 0));
        bool liftable = true;
        for (int i = 0; i < d && liftable; ++i)
            for (int j = 0; j < d; ++j) {
                if (A.is_ring()) {
                    if (!A.in_ideal2(mtx[i][j])) {
                        liftable = false;
                        break;
                    }
                    rows[i][j] = A.ring().halve_ideal(mtx[i][j]);
                } else {
                    rows[i][j] = mtx[i][j];
                }
            }
        if (liftable) {
            FqMatrix copy = rows;
            if (rref(copy, F) != d) {
                res.ok = false;
                res.note = "degenerate: matrix not invertible";
                return res;
            }
            return res;
        }
        // ring matrix with entries outside 2R: fall through to the exhaustive scan
    }
    for (long long u = 0; u < n; ++u) {
        if (omega.value2(u, 0) != 0 || omega.value2(0, u) != 0) {
            res.ok = false;
            res.witness = {u, 0};
            res.note = "omega(u,0) or omega(0,u) nonzero";
            return res;
        }
        for (long long v = 0; v < n; ++v) {
            if (omega.value2(u, v) != A.neg(omega.value2(v, u))) {
                res.ok = false;
                res.witness = {u, v};
                res.note = "skew-symmetry fails";
                return res;
            }
        }
    }
    for (long long u = 1; u < n; ++u) {
        bool hit = false;
        for (long long v = 0; v < n && !hit; ++v) hit = omega.value2(u, v) != 0;
        if (!hit) {
            res.ok = false;
            res.witness = {u};
            res.note = "degenerate: omega(u,.) == 0";
            return res;
        }
    }
    return res;
}

FormCheck is_polarization(const FormTable& beta, const FormTable& omega, bool require_normalized) {
    FormCheck res;
    const VSpace& V = beta.domain();
    const Codomain& A = beta.codomain();
    if (!(V == omega.domain()) || !A.same_as(omega.codomain())) throw SpecMismatch();
    long long n = V.count();
    for (long long u = 0; u < n; ++u)
        for (long long v = 0; v < n; ++v)
            if (A.sub(beta.value2(u, v), beta.value2(v, u)) != omega.value2(u, v)) {
                res.ok = false;
                res.witness = {u, v};
                res.note = "beta(u,v)-beta(v,u) != omega(u,v)";
                return res;
            }
    for (long long v = 0; v < n; ++v) {
        if (beta.value2(v, 0) != beta.value2(0, v)) {
            res.ok = false;
            res.witness = {v};
            res.note = "beta(v,0) != beta(0,v)";
            return res;
        }
        if (require_normalized && beta.value2(v, 0) != 0) {
            res.ok = false;
            res.witness = {v};
            res.note = "not normalized: beta(v,0) != 0";
            return res;
        }
    }
    return res;
}

FormCheck moufang_condition(const FormTable& gamma) {
    FormCheck res;
    if (gamma.arity() != 3) throw SpecMismatch();
    const VSpace& V = gamma.domain();
    long long n = V.count();
    for (long long u = 0; u < n; ++u)
        for (long long v = 0; v < n; ++v)
            for (long long w = 0; w < n; ++w)
                if (gamma.value3(u, v, V.add(u, w)) != gamma.value3(v, w, u)) {
                    res.ok = false;
                    res.witness = {u, v, w};
                    return res;
                }
    return res;
}

FormCheck is_cyclic(const FormTable& eta) {
    FormCheck res;
    const VSpace& V = eta.domain();
    const Codomain& A = eta.codomain();
    int k = eta.arity();
    long long n = V.count();
    long long total = ipow(n, k);
    int sign_flip = (k - 1) % 2;  // (-1)^n with n = k-1
    std::vector<long long> args(k), rot(k);
    for (long long t = 0; t < total; ++t) {
        long long tt = t;
        for (int i = k - 1; i >= 0; --i) {
            args[i] = tt % n;
            tt /= n;
        }
        rot[0] = args[k - 1];
        for (int i = 1; i < k; ++i) rot[i] = args[i - 1];
        int rhs = eta.value(rot);
        if (sign_flip) rhs = A.neg(rhs);
        if (eta.value(args) != rhs) {
            res.ok = false;
            res.witness = args;
            return res;
        }
    }
    return res;
}

FormCheck is_multilinear(const FormTable& eta) {
    FormCheck res;
    const VSpace& V = eta.domain();
    const Codomain& A = eta.codomain();
    const Fq& F = V.field();
    int k = eta.arity();
    long long n = V.count();
    long long total = ipow(n, k);
    std::vector<long long> args(k), mod(k);
    for (long long t = 0; t < total; ++t) {
        long long tt = t;
        for (int i = k - 1; i >= 0; --i) {
            args[i] = tt % n;
            tt /= n;
        }
        for (int slot = 0; slot < k; ++slot) {
            mod = args;
            for (long long w = 0; w < n; ++w) {
                mod[slot] = V.add(args[slot], w);
                int lhs = eta.value(mod);
                mod[slot] = args[slot];
                int rhs = eta.value(mod);
                mod[slot] = w;
                rhs = A.add(rhs, eta.value(mod));
                if (lhs != rhs) {
                    res.ok = false;
                    res.witness = args;
                    res.witness.push_back(slot);
                    res.witness.push_back(w);
                    res.note = "additivity defect";
                    return res;
                }
            }
            if (F.q() > F.p()) {
                // scalar homogeneity per slot for proper extension fields
                for (int lam = 0; lam < F.q(); ++lam) {
                    mod = args;
                    mod[slot] = V.scale(lam, args[slot]);
                    int lhs = eta.value(mod);
                    mod[slot] = args[slot];
                    int rhs = A.scale(lam, eta.value(mod), F);
                    if (lhs != rhs) {
                        res.ok = false;
                        res.witness = args;
                        res.witness.push_back(slot);
                        res.witness.push_back(lam);
                        res.note = "homogeneity defect";
                        return res;
                    }
                }
            }
        }
    }
    return res;
}

FormTable wedge(const FormTable& theta, const FormTable& omega) {
    if (theta.arity() != 1 || omega.arity() != 2) throw SpecMismatch();
    const VSpace& V = theta.domain();
    const Codomain& A = theta.codomain();
    if (!(V == omega.domain()) || !A.same_as(omega.codomain())) throw SpecMismatch();
    return FormTable::from_function(3, V, A, [&](const std::vector<long long>& a) {
        int s = A.mul(theta.value1(a[0]), omega.value2(a[1], a[2]));
        s = A.add(s, A.mul(theta.value1(a[2]), omega.value2(a[0], a[1])));
        return s;
    });
}

FormTable wedge1(const FormTable& t1, const FormTable& t2) {
    if (t1.arity() != 1 || t2.arity() != 1) throw SpecMismatch();
    const VSpace& V = t1.domain();
    const Codomain& A = t1.codomain();
    return FormTable::from_function(2, V, A, [&](const std::vector<long long>& a) {
        int s = A.mul(t1.value1(a[0]), t2.value1(a[1]));
        s = A.sub(s, A.mul(t1.value1(a[1]), t2.value1(a[0])));
        return s;
    });
}

namespace {

bool theta_is_zero(const FormTable& theta) {
    for (long long v = 0; v < theta.domain().count(); ++v)
        if (theta.value1(v) != 0) return false;
    return true;
}

FormCheck check_homogeneous2(const FormTable& omega) {
    FormCheck res;
    const VSpace& V = omega.domain();
    const Codomain& A = omega.codomain();
    const Fq& F = V.field();
    long long n = V.count();
    for (int lam = 0; lam < F.q(); ++lam)
        for (long long u = 0; u < n; ++u)
            for (long long v = 0; v < n; ++v) {
                int base = A.scale(lam, omega.value2(u, v), F);
                if (omega.value2(V.scale(lam, u), v) != base || omega.value2(u, V.scale(lam, v)) != base) {
                    res.ok = false;
                    res.witness = {lam, u, v};
                    res.note = "omega not homogeneous";
                    return res;
                }
            }
    return res;
}

}  // namespace

FormCheck is_lcs(const FormTable& omega, const FormTable& theta) {
    FormCheck as = is_almost_symplectic(omega);
    if (!as.ok) {
        as.note = "not almost symplectic: " + as.note;
        return as;
    }
    const VSpace& V = omega.domain();
    const Codomain& A = omega.codomain();
    const Fq& F = V.field();
    FormCheck res;

    bool tz = theta_is_zero(theta);
    if (omega.matrix_backed() && tz) return res;  // bilinear: d omega = 0 = theta ^ omega, homogeneous

    // theta closed and homogeneous
    for (long long u = 0; u < V.count(); ++u) {
        for (long long v = 0; v < V.count(); ++v) {
            int d = A.sub(A.sub(theta.value1(V.add(u, v)), theta.value1(u)), theta.value1(v));
            if (d != 0) {
                res.ok = false;
                res.witness = {u, v};
                res.note = "theta not closed";
                return res;
            }
        }
        for (int lam = 0; lam < F.q(); ++lam)
            if (theta.value1(V.scale(lam, u)) != A.scale(lam, theta.value1(u), F)) {
                res.ok = false;
                res.witness = {lam, u};
                res.note = "theta not homogeneous";
                return res;
            }
    }
    FormCheck hom = check_homogeneous2(omega);
    if (!hom.ok) return hom;
    FormTable dw = hochschild_d(omega.materialize());
    FormTable tw = wedge(theta, omega.materialize());
    long long n = V.count();
    for (long long u = 0; u < n; ++u)
        for (long long v = 0; v < n; ++v)
            for (long long w = 0; w < n; ++w)
                if (dw.value3(u, v, w) != tw.value3(u, v, w)) {
                    res.ok = false;
                    res.witness = {u, v, w};
                    res.note = "d omega != theta ^ omega";
                    return res;
                }
    return res;
}

bool is_isotropic(const Subspace& c, const FormTable& omega, long long bound) {
    auto elems = c.enumerate(bound);
    for (long long u : elems)
        for (long long v : elems)
            if (omega.value2(u, v) != 0) return false;
    return true;
}

bool is_lagrangian(const Subspace& l, const FormTable& omega, long long bound) {
    return 2 * l.dim() == l.space().dim() && is_isotropic(l, omega, bound);
}

int Enhancement::at(long long v) const {
    auto it = value.find(v);
    if (it == value.end()) throw Error("Enhancement: value requested outside domain");
    return it->second;
}

std::optional<Enhancement> find_enhancement(const Subspace& c, const FormTable& beta,
                                            EnhancementFailure* failure) {
    const VSpace& V = beta.domain();
    const Codomain& A = beta.codomain();
    if (!A.is_ring()) throw Error("find_enhancement: requires ring codomain (p = 2)");
    const GaloisRing& R = A.ring();
    auto fail = [&](const std::string& reason, std::vector<long long> w) -> std::optional<Enhancement> {
        if (failure) *failure = {reason, std::move(w)};
        return std::nullopt;
    };
    auto elems = c.enumerate();
    for (long long u : elems)
        for (long long v : elems) {
            if (beta.value2(u, v) != beta.value2(v, u)) return fail("asymmetry", {u, v});
            for (long long w : elems) {
                int d = A.sub(beta.value2(v, w), beta.value2(V.add(u, v), w));
                d = A.add(d, beta.value2(u, V.add(v, w)));
                d = A.sub(d, beta.value2(u, v));
                if (d != 0) return fail("nonzero dbeta", {u, v, w});
            }
        }

    Enhancement alpha;
    alpha.domain = c;
    alpha.value[0] = 0;
    // free values on the ordered basis: least x with 2x = -beta(b,b)
    std::vector<long long> bas(c.dim());
    for (int i = 0; i < c.dim(); ++i) bas[i] = c.basis_index(i);
    std::vector<int> alpha_basis(c.dim());
    for (int i = 0; i < c.dim(); ++i) {
        int target = A.neg(beta.value2(bas[i], bas[i]));
        if (!R.in_ideal2(target)) return fail("beta(u,u) not in 2R", {bas[i]});
        int found = -1;
        for (int x = 0; x < R.size(); ++x)
            if (R.add(x, x) == target) {
                found = x;
                break;
            }
        if (found < 0) return fail("beta(u,u) not in 2R", {bas[i]});
        alpha_basis[i] = found;
    }
    // extend over span{b_0..b_i} incrementally by the defining relation
    std::vector<long long> built = {0};
    for (int i = 0; i < c.dim(); ++i) {
        std::vector<long long> next = built;
        for (long long v : built) {
            long long s = V.add(v, bas[i]);
            alpha.value[s] = A.add(A.add(alpha.at(v), alpha_basis[i]), beta.value2(v, bas[i]));
            next.push_back(s);
        }
        built = std::move(next);
    }
    // exhaustive verification over all pairs in C
    for (long long u : elems)
        for (long long v : elems) {
            int lhs = A.sub(A.sub(alpha.at(V.add(u, v)), alpha.at(u)), alpha.at(v));
            if (lhs != beta.value2(u, v)) return fail("verification failure", {u, v});
        }
    return alpha;
}

FormCheck AlmostSymplecticSpace::validate() const {
    FormCheck res = is_almost_symplectic(omega);
    if (!res.ok) return res;
    if (char2()) {
        if (!beta.has_value()) {
            res.ok = false;
            res.note = "MissingPolarization";
            return res;
        }
        FormCheck pol = is_polarization(*beta, omega, false);
        if (!pol.ok) return pol;
    }
    if (reduction_tagged) {
        if (!A.is_ring()) {
            res.ok = false;
            res.note = "reduction tag requires ring codomain";
            return res;
        }
        for (long long u = 0; u < V.count(); ++u)
            for (long long v = 0; v < V.count(); ++v)
                if (!A.in_ideal2(omega.value2(u, v))) {
                    res.ok = false;
                    res.witness = {u, v};
                    res.note = "omega value outside ideal 2R";
                    return res;
                }
    }
    return res;
}

const FormTable& AlmostSymplecticSpace::loop_cocycle() const {
    if (char2()) {
        if (!beta) throw Error("MissingPolarization");
        return *beta;
    }
    return omega;
}

DarbouxDecomposition darboux_decomposition(const AlmostSymplecticSpace& s) {
    const VSpace& V = s.V;
    const Codomain& A = s.A;
    const Fq& F = V.field();
    FormTable theta = s.theta ? *s.theta : FormTable::zero(1, V, A);
    {
        FormCheck lcs = is_lcs(s.omega, theta);
        if (!lcs.ok) throw NotLCS();
    }

    DarbouxDecomposition out;
    // K = ker theta (theta is linear once is_lcs holds)
    FqMatrix kvecs;
    bool tz = theta_is_zero(theta);
    if (tz) {
        out.kernel_theta = Subspace::full(V);
    } else {
        for (int i = 0; i < V.dim(); ++i) (void)i;
        std::vector<long long> kernel_elems;
        for (long long v = 0; v < V.count(); ++v)
            if (theta.value1(v) == 0) kernel_elems.push_back(v);
        out.kernel_theta = Subspace::span_indices(V, kernel_elems);
    }

    // greedy: first enumerated pair (u, v) with omega(u, v) != 0 inside the working space
    std::vector<long long> work = out.kernel_theta.enumerate();
    FqMatrix block_rows;
    while (true) {
        long long bu = -1, bv = -1;
        for (size_t i = 0; i < work.size() && bu < 0; ++i) {
            if (work[i] == 0) continue;
            for (size_t j = 0; j < work.size(); ++j) {
                if (work[j] == 0) continue;
                if (s.omega.value2(work[i], work[j]) != 0) {
                    bu = work[i];
                    bv = work[j];
                    break;
                }
            }
        }
        if (bu < 0) break;
        // normalize v so omega(u, v) is the distinguished unit (1, or 2 in the ring case)
        int val = s.omega.value2(bu, bv);
        int c;
        if (A.is_ring()) {
            const GaloisRing& R = A.ring();
            if (!R.in_ideal2(val)) throw NondegeneracyLost();
            c = R.halve_ideal(val);  // val = 2·c
        } else {
            c = val;
        }
        bv = V.scale(F.inv(c), bv);
        DarbouxBlock blk;
        blk.u = bu;
        blk.v = bv;
        blk.block = Subspace::span_indices(V, {bu, bv});
        if (blk.block.dim() != 2) throw NondegeneracyLost();
        out.blocks.push_back(blk);
        block_rows.push_back(V.coords(bu));
        block_rows.push_back(V.coords(bv));
        // restrict to the omega-complement of the block within the working set
        std::vector<long long> next;
        for (long long w : work)
            if (s.omega.value2(bu, w) == 0 && s.omega.value2(bv, w) == 0) next.push_back(w);
        work = std::move(next);
    }
    Subspace span_blocks = Subspace::span(V, block_rows);
    if (span_blocks.dim() < V.dim()) {
        // deterministic complement of the block sum: greedily extend by standard vectors
        FqMatrix m = block_rows;
        FqMatrix extra;
        for (int i = 0; i < V.dim(); ++i) {
            std::vector<int> e(V.dim(), 0);
            e[i] = 1;
            FqMatrix trial = m;
            trial.push_back(e);
            FqMatrix cur = m;
            if (rref(trial, F) > rref(cur, F)) {
                m.push_back(e);
                extra.push_back(e);
            }
        }
        out.residual = Subspace::span(V, extra);
        // with theta == 0 the blocks must exhaust V; leftover means omega degenerated mid-recursion
        if (tz) {
            out.nondegeneracy_lost = true;
            throw NondegeneracyLost();
        }
    } else {
        out.residual = Subspace::zero(V);
    }
    return out;
}

bool general_position(const Subspace& l, const Subspace& w, const Subspace& wp) {
    if (w.sum(wp).dim() != l.space().dim() || w.dim() + wp.dim() != l.space().dim())
        throw NotADirectSum();
    return l.intersect(w).dim() == 0 && l.intersect(wp).dim() == 0;
}

FqMatrix lagrangian_graph_map(const Subspace& l, const Subspace& w, const Subspace& wp,
                              const FormTable& omega) {
    const VSpace& V = l.space();
    const Fq& F = V.field();
    if (w.dim() != wp.dim() || w.dim() != l.dim()) throw NotADirectSum();
    if (!general_position(l, w, wp)) throw NotGeneralPosition();
    // each basis vector u of W extends uniquely to u + psi(u) in L
    int k = w.dim();
    FqMatrix psi(k, std::vector<int>(k, 0));
    for (int i = 0; i < k; ++i) {
        // find x in L with W-component = w_i: solve over combined bases
        FqMatrix sys;  // rows: L basis, then W basis, then W' basis — find L-combination
        // Solve c·B_L = w_i + (W'-part): equivalently express w_i in basis (L ∪ W'):
        FqMatrix lb = l.basis();
        FqMatrix wpb = wp.basis();
        FqMatrix all = lb;
        all.insert(all.end(), wpb.begin(), wpb.end());
        auto sol = solve_left(all, w.basis()[i], F);
        if (!sol) throw NotGeneralPosition("graph decomposition failed");
        // w_i = sum a_j L_j + sum b_j W'_j  =>  psi(w_i) = -sum b_j W'_j expressed in W' basis
        for (int j = 0; j < k; ++j) psi[i][j] = F.neg((*sol)[l.dim() + j]);
        (void)sys;
    }
    // verify the intertwining identity on basis pairs when restrictions are bilinear;
    // bilinearity of the restriction is checked by enumeration when small
    bool bilinear_ok = omega.matrix_backed();
    if (!bilinear_ok && w.size() <= 4096) {
        bilinear_ok = true;
        auto we = w.enumerate();
        for (long long a : we) {
            for (long long b : we)
                for (long long c : we) {
                    const Codomain& A = omega.codomain();
                    if (omega.value2(V.add(a, b), c) !=
                        A.add(omega.value2(a, c), omega.value2(b, c))) {
                        bilinear_ok = false;
                        break;
                    }
                }
            if (!bilinear_ok) break;
        }
    }
    if (bilinear_ok) {
        const Codomain& A = omega.codomain();
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                long long wi = V.index(w.basis()[i]), wj = V.index(w.basis()[j]);
                long long pi = 0, pj = 0;
                for (int t = 0; t < k; ++t) {
                    pi = V.add(pi, V.scale(psi[i][t], V.index(wp.basis()[t])));
                    pj = V.add(pj, V.scale(psi[j][t], V.index(wp.basis()[t])));
                }
                if (omega.value2(pi, pj) != A.neg(omega.value2(wi, wj)))
                    throw Error("lagrangian_graph_map: symplectomorphism identity fails");
            }
    }
    return psi;
}

}  // namespace loopcode
