#include "loopcode/identities.hpp"

namespace loopcode {

namespace {

BigRational reduce_p(const BigRational& v, int p) {
    if (p == 0) return v;
    // rational with denominator coprime to p reduced into {0..p-1}
    BigInt pp(p);
    BigInt num = v.num() % pp;
    BigInt den = v.den() % pp;
    if (den.is_zero()) throw Error("BilinearOp: denominator divisible by p");
    // den inverse mod p by brute force (p is small)
    long long d = ((den.to_ll() % p) + p) % p;
    long long n = ((num.to_ll() % p) + p) % p;
    long long dinv = 0;
    for (long long t = 1; t < p; ++t)
        if (t * d % p == 1) {
            dinv = t;
            break;
        }
    return BigRational((n * dinv) % p);
}

AlgVec add_vec(const AlgVec& a, const AlgVec& b, int p) {
    AlgVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = reduce_p(a[i] + b[i], p);
    return r;
}

AlgVec sub_vec(const AlgVec& a, const AlgVec& b, int p) {
    AlgVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = reduce_p(a[i] - b[i], p);
    return r;
}

}  // namespace

BilinearOp BilinearOp::zero(int dim, int p) {
    BilinearOp op;
    op.dim = dim;
    op.p = p;
    op.c.assign(dim, std::vector<std::vector<BigRational>>(dim, std::vector<BigRational>(dim, BigRational(0))));
    return op;
}

void BilinearOp::set(int i, int j, int k, BigRational v) { c[i][j][k] = std::move(v); }

IdentityCheck BilinearOp::validate() const {
    IdentityCheck r;
    if ((int)c.size() != dim) {
        r.ok = false;
        r.note = "dimension mismatch";
        return r;
    }
    for (const auto& a : c) {
        if ((int)a.size() != dim) {
            r.ok = false;
            r.note = "dimension mismatch";
            return r;
        }
        for (const auto& b : a)
            if ((int)b.size() != dim) {
                r.ok = false;
                r.note = "dimension mismatch";
                return r;
            }
    }
    return r;
}

AlgVec apply_op(const BilinearOp& op, const AlgVec& x, const AlgVec& y) {
    AlgVec r(op.dim, BigRational(0));
    for (int i = 0; i < op.dim; ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < op.dim; ++j) {
            if (y[j].is_zero()) continue;
            BigRational f = x[i] * y[j];
            for (int k = 0; k < op.dim; ++k)
                if (!op.c[i][j][k].is_zero()) r[k] = reduce_p(r[k] + f * op.c[i][j][k], op.p);
        }
    }
    return r;
}

AlgVec basis_vec(int dim, int i) {
    AlgVec v(dim, BigRational(0));
    v[i] = BigRational(1);
    return v;
}

bool vec_zero(const AlgVec& v, int p) {
    for (const auto& x : v)
        if (!reduce_p(x, p).is_zero()) return false;
    return true;
}

AlgVec malcev_lhs(const BilinearOp& b, const AlgVec& x, const AlgVec& y, const AlgVec& z) {
    return apply_op(b, apply_op(b, x, y), apply_op(b, x, z));
}

AlgVec malcev_rhs(const BilinearOp& b, const AlgVec& x, const AlgVec& y, const AlgVec& z) {
    AlgVec t1 = apply_op(b, apply_op(b, apply_op(b, x, y), z), x);
    AlgVec t2 = apply_op(b, apply_op(b, apply_op(b, y, z), x), x);
    AlgVec t3 = apply_op(b, apply_op(b, apply_op(b, z, x), x), y);
    return add_vec(add_vec(t1, t2, b.p), t3, b.p);
}

namespace {

bool antisymmetric(const BilinearOp& b) {
    int d = b.dim;
    for (int i = 0; i < d; ++i) {
        // alternating on the diagonal
        if (!vec_zero(apply_op(b, basis_vec(d, i), basis_vec(d, i)), b.p)) return false;
        for (int j = 0; j < d; ++j) {
            AlgVec s = add_vec(apply_op(b, basis_vec(d, i), basis_vec(d, j)),
                               apply_op(b, basis_vec(d, j), basis_vec(d, i)), b.p);
            if (!vec_zero(s, b.p)) return false;
        }
    }
    return true;
}

bool jacobi(const BilinearOp& b) {
    int d = b.dim;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                AlgVec x = basis_vec(d, i), y = basis_vec(d, j), z = basis_vec(d, k);
                AlgVec s = add_vec(apply_op(b, apply_op(b, x, y), z),
                                   add_vec(apply_op(b, apply_op(b, y, z), x),
                                           apply_op(b, apply_op(b, z, x), y), b.p),
                                   b.p);
                if (!vec_zero(s, b.p)) return false;
            }
    return true;
}

}  // namespace

IdentityCheck check_malcev(const BilinearOp& bracket) {
    if (!antisymmetric(bracket)) throw NotAntisymmetric();
    IdentityCheck res;
    int d = bracket.dim;
    // x runs over basis vectors and pairwise sums of basis vectors
    std::vector<AlgVec> xs;
    for (int i = 0; i < d; ++i) xs.push_back(basis_vec(d, i));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) xs.push_back(add_vec(basis_vec(d, i), basis_vec(d, j), bracket.p));
    for (int xi = 0; xi < (int)xs.size(); ++xi)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                AlgVec y = basis_vec(d, j), z = basis_vec(d, k);
                AlgVec l = malcev_lhs(bracket, xs[xi], y, z);
                AlgVec r = malcev_rhs(bracket, xs[xi], y, z);
                if (!vec_zero(sub_vec(l, r, bracket.p), bracket.p)) {
                    res.ok = false;
                    res.witness = {xi, j, k};
                    res.note = "Malcev identity fails";
                    return res;
                }
            }
    return res;
}

namespace {

AlgVec poisson(const BilinearOp& circ, const BilinearOp& br, const AlgVec& x, const AlgVec& z,
               const AlgVec& w) {
    AlgVec t = apply_op(br, x, apply_op(circ, z, w));
    t = sub_vec(t, apply_op(circ, apply_op(br, x, z), w), br.p);
    t = sub_vec(t, apply_op(circ, z, apply_op(br, x, w)), br.p);
    return t;
}

}  // namespace

IdentityCheck check_f_identity(const BilinearOp& circ, const BilinearOp& bracket) {
    int d = circ.dim;
    if (bracket.dim != d || bracket.p != circ.p) throw SpecMismatch();
    // circ commutative and associative
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            AlgVec x = basis_vec(d, i), y = basis_vec(d, j);
            if (!vec_zero(sub_vec(apply_op(circ, x, y), apply_op(circ, y, x), circ.p), circ.p))
                throw CircNotCommAssoc();
            for (int k = 0; k < d; ++k) {
                AlgVec z = basis_vec(d, k);
                AlgVec a = apply_op(circ, apply_op(circ, x, y), z);
                AlgVec b = apply_op(circ, x, apply_op(circ, y, z));
                if (!vec_zero(sub_vec(a, b, circ.p), circ.p)) throw CircNotCommAssoc();
            }
        }
    if (!antisymmetric(bracket) || !jacobi(bracket)) throw BracketNotLie();

    IdentityCheck res;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    AlgVec x = basis_vec(d, i), y = basis_vec(d, j), z = basis_vec(d, k),
                           w = basis_vec(d, l);
                    AlgVec lhs = poisson(circ, bracket, apply_op(circ, x, y), z, w);
                    AlgVec rhs = add_vec(apply_op(circ, x, poisson(circ, bracket, y, z, w)),
                                         apply_op(circ, y, poisson(circ, bracket, x, z, w)), circ.p);
                    if (!vec_zero(sub_vec(lhs, rhs, circ.p), circ.p)) {
                        res.ok = false;
                        res.witness = {i, j, k, l};
                        res.note = "F-identity fails";
                        return res;
                    }
                }
    return res;
}

BilinearOp sl2_bracket() {
    // basis (h, e, f)
    BilinearOp b = BilinearOp::zero(3);
    b.set(0, 1, 1, BigRational(2));    // [h,e] = 2e
    b.set(1, 0, 1, BigRational(-2));
    b.set(0, 2, 2, BigRational(-2));   // [h,f] = -2f
    b.set(2, 0, 2, BigRational(2));
    b.set(1, 2, 0, BigRational(1));    // [e,f] = h
    b.set(2, 1, 0, BigRational(-1));
    return b;
}

}  // namespace loopcode
