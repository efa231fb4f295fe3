#include "loopcode/pauli.hpp"

namespace loopcode {

MonomialOp MonomialOp::identity(int dim, int m) {
    MonomialOp op;
    op.dim = dim;
    op.m = m;
    op.perm.resize(dim);
    op.phase.assign(dim, 0);
    for (int i = 0; i < dim; ++i) op.perm[i] = i;
    return op;
}

MonomialOp MonomialOp::then(const MonomialOp& second) const {
    if (dim != second.dim || m != second.m) throw SpecMismatch();
    MonomialOp r;
    r.dim = dim;
    r.m = m;
    r.perm.resize(dim);
    r.phase.resize(dim);
    for (int j = 0; j < dim; ++j) {
        r.perm[j] = second.perm[perm[j]];
        r.phase[j] = (phase[j] + second.phase[perm[j]]) % m;
    }
    return r;
}

MonomialOp MonomialOp::dagger() const {
    MonomialOp r;
    r.dim = dim;
    r.m = m;
    r.perm.resize(dim);
    r.phase.resize(dim);
    for (int j = 0; j < dim; ++j) {
        r.perm[perm[j]] = j;
        r.phase[perm[j]] = (m - phase[j]) % m;
    }
    return r;
}

MonomialOp MonomialOp::scaled(int phase_exp) const {
    MonomialOp r = *this;
    for (int& ph : r.phase) ph = (ph + phase_exp) % m;
    return r;
}

bool MonomialOp::operator==(const MonomialOp& o) const {
    return dim == o.dim && m == o.m && perm == o.perm && phase == o.phase;
}

Cyc MonomialOp::trace() const {
    Cyc t(m);
    for (int j = 0; j < dim; ++j)
        if (perm[j] == j) t += Cyc::root(m, phase[j]);
    return t;
}

CycMatrix MonomialOp::to_matrix() const {
    CycMatrix a(dim, std::vector<Cyc>(dim, Cyc(m)));
    for (int j = 0; j < dim; ++j) a[perm[j]][j] = Cyc::root(m, phase[j]);
    return a;
}

CycVector MonomialOp::apply(const CycVector& v) const {
    CycVector r(dim, Cyc(m));
    for (int j = 0; j < dim; ++j)
        if (!v[j].is_zero()) r[perm[j]] = Cyc::root(m, phase[j]) * v[j];
    return r;
}

bool MonomialOp::commutes_with(const MonomialOp& o) const { return then(o) == o.then(*this); }

PauliContext::PauliContext(FieldSpec spec, int n, long long dim_bound) : spec_(std::move(spec)), n_(n) {
    F_ = std::make_shared<Fq>(spec_);
    dim_ = 1;
    for (int i = 0; i < n * spec_.r; ++i) {
        dim_ *= spec_.p;
        if (dim_ > dim_bound) throw DimensionBoundExceeded();
    }
    coords_ = VSpace(F_, n);
}

MonomialOp PauliContext::T_single() const {
    // ones on the superdiagonal: T|x> = |x-1>, so that TR = zeta RT
    MonomialOp t = MonomialOp::identity(spec_.p, spec_.p);
    for (int j = 0; j < spec_.p; ++j) t.perm[j] = (j + spec_.p - 1) % spec_.p;
    return t;
}

MonomialOp PauliContext::R_single() const {
    MonomialOp r = MonomialOp::identity(spec_.p, spec_.p);
    for (int j = 0; j < spec_.p; ++j) r.phase[j] = j;
    return r;
}

MonomialOp PauliContext::error_op(long long a, long long b) const {
    // per p-digit: shift by a-digit, phase zeta^{b_digit * x_digit}
    const int p = spec_.p;
    int digits = n_ * spec_.r;
    std::vector<int> ad(digits), bd(digits);
    {
        long long ta = a, tb = b;
        for (int i = 0; i < n_; ++i) {
            int ca = (int)(ta % q());
            int cb = (int)(tb % q());
            ta /= q();
            tb /= q();
            auto fa = F_->coeffs(ca), fb = F_->coeffs(cb);
            for (int j = 0; j < spec_.r; ++j) {
                ad[i * spec_.r + j] = fa[j];
                bd[i * spec_.r + j] = fb[j];
            }
        }
    }
    MonomialOp op;
    op.dim = (int)dim_;
    op.m = p;
    op.perm.resize(op.dim);
    op.phase.resize(op.dim);
    for (int x = 0; x < op.dim; ++x) {
        int t = x, ph = 0;
        long long img = 0, mult = 1;
        for (int i = 0; i < digits; ++i) {
            int xd = t % p;
            t /= p;
            ph = (ph + bd[i] * xd) % p;
            img += (long long)((xd - ad[i] + p) % p) * mult;
            mult *= p;
        }
        op.perm[x] = (int)img;
        op.phase[x] = ph;
    }
    return op;
}

int PauliContext::weight(long long a, long long b) const {
    int w = 0;
    long long ta = a, tb = b;
    for (int i = 0; i < n_; ++i) {
        if (ta % q() != 0 || tb % q() != 0) ++w;
        ta /= q();
        tb /= q();
    }
    return w;
}

GramReport error_basis_gram(const PauliContext& ctx) {
    GramReport rep;
    rep.diagonal_value = Cyc(ctx.conductor(), ctx.dim());
    long long qn = 1;
    for (int i = 0; i < ctx.n(); ++i) qn *= ctx.q();
    for (long long a = 0; a < qn; ++a)
        for (long long b = 0; b < qn; ++b) {
            MonomialOp e = ctx.error_op(a, b);
            for (long long a2 = 0; a2 < qn; ++a2)
                for (long long b2 = 0; b2 < qn; ++b2) {
                    MonomialOp e2 = ctx.error_op(a2, b2);
                    Cyc t = e.dagger().then(e2).trace();
                    if (a == a2 && b == b2) {
                        if (t != rep.diagonal_value) {
                            rep.diagonal_ok = false;
                            rep.witness = {a, b, a2, b2};
                            return rep;
                        }
                    } else if (!t.is_zero()) {
                        rep.offdiag_ok = false;
                        rep.witness = {a, b, a2, b2};
                        return rep;
                    }
                }
        }
    return rep;
}

}  // namespace loopcode
