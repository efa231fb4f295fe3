#include "loopcode/field.hpp"

#include <algorithm>
#include <numeric>

namespace loopcode {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; (long long)d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// polynomial helpers over F_p, little-endian coefficient vectors
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
    // m is monic of degree r given by low coeffs m[0..r-1]
    int r = (int)m.size();
    while ((int)a.size() > r) {
        int d = (int)a.size() - 1;
        int c = a[d];
        if (c) {
            for (int i = 0; i < r; ++i) {
                int& t = a[d - r + i];
                t = ((t - c * m[i]) % p + p) % p;
            }
        }
        a.pop_back();
    }
    a.resize(r, 0);
    return a;
}

std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
    std::vector<int> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return c;
}

int eval_poly(const std::vector<int>& low, int r, int x, int p) {
    // evaluate x^r + low(x) at x
    long long v = 1;
    for (int i = 0; i < r; ++i) v = v * x % p;
    long long acc = v, xp = 1;
    for (int i = 0; i < r; ++i) {
        acc = (acc + (long long)low[i] * xp) % p;
        xp = xp * x % p;
    }
    return (int)acc;
}

void check_irreducible(int p, int r, const std::vector<int>& low) {
    if (r > 4) throw Error("FieldSpec: modulus verification only implemented for r <= 4");
    if (r == 1) return;
    for (int x = 0; x < p; ++x)
        if (eval_poly(low, r, x, p) == 0) throw Error("FieldSpec: modulus has a root, not irreducible");
    if (r == 4) {
        // also rule out irreducible quadratic divisors
        for (int b = 0; b < p; ++b)
            for (int c = 0; c < p; ++c) {
                std::vector<int> qlow = {c, b};
                bool quad_irr = true;
                for (int x = 0; x < p && quad_irr; ++x)
                    if (eval_poly(qlow, 2, x, p) == 0) quad_irr = false;
                if (!quad_irr) continue;
                // divide x^4 + low(x) by x^2 + b x + c, test zero remainder
                std::vector<int> f(5, 0);
                f[4] = 1;
                for (int i = 0; i < 4; ++i) f[i] = low[i];
                std::vector<int> m = {c, b};
                std::vector<int> rem = poly_mod(f, m, p);
                if (std::all_of(rem.begin(), rem.end(), [](int v) { return v == 0; }))
                    throw Error("FieldSpec: modulus splits into quadratics, not irreducible");
            }
    }
}

std::vector<int> default_modulus(int p, int r) {
    switch (r) {
        case 1:
            return {1 % p};  // x + 1 (unused by arithmetic)
        case 2:
            if (p == 2) return {1, 1};      // x^2+x+1
            if (p == 3) return {1, 0};      // x^2+1
            if (p == 5) return {2, 0};      // x^2+2
            break;
        case 3:
            if (p == 2) return {1, 1, 0};   // x^3+x+1
            if (p == 3) return {1, 2, 0};   // x^3+2x+1
            break;
        case 4:
            if (p == 2) return {1, 1, 0, 0};  // x^4+x+1
            if (p == 3) return {2, 1, 0, 0};  // x^4+x+2
            break;
    }
    throw Error("FieldSpec: no default modulus shipped for this (p, r)");
}

}  // namespace

FieldSpec FieldSpec::prime_field(int p) { return make(p, 1); }

FieldSpec FieldSpec::make(int p, int r) { return make(p, r, default_modulus(p, r)); }

FieldSpec FieldSpec::make(int p, int r, std::vector<int> low) {
    if (!is_prime(p)) throw Error("FieldSpec: p is not prime");
    if (r < 1) throw Error("FieldSpec: r must be positive");
    if ((int)low.size() != r) throw Error("FieldSpec: modulus must list r low coefficients");
    for (int& c : low) c = ((c % p) + p) % p;
    check_irreducible(p, r, low);
    FieldSpec s;
    s.p = p;
    s.r = r;
    s.modulus = std::move(low);
    return s;
}

long long FieldSpec::q() const {
    long long v = 1;
    for (int i = 0; i < r; ++i) v *= p;
    return v;
}

Fq::Fq(FieldSpec spec) : spec_(std::move(spec)) {
    long long qq = spec_.q();
    if (qq > 4096) throw Error("Fq: table construction capped at q <= 4096");
    q_ = (int)qq;
    int p = spec_.p, r = spec_.r;
    add_.resize((size_t)q_ * q_);
    mul_.resize((size_t)q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    coeff_sum_.resize(q_);

    auto to_c = [&](int a) {
        std::vector<int> c(r);
        for (int i = 0; i < r; ++i) {
            c[i] = a % p;
            a /= p;
        }
        return c;
    };
    auto from_c = [&](const std::vector<int>& c) {
        int a = 0;
        for (int i = r - 1; i >= 0; --i) a = a * p + (c[i] % p + p) % p;
        return a;
    };

    for (int a = 0; a < q_; ++a) {
        auto ca = to_c(a);
        coeff_sum_[a] = std::accumulate(ca.begin(), ca.end(), 0) % p;
        std::vector<int> nc(r);
        for (int i = 0; i < r; ++i) nc[i] = (p - ca[i]) % p;
        neg_[a] = from_c(nc);
        for (int b = 0; b < q_; ++b) {
            auto cb = to_c(b);
            std::vector<int> s(r);
            for (int i = 0; i < r; ++i) s[i] = (ca[i] + cb[i]) % p;
            add_[a * q_ + b] = from_c(s);
            auto prod = poly_mod(poly_mul(ca, cb, p), spec_.modulus, p);
            mul_[a * q_ + b] = from_c(prod);
        }
    }
    for (int a = 1; a < q_; ++a)
        for (int b = 1; b < q_; ++b)
            if (mul_[a * q_ + b] == 1) {
                inv_[a] = b;
                break;
            }
    for (int a = 1; a < q_; ++a)
        if (inv_[a] == 0) throw Error("Fq: non-invertible nonzero element (modulus not irreducible?)");
}

int Fq::pow(int a, long long e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    int acc = 1;
    while (e) {
        if (e & 1) acc = mul(acc, a);
        a = mul(a, a);
        e >>= 1;
    }
    return acc;
}

std::vector<int> Fq::coeffs(int a) const {
    std::vector<int> c(spec_.r);
    for (int i = 0; i < spec_.r; ++i) {
        c[i] = a % spec_.p;
        a /= spec_.p;
    }
    return c;
}

int Fq::from_coeffs(const std::vector<int>& c) const {
    if ((int)c.size() != spec_.r) throw SpecMismatch();
    int a = 0;
    for (int i = spec_.r - 1; i >= 0; --i) a = a * spec_.p + ((c[i] % spec_.p) + spec_.p) % spec_.p;
    return a;
}

int Fq::of_int(long long n) const {
    int m = (int)(((n % spec_.p) + spec_.p) % spec_.p);
    return m;  // m * 1 in the prime subfield, canonical index equals m
}

std::string Fq::show(int a) const {
    if (spec_.r == 1) return std::to_string(a);
    auto c = coeffs(a);
    std::string s = "[";
    for (int i = 0; i < spec_.r; ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "]";
}

GaloisRing::GaloisRing(FieldSpec spec) : spec_(std::move(spec)) {
    if (spec_.p != 2) throw Error("GaloisRing: requires p = 2");
    int r = spec_.r;
    long long sz = 1;
    for (int i = 0; i < r; ++i) sz *= 4;
    if (sz > 4096) throw Error("GaloisRing: table construction capped at |R| <= 4096");
    size_ = (int)sz;

    auto to_c = [&](int a) {
        std::vector<int> c(r);
        for (int i = 0; i < r; ++i) {
            c[i] = a & 3;
            a >>= 2;
        }
        return c;
    };
    auto from_c = [&](const std::vector<int>& c) {
        int a = 0;
        for (int i = r - 1; i >= 0; --i) a = a * 4 + ((c[i] % 4) + 4) % 4;
        return a;
    };

    // least lift of the F_2 modulus, coefficients in {0,1}
    std::vector<int> mod4(spec_.modulus.begin(), spec_.modulus.end());

    add_.resize((size_t)size_ * size_);
    mul_.resize((size_t)size_ * size_);
    neg_.resize(size_);
    reduce_.resize(size_);
    char_exp_.resize(size_);
    for (int a = 0; a < size_; ++a) {
        auto ca = to_c(a);
        std::vector<int> nc(r);
        int fsum = 0, csum = 0;
        for (int i = 0; i < r; ++i) {
            nc[i] = (4 - ca[i]) % 4;
            csum = (csum + ca[i]) % 4;
        }
        (void)fsum;
        neg_[a] = from_c(nc);
        char_exp_[a] = csum;
        int red = 0;
        for (int i = r - 1; i >= 0; --i) red = red * 2 + (ca[i] & 1);
        reduce_[a] = red;
        for (int b = 0; b < size_; ++b) {
            auto cb = to_c(b);
            std::vector<int> s(r);
            for (int i = 0; i < r; ++i) s[i] = (ca[i] + cb[i]) % 4;
            add_[a * size_ + b] = from_c(s);
            auto prod = poly_mul(ca, cb, 4);
            prod = poly_mod(prod, mod4, 4);
            mul_[a * size_ + b] = from_c(prod);
        }
    }

    int qf = 1 << r;
    lift_.resize(qf);
    embed2_.resize(qf);
    for (int f = 0; f < qf; ++f) {
        std::vector<int> c(r);
        int t = f;
        for (int i = 0; i < r; ++i) {
            c[i] = t & 1;
            t >>= 1;
        }
        int lifted = from_c(c);
        lift_[f] = lifted;
        embed2_[f] = add(lifted, lifted);
    }
}

std::vector<int> GaloisRing::coeffs(int a) const {
    std::vector<int> c(spec_.r);
    for (int i = 0; i < spec_.r; ++i) {
        c[i] = a & 3;
        a >>= 2;
    }
    return c;
}

int GaloisRing::from_coeffs(const std::vector<int>& c) const {
    if ((int)c.size() != spec_.r) throw SpecMismatch();
    int a = 0;
    for (int i = spec_.r - 1; i >= 0; --i) a = a * 4 + ((c[i] % 4) + 4) % 4;
    return a;
}

int GaloisRing::from_coeffs_int(long long n) const {
    int m = (int)(((n % 4) + 4) % 4);
    return m;
}

int GaloisRing::halve_ideal(int a) const {
    if (!in_ideal2(a)) throw Error("GaloisRing: value not in the ideal 2R");
    for (int f = 0; f < (int)embed2_.size(); ++f)
        if (embed2_[f] == a) return f;
    throw Error("GaloisRing: internal halve_ideal failure");
}

std::string GaloisRing::show(int a) const {
    if (spec_.r == 1) return std::to_string(a);
    auto c = coeffs(a);
    std::string s = "[";
    for (int i = 0; i < spec_.r; ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "]";
}

Codomain Codomain::field(std::shared_ptr<const Fq> f) {
    Codomain c;
    c.kind_ = Kind::Field;
    c.fq_ = std::move(f);
    c.size_ = c.fq_->q();
    return c;
}

Codomain Codomain::ring(std::shared_ptr<const GaloisRing> rr) {
    Codomain c;
    c.kind_ = Kind::Ring;
    c.ring_ = std::move(rr);
    c.size_ = c.ring_->size();
    return c;
}

int Codomain::one() const { return 1; }

int Codomain::scale(int field_scalar, int v, const Fq& domain_field) const {
    if (!is_ring()) {
        // domain field must match the codomain field
        if (domain_field.spec() != fq_->spec()) throw SpecMismatch();
        return fq_->mul(field_scalar, v);
    }
    return ring_->mul(ring_->least_lift(field_scalar), v);
}

int Codomain::char_conductor() const { return is_ring() ? 4 : fq_->p(); }

int Codomain::char_exp(int a) const { return is_ring() ? ring_->char_exp(a) : fq_->coeff_sum(a); }

bool Codomain::same_as(const Codomain& o) const {
    if (kind_ != o.kind_) return false;
    return is_ring() ? ring_->field_spec() == o.ring_->field_spec() : fq_->spec() == o.fq_->spec();
}

}  // namespace loopcode
