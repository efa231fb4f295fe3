#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopcode {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};
struct DivisionByZero : Error {
    DivisionByZero() : Error("DivisionByZero") {}
};
struct SpecMismatch : Error {
    SpecMismatch() : Error("SpecMismatch") {}
};
struct EnumerationBoundExceeded : Error {
    explicit EnumerationBoundExceeded(const std::string& d = "EnumerationBoundExceeded") : Error(d) {}
};

// Description of F_{p^r}: prime p, degree r, monic modulus x^r + m[r-1] x^{r-1} + ... + m[0].
// Irreducibility is verified at construction for r <= 4 (roots, plus quadratic divisors for r = 4).
struct FieldSpec {
    int p = 2;
    int r = 1;
    std::vector<int> modulus;  // low coefficients m[0..r-1], reduced mod p

    static FieldSpec prime_field(int p);
    static FieldSpec make(int p, int r);                              // shipped default modulus
    static FieldSpec make(int p, int r, std::vector<int> modulus_low);
    long long q() const;
    bool operator==(const FieldSpec& o) const { return p == o.p && r == o.r && modulus == o.modulus; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }
};

// Arithmetic context for F_q, element = canonical index in [0, q):
// index = c0 + c1*p + ... + c_{r-1}*p^{r-1} over the polynomial basis.
class Fq {
  public:
    explicit Fq(FieldSpec spec);

    const FieldSpec& spec() const { return spec_; }
    int p() const { return spec_.p; }
    int r() const { return spec_.r; }
    int q() const { return q_; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int inv(int a) const {
        if (a == 0) throw DivisionByZero();
        return inv_[a];
    }
    int div(int a, int b) const { return mul(a, inv(b)); }
    int pow(int a, long long e) const;

    std::vector<int> coeffs(int a) const;          // length r, base-p digits
    int from_coeffs(const std::vector<int>& c) const;
    int of_int(long long n) const;                 // image of n·1
    // Sum of polynomial-basis coefficients mod p; additive in a, used for characters.
    int coeff_sum(int a) const { return coeff_sum_[a]; }

    std::string show(int a) const;

  private:
    FieldSpec spec_;
    int q_;
    std::vector<int> add_, mul_, neg_, inv_, coeff_sum_;
};

// Galois ring GR(4, r) = Z4[x]/(f~), f~ the entrywise least lift of an F_2 modulus.
// Element = canonical index: c0 + c1*4 + ... with c_i in {0,1,2,3}.
class GaloisRing {
  public:
    explicit GaloisRing(FieldSpec spec);  // requires p == 2

    const FieldSpec& field_spec() const { return spec_; }
    int r() const { return spec_.r; }
    int size() const { return size_; }

    int add(int a, int b) const { return add_[a * size_ + b]; }
    int sub(int a, int b) const { return add_[a * size_ + neg_[b]]; }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[a * size_ + b]; }

    std::vector<int> coeffs(int a) const;  // length r, mod-4 digits
    int from_coeffs(const std::vector<int>& c) const;
    int of_int(long long n) const { return from_coeffs_int(n); }

    // Reduction map GR(4,r) -> F_{2^r} (mod 2); ring homomorphism.
    int reduce(int a) const { return reduce_[a]; }
    // 2 * (least lift), landing in the ideal 2R; additive in the field argument.
    int embed2(int field_elem) const { return embed2_[field_elem]; }
    int least_lift(int field_elem) const { return lift_[field_elem]; }
    bool in_ideal2(int a) const { return reduce_[a] == 0; }
    // Inverse of 2·(-): the unique c in F_{2^r} with embed2(c) == a; requires a in 2R.
    int halve_ideal(int a) const;
    // Additive character value exponent mod 4 (chi(x) = i^exponent, chi(1) = i).
    int char_exp(int a) const { return char_exp_[a]; }

    std::string show(int a) const;

  private:
    FieldSpec spec_;
    int size_;
    std::vector<int> add_, mul_, neg_, reduce_, embed2_, lift_, char_exp_;
    int from_coeffs_int(long long n) const;
};

// Uniform index arithmetic over the two codomains a form can take values in.
class Codomain {
  public:
    enum class Kind { Field, Ring };

    static Codomain field(std::shared_ptr<const Fq> f);
    static Codomain ring(std::shared_ptr<const GaloisRing> rr);

    Kind kind() const { return kind_; }
    bool is_ring() const { return kind_ == Kind::Ring; }
    int size() const { return size_; }
    int zero() const { return 0; }
    int one() const;

    int add(int a, int b) const { return is_ring() ? ring_->add(a, b) : fq_->add(a, b); }
    int sub(int a, int b) const { return is_ring() ? ring_->sub(a, b) : fq_->sub(a, b); }
    int neg(int a) const { return is_ring() ? ring_->neg(a) : fq_->neg(a); }
    int mul(int a, int b) const { return is_ring() ? ring_->mul(a, b) : fq_->mul(a, b); }

    // Scalar action of the domain field on codomain values: field multiplication for a
    // field codomain, least-lift multiplication for the ring (exact for r = 1).
    int scale(int field_scalar, int v, const Fq& domain_field) const;

    bool in_ideal2(int a) const { return is_ring() && ring_->in_ideal2(a); }
    const Fq& fq() const { return *fq_; }
    const GaloisRing& ring() const { return *ring_; }
    std::shared_ptr<const Fq> fq_ptr() const { return fq_; }
    std::shared_ptr<const GaloisRing> ring_ptr() const { return ring_; }

    // Character exponent conductor: p for a field codomain, 4 for the ring.
    int char_conductor() const;
    // chi(a) = zeta_m^{char_exp(a)} with chi(1) = zeta_m; additive in a.
    int char_exp(int a) const;

    std::string show(int a) const { return is_ring() ? ring_->show(a) : fq_->show(a); }
    bool same_as(const Codomain& o) const;

  private:
    Kind kind_ = Kind::Field;
    int size_ = 0;
    std::shared_ptr<const Fq> fq_;
    std::shared_ptr<const GaloisRing> ring_;
};

}  // namespace loopcode
