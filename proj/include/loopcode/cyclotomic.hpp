#pragma once

#include <complex>
#include <vector>

#include "loopcode/bigint.hpp"
#include "loopcode/field.hpp"

namespace loopcode {

// Element of Q(zeta_m), m in {1,2,3,4,5}: rational coefficients over the power
// basis 1, zeta, ..., zeta^{phi(m)-1}, reduced by the m-th cyclotomic polynomial.
class Cyc {
  public:
    Cyc() : m_(1), c_(1, BigRational(0)) {}
    explicit Cyc(int m) : m_(m), c_(degree(m), BigRational(0)) {}
    Cyc(int m, long long rational) : Cyc(m) { c_[0] = BigRational(rational); }
    Cyc(int m, BigRational rational) : Cyc(m) { c_[0] = std::move(rational); }

    static int degree(int m);            // phi(m)
    static Cyc root(int m, int power);   // zeta_m^power (power reduced mod m)
    static Cyc rational(int m, BigRational r) { return Cyc(m, std::move(r)); }

    int conductor() const { return m_; }
    const std::vector<BigRational>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    BigRational rational_part() const { return c_[0]; }

    Cyc operator-() const;
    Cyc operator+(const Cyc& o) const;
    Cyc operator-(const Cyc& o) const;
    Cyc operator*(const Cyc& o) const;
    Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
    Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
    Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
    Cyc operator*(const BigRational& r) const;
    bool operator==(const Cyc& o) const { return m_ == o.m_ && c_ == o.c_; }
    bool operator!=(const Cyc& o) const { return !(*this == o); }

    Cyc conj() const;        // complex conjugation: zeta -> zeta^{m-1}
    Cyc inverse() const;     // throws on zero
    Cyc norm_sq() const { return *this * conj(); }  // |z|^2, fixed by conjugation

    std::complex<double> to_complex() const;
    std::string str() const;

  private:
    int m_;
    std::vector<BigRational> c_;
    static std::vector<BigRational> reduce(int m, std::vector<BigRational> poly);
};

using CycVector = std::vector<Cyc>;
using CycMatrix = std::vector<std::vector<Cyc>>;

Cyc inner_product(const CycVector& a, const CycVector& b);  // sum conj(a_i) b_i
bool vector_is_zero(const CycVector& v);

CycMatrix mat_mul(const CycMatrix& a, const CycMatrix& b);
CycMatrix mat_add(const CycMatrix& a, const CycMatrix& b);
CycMatrix mat_scale(const CycMatrix& a, const Cyc& s);
CycMatrix identity_matrix(int n, int m_conductor);
bool mat_equal(const CycMatrix& a, const CycMatrix& b);
CycVector mat_apply(const CycMatrix& a, const CycVector& v);

// Rank via exact Gaussian elimination; optionally returns a basis of the column image.
int matrix_rank(CycMatrix a);
std::vector<CycVector> column_image_basis(const CycMatrix& a);
// Exact Gram-Schmidt (orthogonal, not orthonormal: no square roots over Q(zeta)).
std::vector<CycVector> gram_schmidt(const std::vector<CycVector>& vs);

}  // namespace loopcode
