#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace loopcode {

// Arbitrary-precision signed integer, sign + base-2^32 magnitude.
// Only what exact rational arithmetic needs: ring ops, divmod, gcd, compare.
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long v);
    static BigInt from_string(const std::string& s);

    bool is_zero() const { return mag_.empty(); }
    bool is_negative() const { return neg_; }
    int sign() const { return mag_.empty() ? 0 : (neg_ ? -1 : 1); }

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    BigInt operator/(const BigInt& o) const;  // truncated quotient
    BigInt operator%(const BigInt& o) const;

    bool operator==(const BigInt& o) const { return neg_ == o.neg_ && mag_ == o.mag_; }
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;

    static BigInt gcd(BigInt a, BigInt b);  // nonnegative

    // Exact conversion; throws if out of range.
    long long to_ll() const;
    bool fits_ll() const;
    std::string str() const;

  private:
    bool neg_ = false;
    std::vector<uint32_t> mag_;  // little-endian limbs, no trailing zeros

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);
    void trim();
};

// Exact rational with canonical form: den > 0, gcd(num, den) = 1.
class BigRational {
  public:
    BigRational() : num_(0), den_(1) {}
    BigRational(long long v) : num_(v), den_(1) {}
    BigRational(BigInt n, BigInt d);
    static BigRational of(long long n, long long d) { return BigRational(BigInt(n), BigInt(d)); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    BigRational operator-() const;
    BigRational operator+(const BigRational& o) const;
    BigRational operator-(const BigRational& o) const;
    BigRational operator*(const BigRational& o) const;
    BigRational operator/(const BigRational& o) const;
    BigRational& operator+=(const BigRational& o) { return *this = *this + o; }
    BigRational& operator-=(const BigRational& o) { return *this = *this - o; }
    BigRational& operator*=(const BigRational& o) { return *this = *this * o; }

    bool operator==(const BigRational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const BigRational& o) const { return !(*this == o); }
    bool operator<(const BigRational& o) const;

    double to_double() const;
    std::string str() const;

  private:
    BigInt num_, den_;
    void normalize();
};

}  // namespace loopcode
