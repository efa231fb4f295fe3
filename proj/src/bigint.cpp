#include "loopcode/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace loopcode {

BigInt::BigInt(long long v) {
    neg_ = v < 0;
    unsigned long long u = neg_ ? -(unsigned long long)v : (unsigned long long)v;
    while (u) {
        mag_.push_back((uint32_t)(u & 0xffffffffu));
        u >>= 32;
    }
}

BigInt BigInt::from_string(const std::string& s) {
    BigInt r;
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    if (i == s.size()) throw std::invalid_argument("BigInt: empty string");
    BigInt ten(10);
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
        r = r * ten + BigInt(s[i] - '0');
    }
    if (neg && !r.is_zero()) r.neg_ = true;
    return r;
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) neg_ = false;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(std::max(a.size(), b.size()) + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        r[i] = (uint32_t)(s & 0xffffffffu);
        carry = s >> 32;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// requires |a| >= |b|
std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = (int64_t)a[i] - borrow - (i < b.size() ? (int64_t)b[i] : 0);
        if (s < 0) {
            s += ((int64_t)1 << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = (uint32_t)s;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = (uint64_t)a[i] * b[j] + r[i + j] + carry;
            r[i + j] = (uint32_t)(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t cur = r[k] + carry;
            r[k] = (uint32_t)(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// schoolbook long division on magnitudes
void BigInt::divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    if (b.empty()) throw std::domain_error("BigInt: division by zero");
    q.clear();
    r.clear();
    if (cmp_mag(a, b) < 0) {
        r = a;
        return;
    }
    if (b.size() == 1) {
        uint64_t d = b[0], rem = 0;
        q.assign(a.size(), 0);
        for (size_t i = a.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | a[i];
            q[i] = (uint32_t)(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        if (rem) r.push_back((uint32_t)rem);
        return;
    }
    // bitwise restoring division; magnitudes here stay small in practice
    size_t bits = a.size() * 32;
    std::vector<uint32_t> rem;
    q.assign(a.size(), 0);
    for (size_t i = bits; i-- > 0;) {
        // rem = rem*2 + bit_i(a)
        uint32_t carry = (a[i / 32] >> (i % 32)) & 1u;
        for (size_t k = 0; k < rem.size(); ++k) {
            uint32_t nc = rem[k] >> 31;
            rem[k] = (rem[k] << 1) | carry;
            carry = nc;
        }
        if (carry) rem.push_back(carry);
        if (cmp_mag(rem, b) >= 0) {
            rem = sub_mag(rem, b);
            q[i / 32] |= (1u << (i % 32));
        }
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    r = rem;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.mag_.empty()) r.neg_ = !r.neg_;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    BigInt r;
    if (neg_ == o.neg_) {
        r.mag_ = add_mag(mag_, o.mag_);
        r.neg_ = neg_;
    } else {
        int c = cmp_mag(mag_, o.mag_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.mag_ = sub_mag(mag_, o.mag_);
            r.neg_ = neg_;
        } else {
            r.mag_ = sub_mag(o.mag_, mag_);
            r.neg_ = o.neg_;
        }
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    BigInt r;
    r.mag_ = mul_mag(mag_, o.mag_);
    r.neg_ = !r.mag_.empty() && (neg_ != o.neg_);
    return r;
}

BigInt BigInt::operator/(const BigInt& o) const {
    std::vector<uint32_t> q, rem;
    divmod_mag(mag_, o.mag_, q, rem);
    BigInt r;
    r.mag_ = q;
    r.neg_ = !q.empty() && (neg_ != o.neg_);
    return r;
}

BigInt BigInt::operator%(const BigInt& o) const {
    std::vector<uint32_t> q, rem;
    divmod_mag(mag_, o.mag_, q, rem);
    BigInt r;
    r.mag_ = rem;
    r.neg_ = !rem.empty() && neg_;
    return r;
}

bool BigInt::operator<(const BigInt& o) const {
    if (neg_ != o.neg_) return neg_;
    int c = cmp_mag(mag_, o.mag_);
    return neg_ ? c > 0 : c < 0;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.neg_ = false;
    b.neg_ = false;
    while (!b.is_zero()) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool BigInt::fits_ll() const {
    if (mag_.size() > 2) return false;
    unsigned long long u = 0;
    for (size_t i = mag_.size(); i-- > 0;) u = (u << 32) | mag_[i];
    return neg_ ? u <= 0x8000000000000000ull : u <= 0x7fffffffffffffffull;
}

long long BigInt::to_ll() const {
    if (!fits_ll()) throw std::overflow_error("BigInt: does not fit long long");
    unsigned long long u = 0;
    for (size_t i = mag_.size(); i-- > 0;) u = (u << 32) | mag_[i];
    return neg_ ? -(long long)u : (long long)u;
}

std::string BigInt::str() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> m = mag_;
    std::string digits;
    while (!m.empty()) {
        uint64_t rem = 0;
        for (size_t i = m.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | m[i];
            m[i] = (uint32_t)(cur / 10);
            rem = cur % 10;
        }
        while (!m.empty() && m.back() == 0) m.pop_back();
        digits.push_back((char)('0' + rem));
    }
    if (neg_) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

BigRational::BigRational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("BigRational: zero denominator");
    normalize();
}

void BigRational::normalize() {
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    num_ = num_ / g;
    den_ = den_ / g;
}

BigRational BigRational::operator-() const {
    BigRational r = *this;
    r.num_ = -r.num_;
    return r;
}

BigRational BigRational::operator+(const BigRational& o) const {
    return BigRational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

BigRational BigRational::operator-(const BigRational& o) const {
    return BigRational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

BigRational BigRational::operator*(const BigRational& o) const {
    return BigRational(num_ * o.num_, den_ * o.den_);
}

BigRational BigRational::operator/(const BigRational& o) const {
    if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
    return BigRational(num_ * o.den_, den_ * o.num_);
}

bool BigRational::operator<(const BigRational& o) const { return (num_ * o.den_) < (o.num_ * den_); }

double BigRational::to_double() const {
    // good enough for desk-scale magnitudes; exact path never uses this
    double n = 0, d = 0;
    try {
        n = (double)num_.to_ll();
        d = (double)den_.to_ll();
    } catch (const std::overflow_error&) {
        long double ln = 0;
        for (char c : num_.str())
            if (c != '-') ln = ln * 10 + (c - '0');
        if (num_.sign() < 0) ln = -ln;
        long double ld = 0;
        for (char c : den_.str()) ld = ld * 10 + (c - '0');
        return (double)(ln / ld);
    }
    return n / d;
}

std::string BigRational::str() const {
    if (den_ == BigInt(1)) return num_.str();
    return num_.str() + "/" + den_.str();
}

}  // namespace loopcode
