#include "loopcode/cyclotomic.hpp"

#include <cmath>

namespace loopcode {

namespace {

// m-th cyclotomic polynomial, low coefficients (monic of degree phi(m)), m <= 5
std::vector<long long> cyclotomic_poly_low(int m) {
    switch (m) {
        case 1:
            return {-1};           // x - 1
        case 2:
            return {1};            // x + 1
        case 3:
            return {1, 1};         // x^2 + x + 1
        case 4:
            return {1, 0};         // x^2 + 1
        case 5:
            return {1, 1, 1, 1};   // x^4 + x^3 + x^2 + x + 1
        default:
            throw Error("Cyc: conductor must be in {1,2,3,4,5}");
    }
}

}  // namespace

int Cyc::degree(int m) { return (int)cyclotomic_poly_low(m).size(); }

std::vector<BigRational> Cyc::reduce(int m, std::vector<BigRational> poly) {
    auto low = cyclotomic_poly_low(m);
    int deg = (int)low.size();
    while ((int)poly.size() > deg) {
        BigRational lead = poly.back();
        int d = (int)poly.size() - 1;
        poly.pop_back();
        if (!lead.is_zero())
            for (int i = 0; i < deg; ++i) poly[d - deg + i] -= lead * BigRational(low[i]);
    }
    poly.resize(deg, BigRational(0));
    return poly;
}

Cyc Cyc::root(int m, int power) {
    power = ((power % m) + m) % m;
    std::vector<BigRational> poly(power + 1, BigRational(0));
    poly[power] = BigRational(1);
    Cyc z(m);
    z.c_ = reduce(m, std::move(poly));
    return z;
}

bool Cyc::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

bool Cyc::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

Cyc Cyc::operator-() const {
    Cyc r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyc Cyc::operator+(const Cyc& o) const {
    if (m_ != o.m_) throw SpecMismatch();
    Cyc r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator*(const Cyc& o) const {
    if (m_ != o.m_) throw SpecMismatch();
    std::vector<BigRational> poly(c_.size() + o.c_.size() - 1, BigRational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            if (!o.c_[j].is_zero()) poly[i + j] += c_[i] * o.c_[j];
    }
    Cyc r(m_);
    r.c_ = reduce(m_, std::move(poly));
    return r;
}

Cyc Cyc::operator*(const BigRational& s) const {
    Cyc r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

Cyc Cyc::conj() const {
    // zeta^k -> zeta^(m-k)
    Cyc r(m_);
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        r += Cyc::root(m_, (int)((m_ - (int)k) % m_)) * c_[k];
    }
    return r;
}

Cyc Cyc::inverse() const {
    if (is_zero()) throw DivisionByZero();
    // solve (this) * x = 1 as a linear system over Q in the power basis
    int d = (int)c_.size();
    // columns: this * zeta^j expressed in the basis
    std::vector<std::vector<BigRational>> a(d, std::vector<BigRational>(d + 1, BigRational(0)));
    for (int j = 0; j < d; ++j) {
        Cyc col = *this * Cyc::root(m_, j);
        for (int i = 0; i < d; ++i) a[i][j] = col.c_[i];
    }
    a[0][d] = BigRational(1);
    // gaussian elimination
    int rank = 0;
    std::vector<int> pivot_col(d, -1);
    for (int col = 0; col < d && rank < d; ++col) {
        int piv = -1;
        for (int r2 = rank; r2 < d; ++r2)
            if (!a[r2][col].is_zero()) {
                piv = r2;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        BigRational inv = BigRational(1) / a[rank][col];
        for (int j = 0; j <= d; ++j) a[rank][j] *= inv;
        for (int r2 = 0; r2 < d; ++r2) {
            if (r2 == rank || a[r2][col].is_zero()) continue;
            BigRational f = a[r2][col];
            for (int j = 0; j <= d; ++j) a[r2][j] -= f * a[rank][j];
        }
        pivot_col[rank] = col;
        ++rank;
    }
    if (rank != d) throw Error("Cyc: inverse system singular (zero divisor?)");
    Cyc x(m_);
    for (int r2 = 0; r2 < d; ++r2) x.c_[pivot_col[r2]] = a[r2][d];
    return x;
}

std::complex<double> Cyc::to_complex() const {
    std::complex<double> z(0, 0);
    for (size_t k = 0; k < c_.size(); ++k) {
        double ang = 2.0 * M_PI * (double)k / (double)m_;
        z += c_[k].to_double() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return z;
}

std::string Cyc::str() const {
    std::string s = "[";
    for (size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + c_[i].str();
    return s + "]@z" + std::to_string(m_);
}

Cyc inner_product(const CycVector& a, const CycVector& b) {
    if (a.size() != b.size()) throw SpecMismatch();
    if (a.empty()) return Cyc();
    Cyc s(a[0].conductor());
    for (size_t i = 0; i < a.size(); ++i) s += a[i].conj() * b[i];
    return s;
}

bool vector_is_zero(const CycVector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

CycMatrix mat_mul(const CycMatrix& a, const CycMatrix& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    if (!a.empty() && a[0].size() != k) throw SpecMismatch();
    int cond = a.empty() || a[0].empty() ? (b.empty() || b[0].empty() ? 1 : b[0][0].conductor())
                                         : a[0][0].conductor();
    CycMatrix c(n, std::vector<Cyc>(m, Cyc(cond)));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (size_t j = 0; j < m; ++j)
                if (!b[t][j].is_zero()) c[i][j] += a[i][t] * b[t][j];
        }
    return c;
}

CycMatrix mat_add(const CycMatrix& a, const CycMatrix& b) {
    CycMatrix c = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
    return c;
}

CycMatrix mat_scale(const CycMatrix& a, const Cyc& s) {
    CycMatrix c = a;
    for (auto& row : c)
        for (auto& x : row) x *= s;
    return c;
}

CycMatrix identity_matrix(int n, int m_conductor) {
    CycMatrix c(n, std::vector<Cyc>(n, Cyc(m_conductor)));
    for (int i = 0; i < n; ++i) c[i][i] = Cyc(m_conductor, 1);
    return c;
}

bool mat_equal(const CycMatrix& a, const CycMatrix& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (size_t j = 0; j < a[i].size(); ++j)
            if (a[i][j] != b[i][j]) return false;
    }
    return true;
}

CycVector mat_apply(const CycMatrix& a, const CycVector& v) {
    if (a.empty()) return {};
    CycVector r(a.size(), Cyc(v.empty() ? 1 : v[0].conductor()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j)
            if (!a[i][j].is_zero() && !v[j].is_zero()) r[i] += a[i][j] * v[j];
    return r;
}

int matrix_rank(CycMatrix a) {
    if (a.empty()) return 0;
    int rows = (int)a.size(), cols = (int)a[0].size();
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (!a[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        Cyc inv = a[rank][c].inverse();
        for (int j = 0; j < cols; ++j) a[rank][j] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][c].is_zero()) continue;
            Cyc f = a[r][c];
            for (int j = 0; j < cols; ++j) a[r][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

std::vector<CycVector> column_image_basis(const CycMatrix& a) {
    if (a.empty()) return {};
    int rows = (int)a.size(), cols = (int)a[0].size();
    // row-reduce a copy to find pivot columns, then return those columns of the original
    CycMatrix w = a;
    std::vector<int> pivots;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (!w[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(w[rank], w[piv]);
        Cyc inv = w[rank][c].inverse();
        for (int j = 0; j < cols; ++j) w[rank][j] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || w[r][c].is_zero()) continue;
            Cyc f = w[r][c];
            for (int j = 0; j < cols; ++j) w[r][j] -= f * w[rank][j];
        }
        pivots.push_back(c);
        ++rank;
    }
    std::vector<CycVector> basis;
    for (int c : pivots) {
        CycVector col(rows, Cyc(a[0][0].conductor()));
        for (int r = 0; r < rows; ++r) col[r] = a[r][c];
        basis.push_back(std::move(col));
    }
    return basis;
}

std::vector<CycVector> gram_schmidt(const std::vector<CycVector>& vs) {
    std::vector<CycVector> out;
    for (const auto& v : vs) {
        CycVector w = v;
        for (const auto& u : out) {
            Cyc num = inner_product(u, w);
            if (num.is_zero()) continue;
            Cyc coef = num * inner_product(u, u).inverse();
            for (size_t i = 0; i < w.size(); ++i) w[i] -= coef * u[i];
        }
        if (!vector_is_zero(w)) out.push_back(std::move(w));
    }
    return out;
}

}  // namespace loopcode
