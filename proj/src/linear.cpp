#include "loopcode/linear.hpp"

#include <algorithm>

namespace loopcode {

VSpace::VSpace(std::shared_ptr<const Fq> field, int dim) : F_(std::move(field)), dim_(dim) {
    if (dim_ < 0) throw Error("VSpace: negative dimension");
    pow_.resize(dim_ + 1);
    pow_[0] = 1;
    for (int i = 0; i < dim_; ++i) pow_[i + 1] = pow_[i] * F_->q();
    N_ = pow_[dim_];
}

std::vector<int> VSpace::coords(long long v) const {
    std::vector<int> c(dim_);
    for (int i = 0; i < dim_; ++i) {
        c[i] = (int)(v % F_->q());
        v /= F_->q();
    }
    return c;
}

long long VSpace::index(const std::vector<int>& c) const {
    if ((int)c.size() != dim_) throw SpecMismatch();
    long long v = 0;
    for (int i = dim_ - 1; i >= 0; --i) {
        int x = c[i] % F_->q();
        if (x < 0) x += F_->q();
        v = v * F_->q() + x;
    }
    return v;
}

long long VSpace::basis(int i) const { return pow_[i]; }

long long VSpace::add(long long a, long long b) const {
    long long v = 0;
    const int q = F_->q();
    for (int i = 0; i < dim_; ++i) {
        v += (long long)F_->add((int)(a % q), (int)(b % q)) * pow_[i];
        a /= q;
        b /= q;
    }
    return v;
}

long long VSpace::sub(long long a, long long b) const { return add(a, neg(b)); }

long long VSpace::neg(long long a) const {
    long long v = 0;
    const int q = F_->q();
    for (int i = 0; i < dim_; ++i) {
        v += (long long)F_->neg((int)(a % q)) * pow_[i];
        a /= q;
    }
    return v;
}

long long VSpace::scale(int lambda, long long a) const {
    long long v = 0;
    const int q = F_->q();
    for (int i = 0; i < dim_; ++i) {
        v += (long long)F_->mul(lambda, (int)(a % q)) * pow_[i];
        a /= q;
    }
    return v;
}

int VSpace::coord(long long v, int i) const { return (int)((v / pow_[i]) % F_->q()); }

int rref(FqMatrix& m, const Fq& F) {
    int rows = (int)m.size();
    if (rows == 0) return 0;
    int cols = (int)m[0].size();
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        int inv = F.inv(m[rank][c]);
        for (int j = 0; j < cols; ++j) m[rank][j] = F.mul(m[rank][j], inv);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            int f = m[r][c];
            for (int j = 0; j < cols; ++j) m[r][j] = F.sub(m[r][j], F.mul(f, m[rank][j]));
        }
        ++rank;
    }
    m.resize(rank);
    return rank;
}

std::optional<std::vector<int>> solve_left(const FqMatrix& a, const std::vector<int>& b, const Fq& F) {
    // transpose to solve A^T x^T = b^T by row reduction with augmented column
    int rows = (int)a.size();
    if (rows == 0) {
        for (int v : b)
            if (v) return std::nullopt;
        return std::vector<int>{};
    }
    int cols = (int)a[0].size();
    FqMatrix aug(cols, std::vector<int>(rows + 1, 0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) aug[j][i] = a[i][j];
    for (int j = 0; j < cols; ++j) aug[j][rows] = b[j];
    int rank = 0;
    std::vector<int> pivot_col(cols, -1);
    for (int c = 0; c < rows && rank < cols; ++c) {
        int piv = -1;
        for (int r = rank; r < cols; ++r)
            if (aug[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(aug[rank], aug[piv]);
        int inv = F.inv(aug[rank][c]);
        for (int j = 0; j <= rows; ++j) aug[rank][j] = F.mul(aug[rank][j], inv);
        for (int r = 0; r < cols; ++r) {
            if (r == rank || aug[r][c] == 0) continue;
            int f = aug[r][c];
            for (int j = 0; j <= rows; ++j) aug[r][j] = F.sub(aug[r][j], F.mul(f, aug[rank][j]));
        }
        pivot_col[rank] = c;
        ++rank;
    }
    for (int r = rank; r < cols; ++r)
        if (aug[r][rows] != 0) return std::nullopt;
    std::vector<int> x(rows, 0);
    for (int r = 0; r < rank; ++r) x[pivot_col[r]] = aug[r][rows];
    return x;
}

FqMatrix left_kernel(const FqMatrix& a, const Fq& F) {
    int rows = (int)a.size();
    if (rows == 0) return {};
    int cols = (int)a[0].size();
    // reduce [A | I] as rows; kernel rows are those whose A-part vanishes
    FqMatrix aug(rows, std::vector<int>(cols + rows, 0));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols + i] = 1;
    }
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (aug[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(aug[rank], aug[piv]);
        int inv = F.inv(aug[rank][c]);
        for (int j = 0; j < cols + rows; ++j) aug[rank][j] = F.mul(aug[rank][j], inv);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || aug[r][c] == 0) continue;
            int f = aug[r][c];
            for (int j = 0; j < cols + rows; ++j) aug[r][j] = F.sub(aug[r][j], F.mul(f, aug[rank][j]));
        }
        ++rank;
    }
    FqMatrix ker;
    for (int r = rank; r < rows; ++r)
        ker.emplace_back(aug[r].begin() + cols, aug[r].end());
    return ker;
}

Subspace Subspace::span(const VSpace& space, const FqMatrix& vectors) {
    Subspace s;
    s.space_ = space;
    s.basis_ = vectors;
    const int q = space.field().q();
    for (auto& row : s.basis_) {
        if ((int)row.size() != space.dim()) throw SpecMismatch();
        for (int& x : row) x = ((x % q) + q) % q;
    }
    rref(s.basis_, space.field());
    return s;
}

Subspace Subspace::span_indices(const VSpace& space, const std::vector<long long>& vecs) {
    FqMatrix m;
    m.reserve(vecs.size());
    for (long long v : vecs) m.push_back(space.coords(v));
    return span(space, m);
}

Subspace Subspace::zero(const VSpace& space) { return span(space, {}); }

Subspace Subspace::full(const VSpace& space) {
    FqMatrix m;
    for (int i = 0; i < space.dim(); ++i) {
        std::vector<int> row(space.dim(), 0);
        row[i] = 1;
        m.push_back(row);
    }
    return span(space, m);
}

long long Subspace::size() const {
    long long s = 1;
    for (int i = 0; i < dim(); ++i) s *= space_.field().q();
    return s;
}

bool Subspace::contains_coords(const std::vector<int>& c) const {
    const Fq& F = space_.field();
    std::vector<int> v = c;
    for (const auto& row : basis_) {
        int lead = -1;
        for (int j = 0; j < (int)row.size(); ++j)
            if (row[j] != 0) {
                lead = j;
                break;
            }
        if (lead < 0) continue;
        int f = v[lead];
        if (f == 0) continue;
        for (int j = 0; j < (int)row.size(); ++j) v[j] = F.sub(v[j], F.mul(f, row[j]));
    }
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

bool Subspace::contains(long long v) const { return contains_coords(space_.coords(v)); }

Subspace Subspace::sum(const Subspace& o) const {
    if (!(space_ == o.space_)) throw SpecMismatch();
    FqMatrix m = basis_;
    m.insert(m.end(), o.basis_.begin(), o.basis_.end());
    return span(space_, m);
}

Subspace Subspace::intersect(const Subspace& o) const {
    if (!(space_ == o.space_)) throw SpecMismatch();
    // Zassenhaus: reduce rows [u | u] for u in A and [w | 0] for w in B;
    // rows with zero left half carry intersection vectors in the right half.
    int d = space_.dim();
    const Fq& F = space_.field();
    FqMatrix m;
    for (const auto& u : basis_) {
        std::vector<int> row(2 * d, 0);
        for (int j = 0; j < d; ++j) row[j] = row[d + j] = u[j];
        m.push_back(row);
    }
    for (const auto& w : o.basis_) {
        std::vector<int> row(2 * d, 0);
        for (int j = 0; j < d; ++j) row[j] = w[j];
        m.push_back(row);
    }
    rref(m, F);
    FqMatrix inter;
    for (const auto& row : m) {
        bool left_zero = std::all_of(row.begin(), row.begin() + d, [](int x) { return x == 0; });
        if (left_zero) inter.emplace_back(row.begin() + d, row.end());
    }
    return span(space_, inter);
}

std::vector<long long> Subspace::enumerate(long long bound) const {
    if (size() > bound) throw EnumerationBoundExceeded("Subspace enumeration exceeds bound");
    std::vector<long long> bas(dim());
    for (int i = 0; i < dim(); ++i) bas[i] = basis_index(i);
    std::vector<long long> out;
    out.reserve((size_t)size());
    const int q = space_.field().q();
    std::vector<int> coeff(dim(), 0);
    long long total = size();
    for (long long t = 0; t < total; ++t) {
        long long v = 0;
        long long tt = t;
        for (int i = 0; i < dim(); ++i) {
            int c = (int)(tt % q);
            tt /= q;
            if (c) v = space_.add(v, space_.scale(c, bas[i]));
        }
        out.push_back(v);
    }
    return out;
}

std::optional<std::vector<int>> Subspace::coefficients(long long v) const {
    return solve_left(basis_, space_.coords(v), space_.field());
}

Subspace Subspace::complement() const {
    FqMatrix m = basis_;
    FqMatrix extra;
    const Fq& F = space_.field();
    for (int i = 0; i < space_.dim(); ++i) {
        std::vector<int> e(space_.dim(), 0);
        e[i] = 1;
        FqMatrix trial = m;
        trial.push_back(e);
        int r = rref(trial, F);
        if (r > (int)m.size()) {
            m.push_back(e);
            rref(m, F);
            extra.push_back(e);
        }
    }
    return span(space_, extra);
}

}  // namespace loopcode
