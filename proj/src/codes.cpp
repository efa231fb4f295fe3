#include "loopcode/codes.hpp"

#include <algorithm>

#include "loopcode/forms.hpp"

namespace loopcode {

LinearCode LinearCode::from_rows(std::shared_ptr<const Fq> field, int n, FqMatrix rows) {
    for (auto& r : rows)
        if ((int)r.size() != n) throw SpecMismatch();
    rref(rows, *field);
    LinearCode c;
    c.field = std::move(field);
    c.n = n;
    c.gen = std::move(rows);
    return c;
}

long long LinearCode::codeword_count() const {
    long long t = 1;
    for (int i = 0; i < k(); ++i) t *= field->q();
    return t;
}

std::vector<std::vector<int>> LinearCode::enumerate(long long bound) const {
    long long total = codeword_count();
    if (total > bound) throw EnumerationBoundExceeded("codeword enumeration bound");
    std::vector<std::vector<int>> words;
    words.reserve((size_t)total);
    const Fq& F = *field;
    for (long long t = 0; t < total; ++t) {
        std::vector<int> w(n, 0);
        long long tt = t;
        for (int i = 0; i < k(); ++i) {
            int ci = (int)(tt % F.q());
            tt /= F.q();
            if (ci)
                for (int j = 0; j < n; ++j) w[j] = F.add(w[j], F.mul(ci, gen[i][j]));
        }
        words.push_back(std::move(w));
    }
    return words;
}

std::vector<unsigned long long> LinearCode::enumerate_bitmasks(long long bound) const {
    if (field->q() != 2) throw NotBinary();
    if (n > 64) throw EnumerationBoundExceeded("bitmask width");
    auto words = enumerate(bound);
    std::vector<unsigned long long> masks;
    masks.reserve(words.size());
    for (const auto& w : words) {
        unsigned long long m = 0;
        for (int j = 0; j < n; ++j)
            if (w[j]) m |= 1ull << j;
        masks.push_back(m);
    }
    return masks;
}

CodeParams code_params(const LinearCode& c, long long bound) {
    CodeParams p;
    p.n = c.n;
    p.k = c.k();
    p.q = c.field->q();
    int best = c.n + 1;
    for (const auto& w : c.enumerate(bound)) {
        int wt = 0;
        for (int v : w) wt += v != 0;
        if (wt > 0) best = std::min(best, wt);
    }
    p.d = (p.k == 0) ? 0 : best;
    p.point.rate = BigRational(BigInt(p.k), BigInt(p.n));
    p.point.distance = BigRational(BigInt(p.d), BigInt(p.n));
    return p;
}

int min_pairwise_distance(const LinearCode& c, long long bound) {
    auto words = c.enumerate(bound);
    int best = c.n + 1;
    for (size_t i = 0; i < words.size(); ++i)
        for (size_t j = i + 1; j < words.size(); ++j) {
            int d = 0;
            for (int t = 0; t < c.n; ++t) d += words[i][t] != words[j][t];
            best = std::min(best, d);
        }
    return best;
}

bool is_doubly_even(const LinearCode& c) {
    if (c.field->q() != 2) throw NotBinary();
    for (unsigned long long w : c.enumerate_bitmasks())
        if (__builtin_popcountll(w) % 4 != 0) return false;
    return true;
}

bool pairwise_intersections_even(const LinearCode& c, long long bound) {
    auto masks = c.enumerate_bitmasks(bound);
    for (unsigned long long a : masks)
        for (unsigned long long b : masks)
            if (__builtin_popcountll(a & b) % 2 != 0) return false;
    return true;
}

bool is_self_orthogonal(const LinearCode& c) {
    const Fq& F = *c.field;
    for (int i = 0; i < c.k(); ++i)
        for (int j = 0; j < c.k(); ++j) {
            int dot = 0;
            for (int t = 0; t < c.n; ++t) dot = F.add(dot, F.mul(c.gen[i][t], c.gen[j][t]));
            if (dot != 0) return false;
        }
    return true;
}

Subspace embed_isotropic(const LinearCode& c, IsotropicEmbedding mode) {
    if (!is_self_orthogonal(c)) throw NotSelfOrthogonal();
    VSpace big(c.field, 2 * c.n);
    FqMatrix rows;
    for (const auto& g : c.gen) {
        std::vector<int> row(2 * c.n, 0);
        for (int j = 0; j < c.n; ++j) {
            row[j] = g[j];  // position half q_1..q_n
            if (mode == IsotropicEmbedding::Diagonal) row[c.n + j] = g[j];
        }
        rows.push_back(std::move(row));
    }
    Subspace img = Subspace::span(big, rows);
    auto fcod = Codomain::field(c.field);
    FormTable omega = FormTable::standard_symplectic(big, fcod);
    if (!is_isotropic(img, omega)) throw NotSelfOrthogonal();
    return img;
}

std::vector<CloudEntry> code_point_cloud(const std::vector<LinearCode>& codes) {
    std::vector<CloudEntry> cloud;
    for (const auto& c : codes) {
        CodeParams p = code_params(c);
        bool merged = false;
        for (auto& e : cloud)
            if (e.params.point.rate == p.point.rate && e.params.point.distance == p.point.distance &&
                e.params.q == p.q) {
                e.multiplicity++;
                merged = true;
                break;
            }
        if (!merged) cloud.push_back({p, 1});
    }
    return cloud;
}

LinearCode repetition_code(int n) {
    auto f2 = std::make_shared<Fq>(FieldSpec::prime_field(2));
    FqMatrix g = {std::vector<int>(n, 1)};
    return LinearCode::from_rows(f2, n, g);
}

LinearCode extended_hamming_8_4() {
    auto f2 = std::make_shared<Fq>(FieldSpec::prime_field(2));
    FqMatrix g = {
        {1, 1, 1, 1, 1, 1, 1, 1},
        {0, 0, 0, 0, 1, 1, 1, 1},
        {0, 0, 1, 1, 0, 0, 1, 1},
        {0, 1, 0, 1, 0, 1, 0, 1},
    };
    return LinearCode::from_rows(f2, 8, g);
}

LinearCode extended_golay_24_12() {
    // [I | B] with B the quadratic-residue-mod-11 bordered circulant
    auto f2 = std::make_shared<Fq>(FieldSpec::prime_field(2));
    bool qr[11] = {};
    for (int t = 1; t < 11; ++t) qr[(t * t) % 11] = true;
    FqMatrix g(12, std::vector<int>(24, 0));
    for (int i = 0; i < 12; ++i) g[i][i] = 1;
    // C[i][j] = 1 iff (j - i) mod 11 lies in QR(11) ∪ {0}; border of ones, corner 0
    for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j) g[i][12 + j] = (i == j || qr[(j - i + 11) % 11]) ? 1 : 0;
    for (int i = 0; i < 11; ++i) {
        g[i][23] = 1;
        g[11][12 + i] = 1;
    }
    return LinearCode::from_rows(f2, 24, g);
}

}  // namespace loopcode
