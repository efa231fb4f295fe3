#include "loopcode/loops.hpp"

#include <algorithm>
#include <numeric>

namespace loopcode {

FormCheck FiniteMagma::validate() const {
    FormCheck res;
    int n = size();
    if ((int)labels.size() != n) {
        res.ok = false;
        res.note = "label count mismatch";
        return res;
    }
    for (const auto& row : table) {
        if ((int)row.size() != n) {
            res.ok = false;
            res.note = "ragged table";
            return res;
        }
        for (int v : row)
            if (v < 0 || v >= n) {
                res.ok = false;
                res.note = "entry out of range";
                return res;
            }
    }
    return res;
}

bool Loop::is_associative() const {
    int n = size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
    return true;
}

bool Loop::is_commutative() const {
    int n = size();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

TableLoop::TableLoop(FiniteMagma m) : magma_(std::move(m)) {
    FormCheck v = magma_.validate();
    if (!v.ok) throw NotQuasigroup(v.note);
    int n = magma_.size();
    if (n == 0) throw NoIdentity();
    if (n > kTableBound) throw EnumerationBoundExceeded("loop table bound");
    // Latin square property
    for (int a = 0; a < n; ++a) {
        std::vector<bool> row(n, false), col(n, false);
        for (int b = 0; b < n; ++b) {
            if (row[magma_.table[a][b]]) throw NotQuasigroup("repeated value in row " + std::to_string(a));
            row[magma_.table[a][b]] = true;
            if (col[magma_.table[b][a]]) throw NotQuasigroup("repeated value in column " + std::to_string(a));
            col[magma_.table[b][a]] = true;
        }
    }
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = magma_.table[e][a] == a && magma_.table[a][e] == a;
        if (ok) {
            one_ = e;
            break;
        }
    }
    if (one_ < 0) throw NoIdentity();
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (magma_.table[a][b] == one_ && magma_.table[b][a] == one_) {
                inv_[a] = b;
                break;
            }
        if (inv_[a] < 0) throw NoInverse(a);
    }
}

TableLoop TableLoop::cyclic(int n) {
    FiniteMagma m;
    m.labels.resize(n);
    m.table.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a) {
        m.labels[a] = std::to_string(a);
        for (int b = 0; b < n; ++b) m.table[a][b] = (a + b) % n;
    }
    return TableLoop(std::move(m));
}

TableLoop TableLoop::from_loop(const Loop& l) {
    int n = l.size();
    if (n > kTableBound) throw EnumerationBoundExceeded("loop table bound");
    FiniteMagma m;
    m.labels.resize(n);
    m.table.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a) {
        m.labels[a] = l.label(a);
        for (int b = 0; b < n; ++b) m.table[a][b] = l.mul(a, b);
    }
    return TableLoop(std::move(m));
}

CodeLoop::CodeLoop(std::shared_ptr<const AlmostSymplecticSpace> space) : space_(std::move(space)) {
    if (space_->char2()) {
        if (!space_->beta) throw MissingPolarization();
        FormCheck norm = is_polarization(*space_->beta, space_->omega, true);
        if (!norm.ok) throw Error("CodeLoop: beta must be a normalized polarization of omega");
    } else {
        half_ = space_->V.field().inv(space_->V.field().of_int(2));
    }
}

int CodeLoop::mul(int a, int b) const {
    const auto& s = *space_;
    long long u = vpart(a), v = vpart(b);
    int x = xpart(a), y = xpart(b);
    int c;
    if (s.char2()) {
        c = s.beta->value2(u, v);
    } else {
        c = s.A.mul(half_, s.omega.value2(u, v));
    }
    int z = s.A.add(s.A.add(x, y), c);
    return encode(s.V.add(u, v), z);
}

int CodeLoop::inv(int a) const {
    const auto& s = *space_;
    long long u = vpart(a);
    int x = xpart(a);
    long long nu = s.V.neg(u);
    int c = s.char2() ? s.beta->value2(u, nu) : s.A.mul(half_, s.omega.value2(u, nu));
    return encode(nu, s.A.neg(s.A.add(x, c)));
}

std::string CodeLoop::label(int a) const {
    const auto& s = *space_;
    auto c = s.V.coords(vpart(a));
    std::string out = "(";
    for (size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + std::to_string(c[i]);
    out += ";" + s.A.show(xpart(a)) + ")";
    return out;
}

std::shared_ptr<Loop> build_loop(std::shared_ptr<const AlmostSymplecticSpace> space) {
    auto lazy = std::make_shared<CodeLoop>(space);
    if (lazy->size() <= TableLoop::kTableBound)
        return std::make_shared<TableLoop>(TableLoop::from_loop(*lazy));
    return lazy;
}

MoufangReport is_moufang(const Loop& l) {
    MoufangReport rep;
    int n = l.size();
    for (int a = 0; a < n && rep.four_variable; ++a)
        for (int b = 0; b < n && rep.four_variable; ++b) {
            int ab = l.mul(a, b);
            for (int c = 0; c < n && rep.four_variable; ++c) {
                int bc = l.mul(b, c);
                for (int d = 0; d < n; ++d) {
                    if (l.mul(ab, l.mul(c, d)) != l.mul(a, l.mul(bc, d))) {
                        rep.four_variable = false;
                        rep.witness4 = {a, b, c, d};
                        break;
                    }
                }
            }
        }
    // classical Moufang property: the four Bol-Moufang identities, exhaustively
    for (int a = 0; a < n && rep.three_variable; ++a)
        for (int b = 0; b < n && rep.three_variable; ++b) {
            int ab = l.mul(a, b);
            for (int c = 0; c < n; ++c) {
                bool ok = l.mul(ab, l.mul(c, a)) == l.mul(a, l.mul(l.mul(b, c), a)) &&
                          l.mul(ab, l.mul(c, a)) == l.mul(l.mul(a, l.mul(b, c)), a) &&
                          l.mul(a, l.mul(b, l.mul(a, c))) == l.mul(l.mul(ab, a), c) &&
                          l.mul(l.mul(l.mul(c, a), b), a) == l.mul(c, l.mul(a, l.mul(b, a)));
                if (!ok) {
                    rep.three_variable = false;
                    rep.witness3 = {a, b, c};
                    break;
                }
            }
        }
    return rep;
}

int commutator(const Loop& l, int a, int b) { return l.mul(l.mul(a, b), l.inv(l.mul(b, a))); }

int associator(const Loop& l, int a, int b, int c) {
    return l.mul(l.mul(l.mul(a, b), c), l.inv(l.mul(a, l.mul(b, c))));
}

namespace {

bool subset_closed_group(const Loop& l, const std::vector<int>& elems) {
    std::set<int> s(elems.begin(), elems.end());
    if (!s.count(l.one())) return false;
    for (int a : elems) {
        if (!s.count(l.inv(a))) return false;
        for (int b : elems)
            if (!s.count(l.mul(a, b))) return false;
    }
    // associativity within the subset
    for (int a : elems)
        for (int b : elems)
            for (int c : elems)
                if (l.mul(l.mul(a, b), c) != l.mul(a, l.mul(b, c))) return false;
    return true;
}

}  // namespace

LoopInvariants loop_invariants(const Loop& l) {
    LoopInvariants inv;
    int n = l.size();
    for (int a = 0; a < n; ++a) {
        bool comm = true;
        for (int b = 0; b < n && comm; ++b) comm = l.mul(a, b) == l.mul(b, a);
        if (comm) inv.moufang_centre.push_back(a);
        bool nuc = true;
        for (int b = 0; b < n && nuc; ++b)
            for (int c = 0; c < n && nuc; ++c)
                nuc = l.mul(l.mul(a, b), c) == l.mul(a, l.mul(b, c)) &&
                      l.mul(l.mul(b, a), c) == l.mul(b, l.mul(a, c)) &&
                      l.mul(l.mul(b, c), a) == l.mul(b, l.mul(c, a));
        if (nuc) inv.nucleus.push_back(a);
    }
    std::set_intersection(inv.moufang_centre.begin(), inv.moufang_centre.end(), inv.nucleus.begin(),
                          inv.nucleus.end(), std::back_inserter(inv.centre));
    inv.nucleus_is_subgroup = subset_closed_group(l, inv.nucleus);
    inv.centre_is_abelian_subgroup = subset_closed_group(l, inv.centre);

    for (int a = 0; a < n && inv.associator_trivial; ++a)
        for (int b = 0; b < n && inv.associator_trivial; ++b)
            for (int c = 0; c < n; ++c)
                if (l.mul(l.mul(a, b), c) != l.mul(a, l.mul(b, c))) {
                    inv.associator_trivial = false;
                    inv.associator_witness = {a, b, c};
                    break;
                }

    inv.element_order.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        int x = a, ord = 1;
        while (x != l.one() && ord <= n + 1) {
            x = l.mul(a, x);
            ++ord;
        }
        inv.element_order[a] = (x == l.one()) ? ord : 0;  // 0: left-powers do not reach 1
    }
    std::map<int, std::vector<int>> prim;
    for (int a = 0; a < n; ++a) {
        int o = inv.element_order[a];
        if (o <= 1) continue;
        int p = 2;
        while (p <= o && o % p != 0) ++p;
        int t = o;
        while (t % p == 0) t /= p;
        if (t == 1) prim[p].push_back(a);
    }
    for (auto& [p, v] : prim) inv.p_components.emplace_back(p, v);
    return inv;
}

// ---- Griess ----

namespace {
int popcount_and(unsigned long long a, unsigned long long b) { return __builtin_popcountll(a & b); }
}  // namespace

GriessResult griess_code_loop(const std::vector<unsigned long long>& codewords, int n) {
    (void)n;
    int m = (int)codewords.size();
    // index lookup
    std::map<unsigned long long, int> idx;
    for (int i = 0; i < m; ++i) idx[codewords[i]] = i;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (!idx.count(codewords[i] ^ codewords[j])) throw Error("griess: word set not closed under +");
    for (unsigned long long w : codewords)
        if (__builtin_popcountll(w) % 4 != 0) throw NotDoublyEven();

    // unknowns theta[v][w] indexed t = v*m + w; F_2 linear system with bitset rows
    int vars = m * m;
    int words = (vars + 63) / 64;
    struct Row {
        std::vector<unsigned long long> bits;
        int rhs;
    };
    std::vector<Row> rows;
    auto mk_row = [&]() { return Row{std::vector<unsigned long long>(words, 0ull), 0}; };
    auto set_bit = [&](Row& r, int t) { r.bits[t / 64] ^= (1ull << (t % 64)); };

    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v)
            for (int w = 0; w < m; ++w) {
                // theta(v,w) + theta(u+v,w) + theta(u,v+w) + theta(u,v) = |u&v&w| mod 2
                Row r = mk_row();
                set_bit(r, v * m + w);
                set_bit(r, idx[codewords[u] ^ codewords[v]] * m + w);
                set_bit(r, u * m + idx[codewords[v] ^ codewords[w]]);
                set_bit(r, u * m + v);
                r.rhs = popcount_and(codewords[u] & codewords[v], codewords[w]) & 1;
                rows.push_back(std::move(r));
            }
    for (int v = 0; v < m; ++v) {
        Row r = mk_row();
        set_bit(r, v * m + v);
        r.rhs = (__builtin_popcountll(codewords[v]) / 4) & 1;
        rows.push_back(std::move(r));
        for (int w = v + 1; w < m; ++w) {
            Row r2 = mk_row();
            set_bit(r2, v * m + w);
            set_bit(r2, w * m + v);
            r2.rhs = (popcount_and(codewords[v], codewords[w]) / 2) & 1;
            rows.push_back(std::move(r2));
        }
    }

    // eliminate in variable order for the lexicographically least solution:
    // reduce to RREF with pivots at the smallest available variable, free vars = 0.
    std::vector<int> pivot_of_var(vars, -1);
    int rank = 0;
    for (int var = 0; var < vars && rank < (int)rows.size(); ++var) {
        int piv = -1;
        for (int r = rank; r < (int)rows.size(); ++r)
            if ((rows[r].bits[var / 64] >> (var % 64)) & 1ull) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        for (int r = 0; r < (int)rows.size(); ++r) {
            if (r == rank) continue;
            if ((rows[r].bits[var / 64] >> (var % 64)) & 1ull) {
                for (int t = 0; t < words; ++t) rows[r].bits[t] ^= rows[rank].bits[t];
                rows[r].rhs ^= rows[rank].rhs;
            }
        }
        pivot_of_var[var] = rank;
        ++rank;
    }
    for (int r = rank; r < (int)rows.size(); ++r)
        if (rows[r].rhs) throw SystemInconsistent();

    // free variables 0; pivot variable value = rhs minus free contributions (= rhs here).
    // With free vars at 0 and RREF pivots chosen smallest-first this is the lex-least solution.
    std::vector<int> theta_flat(vars, 0);
    for (int var = 0; var < vars; ++var)
        if (pivot_of_var[var] >= 0) theta_flat[var] = rows[pivot_of_var[var]].rhs;

    GriessResult res;
    res.codewords = codewords;
    res.theta.assign(m, std::vector<int>(m, 0));
    for (int v = 0; v < m; ++v)
        for (int w = 0; w < m; ++w) res.theta[v][w] = theta_flat[v * m + w];

    FiniteMagma mg;
    int order = 2 * m;
    mg.labels.resize(order);
    mg.table.assign(order, std::vector<int>(order));
    for (int a = 0; a < order; ++a) {
        int va = a >> 1, xa = a & 1;
        mg.labels[a] = "(" + std::to_string(va) + ";" + std::to_string(xa) + ")";
        for (int b = 0; b < order; ++b) {
            int vb = b >> 1, xb = b & 1;
            int vc = idx[codewords[va] ^ codewords[vb]];
            int xc = (xa + xb + res.theta[va][vb]) & 1;
            mg.table[a][b] = (vc << 1) | xc;
        }
    }
    res.loop = std::make_shared<TableLoop>(TableLoop(std::move(mg)));
    return res;
}

// ---- quasigroups / CML ----

namespace {
QuasigroupReport quasigroup_checks_no_ch(const FiniteMagma& m);
}

QuasigroupReport quasigroup_checks(const FiniteMagma& m, long long bound) {
    QuasigroupReport rep;
    int n = m.size();
    // symmetric: relation x∘y = z invariant under all six permutations of (x,y,z)
    for (int x = 0; x < n && rep.symmetric; ++x)
        for (int y = 0; y < n; ++y) {
            int z = m.op(x, y);
            if (m.op(y, x) != z || m.op(x, z) != y || m.op(z, x) != y || m.op(y, z) != x ||
                m.op(z, y) != x) {
                rep.symmetric = false;
                rep.symmetric_witness = {x, y};
                break;
            }
        }
    // abelian: for every u, (x,y) -> u∘(x∘y) is an abelian group with identity u
    auto star = [&](int u, int x, int y) { return m.op(u, m.op(x, y)); };
    for (int u = 0; u < n && rep.abelian; ++u) {
        for (int x = 0; x < n && rep.abelian; ++x) {
            if (star(u, u, x) != x || star(u, x, u) != x) rep.abelian = false;
            for (int y = 0; y < n && rep.abelian; ++y) {
                if (star(u, x, y) != star(u, y, x)) rep.abelian = false;
                for (int z = 0; z < n; ++z)
                    if (star(u, star(u, x, y), z) != star(u, x, star(u, y, z))) {
                        rep.abelian = false;
                        break;
                    }
            }
        }
        // inverses in the derived group
        for (int x = 0; x < n && rep.abelian; ++x) {
            bool has = false;
            for (int y = 0; y < n && !has; ++y) has = star(u, x, y) == u;
            if (!has) rep.abelian = false;
        }
        if (!rep.abelian) rep.abelian_witness_u = u;
    }
    // CH: every 3-subset generates an abelian subquasigroup
    if (rep.symmetric) {
        for (int a = 0; a < n && rep.ch; ++a)
            for (int b = a; b < n && rep.ch; ++b)
                for (int c = b; c < n; ++c) {
                    std::set<int> gen = {a, b, c};
                    bool grew = true;
                    while (grew) {
                        grew = false;
                        if ((long long)gen.size() > bound)
                            throw EnumerationBoundExceeded("CH closure bound");
                        std::vector<int> cur(gen.begin(), gen.end());
                        for (int x : cur)
                            for (int y : cur)
                                if (gen.insert(m.op(x, y)).second) grew = true;
                    }
                    std::vector<int> cur(gen.begin(), gen.end());
                    std::map<int, int> re;
                    for (int i = 0; i < (int)cur.size(); ++i) re[cur[i]] = i;
                    FiniteMagma sub;
                    sub.labels.resize(cur.size());
                    sub.table.assign(cur.size(), std::vector<int>(cur.size()));
                    for (int i = 0; i < (int)cur.size(); ++i) {
                        sub.labels[i] = m.labels.empty() ? std::to_string(cur[i]) : m.labels[cur[i]];
                        for (int j = 0; j < (int)cur.size(); ++j) sub.table[i][j] = re[m.op(cur[i], cur[j])];
                    }
                    QuasigroupReport subrep;
                    // abelian check only (symmetry inherited)
                    subrep = quasigroup_checks_no_ch(sub);
                    if (!subrep.abelian) {
                        rep.ch = false;
                        rep.ch_witness = {a, b, c};
                        break;
                    }
                }
    } else {
        rep.ch = false;
    }
    return rep;
}

namespace {
QuasigroupReport quasigroup_checks_no_ch(const FiniteMagma& m) {
    // abelian part only; used on generated subquasigroups where symmetry is inherited
    QuasigroupReport rep;
    int n = m.size();
    auto star = [&](int u, int x, int y) { return m.op(u, m.op(x, y)); };
    for (int u = 0; u < n && rep.abelian; ++u) {
        for (int x = 0; x < n && rep.abelian; ++x) {
            if (star(u, u, x) != x || star(u, x, u) != x) rep.abelian = false;
            for (int y = 0; y < n && rep.abelian; ++y) {
                if (star(u, x, y) != star(u, y, x)) rep.abelian = false;
                for (int z = 0; z < n; ++z)
                    if (star(u, star(u, x, y), z) != star(u, x, star(u, y, z))) {
                        rep.abelian = false;
                        break;
                    }
            }
        }
        if (!rep.abelian) rep.abelian_witness_u = u;
    }
    return rep;
}
}  // namespace

CmlReport cml_checks(const FiniteMagma& m) {
    CmlReport rep;
    int n = m.size();
    for (int x = 0; x < n && rep.commutative; ++x)
        for (int y = 0; y < n; ++y)
            if (m.op(x, y) != m.op(y, x)) {
                rep.commutative = false;
                rep.witness = {x, y, 0};
                break;
            }
    rep.unit = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = m.op(e, x) == x && m.op(x, e) == x;
        if (ok) {
            rep.unit = e;
            break;
        }
    }
    rep.has_unit = rep.unit >= 0;
    if (!rep.has_unit) return rep;
    for (int x = 0; x < n && rep.inverses; ++x) {
        bool has = false;
        for (int y = 0; y < n && !has; ++y) has = m.op(x, y) == rep.unit;
        rep.inverses = has;
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (m.op(x, m.op(x, y)) != m.op(m.op(x, x), y)) {
                rep.weak_assoc1 = false;
                rep.witness = {x, y, 0};
            }
            for (int z = 0; z < n; ++z) {
                int lhs = m.op(m.op(x, y), m.op(x, z));
                if (lhs != m.op(m.op(x, x), m.op(y, z))) {
                    rep.weak_assoc2 = false;
                    rep.witness = {x, y, z};
                }
                if (lhs != m.op(m.op(m.op(x, x), y), z)) {
                    rep.weak_assoc3 = false;
                    rep.witness = {x, y, z};
                }
            }
        }
    return rep;
}

TableLoop cml_from_ch(const FiniteMagma& e, int u) {
    QuasigroupReport q = quasigroup_checks(e);
    if (!q.symmetric || !q.abelian || !q.ch) throw NotCH();
    int n = e.size();
    FiniteMagma m;
    m.labels = e.labels;
    m.table.assign(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) m.table[x][y] = e.op(u, e.op(x, y));
    TableLoop loop(std::move(m));
    CmlReport rep = cml_checks(loop.magma());
    if (!rep.ok()) throw Error("cml_from_ch: result fails CML identities");
    return loop;
}

std::vector<int> associative_centre(const TableLoop& l) {
    std::vector<int> z;
    int n = l.size();
    for (int x = 0; x < n; ++x) {
        bool ok = true;
        for (int y = 0; y < n && ok; ++y)
            for (int w = 0; w < n && ok; ++w) ok = l.mul(x, l.mul(y, w)) == l.mul(l.mul(x, y), w);
        if (ok) z.push_back(x);
    }
    return z;
}

FiniteMagma ch_from_cml(const TableLoop& l, int c) {
    auto z = associative_centre(l);
    if (std::find(z.begin(), z.end(), c) == z.end()) throw NotInAssociativeCentre();
    int n = l.size();
    FiniteMagma m;
    m.labels = l.magma().labels;
    m.table.assign(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int a = l.mul(l.mul(c, l.inv(x)), l.inv(y));        // (c*x⁻¹)*y⁻¹
            int b = l.mul(c, l.mul(l.inv(x), l.inv(y)));        // c*(x⁻¹*y⁻¹)
            if (a != b) throw Error("ch_from_cml: placements disagree despite central c");
            m.table[x][y] = a;
        }
    return m;
}

FormCheck ReflectionFamily::validate() const {
    FormCheck res;
    int n = size();
    for (int c = 0; c < n; ++c) {
        if ((int)s[c].size() != n) {
            res.ok = false;
            res.note = "ragged family";
            return res;
        }
        if (s[c][c] != c) {
            res.ok = false;
            res.witness = {c};
            res.note = "s_c does not fix c";
            return res;
        }
        for (int d = 0; d < n; ++d)
            if (s[c][d] < 0 || s[c][d] >= n || s[c][s[c][d]] != d) {
                res.ok = false;
                res.witness = {c, d};
                res.note = "s_c not an involution";
                return res;
            }
    }
    return res;
}

ReflectionReport reflection_quasigroup(const ReflectionFamily& fam) {
    FormCheck v = fam.validate();
    if (!v.ok) throw Error("reflection_quasigroup: " + v.note);
    ReflectionReport rep;
    int n = fam.size();
    for (int c = 0; c < n && rep.relations_hold; ++c)
        for (int d = 0; d < n && rep.relations_hold; ++d)
            for (int e = 0; e < n; ++e) {
                bool ok = true;
                for (int x = 0; x < n; ++x) {
                    int y = fam.s[c][fam.s[d][fam.s[e][x]]];
                    y = fam.s[c][fam.s[d][fam.s[e][y]]];
                    if (y != x) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) {
                    rep.relations_hold = false;
                    rep.witness = {c, d, e};
                    break;
                }
            }
    rep.quasigroup.labels.resize(n);
    rep.quasigroup.table.assign(n, std::vector<int>(n));
    for (int c = 0; c < n; ++c) {
        rep.quasigroup.labels[c] = std::to_string(c);
        for (int d = 0; d < n; ++d) rep.quasigroup.table[c][d] = fam.s[c][d];
    }
    rep.quasigroup_report = quasigroup_checks(rep.quasigroup);
    return rep;
}

ReflectionFamily reflections_from_cml(const TableLoop& l, int c) {
    auto z = associative_centre(l);
    if (std::find(z.begin(), z.end(), c) == z.end()) throw NotInAssociativeCentre();
    int n = l.size();
    ReflectionFamily fam;
    fam.s.assign(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) fam.s[x][y] = l.mul(l.mul(c, l.inv(x)), l.inv(y));
    // (t_x t_y t_z)^2 = id for all triples
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int zz = 0; zz < n; ++zz)
                for (int w = 0; w < n; ++w) {
                    int t = fam.s[x][fam.s[y][fam.s[zz][w]]];
                    t = fam.s[x][fam.s[y][fam.s[zz][t]]];
                    if (t != w) throw RelationFails(x, y, zz);
                }
    return fam;
}

TableLoop chein_double(const TableLoop& g) {
    int n = g.size();
    FiniteMagma m;
    m.labels.resize(2 * n);
    m.table.assign(2 * n, std::vector<int>(2 * n));
    for (int a = 0; a < n; ++a) {
        m.labels[a] = g.label(a);
        m.labels[n + a] = g.label(a) + "u";
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            m.table[a][b] = g.mul(a, b);
            m.table[a][n + b] = n + g.mul(b, a);
            m.table[n + a][b] = n + g.mul(a, g.inv(b));
            m.table[n + a][n + b] = g.mul(g.inv(b), a);
        }
    return TableLoop(std::move(m));
}

TableLoop symmetric_group_s3() {
    // permutations of {0,1,2} composed left-to-right, listed in lexicographic order
    std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto index_of = [&](const std::array<int, 3>& p) {
        for (int i = 0; i < 6; ++i)
            if (perms[i] == p) return i;
        return -1;
    };
    FiniteMagma m;
    m.labels.resize(6);
    m.table.assign(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a) {
        m.labels[a] = "p" + std::to_string(a);
        for (int b = 0; b < 6; ++b) {
            std::array<int, 3> comp{};
            for (int x = 0; x < 3; ++x) comp[x] = perms[b][perms[a][x]];
            m.table[a][b] = index_of(comp);
        }
    }
    return TableLoop(std::move(m));
}

// ---- isomorphism / isotopism ----

namespace {

std::vector<int> generating_sequence(const Loop& l) {
    int n = l.size();
    std::set<int> gen = {l.one()};
    std::vector<int> gens;
    auto close = [&](std::set<int>& s) {
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<int> cur(s.begin(), s.end());
            for (int a : cur) {
                if (s.insert(l.inv(a)).second) grew = true;
                for (int b : cur)
                    if (s.insert(l.mul(a, b)).second) grew = true;
            }
        }
    };
    while ((int)gen.size() < n) {
        int pick = -1;
        for (int a = 0; a < n; ++a)
            if (!gen.count(a)) {
                pick = a;
                break;
            }
        gens.push_back(pick);
        gen.insert(pick);
        close(gen);
    }
    return gens;
}

// multiplication-respecting extension of a partial map; returns false on clash
bool try_extend(const Loop& a, const Loop& b, std::vector<int>& img) {
    int n = a.size();
    bool grew = true;
    while (grew) {
        grew = false;
        for (int x = 0; x < n; ++x) {
            if (img[x] < 0) continue;
            for (int y = 0; y < n; ++y) {
                if (img[y] < 0) continue;
                int z = a.mul(x, y);
                int iz = b.mul(img[x], img[y]);
                if (img[z] < 0) {
                    img[z] = iz;
                    grew = true;
                } else if (img[z] != iz) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool iso_search(const Loop& a, const Loop& b, const std::vector<int>& gens, size_t k,
                std::vector<int> img, std::vector<bool> used) {
    if (!try_extend(a, b, img)) return false;
    // check injectivity of assigned values
    {
        std::vector<bool> seen(b.size(), false);
        for (int v : img)
            if (v >= 0) {
                if (seen[v]) return false;
                seen[v] = true;
            }
    }
    if (k == gens.size()) {
        for (int v : img)
            if (v < 0) return false;  // should not happen once generators are set
        return true;
    }
    int g = gens[k];
    if (img[g] >= 0) return iso_search(a, b, gens, k + 1, img, used);
    for (int cand = 0; cand < b.size(); ++cand) {
        if (used[cand] || img[g] >= 0) continue;
        std::vector<int> img2 = img;
        std::vector<bool> used2 = used;
        img2[g] = cand;
        used2[cand] = true;
        if (iso_search(a, b, gens, k + 1, std::move(img2), std::move(used2))) return true;
    }
    return false;
}

std::vector<int> order_spectrum(const Loop& l) {
    int n = l.size();
    std::vector<int> spec;
    for (int a = 0; a < n; ++a) {
        int x = a, ord = 1;
        while (x != l.one() && ord <= n + 1) {
            x = l.mul(a, x);
            ++ord;
        }
        spec.push_back(x == l.one() ? ord : 0);
    }
    std::sort(spec.begin(), spec.end());
    return spec;
}

}  // namespace

bool loops_isomorphic(const Loop& a, const Loop& b) {
    if (a.size() != b.size()) return false;
    if (order_spectrum(a) != order_spectrum(b)) return false;
    std::vector<int> img(a.size(), -1);
    std::vector<bool> used(b.size(), false);
    img[a.one()] = b.one();
    used[b.one()] = true;
    auto gens = generating_sequence(a);
    return iso_search(a, b, gens, 0, std::move(img), std::move(used));
}

bool loops_isotopic(const Loop& a, const Loop& b) {
    // b isotopic to a iff b is isomorphic to a principal isotope a_{(f,g)}:
    // x∘y = R_g⁻¹(x) * L_f⁻¹(y), identity f*g.
    int n = a.size();
    if (n != b.size()) return false;
    std::vector<std::vector<int>> lm(n, std::vector<int>(n)), rm(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            lm[x][a.mul(x, y)] = y;  // L_x⁻¹
            rm[y][a.mul(x, y)] = x;  // R_y⁻¹
        }
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g) {
            FiniteMagma m;
            m.labels.resize(n);
            m.table.assign(n, std::vector<int>(n));
            for (int x = 0; x < n; ++x) {
                m.labels[x] = std::to_string(x);
                for (int y = 0; y < n; ++y) m.table[x][y] = a.mul(rm[g][x], lm[f][y]);
            }
            try {
                TableLoop iso(std::move(m));
                if (loops_isomorphic(iso, b)) return true;
            } catch (const Error&) {
                // principal isotopes need not have two-sided inverses; those cannot match b
                continue;
            }
        }
    return false;
}

}  // namespace loopcode
