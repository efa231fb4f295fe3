#include "loopcode/designs.hpp"

#include <algorithm>

namespace loopcode {

FormCheck LatinSquareDesign::validate() const {
    FormCheck res;
    if ((long long)lines.size() != (long long)N * N) {
        res.ok = false;
        res.note = "line count != N^2";
        return res;
    }
    // any cross-type pair on exactly one line
    for (int ta = 0; ta < 3; ++ta)
        for (int tb = ta + 1; tb < 3; ++tb) {
            std::vector<int> seen(N * N, 0);
            for (const auto& ln : lines) seen[ln[ta] * N + ln[tb]]++;
            for (int i = 0; i < N * N; ++i)
                if (seen[i] != 1) {
                    res.ok = false;
                    res.note = "cross-type pair not on exactly one line";
                    res.witness = {ta, tb, i / N, i % N};
                    return res;
                }
        }
    for (const auto& ln : lines)
        for (int t = 0; t < 3; ++t)
            if (ln[t] < 0 || ln[t] >= N) {
                res.ok = false;
                res.note = "point out of range";
                return res;
            }
    return res;
}

std::vector<std::vector<int>> LatinSquareDesign::latin_square() const {
    std::vector<std::vector<int>> sq(N, std::vector<int>(N, -1));
    for (const auto& ln : lines) sq[ln[0]][ln[1]] = ln[2];
    return sq;
}

int LatinSquareDesign::line_through(int type_a, int pa, int type_b, int pb) const {
    for (int i = 0; i < (int)lines.size(); ++i)
        if (lines[i][type_a] == pa && lines[i][type_b] == pb) return i;
    return -1;
}

LatinSquareDesign thomsen_design(const Loop& l) {
    int n = l.size();
    LatinSquareDesign d;
    d.N = n;
    d.lines.reserve((size_t)n * n);
    for (int x1 = 0; x1 < n; ++x1)
        for (int x2 = 0; x2 < n; ++x2) {
            int prod = l.mul(x1, x2);
            // unique x3 with prod * x3 = 1
            int x3 = -1;
            for (int c = 0; c < n; ++c)
                if (l.mul(prod, c) == l.one()) {
                    x3 = c;
                    break;
                }
            d.lines.push_back({x1, x2, x3});
        }
    FormCheck v = d.validate();
    if (!v.ok) throw InvalidDesign(v.note);
    return d;
}

TableLoop thomsen_loop(const LatinSquareDesign& d, const std::array<int, 3>& base) {
    FormCheck v = d.validate();
    if (!v.ok) throw InvalidDesign(v.note);
    int n = d.N;
    auto sq = d.latin_square();
    // rho: type-1 point -> symbol on its line with base[1]; kappa: type-2 -> symbol with base[0]
    std::vector<int> rho(n), kappa(n), rho_inv(n), kappa_inv(n);
    for (int x = 0; x < n; ++x) {
        rho[x] = sq[x][base[1]];
        kappa[x] = sq[base[0]][x];
    }
    for (int x = 0; x < n; ++x) {
        rho_inv[rho[x]] = x;
        kappa_inv[kappa[x]] = x;
    }
    // loop on symbols: x * y = symbol on (rho^-1 x, kappa^-1 y); identity = sq[base0][base1]
    FiniteMagma m;
    m.labels.resize(n);
    m.table.assign(n, std::vector<int>(n));
    // relabel so the identity symbol is element 0
    int e = sq[base[0]][base[1]];
    std::vector<int> relabel(n), unlabel(n);
    relabel[e] = 0;
    unlabel[0] = e;
    int next = 1;
    for (int s = 0; s < n; ++s)
        if (s != e) {
            relabel[s] = next;
            unlabel[next] = s;
            ++next;
        }
    for (int x = 0; x < n; ++x) {
        m.labels[x] = "s" + std::to_string(unlabel[x]);
        for (int y = 0; y < n; ++y)
            m.table[x][y] = relabel[sq[rho_inv[unlabel[x]]][kappa_inv[unlabel[y]]]];
    }
    try {
        return TableLoop(std::move(m));
    } catch (const Error& err) {
        throw InvalidDesign(std::string("reconstruction is not a two-sided loop: ") + err.what());
    }
}

CentralAutomorphismReport central_automorphism_checks(const LatinSquareDesign& d) {
    CentralAutomorphismReport rep;
    int n = d.N;
    rep.point_ok.assign(3, std::vector<bool>(n, false));
    // line index through a typed point pair
    std::vector<std::vector<int>> lid(9, std::vector<int>((size_t)n * n, -1));
    for (int i = 0; i < (int)d.lines.size(); ++i)
        for (int ta = 0; ta < 3; ++ta)
            for (int tb = 0; tb < 3; ++tb)
                if (ta != tb) lid[ta * 3 + tb][d.lines[i][ta] * n + d.lines[i][tb]] = i;
    auto third = [&](int ta, int pa, int tb, int pb, int tc) {
        return d.lines[lid[ta * 3 + tb][pa * n + pb]][tc];
    };
    auto is_line = [&](const std::array<int, 3>& ln) {
        int li = lid[0 * 3 + 1][ln[0] * n + ln[1]];
        return li >= 0 && d.lines[li][2] == ln[2];
    };

    for (int type = 0; type < 3; ++type) {
        int tb = (type + 1) % 3, tc = (type + 2) % 3;
        for (int x = 0; x < n; ++x) {
            // swap the other two points on each line through x
            std::vector<int> b_to_c(n), c_to_b(n);
            for (int pb = 0; pb < n; ++pb) {
                int pc = third(type, x, tb, pb, tc);
                b_to_c[pb] = pc;
                c_to_b[pc] = pb;
            }
            // induced image on the fixed type, from any line through pa; must not depend
            // on the chosen line for the swap to extend to a design automorphism
            std::vector<int> img_t(n, -1);
            bool consistent = true;
            for (int pa = 0; pa < n && consistent; ++pa) {
                int want = -1;
                for (int pb = 0; pb < n; ++pb) {
                    int pc = third(type, pa, tb, pb, tc);
                    int q = third(tb, c_to_b[pc], tc, b_to_c[pb], type);
                    if (want < 0)
                        want = q;
                    else if (want != q) {
                        consistent = false;
                        break;
                    }
                }
                img_t[pa] = want;
            }
            bool automorphism = consistent && img_t[x] == x;
            for (int i = 0; automorphism && i < (int)d.lines.size(); ++i) {
                const auto& ln = d.lines[i];
                std::array<int, 3> img{};
                img[type] = img_t[ln[type]];
                img[tb] = c_to_b[ln[tc]];  // tc-point lands in type tb
                img[tc] = b_to_c[ln[tb]];  // tb-point lands in type tc
                automorphism = is_line(img);
            }
            rep.point_ok[type][x] = automorphism;
            rep.is_central_design = rep.is_central_design && automorphism;
        }
    }
    return rep;
}

FlagGraph design_graph(const LatinSquareDesign& d) {
    FlagGraph g;
    int n = d.N;
    g.nvertices = 3 * n;  // vertex = type * N + point
    // one edge per cross-type pair
    for (int ta = 0; ta < 3; ++ta)
        for (int tb = ta + 1; tb < 3; ++tb)
            for (int pa = 0; pa < n; ++pa)
                for (int pb = 0; pb < n; ++pb) {
                    int f1 = (int)g.boundary.size();
                    g.boundary.push_back(ta * n + pa);
                    g.involution.push_back(f1 + 1);
                    g.boundary.push_back(tb * n + pb);
                    g.involution.push_back(f1);
                }
    return g;
}

SubdesignResult subdesign(const LatinSquareDesign& d, const std::vector<int>& pts) {
    SubdesignResult res;
    int k = (int)pts.size();
    std::map<int, int> idx;
    for (int i = 0; i < k; ++i) idx[pts[i]] = i;
    res.design.N = k;
    res.point_map = pts;
    for (const auto& ln : d.lines)
        if (idx.count(ln[0]) && idx.count(ln[1]) && idx.count(ln[2]))
            res.design.lines.push_back({idx[ln[0]], idx[ln[1]], idx[ln[2]]});
    FormCheck v = res.design.validate();
    if (!v.ok) throw InvalidDesign("subset does not induce a Latin square design: " + v.note);
    res.graph = design_graph(res.design);
    return res;
}

Order2Report order2_subdesign_check(const LatinSquareDesign& d) {
    Order2Report rep;
    int nl = (int)d.lines.size();
    auto intersect = [&](int i, int j) {
        for (int t = 0; t < 3; ++t)
            if (d.lines[i][t] == d.lines[j][t]) return true;
        return false;
    };
    for (int i = 0; i < nl && rep.holds; ++i)
        for (int j = i + 1; j < nl; ++j) {
            if (!intersect(i, j)) continue;
            // closure of the two lines' points under the line rule
            std::set<int> pts[3];
            std::set<int> line_set = {i, j};
            for (int t = 0; t < 3; ++t) {
                pts[t].insert(d.lines[i][t]);
                pts[t].insert(d.lines[j][t]);
            }
            bool grew = true;
            while (grew) {
                grew = false;
                for (int ta = 0; ta < 3; ++ta)
                    for (int tb = ta + 1; tb < 3; ++tb)
                        for (int pa : pts[ta])
                            for (int pb : pts[tb]) {
                                int li = d.line_through(ta, pa, tb, pb);
                                if (li < 0 || line_set.count(li)) continue;
                                line_set.insert(li);
                                for (int t = 0; t < 3; ++t)
                                    if (pts[t].insert(d.lines[li][t]).second) grew = true;
                            }
            }
            size_t order = pts[0].size();
            if (order != 2 || pts[1].size() != 2 || pts[2].size() != 2) {
                rep.holds = false;
                rep.witness_lines = {i, j};
                rep.witness_order = (int)std::max({pts[0].size(), pts[1].size(), pts[2].size()});
                break;
            }
        }
    return rep;
}

FormCheck ChamberSystem::validate() const {
    FormCheck res;
    // (i) distinct colors agreeing on a pair force equality
    for (int c1 = 0; c1 < rank; ++c1)
        for (int c2 = c1 + 1; c2 < rank; ++c2)
            for (int a = 0; a < nchambers; ++a)
                for (int b = a + 1; b < nchambers; ++b)
                    if (color_class[c1][a] == color_class[c1][b] && color_class[c2][a] == color_class[c2][b]) {
                        res.ok = false;
                        res.note = "two colors agree on distinct chambers";
                        res.witness = {c1, c2, a, b};
                        return res;
                    }
    // (ii) the I-graph is connected
    std::vector<int> comp = residue_components_all();
    for (int v : comp)
        if (v != comp[0]) {
            res.ok = false;
            res.note = "I-graph disconnected";
            return res;
        }
    return res;
}

std::vector<int> ChamberSystem::residue_components_all() const {
    std::vector<int> all(rank);
    for (int i = 0; i < rank; ++i) all[i] = i;
    return residue_components(all);
}

std::vector<std::vector<int>> ChamberSystem::panels(int color) const {
    std::map<int, std::vector<int>> by_class;
    for (int ch = 0; ch < nchambers; ++ch) by_class[color_class[color][ch]].push_back(ch);
    std::vector<std::vector<int>> out;
    for (auto& [k, v] : by_class) out.push_back(v);
    return out;
}

std::vector<int> ChamberSystem::residue_components(const std::vector<int>& colors) const {
    // union-find over chambers joined by any listed color
    std::vector<int> parent(nchambers);
    for (int i = 0; i < nchambers; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int c : colors) {
        std::map<int, int> first_of_class;
        for (int ch = 0; ch < nchambers; ++ch) {
            auto [it, fresh] = first_of_class.try_emplace(color_class[c][ch], ch);
            if (!fresh) parent[find(ch)] = find(it->second);
        }
    }
    std::vector<int> comp(nchambers);
    std::map<int, int> renum;
    for (int i = 0; i < nchambers; ++i) {
        int r = find(i);
        auto [it, fresh] = renum.try_emplace(r, (int)renum.size());
        comp[i] = it->second;
    }
    return comp;
}

LatinChamberReport latin_chamber_system(const std::vector<std::vector<int>>& square) {
    int n = (int)square.size();
    for (const auto& row : square) {
        if ((int)row.size() != n) throw NotLatinSquare("not square");
        for (int v : row)
            if (v < 0 || v >= n) throw NotLatinSquare("symbol out of range");
    }
    for (int r = 0; r < n; ++r) {
        std::vector<bool> seen(n, false);
        for (int c = 0; c < n; ++c) {
            if (seen[square[r][c]]) throw NotLatinSquare("repeated symbol in row");
            seen[square[r][c]] = true;
        }
    }
    for (int c = 0; c < n; ++c) {
        std::vector<bool> seen(n, false);
        for (int r = 0; r < n; ++r) {
            if (seen[square[r][c]]) throw NotLatinSquare("repeated symbol in column");
            seen[square[r][c]] = true;
        }
    }

    LatinChamberReport rep;
    ChamberSystem& cs = rep.system;
    cs.nchambers = n * n;
    cs.rank = 3;
    cs.color_class.assign(3, std::vector<int>(n * n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            int ch = r * n + c;
            cs.color_class[0][ch] = r;
            cs.color_class[1][ch] = c;
            cs.color_class[2][ch] = square[r][c];
        }
    FormCheck ax = cs.validate();
    rep.axioms_ok = ax.ok;
    // Latin property: panels of different colors intersect in exactly one chamber
    for (int c1 = 0; c1 < 3 && rep.latin_property; ++c1)
        for (int c2 = c1 + 1; c2 < 3 && rep.latin_property; ++c2)
            for (int k1 = 0; k1 < n && rep.latin_property; ++k1)
                for (int k2 = 0; k2 < n; ++k2) {
                    int count = 0;
                    for (int ch = 0; ch < n * n; ++ch)
                        if (cs.color_class[c1][ch] == k1 && cs.color_class[c2][ch] == k2) ++count;
                    if (count != 1) {
                        rep.latin_property = false;
                        break;
                    }
                }
    for (int c1 = 0; c1 < 3; ++c1)
        for (int c2 = c1 + 1; c2 < 3; ++c2) {
            auto comp = cs.residue_components({c1, c2});
            int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
            rep.rank2_residues.push_back({{c1, c2}, ncomp});
        }
    return rep;
}

}  // namespace loopcode
