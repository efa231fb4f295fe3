#include "loopcode/tensor_network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace loopcode {

FormCheck FlagGraph::validate(bool require_simple) const {
    FormCheck res;
    int nf = nflags();
    if ((int)involution.size() != nf) {
        res.ok = false;
        res.note = "involution size mismatch";
        return res;
    }
    for (int f = 0; f < nf; ++f) {
        if (boundary[f] < 0 || boundary[f] >= nvertices) {
            res.ok = false;
            res.note = "boundary out of range";
            res.witness = {f};
            return res;
        }
        int jf = involution[f];
        if (jf < 0 || jf >= nf || involution[jf] != f) {
            res.ok = false;
            res.note = "involution not an involution";
            res.witness = {f};
            return res;
        }
    }
    if (require_simple) {
        std::set<std::pair<int, int>> seen;
        for (auto [f, g] : internal_edges()) {
            int u = boundary[f], v = boundary[g];
            if (u == v) {
                res.ok = false;
                res.note = "self-loop";
                res.witness = {f};
                return res;
            }
            auto key = std::minmax(u, v);
            if (!seen.insert({key.first, key.second}).second) {
                res.ok = false;
                res.note = "multiple edge";
                res.witness = {f};
                return res;
            }
        }
    }
    return res;
}

std::vector<std::pair<int, int>> FlagGraph::internal_edges() const {
    std::vector<std::pair<int, int>> e;
    for (int f = 0; f < nflags(); ++f)
        if (involution[f] > f) e.emplace_back(f, involution[f]);
    return e;
}

std::vector<int> FlagGraph::external_flags() const {
    std::vector<int> e;
    for (int f = 0; f < nflags(); ++f)
        if (involution[f] == f) e.push_back(f);
    return e;
}

int FlagGraph::degree(int v) const {
    int d = 0;
    for (int f = 0; f < nflags(); ++f)
        if (boundary[f] == v) ++d;
    return d;
}

std::vector<int> FlagGraph::component_of() const {
    std::vector<int> comp(nvertices, -1);
    int c = 0;
    for (int s = 0; s < nvertices; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack = {s};
        comp[s] = c;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int f = 0; f < nflags(); ++f) {
                if (boundary[f] != v || involution[f] == f) continue;
                int w = boundary[involution[f]];
                if (comp[w] < 0) {
                    comp[w] = c;
                    stack.push_back(w);
                }
            }
        }
        ++c;
    }
    return comp;
}

bool FlagGraph::connected() const {
    if (nvertices == 0) return true;
    auto comp = component_of();
    return *std::max_element(comp.begin(), comp.end()) == 0;
}

FormCheck TensorNetwork::validate() const {
    FormCheck res = g.validate();
    if (!res.ok) return res;
    if ((int)vertex_tensors.size() != g.nvertices || (int)vertex_flags.size() != g.nvertices) {
        res.ok = false;
        res.note = "vertex decoration count mismatch";
        return res;
    }
    for (int v = 0; v < g.nvertices; ++v) {
        if ((int)vertex_flags[v].size() != g.degree(v) ||
            (int)vertex_tensors[v].dims.size() != g.degree(v)) {
            res.ok = false;
            res.note = "tensor rank != vertex degree";
            res.witness = {v};
            return res;
        }
        long long sz = 1;
        for (int d : vertex_tensors[v].dims) {
            if (d != q) {
                res.ok = false;
                res.note = "leg dimension != q";
                res.witness = {v};
                return res;
            }
            sz *= d;
        }
        if (sz != vertex_tensors[v].size()) {
            res.ok = false;
            res.note = "tensor data size mismatch";
            res.witness = {v};
            return res;
        }
        for (int f : vertex_flags[v])
            if (g.boundary[f] != v) {
                res.ok = false;
                res.note = "flag assigned to wrong vertex";
                res.witness = {v, f};
                return res;
            }
    }
    return res;
}

namespace {

// tensor with named legs (flag ids); index 0 fastest
struct Piece {
    std::vector<int> flags;
    std::vector<int> dims;
    std::vector<std::complex<double>> a;
    long long size() const { return (long long)a.size(); }
};

Piece contract_pair(const Piece& x, const Piece& y, long long bound) {
    // shared flags: pairs (f, j(f)) are identified by position lookup in the caller;
    // here shared legs are those whose flag appears in both pieces (already renamed).
    std::vector<int> shared;
    for (int f : x.flags)
        if (std::find(y.flags.begin(), y.flags.end(), f) != y.flags.end()) shared.push_back(f);
    std::vector<int> xf_keep, yf_keep;
    for (int f : x.flags)
        if (std::find(shared.begin(), shared.end(), f) == shared.end()) xf_keep.push_back(f);
    for (int f : y.flags)
        if (std::find(shared.begin(), shared.end(), f) == shared.end()) yf_keep.push_back(f);

    auto dim_of = [](const Piece& p, int flag) {
        for (size_t i = 0; i < p.flags.size(); ++i)
            if (p.flags[i] == flag) return p.dims[i];
        throw Error("contract: missing flag");
    };
    Piece out;
    out.flags = xf_keep;
    out.flags.insert(out.flags.end(), yf_keep.begin(), yf_keep.end());
    long long total = 1;
    for (int f : out.flags) {
        int d = std::find(xf_keep.begin(), xf_keep.end(), f) != xf_keep.end() ? dim_of(x, f) : dim_of(y, f);
        out.dims.push_back(d);
        total *= d;
    }
    if (total > bound) throw ContractionBoundExceeded();
    long long shared_total = 1;
    std::vector<int> shared_dims;
    for (int f : shared) {
        shared_dims.push_back(dim_of(x, f));
        shared_total *= shared_dims.back();
    }
    out.a.assign((size_t)total, {0.0, 0.0});

    // strides
    auto strides_for = [](const Piece& p) {
        std::vector<long long> s(p.flags.size());
        long long m = 1;
        for (size_t i = 0; i < p.flags.size(); ++i) {
            s[i] = m;
            m *= p.dims[i];
        }
        return s;
    };
    auto xs = strides_for(x), ys = strides_for(y);
    auto pos_in = [](const Piece& p, int flag) {
        for (size_t i = 0; i < p.flags.size(); ++i)
            if (p.flags[i] == flag) return (int)i;
        return -1;
    };

    std::vector<long long> out_digit(out.flags.size(), 0);
    for (long long oi = 0; oi < total; ++oi) {
        long long t = oi;
        for (size_t i = 0; i < out.flags.size(); ++i) {
            out_digit[i] = t % out.dims[i];
            t /= out.dims[i];
        }
        std::complex<double> acc = 0;
        std::vector<long long> sh(shared.size(), 0);
        for (long long si = 0; si < shared_total; ++si) {
            long long tt = si;
            for (size_t i = 0; i < shared.size(); ++i) {
                sh[i] = tt % shared_dims[i];
                tt /= shared_dims[i];
            }
            long long xi = 0, yi = 0;
            for (size_t i = 0; i < out.flags.size(); ++i) {
                int px = pos_in(x, out.flags[i]);
                if (px >= 0)
                    xi += out_digit[i] * xs[px];
                else
                    yi += out_digit[i] * ys[pos_in(y, out.flags[i])];
            }
            for (size_t i = 0; i < shared.size(); ++i) {
                xi += sh[i] * xs[pos_in(x, shared[i])];
                yi += sh[i] * ys[pos_in(y, shared[i])];
            }
            acc += x.a[(size_t)xi] * y.a[(size_t)yi];
        }
        out.a[(size_t)oi] = acc;
    }
    return out;
}

}  // namespace

Tensor contract(const TensorNetwork& net, long long bound) {
    FormCheck v = net.validate();
    if (!v.ok) throw Error("contract: invalid network: " + v.note);
    // pieces with flags renamed so glued flags share the smaller id
    std::vector<Piece> pieces;
    auto canon = [&](int f) { return std::min(f, net.g.involution[f]); };
    for (int vx = 0; vx < net.g.nvertices; ++vx) {
        Piece p;
        for (size_t i = 0; i < net.vertex_flags[vx].size(); ++i) {
            p.flags.push_back(canon(net.vertex_flags[vx][i]));
            p.dims.push_back(net.vertex_tensors[vx].dims[i]);
        }
        p.a = net.vertex_tensors[vx].a;
        if (p.a.empty()) p.a = {1.0};
        pieces.push_back(std::move(p));
    }
    if (pieces.empty()) return Tensor::scalar(1.0);

    auto shares = [](const Piece& a, const Piece& b) {
        for (int f : a.flags)
            if (std::find(b.flags.begin(), b.flags.end(), f) != b.flags.end()) return true;
        return false;
    };
    while (pieces.size() > 1) {
        // greedy: smallest resulting intermediate among adjacent pairs (outer product
        // of the two smallest pieces when nothing is adjacent)
        long long best = -1;
        size_t bi = 0, bj = 1;
        bool found_adjacent = false;
        for (size_t i = 0; i < pieces.size(); ++i)
            for (size_t j = i + 1; j < pieces.size(); ++j) {
                bool adj = shares(pieces[i], pieces[j]);
                if (!adj) continue;
                long long inter = 1;
                std::set<int> all(pieces[i].flags.begin(), pieces[i].flags.end());
                for (int f : pieces[j].flags) {
                    if (all.count(f))
                        all.erase(f);
                    else
                        all.insert(f);
                }
                for (int f : all) {
                    (void)f;
                    inter *= net.q;
                }
                if (!found_adjacent || inter < best) {
                    best = inter;
                    bi = i;
                    bj = j;
                    found_adjacent = true;
                }
            }
        if (!found_adjacent) {
            bi = 0;
            bj = 1;
        }
        Piece merged = contract_pair(pieces[bi], pieces[bj], bound);
        pieces.erase(pieces.begin() + bj);
        pieces[bi] = std::move(merged);
    }
    Piece& p = pieces[0];
    // order external legs by flag id
    std::vector<int> order(p.flags.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return p.flags[a] < p.flags[b]; });
    Tensor out;
    for (int i : order) out.dims.push_back(p.dims[i]);
    out.a.assign(p.a.size(), {0.0, 0.0});
    std::vector<long long> strides(p.flags.size());
    {
        long long m = 1;
        for (size_t i = 0; i < p.flags.size(); ++i) {
            strides[i] = m;
            m *= p.dims[i];
        }
    }
    for (size_t src = 0; src < p.a.size(); ++src) {
        long long t = (long long)src, dst = 0, mult = 1;
        std::vector<long long> digit(p.flags.size());
        for (size_t i = 0; i < p.flags.size(); ++i) {
            digit[i] = t % p.dims[i];
            t /= p.dims[i];
        }
        for (int i : order) {
            dst += digit[i] * mult;
            mult *= p.dims[i];
        }
        out.a[(size_t)dst] = p.a[src];
    }
    return out;
}

std::vector<std::vector<int>> cut_sets(const FlagGraph& g, int max_size) {
    if (!g.connected()) throw NotConnected();
    auto edges = g.internal_edges();
    int ne = (int)edges.size();
    std::vector<std::vector<int>> out;
    std::vector<int> chosen;

    auto evaluate = [&]() {
        std::vector<bool> removed(ne, false);
        for (int e : chosen) removed[e] = true;
        std::vector<std::vector<int>> adj(g.nvertices);
        for (int e = 0; e < ne; ++e) {
            if (removed[e]) continue;
            int u = g.boundary[edges[e].first], v = g.boundary[edges[e].second];
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        std::vector<int> comp(g.nvertices, -1);
        int c = 0;
        for (int s = 0; s < g.nvertices; ++s) {
            if (comp[s] >= 0) continue;
            std::vector<int> stack = {s};
            comp[s] = c;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : adj[v])
                    if (comp[w] < 0) {
                        comp[w] = c;
                        stack.push_back(w);
                    }
            }
            ++c;
        }
        if (c != 2) return;
        // every removed edge must cross the two components (minimality of the split)
        for (int e : chosen)
            if (comp[g.boundary[edges[e].first]] == comp[g.boundary[edges[e].second]]) return;
        out.push_back(chosen);
    };
    // subsets of size <= max_size by direct combination enumeration
    std::function<void(int)> rec = [&](int start) {
        if (!chosen.empty()) evaluate();
        if ((int)chosen.size() == max_size) return;
        for (int e = start; e < ne; ++e) {
            chosen.push_back(e);
            rec(e + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    return out;
}

CutStates cut_states(const TensorNetwork& net, const std::vector<int>& cut_edge_indices,
                     long long bound) {
    auto edges = net.g.internal_edges();
    // open the cut edges: both flags become external
    FlagGraph g2 = net.g;
    for (int e : cut_edge_indices) {
        auto [f1, f2] = edges[e];
        g2.involution[f1] = f1;
        g2.involution[f2] = f2;
    }
    auto comp = g2.component_of();
    int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
    if (ncomp != 2) throw Error("cut_states: cut does not split into two components");

    CutStates cs;
    for (int side = 0; side < 2; ++side) {
        TensorNetwork sub;
        sub.q = net.q;
        std::vector<int> vmap(net.g.nvertices, -1);
        std::vector<int> fmap(net.g.nflags(), -1);
        for (int v = 0; v < net.g.nvertices; ++v) {
            if (comp[v] != side) continue;
            vmap[v] = sub.g.nvertices++;
            (side == 0 ? cs.vertices1 : cs.vertices2).push_back(v);
        }
        for (int f = 0; f < net.g.nflags(); ++f) {
            if (vmap[net.g.boundary[f]] < 0) continue;
            fmap[f] = (int)sub.g.boundary.size();
            sub.g.boundary.push_back(vmap[net.g.boundary[f]]);
            sub.g.involution.push_back(-1);
        }
        for (int f = 0; f < net.g.nflags(); ++f) {
            if (fmap[f] < 0) continue;
            int jf = g2.involution[f];
            sub.g.involution[fmap[f]] = (jf == f || fmap[jf] < 0) ? fmap[f] : fmap[jf];
        }
        sub.vertex_tensors.resize(sub.g.nvertices);
        sub.vertex_flags.resize(sub.g.nvertices);
        for (int v = 0; v < net.g.nvertices; ++v) {
            if (vmap[v] < 0) continue;
            sub.vertex_tensors[vmap[v]] = net.vertex_tensors[v];
            for (int f : net.vertex_flags[v]) sub.vertex_flags[vmap[v]].push_back(fmap[f]);
        }
        // contract; external legs sorted by (new) flag id preserve the sorted cut-edge order
        Tensor t = contract(sub, bound);
        (side == 0 ? cs.side1 : cs.side2) = std::move(t);
    }
    return cs;
}

TensorNetwork component_subnetwork(const TensorNetwork& net, int component) {
    auto comp = net.g.component_of();
    TensorNetwork sub;
    sub.q = net.q;
    std::vector<int> vmap(net.g.nvertices, -1);
    std::vector<int> fmap(net.g.nflags(), -1);
    for (int v = 0; v < net.g.nvertices; ++v)
        if (comp[v] == component) vmap[v] = sub.g.nvertices++;
    for (int f = 0; f < net.g.nflags(); ++f) {
        if (vmap[net.g.boundary[f]] < 0) continue;
        fmap[f] = (int)sub.g.boundary.size();
        sub.g.boundary.push_back(vmap[net.g.boundary[f]]);
        sub.g.involution.push_back(-1);
    }
    for (int f = 0; f < net.g.nflags(); ++f) {
        if (fmap[f] < 0) continue;
        int jf = net.g.involution[f];
        sub.g.involution[fmap[f]] = (fmap[jf] < 0) ? fmap[f] : fmap[jf];
    }
    sub.vertex_tensors.resize(sub.g.nvertices);
    sub.vertex_flags.resize(sub.g.nvertices);
    for (int v = 0; v < net.g.nvertices; ++v) {
        if (vmap[v] < 0) continue;
        sub.vertex_tensors[vmap[v]] = net.vertex_tensors[v];
        for (int f : net.vertex_flags[v]) sub.vertex_flags[vmap[v]].push_back(fmap[f]);
    }
    return sub;
}

DensityMatrix reduced_density_matrix(const Tensor& state, const std::vector<int>& legs_a) {
    int nlegs = (int)state.dims.size();
    std::vector<int> in_a(nlegs, 0);
    for (int l : legs_a) in_a[l] = 1;
    long long da = 1, db = 1;
    for (int i = 0; i < nlegs; ++i) (in_a[i] ? da : db) *= state.dims[i];
    double norm2 = 0;
    for (const auto& x : state.a) norm2 += std::norm(x);
    if (norm2 <= 0) throw Error("reduced_density_matrix: zero state");

    auto split_index = [&](long long idx) {
        long long ia = 0, ib = 0, ma = 1, mb = 1;
        for (int i = 0; i < nlegs; ++i) {
            long long d = idx % state.dims[i];
            idx /= state.dims[i];
            if (in_a[i]) {
                ia += d * ma;
                ma *= state.dims[i];
            } else {
                ib += d * mb;
                mb *= state.dims[i];
            }
        }
        return std::make_pair(ia, ib);
    };
    std::vector<std::vector<std::complex<double>>> mat((size_t)da,
                                                       std::vector<std::complex<double>>((size_t)db, 0.0));
    for (long long idx = 0; idx < (long long)state.a.size(); ++idx) {
        auto [ia, ib] = split_index(idx);
        mat[(size_t)ia][(size_t)ib] = state.a[(size_t)idx];
    }
    DensityMatrix rho;
    rho.labels = legs_a;
    rho.rho.assign((size_t)da, std::vector<std::complex<double>>((size_t)da, 0.0));
    for (long long i = 0; i < da; ++i)
        for (long long j = 0; j < da; ++j) {
            std::complex<double> acc = 0;
            for (long long b = 0; b < db; ++b) acc += mat[(size_t)i][(size_t)b] * std::conj(mat[(size_t)j][(size_t)b]);
            rho.rho[(size_t)i][(size_t)j] = acc / norm2;
        }
    return rho;
}

double DensityMatrix::trace() const {
    double t = 0;
    for (size_t i = 0; i < rho.size(); ++i) t += rho[i][i].real();
    return t;
}

std::vector<double> hermitian_eigenvalues(std::vector<std::vector<std::complex<double>>> a) {
    int n = (int)a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) off += std::norm(a[i][j]);
        if (off < 1e-24) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-18) continue;
                // unitary 2x2 rotation annihilating a[p][q] (complex Jacobi)
                std::complex<double> apq = a[p][q];
                double app = a[p][p].real(), aqq = a[q][q].real();
                double phi = std::arg(apq);
                double absa = std::abs(apq);
                double tau_ = (aqq - app) / (2 * absa);
                double t = (tau_ >= 0 ? 1.0 : -1.0) / (std::abs(tau_) + std::sqrt(1 + tau_ * tau_));
                double c = 1.0 / std::sqrt(1 + t * t);
                double s = t * c;
                std::complex<double> ei(std::cos(phi), std::sin(phi));
                // G: rows/cols p,q: [c, s*conj(ei); -s*ei, c] applied as G^H A G
                for (int k = 0; k < n; ++k) {
                    std::complex<double> akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * std::conj(ei) * akq;
                    a[k][q] = s * ei * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    std::complex<double> apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * ei * aqk;
                    a[q][k] = s * std::conj(ei) * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a[i][i].real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

double entropy_of_density(const DensityMatrix& rho, bool log_base_q, int q) {
    auto ev = hermitian_eigenvalues(rho.rho);
    double s = 0;
    for (double l : ev)
        if (l > 1e-12) s -= l * std::log(l);
    if (log_base_q) s /= std::log((double)q);
    return s;
}

double entanglement_entropy(const TensorNetwork& net, const std::vector<int>& external_legs_a,
                            bool log_base_q, long long bound) {
    Tensor state = contract(net, bound);
    if (state.dims.empty()) throw Error("entanglement_entropy: no external legs");
    DensityMatrix rho = reduced_density_matrix(state, external_legs_a);
    return entropy_of_density(rho, log_base_q, net.q);
}

PerfectNetworkResult build_perfect_network(std::shared_ptr<const AlmostSymplecticSpace> space,
                                           const Subspace& l, const std::optional<Enhancement>& alpha) {
    PerfectTensorResult pt = perfect_tensor_from_lagrangian(space, l, alpha, true);
    if (!pt.report.perfect) throw NotPerfect();
    const auto& S = *space;
    int n = pt.legs;
    int q = pt.q;

    PerfectNetworkResult res;
    res.n = n;
    res.vertex_tensor_exact = tensor_on_v(pt);
    res.vertex_tensor_report = is_perfect_tensor(res.vertex_tensor_exact, 2 * n, q);

    auto points = l.enumerate();
    res.lagrangian_points = points;
    std::map<long long, int> pidx;
    for (int i = 0; i < (int)points.size(); ++i) pidx[points[i]] = i;
    int npts = (int)points.size();

    // vertices: typed points u_i, i in {0,1,2}; vertex id = type * npts + point index
    TensorNetwork& net = res.net;
    net.q = q;
    net.g.nvertices = 3 * npts;
    // per-vertex flags: out-leg (r, coil) toward next type carries position index r,
    // in-leg from previous type carries momentum index r.
    // flag layout: vertex v gets 2n flags: out_0..out_{n-1}, in_0..in_{n-1}
    int flags_per_vertex = 2 * n;
    net.g.boundary.assign(3 * npts * flags_per_vertex, 0);
    net.g.involution.assign(3 * npts * flags_per_vertex, 0);
    auto flag_id = [&](int vtx, bool out, int r) { return vtx * flags_per_vertex + (out ? r : n + r); };
    for (int vtx = 0; vtx < 3 * npts; ++vtx)
        for (int f = 0; f < flags_per_vertex; ++f) net.g.boundary[vtx * flags_per_vertex + f] = vtx;

    // basis of L in enumeration order: subspace RREF rows
    std::vector<long long> lbasis;
    for (int i = 0; i < l.dim(); ++i) lbasis.push_back(l.basis_index(i));
    if ((int)lbasis.size() != n) throw Error("build_perfect_network: dim L != n");

    for (int type = 0; type < 3; ++type) {
        int next = (type + 1) % 3;
        for (int pi = 0; pi < npts; ++pi) {
            long long u = points[pi];
            int vtx = type * npts + pi;
            for (int r = 0; r < n; ++r) {
                long long u2 = S.V.add(u, lbasis[r]);
                int vtx2 = next * npts + pidx.at(u2);
                int f1 = flag_id(vtx, true, r);
                int f2 = flag_id(vtx2, false, r);
                net.g.involution[f1] = f2;
                net.g.involution[f2] = f1;
            }
        }
    }

    // shared vertex tensor (float view), legs: positions (out) then momenta (in)
    Tensor vt;
    vt.dims.assign(2 * n, q);
    vt.a.resize(res.vertex_tensor_exact.size());
    for (size_t i = 0; i < vt.a.size(); ++i) vt.a[i] = res.vertex_tensor_exact[i].to_complex();
    net.vertex_tensors.assign(3 * npts, vt);
    net.vertex_flags.assign(3 * npts, {});
    for (int vtx = 0; vtx < 3 * npts; ++vtx)
        for (int f = 0; f < flags_per_vertex; ++f) net.vertex_flags[vtx].push_back(vtx * flags_per_vertex + f);

    FormCheck v = net.validate();
    if (!v.ok) throw Error("build_perfect_network: " + v.note);
    return res;
}

}  // namespace loopcode
