#include "loopcode/json_io.hpp"

#include <sstream>

namespace loopcode {

FieldSpec field_spec_from_json(const json& j) {
    int p = j.at("p").get<int>();
    int r = j.value("r", 1);
    if (j.contains("modulus")) return FieldSpec::make(p, r, j.at("modulus").get<std::vector<int>>());
    return FieldSpec::make(p, r);
}

json field_spec_to_json(const FieldSpec& s) { return json{{"p", s.p}, {"r", s.r}, {"modulus", s.modulus}}; }

long long vector_from_json(const json& j, const VSpace& v) {
    if (j.is_number_integer()) return j.get<long long>();
    std::vector<int> c = j.get<std::vector<int>>();
    if ((int)c.size() != v.dim()) throw Error("vector length != dim");
    return v.index(c);
}

json vector_to_json(long long idx, const VSpace& v) { return json(v.coords(idx)); }

Subspace subspace_from_json(const json& j, const VSpace& v) {
    const json& rows = j.is_array() ? j : j.at("vectors");
    FqMatrix m;
    for (const auto& row : rows) m.push_back(v.coords(vector_from_json(row, v)));
    return Subspace::span(v, m);
}

json subspace_to_json(const Subspace& s) {
    json rows = json::array();
    for (const auto& row : s.basis()) rows.push_back(row);
    return json{{"vectors", rows}};
}

FormTable form_from_json(const json& j, const VSpace& v, const Codomain& cod) {
    if (j.contains("standard_symplectic") && j.at("standard_symplectic").get<bool>())
        return FormTable::standard_symplectic(v, cod);
    if (j.contains("standard_polarization") && j.at("standard_polarization").get<bool>())
        return FormTable::standard_polarization(v, cod);
    if (j.contains("bilinear_matrix")) {
        auto m = j.at("bilinear_matrix").get<std::vector<std::vector<int>>>();
        return FormTable::from_bilinear_matrix(v, cod, m);
    }
    if (j.contains("random")) {
        const json& r = j.at("random");
        return FormTable::random(r.value("arity", 2), v, cod, r.at("seed").get<uint64_t>(),
                                 r.value("normalized", true));
    }
    int arity = j.at("arity").get<int>();
    FormTable f = FormTable::zero(arity, v, cod);
    for (const auto& e : j.at("values")) {
        std::vector<long long> args;
        for (const auto& a : e.at("args")) args.push_back(vector_from_json(a, v));
        if ((int)args.size() != arity) throw Error("form value tuple arity mismatch");
        f.set(args, e.at("val").get<int>());
    }
    return f;
}

json form_to_json(const FormTable& f) {
    json out;
    out["arity"] = f.arity();
    out["dim"] = f.domain().dim();
    out["codomain"] = f.codomain().is_ring() ? "ring" : "field";
    if (f.matrix_backed()) {
        out["bilinear_matrix"] = f.bilinear_matrix();
        return out;
    }
    json vals = json::array();
    long long n = f.domain().count();
    long long total = 1;
    for (int i = 0; i < f.arity(); ++i) total *= n;
    std::vector<long long> args(f.arity());
    for (long long t = 0; t < total; ++t) {
        long long tt = t;
        for (int i = f.arity() - 1; i >= 0; --i) {
            args[i] = tt % n;
            tt /= n;
        }
        int val = f.value(args);
        if (val == 0) continue;
        json e;
        e["args"] = json::array();
        for (long long a : args) e["args"].push_back(vector_to_json(a, f.domain()));
        e["val"] = val;
        vals.push_back(std::move(e));
    }
    out["values"] = std::move(vals);
    return out;
}

std::shared_ptr<AlmostSymplecticSpace> space_from_json(const json& j) {
    FieldSpec spec = field_spec_from_json(j.at("field"));
    int dim = j.at("dim").get<int>();
    auto F = std::make_shared<Fq>(spec);
    VSpace v(F, dim);
    Codomain cod = spec.p == 2 ? Codomain::ring(std::make_shared<GaloisRing>(spec)) : Codomain::field(F);

    auto sp = std::make_shared<AlmostSymplecticSpace>();
    sp->V = v;
    sp->A = cod;
    sp->reduction_tagged = j.value("reduction_tagged", false);
    if (j.contains("beta")) sp->beta = form_from_json(j.at("beta"), v, cod);
    if (j.contains("omega")) {
        sp->omega = form_from_json(j.at("omega"), v, cod);
    } else if (sp->beta) {
        // omega = beta - beta^T
        FormTable b = sp->beta->materialize();
        sp->omega = FormTable::from_function(2, v, cod, [&](const std::vector<long long>& a) {
            return cod.sub(b.value2(a[0], a[1]), b.value2(a[1], a[0]));
        });
    } else {
        throw Error("space needs omega or beta");
    }
    if (j.contains("theta")) sp->theta = form_from_json(j.at("theta"), v, cod);
    return sp;
}

FiniteMagma magma_from_json(const json& j) {
    FiniteMagma m;
    m.table = j.at("table").get<std::vector<std::vector<int>>>();
    if (j.contains("elements"))
        for (const auto& e : j.at("elements")) m.labels.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    else
        for (size_t i = 0; i < m.table.size(); ++i) m.labels.push_back(std::to_string(i));
    return m;
}

json magma_to_json(const FiniteMagma& m) { return json{{"elements", m.labels}, {"table", m.table}}; }

LinearCode code_from_json(const json& j) {
    FieldSpec spec = j.contains("field") ? field_spec_from_json(j.at("field")) : FieldSpec::prime_field(2);
    auto F = std::make_shared<Fq>(spec);
    int n = j.at("n").get<int>();
    FqMatrix g = j.at("generator").get<FqMatrix>();
    return LinearCode::from_rows(F, n, g);
}

json code_to_json(const LinearCode& c) {
    return json{{"field", field_spec_to_json(c.field->spec())}, {"n", c.n}, {"generator", c.gen}};
}

BilinearOp bilinear_op_from_json(const json& j) {
    int dim = j.at("dim").get<int>();
    int p = 0;
    if (j.contains("field") && j.at("field").is_number_integer()) p = j.at("field").get<int>();
    BilinearOp op = BilinearOp::zero(dim, p);
    const json& c = j.at("c");
    for (int i = 0; i < dim; ++i)
        for (int jj = 0; jj < dim; ++jj)
            for (int k = 0; k < dim; ++k) {
                const json& v = c.at(i).at(jj).at(k);
                if (v.is_number_integer())
                    op.c[i][jj][k] = BigRational(v.get<long long>());
                else {
                    std::string s = v.get<std::string>();
                    auto slash = s.find('/');
                    if (slash == std::string::npos)
                        op.c[i][jj][k] = BigRational(BigInt::from_string(s), BigInt(1));
                    else
                        op.c[i][jj][k] = BigRational(BigInt::from_string(s.substr(0, slash)),
                                                     BigInt::from_string(s.substr(slash + 1)));
                }
            }
    return op;
}

json design_to_json(const LatinSquareDesign& d) {
    json lines = json::array();
    for (const auto& ln : d.lines) lines.push_back({ln[0], ln[1], ln[2]});
    return json{{"N", d.N}, {"lines", lines}};
}

LatinSquareDesign design_from_json(const json& j) {
    LatinSquareDesign d;
    d.N = j.at("N").get<int>();
    for (const auto& ln : j.at("lines")) d.lines.push_back({ln.at(0).get<int>(), ln.at(1).get<int>(), ln.at(2).get<int>()});
    return d;
}

json tensor_to_json(const CycVector& t, int legs, int q) {
    json out;
    out["legs"] = legs;
    out["q"] = q;
    out["index_order"] = "leg 0 fastest";
    json entries = json::array();
    for (const auto& x : t) {
        json coeffs = json::array();
        for (const auto& c : x.coeffs()) coeffs.push_back(c.str());
        auto z = x.to_complex();
        entries.push_back(json{{"cyclotomic", coeffs}, {"re", z.real()}, {"im", z.imag()}});
    }
    out["conductor"] = t.empty() ? 1 : t[0].conductor();
    out["entries"] = std::move(entries);
    return out;
}

std::string graph_to_dot(const FlagGraph& g, const std::vector<std::string>& names) {
    std::ostringstream os;
    os << "graph G {\n";
    for (int v = 0; v < g.nvertices; ++v) {
        os << "  v" << v;
        if ((int)names.size() > v) os << " [label=\"" << names[v] << "\"]";
        os << ";\n";
    }
    for (auto [f1, f2] : g.internal_edges())
        os << "  v" << g.boundary[f1] << " -- v" << g.boundary[f2] << ";\n";
    os << "}\n";
    return os.str();
}

std::string content_hash(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace loopcode
