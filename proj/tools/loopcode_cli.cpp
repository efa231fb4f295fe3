// Command-line driver: JSON in, JSON/CSV/DOT out.
// Exit codes: 0 = all checked properties hold, 1 = a checked property fails
// (witness in the report), 2 = usage or input error.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>

#include "loopcode/json_io.hpp"
#include "loopcode/tensor_network.hpp"

using namespace loopcode;

namespace {

struct Bounds {
    long long enumeration = 1ll << 20;
    long long dimension = 6561;
    long long contraction = 59049;
};

Bounds bounds_from_env() {
    Bounds b;
    if (const char* s = std::getenv("LOOPCODE_ENUM_BOUND")) b.enumeration = std::atoll(s);
    if (const char* s = std::getenv("LOOPCODE_DIM_BOUND")) b.dimension = std::atoll(s);
    if (const char* s = std::getenv("LOOPCODE_CONTRACTION_BOUND")) b.contraction = std::atoll(s);
    return b;
}

class Report {
  public:
    Report(const std::string& command, uint64_t seed) {
        body_["command"] = command;
        body_["seed"] = seed;
        body_["conventions"] = {
            {"layout", "halves: coordinates q1..qn, p1..pn"},
            {"index_order", "coordinate 0 fastest"},
            {"gamma_r", "corrected: beta(u,v+w)-beta(u,v)-beta(u,w)"},
            {"entropy", "von Neumann, -Tr(rho log rho)"},
            {"chi", "coefficient-sum character, chi(1) = zeta_p (i for p = 2)"},
            {"psi_default", "trivial"},
        };
        body_["inputs"] = json::object();
        body_["checks"] = json::array();
        body_["counts"] = json::object();
    }

    void input(const std::string& path, const std::string& text) {
        body_["inputs"][path] = content_hash(text);
    }
    // source: "verified" = computed this run; "asserted" = formula-level claim
    void check(const std::string& name, bool pass, const json& witness = nullptr,
               const std::string& source = "verified") {
        json c{{"name", name}, {"pass", pass}, {"source", source}};
        if (!witness.is_null()) c["witness"] = witness;
        body_["checks"].push_back(c);
        all_pass_ = all_pass_ && pass;
    }
    void count(const std::string& name, long long v) { body_["counts"][name] = v; }
    void attach(const std::string& key, json v) { body_[key] = std::move(v); }
    bool ok() const { return all_pass_; }

    int finish(const std::string& out_path, double elapsed_ms) {
        body_["verdict"] = all_pass_;
        std::string hashed = body_.dump();
        json full = body_;
        full["report_hash"] = content_hash(hashed);
        full["timings_ms"] = elapsed_ms;
        if (out_path.empty()) {
            std::cout << full.dump(2) << "\n";
        } else {
            std::ofstream f(out_path);
            f << full.dump(2) << "\n";
        }
        return all_pass_ ? 0 : 1;
    }

  private:
    json body_;
    bool all_pass_ = true;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

json load_json(const std::string& path, Report& rep) {
    std::string text = slurp(path);
    rep.input(path, text);
    return json::parse(text);
}

json witness_tuple(const std::vector<long long>& w) {
    json a = json::array();
    for (long long x : w) a.push_back(x);
    return a;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    f << content;
}

std::optional<Enhancement> maybe_enhance(const AlmostSymplecticSpace& sp, const Subspace& c,
                                         Report& rep, const std::string& name) {
    if (!sp.char2()) return std::nullopt;
    EnhancementFailure why;
    auto alpha = find_enhancement(c, *sp.beta, &why);
    rep.check(name + " enhancement exists", alpha.has_value(),
              alpha ? json(nullptr) : json(why.reason));
    return alpha;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational algebra for code loops, quantum codes and designs"};
    app.require_subcommand(1);
    Bounds bounds = bounds_from_env();
    uint64_t seed = 0;
    std::string out_path;
    app.add_option("--seed", seed, "seed recorded in reports and used by samplers");
    app.add_option("--out", out_path, "report output path (default stdout)");

    auto* sc_verify = app.add_subcommand("verify-loop", "check a multiplication table");
    std::string verify_table;
    bool verify_moufang = false, verify_invariants = false;
    sc_verify->add_option("table", verify_table)->required();
    sc_verify->add_flag("--moufang", verify_moufang);
    sc_verify->add_flag("--invariants", verify_invariants);

    auto* sc_build = app.add_subcommand("build-loop", "construct the code loop of a space");
    std::string build_space, build_emit;
    sc_build->add_option("space", build_space)->required();
    sc_build->add_option("--emit-table", build_emit, "write the loop table as JSON");

    auto* sc_griess = app.add_subcommand("griess", "code loop of a doubly even binary code");
    std::string griess_code;
    sc_griess->add_option("code", griess_code)->required();

    auto* sc_forms = app.add_subcommand("forms-check", "predicates of an almost-symplectic space");
    std::string forms_space;
    sc_forms->add_option("space", forms_space)->required();

    auto* sc_crss = app.add_subcommand("crss", "joint eigenspace codes from an isotropic subspace");
    std::string crss_space, crss_c, crss_char = "trivial", crss_export;
    bool crss_distance = false;
    sc_crss->add_option("space", crss_space)->required();
    sc_crss->add_option("--isotropic", crss_c)->required();
    sc_crss->add_option("--char", crss_char, "character to export/inspect: trivial | all | <index>");
    sc_crss->add_option("--export", crss_export, "write the selected code (basis + stabilizer)");
    sc_crss->add_flag("--distance", crss_distance, "search the largest verified distance");

    auto* sc_pt = app.add_subcommand("perfect-tensor", "stabilizer tensor of a Lagrangian");
    std::string pt_space, pt_l, pt_export;
    bool pt_all_splits = false;
    sc_pt->add_option("space", pt_space)->required();
    sc_pt->add_option("--lagrangian", pt_l)->required();
    sc_pt->add_flag("--check-all-splits", pt_all_splits);
    sc_pt->add_option("--export", pt_export, "tensor JSON output path");

    auto* sc_net = app.add_subcommand("network", "tensor network on the subdesign of a Lagrangian");
    std::string net_space, net_l, net_csv, net_dot;
    sc_net->add_option("space", net_space)->required();
    sc_net->add_option("--lagrangian", net_l)->required();
    sc_net->add_option("--entropy-csv", net_csv);
    sc_net->add_option("--dot", net_dot);

    auto* sc_design = app.add_subcommand("design", "Thomsen design of a loop");
    std::string design_loop, design_dot, design_sub;
    bool design_central = false, design_from_space = false;
    sc_design->add_option("loop", design_loop, "loop table JSON, or a space JSON with --from-space")
        ->required();
    sc_design->add_flag("--from-space", design_from_space);
    sc_design->add_flag("--check-central", design_central);
    sc_design->add_option("--graph", design_dot, "design graph DOT output");
    sc_design->add_option("--subdesign", design_sub, "isotropic subspace JSON (with --from-space)");

    auto* sc_chambers = app.add_subcommand("chambers", "Latin chamber system of a square");
    std::string chambers_in;
    sc_chambers->add_option("square", chambers_in, "JSON {\"square\":[[...]]} or CSV")->required();

    auto* sc_codes = app.add_subcommand("codes", "classical code parameters and point clouds");
    std::string codes_params, codes_cloud, codes_csv;
    sc_codes->add_option("--params", codes_params, "single code JSON");
    sc_codes->add_option("--cloud", codes_cloud, "JSON list of codes");
    sc_codes->add_option("--csv", codes_csv, "cloud CSV output");

    auto* sc_id = app.add_subcommand("identities", "Malcev / F-identity checkers");
    std::string id_bracket, id_circ, id_fbracket;
    sc_id->add_option("--malcev", id_bracket, "bracket structure constants JSON");
    sc_id->add_option("--f-identity", id_circ, "circ structure constants JSON (with --bracket)");
    sc_id->add_option("--bracket", id_fbracket, "bracket for the F-identity check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    auto t0 = std::chrono::steady_clock::now();

    try {
        Report rep(app.get_subcommands()[0]->get_name(), seed);
        auto elapsed = [&]() {
            return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        };

        if (sc_verify->parsed()) {
            FiniteMagma m = magma_from_json(load_json(verify_table, rep));
            try {
                TableLoop loop(m);
                rep.check("loop axioms", true);
                rep.count("order", loop.size());
                if (verify_moufang) {
                    MoufangReport mr = is_moufang(loop);
                    rep.check("moufang", mr.three_variable,
                              mr.three_variable
                                  ? json(nullptr)
                                  : json({mr.witness3[0], mr.witness3[1], mr.witness3[2]}));
                    // the literal four-variable word identity holds iff the loop is a group
                    rep.attach("four_variable_identity", mr.four_variable);
                }
                if (verify_invariants) {
                    LoopInvariants inv = loop_invariants(loop);
                    rep.attach("invariants",
                               json{{"moufang_centre", inv.moufang_centre},
                                    {"nucleus", inv.nucleus},
                                    {"centre", inv.centre},
                                    {"associator_trivial", inv.associator_trivial},
                                    {"element_order", inv.element_order}});
                    rep.check("nucleus is a subgroup", inv.nucleus_is_subgroup);
                    rep.check("centre is an abelian subgroup", inv.centre_is_abelian_subgroup);
                }
            } catch (const Error& e) {
                rep.check("loop axioms", false, e.what());
            }
            return rep.finish(out_path, elapsed());
        }

        if (sc_build->parsed()) {
            auto sp = space_from_json(load_json(build_space, rep));
            FormCheck v = sp->validate();
            rep.check("space validates", v.ok, v.ok ? json(nullptr) : json(v.note));
            if (!v.ok) return rep.finish(out_path, elapsed());
            auto loop = build_loop(sp);
            rep.count("order", loop->size());
            MoufangReport mr = is_moufang(*loop);
            rep.attach("moufang", mr.three_variable);
            rep.attach("four_variable_identity", mr.four_variable);
            FormTable gamma =
                hochschild_d(sp->char2() ? sp->beta->materialize() : sp->omega.materialize());
            FormCheck mc = moufang_condition(gamma);
            rep.check("cohomological moufang condition agrees with the loop check",
                      mc.ok == mr.three_variable);
            if (!build_emit.empty() && loop->size() <= TableLoop::kTableBound) {
                TableLoop table = TableLoop::from_loop(*loop);
                write_file(build_emit, magma_to_json(table.magma()).dump(2));
            }
            return rep.finish(out_path, elapsed());
        }

        if (sc_griess->parsed()) {
            LinearCode c = code_from_json(load_json(griess_code, rep));
            rep.check("doubly even", is_doubly_even(c));
            GriessResult g = griess_code_loop(c.enumerate_bitmasks(), c.n);
            rep.count("loop order", g.loop->size());
            MoufangReport mr = is_moufang(*g.loop);
            rep.check("moufang", mr.three_variable);
            rep.attach("four_variable_identity", mr.four_variable);
            LoopInvariants inv = loop_invariants(*g.loop);
            rep.check("nonassociative", !inv.associator_trivial);
            return rep.finish(out_path, elapsed());
        }

        if (sc_forms->parsed()) {
            auto sp = space_from_json(load_json(forms_space, rep));
            FormCheck as = is_almost_symplectic(sp->omega);
            rep.check("omega almost symplectic", as.ok, as.ok ? json(nullptr) : json(as.note));
            if (sp->beta) {
                rep.check("beta is a polarization", is_polarization(*sp->beta, sp->omega, false).ok);
                rep.check("beta normalized", is_polarization(*sp->beta, sp->omega, true).ok);
                FormTable gamma = hochschild_d(sp->beta->materialize());
                FormCheck mf = moufang_condition(gamma);
                rep.check("moufang condition of d beta", mf.ok,
                          mf.ok ? json(nullptr) : witness_tuple(mf.witness));
                auto [gl, gr] = gamma_defects(sp->beta->materialize());
                FormTable diff = gr.add(gl.scaled(sp->A.neg(sp->A.one())));
                rep.check("gamma_r - gamma_l = d beta", diff.same_table(gamma));
            }
            FormTable theta = sp->theta ? *sp->theta : FormTable::zero(1, sp->V, sp->A);
            FormCheck lcs = is_lcs(sp->omega, theta);
            rep.check("locally conformally symplectic", lcs.ok,
                      lcs.ok ? json(nullptr) : json(lcs.note));
            return rep.finish(out_path, elapsed());
        }

        if (sc_crss->parsed()) {
            auto sp = space_from_json(load_json(crss_space, rep));
            Subspace c = subspace_from_json(load_json(crss_c, rep), sp->V);
            rep.check("C isotropic", is_isotropic(c, sp->omega, bounds.enumeration));
            auto alpha = maybe_enhance(*sp, c, rep, "stabilizer");
            CrssResult r = crss_code(sp, c, alpha);
            rep.check("operators commute", r.commuting);
            rep.check("projectors idempotent", r.projectors_idempotent);
            rep.check("projectors mutually orthogonal", r.projectors_orthogonal);
            rep.check("projectors sum to identity", r.projectors_complete);
            rep.count("model dimension", r.model.dim());
            json dims = json::array();
            long long total = 0;
            for (const auto& code : r.codes) {
                dims.push_back(json{{"psi", code.psi}, {"dim", code.dim}});
                total += code.dim;
            }
            rep.attach("eigenspace_dims", dims);
            rep.check("eigenspace dimensions sum to the model dimension", total == r.model.dim());
            long long expected = 1;
            for (int i = 0; i < r.model.legs() - c.dim(); ++i) expected *= sp->V.field().q();
            bool uniform = true;
            for (const auto& code : r.codes) uniform = uniform && code.dim == expected;
            rep.check("each eigenspace has dimension q^(n-k)", uniform, nullptr, "asserted");

            size_t selected = 0;  // trivial character is the all-zero tuple, index 0
            if (crss_char != "trivial" && crss_char != "all") selected = (size_t)std::stoul(crss_char);
            if (selected >= r.codes.size()) throw Error("character index out of range");
            if (crss_distance) {
                DistanceReport dr = code_distance_check(r.codes[selected], r.model, 1, true);
                rep.attach("distance", json{{"psi", r.codes[selected].psi}, {"max_d", dr.max_d}});
            }
            if (!crss_export.empty()) {
                const QuantumCode& code = r.codes[selected];
                json basis = json::array();
                for (const auto& b : code.basis) {
                    json vec = json::array();
                    for (const auto& x : b) {
                        json coeffs = json::array();
                        for (const auto& cc : x.coeffs()) coeffs.push_back(cc.str());
                        vec.push_back(coeffs);
                    }
                    basis.push_back(vec);
                }
                json stab = json::array();
                for (long long vtx : r.stabilizer_elems)
                    stab.push_back(vector_to_json(vtx, sp->V));
                write_file(crss_export, json{{"psi", code.psi},
                                             {"dim", code.dim},
                                             {"conductor", r.model.conductor()},
                                             {"basis", basis},
                                             {"stabilizer", stab}}
                                            .dump(2));
            }
            return rep.finish(out_path, elapsed());
        }

        if (sc_pt->parsed()) {
            auto sp = space_from_json(load_json(pt_space, rep));
            Subspace l = subspace_from_json(load_json(pt_l, rep), sp->V);
            rep.check("L lagrangian", is_lagrangian(l, sp->omega, bounds.enumeration));
            auto alpha = maybe_enhance(*sp, l, rep, "lagrangian");
            PerfectTensorResult pt = perfect_tensor_from_lagrangian(sp, l, alpha, pt_all_splits);
            rep.count("legs", pt.legs);
            rep.count("q", pt.q);
            json splits = json::array();
            for (const auto& s : pt.report.splits)
                splits.push_back(json{{"legs", s.legs_in_s}, {"isometry", s.isometry}});
            rep.attach("splits", splits);
            rep.check("perfect tensor", pt.report.perfect);
            if (!pt_export.empty())
                write_file(pt_export, tensor_to_json(pt.tensor, pt.legs, pt.q).dump(2));
            return rep.finish(out_path, elapsed());
        }

        if (sc_net->parsed()) {
            auto sp = space_from_json(load_json(net_space, rep));
            Subspace l = subspace_from_json(load_json(net_l, rep), sp->V);
            auto alpha = maybe_enhance(*sp, l, rep, "lagrangian");
            PerfectNetworkResult r = build_perfect_network(sp, l, alpha);
            rep.count("vertices", r.net.g.nvertices);
            rep.count("edges", (long long)r.net.g.internal_edges().size());
            long long q = sp->V.field().q();
            long long expect_v = 3;
            for (int i = 0; i < r.n; ++i) expect_v *= q;
            rep.check("vertex count = 3 q^n", r.net.g.nvertices == expect_v, nullptr, "asserted");
            rep.check("edge count = 3 n q^n",
                      (long long)r.net.g.internal_edges().size() == expect_v * r.n, nullptr,
                      "asserted");
            bool valence_ok = true;
            for (int v = 0; v < r.net.g.nvertices; ++v)
                valence_ok = valence_ok && r.net.g.degree(v) == 2 * r.n;
            rep.check("uniform valence 2n", valence_ok);
            {
                int sp_pass = 0, sp_fail = 0;
                for (const auto& s2 : r.vertex_tensor_report.splits)
                    (s2.isometry ? sp_pass : sp_fail)++;
                rep.attach("vertex_tensor_splits",
                           json{{"isometric", sp_pass}, {"non_isometric", sp_fail}});
            }
            if (!net_dot.empty()) write_file(net_dot, graph_to_dot(r.net.g));
            if (!net_csv.empty()) {
                // the support may be disconnected; profile each component separately
                std::string csv = "component,cut_size,side,subset_size,entropy\n";
                auto comp = r.net.g.component_of();
                int ncomp = r.net.g.nvertices ? 1 + *std::max_element(comp.begin(), comp.end()) : 0;
                for (int ci = 0; ci < ncomp; ++ci) {
                    TensorNetwork sub = component_subnetwork(r.net, ci);
                    if ((long long)sub.g.internal_edges().size() > 24) continue;  // profile small pieces
                    for (const auto& cut : cut_sets(sub.g, 2)) {
                        CutStates cs = cut_states(sub, cut, bounds.contraction);
                        for (int side = 0; side < 2; ++side) {
                            const Tensor& st = side ? cs.side2 : cs.side1;
                            int legs = (int)st.dims.size();
                            for (int take = 1; take < legs; ++take) {
                                std::vector<int> a;
                                for (int i = 0; i < take; ++i) a.push_back(i);
                                DensityMatrix rho = reduced_density_matrix(st, a);
                                csv += std::to_string(ci) + "," + std::to_string(cut.size()) + "," +
                                       std::to_string(side + 1) + "," + std::to_string(take) + "," +
                                       std::to_string(entropy_of_density(rho)) + "\n";
                            }
                        }
                    }
                }
                write_file(net_csv, csv);
            }
            return rep.finish(out_path, elapsed());
        }

        if (sc_design->parsed()) {
            std::shared_ptr<Loop> loop;
            std::shared_ptr<AlmostSymplecticSpace> sp;
            if (design_from_space) {
                sp = space_from_json(load_json(design_loop, rep));
                loop = build_loop(sp);
            } else {
                loop = std::make_shared<TableLoop>(
                    TableLoop(magma_from_json(load_json(design_loop, rep))));
            }
            LatinSquareDesign d = thomsen_design(*loop);
            rep.count("N", d.N);
            rep.count("lines", (long long)d.lines.size());
            rep.check("design axioms", d.validate().ok);
            FlagGraph g = design_graph(d);
            rep.check("graph counts 3N / 3N^2",
                      g.nvertices == 3 * d.N &&
                          (long long)g.internal_edges().size() == 3ll * d.N * d.N,
                      nullptr, "asserted");
            if (design_central) {
                CentralAutomorphismReport cr = central_automorphism_checks(d);
                MoufangReport mr = is_moufang(*loop);
                rep.attach("central_design", cr.is_central_design);
                rep.check("central design iff moufang", cr.is_central_design == mr.three_variable);
            }
            if (!design_sub.empty()) {
                if (!design_from_space) throw Error("--subdesign requires --from-space");
                Subspace c = subspace_from_json(load_json(design_sub, rep), sp->V);
                rep.check("subspace isotropic", is_isotropic(c, sp->omega, bounds.enumeration));
                auto alpha = maybe_enhance(*sp, c, rep, "subdesign");
                CodeLoop cl(sp);
                std::vector<int> pts;
                for (long long v : c.enumerate(bounds.enumeration))
                    pts.push_back(cl.encode(v, sp->char2() ? alpha->at(v) : 0));
                SubdesignResult sub = subdesign(d, pts);
                long long qk = (long long)pts.size();
                rep.check("subdesign counts 3q^k / 3q^2k",
                          sub.graph.nvertices == 3 * qk &&
                              (long long)sub.graph.internal_edges().size() == 3 * qk * qk);
                if (sp->char2())
                    rep.check("intersecting lines generate order-2 subdesigns",
                              order2_subdesign_check(sub.design).holds);
            }
            if (!design_dot.empty()) write_file(design_dot, graph_to_dot(g));
            return rep.finish(out_path, elapsed());
        }

        if (sc_chambers->parsed()) {
            std::vector<std::vector<int>> square;
            if (chambers_in.size() > 4 && chambers_in.substr(chambers_in.size() - 4) == ".csv") {
                std::string text = slurp(chambers_in);
                rep.input(chambers_in, text);
                std::istringstream is(text);
                std::string line;
                while (std::getline(is, line)) {
                    if (line.empty()) continue;
                    std::vector<int> row;
                    std::istringstream ls(line);
                    std::string cell;
                    while (std::getline(ls, cell, ',')) row.push_back(std::stoi(cell));
                    square.push_back(row);
                }
            } else {
                square =
                    load_json(chambers_in, rep).at("square").get<std::vector<std::vector<int>>>();
            }
            LatinChamberReport r = latin_chamber_system(square);
            rep.check("chamber system axioms", r.axioms_ok);
            rep.check("latin property: panels of different colors meet once", r.latin_property);
            json residues = json::array();
            for (auto& [colors, count] : r.rank2_residues)
                residues.push_back(json{{"colors", colors}, {"components", count}});
            rep.attach("rank2_residues", residues);
            rep.count("chambers", r.system.nchambers);
            return rep.finish(out_path, elapsed());
        }

        if (sc_codes->parsed()) {
            if (!codes_params.empty()) {
                LinearCode c = code_from_json(load_json(codes_params, rep));
                CodeParams p = code_params(c, bounds.enumeration);
                rep.attach("params", json{{"n", p.n},
                                          {"k", p.k},
                                          {"d", p.d},
                                          {"q", p.q},
                                          {"R", p.point.rate.str()},
                                          {"delta", p.point.distance.str()}});
                if (c.field->q() == 2) {
                    rep.check("doubly even", is_doubly_even(c));
                    rep.check("pairwise intersections even", pairwise_intersections_even(c));
                }
            }
            if (!codes_cloud.empty()) {
                json list = load_json(codes_cloud, rep);
                std::vector<LinearCode> cs;
                for (const auto& e : list) cs.push_back(code_from_json(e));
                auto cloud = code_point_cloud(cs);
                std::string csv = "n,k,d,q,R,delta,multiplicity\n";
                json jc = json::array();
                for (const auto& e : cloud) {
                    csv += std::to_string(e.params.n) + "," + std::to_string(e.params.k) + "," +
                           std::to_string(e.params.d) + "," + std::to_string(e.params.q) + "," +
                           e.params.point.rate.str() + "," + e.params.point.distance.str() + "," +
                           std::to_string(e.multiplicity) + "\n";
                    jc.push_back(json{{"n", e.params.n},
                                      {"k", e.params.k},
                                      {"d", e.params.d},
                                      {"multiplicity", e.multiplicity}});
                }
                rep.attach("cloud", jc);
                if (!codes_csv.empty()) write_file(codes_csv, csv);
            }
            return rep.finish(out_path, elapsed());
        }

        if (sc_id->parsed()) {
            if (!id_bracket.empty()) {
                BilinearOp b = bilinear_op_from_json(load_json(id_bracket, rep));
                IdentityCheck r = check_malcev(b);
                rep.check("malcev identity", r.ok, r.ok ? json(nullptr) : json(r.witness));
            }
            if (!id_circ.empty()) {
                if (id_fbracket.empty()) throw Error("--f-identity needs --bracket");
                BilinearOp circ = bilinear_op_from_json(load_json(id_circ, rep));
                BilinearOp br = bilinear_op_from_json(load_json(id_fbracket, rep));
                IdentityCheck r = check_f_identity(circ, br);
                rep.check("f-identity", r.ok, r.ok ? json(nullptr) : json(r.witness));
            }
            return rep.finish(out_path, elapsed());
        }

        std::cerr << "no subcommand handled\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
