#pragma once

#include "loopcode/loops.hpp"
#include "loopcode/pauli.hpp"

namespace loopcode {

struct NotLagrangian : Error {
    NotLagrangian() : Error("NotLagrangian") {}
};
struct NoEnhancement : Error {
    explicit NoEnhancement(const std::string& why = "") : Error("NoEnhancement" + (why.empty() ? "" : ": " + why)) {}
};
struct NotIsotropic : Error {
    NotIsotropic() : Error("NotIsotropic") {}
};
struct NonCommutingOperators : Error {
    NonCommutingOperators(int i, int j)
        : Error("NonCommutingOperators(" + std::to_string(i) + "," + std::to_string(j) + ")"), a(i), b(j) {}
    int a, b;
};
struct StabilizerNotMaximal : Error {
    explicit StabilizerNotMaximal(int rank) : Error("StabilizerNotMaximal: rank " + std::to_string(rank)) {}
};
struct StabilizerError : Error {
    explicit StabilizerError(const std::string& d) : Error("StabilizerError: " + d) {}
};

// Realization of the central-character / Lagrangian-invariant function space inside
// C[L(V,·)]: solutions of f((0,x)*h) = chi(x) f(h) and f(tau(l)*h) = f(h), computed by
// phase-weighted orbit propagation. Basis vectors are orbit indicators with unit phases,
// anchored at canonical coset representatives; the loop acts by right translations.
class ModelSpace {
  public:
    static ModelSpace build(std::shared_ptr<const AlmostSymplecticSpace> space, const Subspace& l0,
                            const std::optional<Enhancement>& alpha0,
                            const DarbouxDecomposition* frame = nullptr);

    const AlmostSymplecticSpace& space() const { return *space_; }
    const CodeLoop& loop() const { return *loop_; }
    int conductor() const { return m_; }
    int dim() const { return (int)anchors_.size(); }
    int legs() const { return legs_; }
    long long leg_q() const { return space_->V.field().q(); }

    int orbit_of(int point) const { return orbit_of_[point]; }
    int phase_of(int point) const { return phase_of_[point]; }
    int anchor(int basis_index) const { return anchors_[basis_index]; }
    int dead_orbits() const { return dead_orbits_; }

    // B_i evaluated at a loop point: zero or a root of unity exponent.
    bool basis_value(int basis_index, int point, int* phase_exp) const;
    // Section element for v in a polarized subspace: (v, alpha(v)) or (v, 0) for p odd.
    int tau(long long v, const std::optional<Enhancement>& alpha) const;
    // Right translation by loop element g restricted to the space; verifies that the
    // space is preserved and the restriction is monomial, else throws StabilizerError.
    MonomialOp right_translation(int g) const;
    // chi-exponent of a central value in the model conductor.
    int chi_exp(int a_code) const;

  private:
    std::shared_ptr<const AlmostSymplecticSpace> space_;
    std::shared_ptr<const CodeLoop> loop_;
    int m_ = 1;
    int legs_ = 0;
    std::vector<int> orbit_of_, phase_of_, anchors_;
    int dead_orbits_ = 0;
};

// One character eigenspace of the stabilizer family.
struct QuantumCode {
    std::vector<int> psi;         // character: coefficient tuple over the basis of C
    int dim = 0;
    std::vector<CycVector> basis; // orthogonal, exact
    CycMatrix projector;
};

struct CrssResult {
    ModelSpace model;
    Subspace stabilizer_subspace;
    std::vector<MonomialOp> stabilizer_ops;     // per element of C (enumeration order)
    std::vector<long long> stabilizer_elems;
    bool commuting = true;
    std::pair<int, int> noncommuting_witness{-1, -1};
    bool projectors_idempotent = true;
    bool projectors_orthogonal = true;
    bool projectors_complete = true;
    std::vector<QuantumCode> codes;             // one per character psi
};

// Joint-eigenspace construction: abelian family {pi(tau(v)) : v in C} on the model
// space of the standard Darboux Lagrangian, split by character projectors
// P_psi = |C|^{-1} sum psi(v)^{-1} pi(tau(v)) with exact cyclotomic arithmetic.
CrssResult crss_code(std::shared_ptr<const AlmostSymplecticSpace> space, const Subspace& c,
                     const std::optional<Enhancement>& alpha, bool enforce_isotropic = true);

struct SplitCheck {
    std::vector<int> legs_in_s;
    bool isometry = false;
    BigRational constant;  // M†M = c·I constant (rational, real)
};
struct PerfectTensorReport {
    bool perfect = true;
    std::vector<SplitCheck> splits;
    bool constants_uniform_per_size = true;
};

// Exact check on a cyclotomic tensor with m legs of dimension q.
PerfectTensorReport is_perfect_tensor(const CycVector& t, int legs, int q);
// Float variant with tolerance 1e-9.
PerfectTensorReport is_perfect_tensor(const std::vector<std::complex<double>>& t, int legs, int q,
                                      double tol = 1e-9);

struct PerfectTensorResult {
    CycVector tensor;     // q^legs entries, leg 0 fastest, legs = Darboux blocks in order
    int legs = 0;
    int q = 0;
    DarbouxDecomposition frame;
    ModelSpace model;
    PerfectTensorReport report;
    std::optional<Enhancement> lagrangian_alpha;
};

// Joint +1-eigenvector of the stabilizer {pi(tau(v)) : v in L} in the model space,
// normalized with first nonzero coordinate 1. check_all_splits additionally demands
// minimal intersections with every block bipartition and attaches the isometry report.
PerfectTensorResult perfect_tensor_from_lagrangian(std::shared_ptr<const AlmostSymplecticSpace> space,
                                                   const Subspace& l,
                                                   const std::optional<Enhancement>& alpha,
                                                   bool check_all_splits = true);

// The same state presented as a function on V: 2n q-ary legs in Darboux coordinates
// (positions first, then momenta), entry at t = tensor value at the section point (t, 0).
CycVector tensor_on_v(const PerfectTensorResult& r);

struct LoopRepReport {
    bool moufang_identity1 = true;  // h*(b*(a*b)) == ((h*b)*a)*b
    bool moufang_identity2 = true;  // ((a*b)*a)*h == a*(b*(a*h))
    bool associator_skew = true;    // formal associator skew-symmetric in C[L]
    std::array<int, 3> witness{};
};
// Left/right translation permutation matrices on C[L] plus the Moufang representation
// identities checked exhaustively.
LoopRepReport loop_representation_checks(const Loop& l);
MonomialOp left_translation(const Loop& l, int a);   // h -> a*h on C[L]
MonomialOp right_translation(const Loop& l, int a);  // h -> h*a on C[L]

struct DistanceReport {
    bool holds = true;            // P E P = lambda P for all errors of weight < d
    int checked_below = 0;
    long long witness_a = -1, witness_b = -1;
    int max_d = 0;                // filled by the search variant
};
// Knill-Laflamme compression check against generalized Pauli errors acting on the
// model-space legs. search=true reports the largest d for which the condition holds.
DistanceReport code_distance_check(const QuantumCode& code, const ModelSpace& ms, int d,
                                   bool search = false);

// Entrywise identification of the standard-space translation operators with E_{a,b}:
// for every (a, b) there is a loop element (v(a,b), x(a,b)) whose right translation
// equals E_{a,b} exactly. Returns false with a witness pair when the match fails.
struct HeisenbergMatchReport {
    bool ok = true;
    long long witness_a = -1, witness_b = -1;
};
HeisenbergMatchReport heisenberg_error_op_match(std::shared_ptr<const AlmostSymplecticSpace> space);

}  // namespace loopcode
