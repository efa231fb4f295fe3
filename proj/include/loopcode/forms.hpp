#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "loopcode/linear.hpp"

namespace loopcode {

struct FormBoundExceeded : Error {
    FormBoundExceeded() : Error("FormTable size exceeds configured bound") {}
};

// Total value table of a k-argument function V x ... x V -> A, k in {1..4}.
// Dense storage holds all N^k codomain codes; bilinear-matrix storage evaluates
// sum_{i,j} u_i M_ij v_j on demand (k = 2 only) so large spaces stay usable.
class FormTable {
  public:
    static constexpr long long kDefaultDenseBound = 1ll << 24;

    static FormTable zero(int arity, VSpace dom, Codomain cod);
    static FormTable from_function(int arity, VSpace dom, Codomain cod,
                                   const std::function<int(const std::vector<long long>&)>& f,
                                   long long bound = kDefaultDenseBound);
    static FormTable from_bilinear_matrix(VSpace dom, Codomain cod, const std::vector<std::vector<int>>& m);
    // Seeded uniform random table; when normalized (arity 2), values with any zero argument are 0.
    static FormTable random(int arity, VSpace dom, Codomain cod, uint64_t seed, bool normalized,
                            long long bound = kDefaultDenseBound);
    // Standard symplectic form on F_q^{2n}, halves layout: omega(e_i, e_{n+i}) = 1.
    // For a ring codomain the values are doubled into the ideal 2R (the reduction convention).
    static FormTable standard_symplectic(VSpace dom, Codomain cod);
    // Upper-half bilinear polarization of the standard form: beta(u, v) = <u_pos, v_mom>.
    static FormTable standard_polarization(VSpace dom, Codomain cod);

    int arity() const { return arity_; }
    const VSpace& domain() const { return dom_; }
    const Codomain& codomain() const { return cod_; }
    bool matrix_backed() const { return !bil_.empty(); }
    const std::vector<std::vector<int>>& bilinear_matrix() const { return bil_; }

    int value(const std::vector<long long>& args) const;
    int value1(long long u) const;
    int value2(long long u, long long v) const;
    int value3(long long u, long long v, long long w) const;
    int value4(long long u, long long v, long long w, long long t) const;

    FormTable materialize(long long bound = kDefaultDenseBound) const;
    void set(const std::vector<long long>& args, int code);  // dense only

    FormTable scaled(int codomain_factor) const;
    FormTable add(const FormTable& o) const;
    bool same_table(const FormTable& o) const;

  private:
    int arity_ = 0;
    VSpace dom_;
    Codomain cod_;
    std::vector<uint16_t> dense_;
    std::vector<std::vector<int>> bil_;
    long long idx(const std::vector<long long>& args) const;
};

// Outcome of an exhaustive identity check; witness holds the offending argument tuple.
struct FormCheck {
    bool ok = true;
    std::vector<long long> witness;
    std::string note;
    explicit operator bool() const { return ok; }
};

// Hochschild coboundary d: k-forms -> (k+1)-forms for k in {1,2,3}.
//   k=1: d f(u,v)     = f(u+v) - f(u) - f(v)              (polarization sign convention)
//   k=2: d f(u,v,w)   = f(v,w) - f(u+v,w) + f(u,v+w) - f(u,v)
//   k=3: d f(u,v,w,t) = f(v,w,t) - f(u+v,w,t) + f(u,v+w,t) - f(u,v,w+t) + f(u,v,w)
FormTable hochschild_d(const FormTable& f, long long bound = FormTable::kDefaultDenseBound);

enum class GammaRConvention { Corrected, Printed };

// Left/right linearity defects of a 2-form. With the corrected right defect
// gamma_r(u,v,w) = f(u,v+w) - f(u,v) - f(u,w), the identity gamma_r - gamma_l = d f holds.
std::pair<FormTable, FormTable> gamma_defects(const FormTable& beta,
                                              GammaRConvention conv = GammaRConvention::Corrected);

FormCheck is_almost_symplectic(const FormTable& omega);
FormCheck is_polarization(const FormTable& beta, const FormTable& omega, bool require_normalized);
// gamma(u,v,u+w) == gamma(v,w,u) for all triples.
FormCheck moufang_condition(const FormTable& gamma);
FormCheck is_cyclic(const FormTable& eta);
FormCheck is_multilinear(const FormTable& eta);

// (theta ^ omega)(u,v,w) = theta(u) omega(v,w) + theta(w) omega(u,v)
FormTable wedge(const FormTable& theta, const FormTable& omega);
// (theta1 ^ theta2)(v,w) = theta1(v) theta2(w) - theta1(w) theta2(v)
FormTable wedge1(const FormTable& theta1, const FormTable& theta2);

// Locally conformally symplectic: d theta = 0, d omega = theta ^ omega, and both
// homogeneous of degree 1 in each slot. Matrix-backed omega with theta == 0 passes
// structurally (bilinearity implies the cocycle condition and homogeneity).
FormCheck is_lcs(const FormTable& omega, const FormTable& theta);

bool is_isotropic(const Subspace& c, const FormTable& omega, long long bound = 1ll << 20);
bool is_lagrangian(const Subspace& l, const FormTable& omega, long long bound = 1ll << 20);

// Enhancement alpha: C -> R with alpha(u+v) - alpha(u) - alpha(v) = beta(u,v) on C.
struct Enhancement {
    Subspace domain;
    std::map<long long, int> value;  // element index -> codomain code
    int at(long long v) const;
};
struct EnhancementFailure {
    std::string reason;  // asymmetry | nonzero dbeta | beta(u,u) not in 2R | verification failure
    std::vector<long long> witness;
};
std::optional<Enhancement> find_enhancement(const Subspace& c, const FormTable& beta,
                                            EnhancementFailure* failure = nullptr);

struct NotLCS : Error {
    NotLCS() : Error("NotLCS") {}
};
struct NondegeneracyLost : Error {
    NondegeneracyLost() : Error("NondegeneracyLost") {}
};

// One Darboux pair: block = span{u, v} with omega(u, v) = 1 (or 2·1 in the ring case).
struct DarbouxBlock {
    long long u, v;
    Subspace block;
};
struct DarbouxDecomposition {
    std::vector<DarbouxBlock> blocks;
    Subspace kernel_theta;
    Subspace residual;          // complement of the block sum; nonzero only when theta != 0
    bool nondegeneracy_lost = false;
};

// Almost-symplectic space: omega (2-form), polarization beta (required for p = 2),
// optional Lee form theta. When reduction_tagged, ring-valued omega must land in 2R.
struct AlmostSymplecticSpace {
    VSpace V;
    Codomain A;
    FormTable omega;
    std::optional<FormTable> beta;
    std::optional<FormTable> theta;
    bool reduction_tagged = false;

    int p() const { return V.field().p(); }
    bool char2() const { return p() == 2; }
    FormCheck validate() const;
    const FormTable& loop_cocycle() const;  // beta for p=2, omega for p odd (law uses omega/2)
};

DarbouxDecomposition darboux_decomposition(const AlmostSymplecticSpace& s);

struct NotADirectSum : Error {
    NotADirectSum() : Error("NotADirectSum") {}
};
struct NotGeneralPosition : Error {
    explicit NotGeneralPosition(const std::string& d = "NotGeneralPosition") : Error(d) {}
};

bool general_position(const Subspace& l, const Subspace& w, const Subspace& wp);
// L in general position w.r.t. V = W (+) W' is the graph {(w, psi(w))}; returns psi
// as a matrix in the given bases of W and W'. Verifies the symplectomorphism identity
// omega'(psi u, psi v) = -omega(u, v) on basis pairs when both restrictions are bilinear.
FqMatrix lagrangian_graph_map(const Subspace& l, const Subspace& w, const Subspace& wp,
                              const FormTable& omega);

}  // namespace loopcode
