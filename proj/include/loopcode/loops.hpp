#pragma once

#include <array>
#include <memory>
#include <set>

#include "loopcode/forms.hpp"

namespace loopcode {

struct FiniteMagma {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> table;  // table[i][j] = index of i∘j

    int size() const { return (int)table.size(); }
    int op(int a, int b) const { return table[a][b]; }
    FormCheck validate() const;  // shape + range
};

// Finite loop interface: two-sided identity and inverses, Latin square property.
// Table-backed loops are verified at construction; constructed code loops evaluate
// the law on the fly so large instances never materialize an n×n table.
class Loop {
  public:
    virtual ~Loop() = default;
    virtual int size() const = 0;
    virtual int mul(int a, int b) const = 0;
    virtual int one() const = 0;
    virtual int inv(int a) const = 0;
    virtual std::string label(int a) const { return std::to_string(a); }

    bool is_associative() const;
    bool is_commutative() const;
};

struct NoIdentity : Error {
    NoIdentity() : Error("NoIdentity") {}
};
struct NoInverse : Error {
    explicit NoInverse(int a) : Error("NoInverse(" + std::to_string(a) + ")") {}
};
struct NotQuasigroup : Error {
    explicit NotQuasigroup(const std::string& d) : Error("NotQuasigroup: " + d) {}
};

class TableLoop : public Loop {
  public:
    static constexpr int kTableBound = 4096;
    // Verifies identity, two-sided inverses and the Latin square property; throws on failure.
    explicit TableLoop(FiniteMagma m);

    int size() const override { return magma_.size(); }
    int mul(int a, int b) const override { return magma_.table[a][b]; }
    int one() const override { return one_; }
    int inv(int a) const override { return inv_[a]; }
    std::string label(int a) const override { return magma_.labels[a]; }
    const FiniteMagma& magma() const { return magma_; }

    static TableLoop cyclic(int n);
    static TableLoop from_loop(const Loop& l);  // materialize (size bound enforced)

  private:
    FiniteMagma magma_;
    int one_ = -1;
    std::vector<int> inv_;
};

// Almost-symplectic code loop L(V, omega) (p odd, law x+y+omega(u,v)/2) or
// L(V, beta) (p = 2, law x+y+beta(u,v)) on V x A; element index = v_idx * |A| + x_idx.
class CodeLoop : public Loop {
  public:
    explicit CodeLoop(std::shared_ptr<const AlmostSymplecticSpace> space);

    int size() const override { return (int)(space_->V.count() * space_->A.size()); }
    int mul(int a, int b) const override;
    int one() const override { return 0; }
    int inv(int a) const override;
    std::string label(int a) const override;

    const AlmostSymplecticSpace& space() const { return *space_; }
    int encode(long long v, int x) const { return (int)(v * space_->A.size() + x); }
    long long vpart(int a) const { return a / space_->A.size(); }
    int xpart(int a) const { return a % space_->A.size(); }

  private:
    std::shared_ptr<const AlmostSymplecticSpace> space_;
    int half_ = 0;  // inverse of 2 mod p (p odd)
};

struct MissingPolarization : Error {
    MissingPolarization() : Error("MissingPolarization") {}
};

// p odd: loop on V x F_q; p = 2: loop on V x R (beta required).
// Materializes a TableLoop when the order fits the table bound.
std::shared_ptr<Loop> build_loop(std::shared_ptr<const AlmostSymplecticSpace> space);

struct MoufangReport {
    bool four_variable = true;   // literal (a*b)*(c*d) == a*((b*c)*d); equivalent to associativity
    bool three_variable = true;  // classical Moufang: the four Bol-Moufang identities
    std::array<int, 4> witness4{};
    std::array<int, 3> witness3{};
    bool ok() const { return four_variable && three_variable; }
    bool moufang() const { return three_variable; }
};
MoufangReport is_moufang(const Loop& l);

struct LoopInvariants {
    std::vector<int> moufang_centre;  // commutes with everything
    std::vector<int> nucleus;         // associates in all three slots
    std::vector<int> centre;          // nucleus ∩ moufang centre
    bool nucleus_is_subgroup = false;
    bool centre_is_abelian_subgroup = false;
    bool associator_trivial = true;
    std::array<int, 3> associator_witness{};
    std::vector<int> element_order;               // left-power order
    std::vector<std::pair<int, std::vector<int>>> p_components;
};
LoopInvariants loop_invariants(const Loop& l);

int commutator(const Loop& l, int a, int b);
int associator(const Loop& l, int a, int b, int c);

// ---- Griess code loops from doubly even binary codes ----

struct NotDoublyEven : Error {
    NotDoublyEven() : Error("NotDoublyEven") {}
};
struct SystemInconsistent : Error {
    SystemInconsistent() : Error("SystemInconsistent") {}
};

struct GriessResult {
    std::shared_ptr<TableLoop> loop;                 // on C x F_2
    std::vector<std::vector<int>> theta;             // theta[v][w] over codeword indices
    std::vector<unsigned long long> codewords;       // bitmask per index
};
// Solves theta: C x C -> F_2 with d theta = |u&v&w| mod 2, theta(v,v) = |v|/4 mod 2,
// theta(v,w)+theta(w,v) = |v&w|/2 mod 2 (lexicographically least solution), then builds
// the loop (v,x)*(w,y) = (v+w, x+y+theta(v,w)).
GriessResult griess_code_loop(const std::vector<unsigned long long>& codewords, int n);

// ---- quasigroups, CH-quasigroups, CMLs ----

struct QuasigroupReport {
    bool symmetric = true;
    std::array<int, 2> symmetric_witness{};
    bool abelian = true;
    int abelian_witness_u = -1;
    bool ch = true;
    std::array<int, 3> ch_witness{};
};
QuasigroupReport quasigroup_checks(const FiniteMagma& m, long long bound = 1 << 12);

struct CmlReport {
    bool commutative = true;
    bool has_unit = true;
    int unit = -1;
    bool inverses = true;
    bool weak_assoc1 = true, weak_assoc2 = true, weak_assoc3 = true;
    std::array<int, 3> witness{};
    bool ok() const { return commutative && has_unit && inverses && weak_assoc1 && weak_assoc2 && weak_assoc3; }
};
CmlReport cml_checks(const FiniteMagma& m);

struct NotCH : Error {
    NotCH() : Error("NotCH") {}
};
struct NotInAssociativeCentre : Error {
    NotInAssociativeCentre() : Error("NotInAssociativeCentre") {}
};

// x*y := u∘(x∘y) turns a CH-quasigroup into a CML with identity u.
TableLoop cml_from_ch(const FiniteMagma& e, int u);
// x∘y := c*x⁻¹*y⁻¹ (left-to-right; all placements agree for central c — asserted).
FiniteMagma ch_from_cml(const TableLoop& l, int c);
std::vector<int> associative_centre(const TableLoop& l);

// ---- reflection families ----

struct ReflectionFamily {
    std::vector<std::vector<int>> s;  // s[c][d] = s_c(d)
    int size() const { return (int)s.size(); }
    FormCheck validate() const;  // involutions fixing their center
};
struct RelationFails : Error {
    RelationFails(int c, int d, int e)
        : Error("RelationFails(" + std::to_string(c) + "," + std::to_string(d) + "," + std::to_string(e) + ")") {}
};
struct ReflectionReport {
    bool relations_hold = true;       // (s_c s_d s_e)^2 == id for all triples
    std::array<int, 3> witness{};
    FiniteMagma quasigroup;           // c*d := s_c(d)
    QuasigroupReport quasigroup_report;
};
ReflectionReport reflection_quasigroup(const ReflectionFamily& fam);
// t_x(y) := (c*x⁻¹)*y⁻¹ built from a CML and central c; verified to satisfy the
// reflection relations before being returned as a family.
ReflectionFamily reflections_from_cml(const TableLoop& l, int c);

// Chein double M(G, 2) on G x {1, u}: (g)(h) = gh, (g)(hu) = (hg)u,
// (gu)(h) = (g h^{-1})u, (gu)(hu) = h^{-1} g. Moufang; nonassociative iff G is
// nonabelian (the order-12 witness is M(S3, 2)).
TableLoop chein_double(const TableLoop& g);
TableLoop symmetric_group_s3();

// ---- isomorphism / isotopism search (brute force with pruning, small orders) ----

bool loops_isomorphic(const Loop& a, const Loop& b);
bool loops_isotopic(const Loop& a, const Loop& b);

}  // namespace loopcode
