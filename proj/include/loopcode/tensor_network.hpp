#pragma once

#include <complex>

#include "loopcode/quantum.hpp"

namespace loopcode {

struct NotConnected : Error {
    NotConnected() : Error("NotConnected") {}
};
struct ContractionBoundExceeded : Error {
    ContractionBoundExceeded() : Error("ContractionBoundExceeded") {}
};
struct NotLatinSquare : Error {
    explicit NotLatinSquare(const std::string& d = "NotLatinSquare") : Error(d) {}
};

// Graph as flags (half-edges): boundary map flag -> vertex, involution j gluing flags
// into edges. Internal edges are 2-cycles of j, external edges its fixed points.
struct FlagGraph {
    int nvertices = 0;
    std::vector<int> boundary;    // per flag
    std::vector<int> involution;  // per flag

    int nflags() const { return (int)boundary.size(); }
    FormCheck validate(bool require_simple = true) const;
    std::vector<std::pair<int, int>> internal_edges() const;  // (f, j(f)) with f < j(f)
    std::vector<int> external_flags() const;
    int degree(int v) const;
    std::vector<int> component_of() const;  // vertex -> component id
    bool connected() const;
};

struct Tensor {
    std::vector<int> dims;
    std::vector<std::complex<double>> a;

    long long size() const { return (long long)a.size(); }
    static Tensor scalar(std::complex<double> v) { return Tensor{{}, {v}}; }
};

// Tensor network: per-vertex tensors with an explicit flag -> index assignment.
struct TensorNetwork {
    FlagGraph g;
    int q = 0;
    std::vector<Tensor> vertex_tensors;
    std::vector<std::vector<int>> vertex_flags;  // flags of v in tensor index order

    FormCheck validate() const;
};

// Full contraction: returns the state on external legs ordered by flag id
// (a rank-0 tensor holding the amplitude when there are none). Pairwise greedy
// order choosing the smallest intermediate; result is order independent.
Tensor contract(const TensorNetwork& net, long long bound = 59049);

// Subsets of internal edges (by index into internal_edges()) of size <= max_size whose
// removal splits a connected graph into exactly two nonempty components.
std::vector<std::vector<int>> cut_sets(const FlagGraph& g, int max_size);

// Contract the two components after cutting; cut flags become external legs ordered by
// the sorted cut-edge order. Returns the pair of states and their component vertex sets.
struct CutStates {
    Tensor side1, side2;
    std::vector<int> vertices1, vertices2;
};
CutStates cut_states(const TensorNetwork& net, const std::vector<int>& cut_edge_indices,
                     long long bound = 59049);

// Induced subnetwork on one connected component (cut analysis runs per component
// when a construction yields a disconnected support).
TensorNetwork component_subnetwork(const TensorNetwork& net, int component);

struct DensityMatrix {
    std::vector<int> labels;
    std::vector<std::vector<std::complex<double>>> rho;
    double trace() const;
};

// Reduced density matrix of the contracted (normalized) state on legs A.
DensityMatrix reduced_density_matrix(const Tensor& state, const std::vector<int>& legs_a);
// Von Neumann entropy -sum lambda log lambda, eigenvalues below 1e-12 dropped.
double entropy_of_density(const DensityMatrix& rho, bool log_base_q = false, int q = 2);
double entanglement_entropy(const TensorNetwork& net, const std::vector<int>& external_legs_a,
                            bool log_base_q = false, long long bound = 59049);

// Eigenvalues of a Hermitian matrix by cyclic Jacobi.
std::vector<double> hermitian_eigenvalues(std::vector<std::vector<std::complex<double>>> a);

struct NotPerfect : Error {
    NotPerfect() : Error("NotPerfect") {}
};

// Network of copies of the Lagrangian tensor on the subdesign points: vertices are the
// 3 q^n typed points of tau(L), edges u_i -- (u+e_r)_{next(i)} for the basis {e_r} of L;
// each vertex carries the V-section presentation of T_L (2n legs, positions toward the
// next type, momenta from the previous one).
struct PerfectNetworkResult {
    TensorNetwork net;
    CycVector vertex_tensor_exact;  // shared tensor, q^{2n} entries
    int n = 0;
    std::vector<long long> lagrangian_points;
    // Bipartition report of the 2n-leg vertex tensor: isometric exactly on the splits
    // separating every conjugate pair (pos_i, mom_i); attached as data, not a gate.
    PerfectTensorReport vertex_tensor_report;
};
PerfectNetworkResult build_perfect_network(std::shared_ptr<const AlmostSymplecticSpace> space,
                                           const Subspace& l, const std::optional<Enhancement>& alpha);

}  // namespace loopcode
