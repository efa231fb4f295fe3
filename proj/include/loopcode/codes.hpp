#pragma once

#include "loopcode/bigint.hpp"
#include "loopcode/linear.hpp"

namespace loopcode {

struct NotBinary : Error {
    NotBinary() : Error("NotBinary") {}
};
struct NotSelfOrthogonal : Error {
    NotSelfOrthogonal() : Error("NotSelfOrthogonal") {}
};

// Linear [n, k] code over F_q, generator matrix kept in RREF.
struct LinearCode {
    std::shared_ptr<const Fq> field;
    int n = 0;
    FqMatrix gen;  // k x n, full rank, RREF

    static LinearCode from_rows(std::shared_ptr<const Fq> field, int n, FqMatrix rows);
    int k() const { return (int)gen.size(); }
    long long codeword_count() const;
    // all codewords as coordinate vectors, message-vector lexicographic order
    std::vector<std::vector<int>> enumerate(long long bound = 1ll << 24) const;
    std::vector<unsigned long long> enumerate_bitmasks(long long bound = 1ll << 24) const;  // binary only
};

struct CodePoint {
    BigRational rate;      // k/n
    BigRational distance;  // d/n
};

struct CodeParams {
    int n = 0, k = 0, d = 0;
    long long q = 0;
    CodePoint point;
};
// Exact parameters by full weight enumeration (d = min nonzero weight).
CodeParams code_params(const LinearCode& c, long long bound = 1ll << 24);
// Independent oracle: minimum pairwise Hamming distance by double enumeration.
int min_pairwise_distance(const LinearCode& c, long long bound = 1 << 10);

bool is_doubly_even(const LinearCode& c);
bool pairwise_intersections_even(const LinearCode& c, long long bound = 1ll << 24);
bool is_self_orthogonal(const LinearCode& c);

enum class IsotropicEmbedding { PositionHalf, Diagonal };
// Image of C inside (F_q^{2n}, standard omega); self-orthogonality checked for both
// modes, isotropy of the image verified exhaustively.
Subspace embed_isotropic(const LinearCode& c, IsotropicEmbedding mode = IsotropicEmbedding::PositionHalf);

struct CloudEntry {
    CodeParams params;
    int multiplicity = 0;
};
std::vector<CloudEntry> code_point_cloud(const std::vector<LinearCode>& codes);

// Fixture generators (verified in tests by the enumeration oracle).
LinearCode repetition_code(int n);
LinearCode extended_hamming_8_4();
LinearCode extended_golay_24_12();

}  // namespace loopcode
