#pragma once

#include <utility>
#include <vector>

#include "tops/modulation.hpp"
#include "tops/types.hpp"

namespace tops {

// Set of (row, col) cells where a matrix is nonzero. 1-based, row-major order.
struct SupportSet {
    std::vector<std::pair<int, int>> cells;

    bool empty() const { return cells.empty(); }
    bool operator==(const SupportSet& o) const { return cells == o.cells; }
    bool operator!=(const SupportSet& o) const { return !(*this == o); }
    bool overlaps(const SupportSet& o) const;
    static SupportSet union_of(const SupportSet& a, const SupportSet& b);
    std::string to_string() const;
};

// Linear space-time block code X = energy_scale * sum_i s_i A_i over K real
// symbols. Weight matrix for symbol i (1-based) is weights[i-1], of shape
// n_tx x n_slots. energy_scale is derived so that E[||X||_F^2] = n_tx*n_slots
// when real symbols have E[s^2] = 1/2 (one complex symbol of unit energy per
// coordinate pair).
struct LinearSTBC {
    std::string name;
    int n_tx = 0;
    int n_slots = 0;
    std::vector<CMatrix> weights;
    double energy_scale = 1.0;

    LinearSTBC() = default;
    // allow_nonsquare exempts the minimum-delay restriction n_slots == n_tx
    // (needed for the T=1 spatial-multiplexing baseline).
    LinearSTBC(std::string name, int n_tx, int n_slots,
               std::vector<CMatrix> weights, bool allow_nonsquare = false);

    int k() const { return static_cast<int>(weights.size()); }
};

struct CSRGroup {
    std::vector<int> indices;  // 1-based symbol indices, ascending
    SupportSet support;

    int size() const { return static_cast<int>(indices.size()); }
};

// Partition of the weight-matrix set into common-support equivalence classes,
// ordered by smallest member index.
struct CSRPartition {
    std::vector<CSRGroup> groups;
    int total_symbols = 0;

    int p() const { return static_cast<int>(groups.size()); }
};

// Finest split of one CSR group into subgroups that are pairwise
// quasi-orthogonal across subgroup boundaries.
struct IntraGroupStructure {
    int group_id = 0;                        // 1-based id in the parent partition
    std::vector<std::vector<int>> subgroups;  // symbol indices per subgroup

    int q() const { return static_cast<int>(subgroups.size()); }
};

struct CodeMetrics {
    int min_rank = 0;
    double coding_gain = 0.0;
    long long pair_count_examined = 0;
};

// Relative nonzero threshold: 1e-12 times the largest entry magnitude.
double default_support_tol(const CMatrix& m);

// Cells with |entry| > tol. tol < 0 selects the relative default.
SupportSet support_set(const CMatrix& m, double tol = -1.0);

// Equivalence classes of equal support over the code's weight matrices.
CSRPartition csr_partition(const LinearSTBC& code, double tol = -1.0);

// Merges classes whose supports intersect (connected components under
// overlap) until group supports are pairwise disjoint.
CSRPartition pulse_assignable_partition(const CSRPartition& p);

// Explicit merge of groups (1-based group ids). Each id may appear at most
// once across merge_spec; unmentioned groups pass through. With
// require_disjoint, merging groups with intersecting supports is rejected.
CSRPartition coarsen(const CSRPartition& p,
                     const std::vector<std::vector<int>>& merge_spec,
                     bool require_disjoint = true);

CMatrix assemble_codeword(const LinearSTBC& code, const RVector& s);

// Sub-codeword over the symbols of one group only.
CMatrix group_codeword(const LinearSTBC& code, const CSRPartition& p,
                       int group_id, const RVector& s);

// True iff A B^H + B A^H vanishes (Frobenius norm below tol; tol < 0 selects
// 1e-10 * ||A||_F * ||B||_F).
bool quasi_orthogonal_pair(const CMatrix& a, const CMatrix& b,
                           double tol = -1.0);

// Connected components of the not-quasi-orthogonal graph inside one group.
IntraGroupStructure intra_group_structure(const LinearSTBC& code,
                                          const CSRPartition& p, int group_id,
                                          double tol = -1.0);

// All transmit-symbol vectors of the finite codebook (throws
// "codebook-too-large" past cap).
std::vector<RVector> enumerate_symbol_vectors(const LinearSTBC& code,
                                              const Constellation& c,
                                              std::size_t cap = 4096);

// Exhaustive pairwise difference scan: minimum rank and minimum determinant
// of (X1-X2)(X1-X2)^H over all codeword pairs.
CodeMetrics code_metrics(const LinearSTBC& code, const Constellation& c,
                         std::size_t cap = 4096);

int diversity_rank(const LinearSTBC& code, const Constellation& c,
                   std::size_t cap = 4096);

CodeMetrics coding_gain(const LinearSTBC& code, const Constellation& c,
                        std::size_t cap = 4096);

}  // namespace tops
