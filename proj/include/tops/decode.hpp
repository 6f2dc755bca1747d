#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tops/modulation.hpp"
#include "tops/sim.hpp"
#include "tops/stbc.hpp"

namespace tops {

// Signals that a decoding strategy does not apply to the given code or
// constellation (it is not a fault of the inputs).
struct NotSeparable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecodeResult {
    RVector s_hat;
    CMatrix x_hat;
    std::vector<std::uint8_t> bits;
    long long metric_evals = 0;
    std::string strategy;
    bool fallback = false;  // qr-hardlimit hit a degenerate triangular factor
};

// Exact joint ML over the whole codebook; the metric is the sum of per-group
// residuals sum_g ||Y_g - H X_g||_F^2. Ties resolve to the lexicographically
// smallest candidate.
DecodeResult joint_ml(const FilteredObservations& obs, const CMatrix& h,
                      const LinearSTBC& code, const CSRPartition& partition,
                      const Constellation& c, std::size_t cap = 1000000);

// Independent exhaustive ML per group.
DecodeResult group_ml(const FilteredObservations& obs, const CMatrix& h,
                      const LinearSTBC& code, const CSRPartition& partition,
                      const Constellation& c, std::size_t cap = 1000000);

// Independent minimization per quasi-orthogonal subgroup within each group.
DecodeResult subgroup_ml(const FilteredObservations& obs, const CMatrix& h,
                         const LinearSTBC& code, const CSRPartition& partition,
                         const std::vector<IntraGroupStructure>& intra,
                         const Constellation& c, std::size_t cap = 1000000);

// Per group, decodes in-phase and quadrature coordinate sets independently;
// throws NotSeparable if the constellation is not separable or the I/Q weight
// sets fail the quasi-orthogonality check.
DecodeResult iq_separated_ml(const FilteredObservations& obs, const CMatrix& h,
                             const LinearSTBC& code,
                             const CSRPartition& partition,
                             const Constellation& c, std::size_t cap = 1000000);

// Conditional decoding: enumerates the conditioned real symbols of each
// group, solves the rest by QR back-substitution with hard-limiting to the
// nearest PAM level (midpoints round down). Falls back to group_ml (flagged)
// on a degenerate triangular factor.
DecodeResult qr_hardlimit_ml(const FilteredObservations& obs, const CMatrix& h,
                             const LinearSTBC& code,
                             const CSRPartition& partition,
                             const Constellation& c,
                             const std::vector<int>& condition_set,
                             std::size_t cap = 1000000);

// One conditioned real symbol per group (the last index).
std::vector<int> default_condition_set(const CSRPartition& partition);

// Intra-group structure for every group.
std::vector<IntraGroupStructure> intra_all(const LinearSTBC& code,
                                           const CSRPartition& partition);

// Stable CLI-facing strategy identifiers: joint, group, subgroup, iq,
// qr-hardlimit.
DecodeResult decode_with_strategy(const std::string& strategy,
                                  const FilteredObservations& obs,
                                  const CMatrix& h, const LinearSTBC& code,
                                  const CSRPartition& partition,
                                  const Constellation& c,
                                  std::size_t cap = 1000000);

bool known_strategy(const std::string& strategy);

// Bit labels of the symbol vector under the constellation's Gray mapping.
std::vector<std::uint8_t> bits_from_symbols(const LinearSTBC& code,
                                            const Constellation& c,
                                            const RVector& s);

struct AuditEntry {
    int m = 0;
    long long metric_evals = 0;
};

struct AuditResult {
    std::string code_name;
    std::string strategy;
    std::vector<AuditEntry> entries;
    double exponent = 0.0;  // least-squares slope of log(count) vs log(M)
};

// Runs one decode per constellation size and fits the complexity order.
AuditResult complexity_audit(const LinearSTBC& code,
                             const std::string& strategy,
                             const std::vector<int>& m_list, int n_rx,
                             std::uint64_t seed = 7,
                             std::size_t cap = 100000000);

}  // namespace tops
