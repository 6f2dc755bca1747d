#include "tops/stbc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <Eigen/SVD>

namespace tops {

bool SupportSet::overlaps(const SupportSet& o) const {
    auto a = cells.begin();
    auto b = o.cells.begin();
    while (a != cells.end() && b != o.cells.end()) {
        if (*a == *b) return true;
        if (*a < *b)
            ++a;
        else
            ++b;
    }
    return false;
}

SupportSet SupportSet::union_of(const SupportSet& a, const SupportSet& b) {
    SupportSet u;
    std::set_union(a.cells.begin(), a.cells.end(), b.cells.begin(),
                   b.cells.end(), std::back_inserter(u.cells));
    return u;
}

std::string SupportSet::to_string() const {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ",";
        os << "(" << cells[i].first << "," << cells[i].second << ")";
    }
    os << "}";
    return os.str();
}

LinearSTBC::LinearSTBC(std::string name_, int n_tx_, int n_slots_,
                       std::vector<CMatrix> weights_, bool allow_nonsquare)
    : name(std::move(name_)),
      n_tx(n_tx_),
      n_slots(n_slots_),
      weights(std::move(weights_)) {
    require(n_tx >= 1 && n_slots >= 1, "dimensions must be positive");
    require(allow_nonsquare || n_slots == n_tx,
            "minimum-delay code requires n_slots == n_tx");
    require(!weights.empty(), "code needs at least one weight matrix");
    double sum_sq = 0.0;
    for (const auto& w : weights) {
        require(w.rows() == n_tx && w.cols() == n_slots,
                "weight matrix shape mismatch in code " + name);
        require(is_finite(w), "weight matrix has non-finite entries");
        double n2 = w.squaredNorm();
        require(n2 > 0.0, "all-zero weight matrix in code " + name);
        sum_sq += n2;
    }
    // E[||X||_F^2] = scale^2 * (1/2) * sum ||A_i||_F^2  ==  n_tx * n_slots.
    energy_scale = std::sqrt(2.0 * n_tx * n_slots / sum_sq);
}

double default_support_tol(const CMatrix& m) {
    double mx = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            mx = std::max(mx, std::abs(m(i, j)));
    return 1e-12 * mx;
}

SupportSet support_set(const CMatrix& m, double tol) {
    require(m.rows() >= 1 && m.cols() >= 1, "empty grid");
    require(is_finite(m), "grid has non-finite entries");
    if (tol < 0) tol = default_support_tol(m);
    SupportSet s;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (std::abs(m(i, j)) > tol)
                s.cells.emplace_back(int(i) + 1, int(j) + 1);
    return s;
}

CSRPartition csr_partition(const LinearSTBC& code, double tol) {
    CSRPartition part;
    part.total_symbols = code.k();
    for (int i = 0; i < code.k(); ++i) {
        SupportSet s = support_set(code.weights[i], tol);
        auto it = std::find_if(part.groups.begin(), part.groups.end(),
                               [&](const CSRGroup& g) { return g.support == s; });
        if (it == part.groups.end()) {
            part.groups.push_back({{i + 1}, std::move(s)});
        } else {
            it->indices.push_back(i + 1);
        }
    }
    // Insertion order already sorts groups by smallest member index.
    return part;
}

CSRPartition pulse_assignable_partition(const CSRPartition& p) {
    int n = p.p();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (p.groups[a].support.overlaps(p.groups[b].support))
                parent[find(a)] = find(b);

    std::vector<std::vector<int>> members(n);
    for (int g = 0; g < n; ++g) members[find(g)].push_back(g);

    CSRPartition out;
    out.total_symbols = p.total_symbols;
    for (int root = 0; root < n; ++root) {
        if (members[root].empty()) continue;
        CSRGroup merged;
        for (int g : members[root]) {
            merged.indices.insert(merged.indices.end(),
                                  p.groups[g].indices.begin(),
                                  p.groups[g].indices.end());
            merged.support = SupportSet::union_of(merged.support,
                                                  p.groups[g].support);
        }
        std::sort(merged.indices.begin(), merged.indices.end());
        out.groups.push_back(std::move(merged));
    }
    std::sort(out.groups.begin(), out.groups.end(),
              [](const CSRGroup& a, const CSRGroup& b) {
                  return a.indices.front() < b.indices.front();
              });
    return out;
}

CSRPartition coarsen(const CSRPartition& p,
                     const std::vector<std::vector<int>>& merge_spec,
                     bool require_disjoint) {
    std::set<int> seen;
    for (const auto& ids : merge_spec)
        for (int id : ids) {
            require(id >= 1 && id <= p.p(), "unknown group id in merge spec");
            require(seen.insert(id).second,
                    "group id repeated across merge spec");
        }

    CSRPartition out;
    out.total_symbols = p.total_symbols;
    for (const auto& ids : merge_spec) {
        CSRGroup merged;
        for (int id : ids) {
            const CSRGroup& g = p.groups[id - 1];
            if (require_disjoint && merged.support.overlaps(g.support))
                throw InvalidArgument(
                    "invalid-merge: overlapping supports in merged group");
            merged.indices.insert(merged.indices.end(), g.indices.begin(),
                                  g.indices.end());
            merged.support = SupportSet::union_of(merged.support, g.support);
        }
        if (merged.indices.empty()) continue;
        std::sort(merged.indices.begin(), merged.indices.end());
        out.groups.push_back(std::move(merged));
    }
    for (int id = 1; id <= p.p(); ++id)
        if (!seen.count(id)) out.groups.push_back(p.groups[id - 1]);
    std::sort(out.groups.begin(), out.groups.end(),
              [](const CSRGroup& a, const CSRGroup& b) {
                  return a.indices.front() < b.indices.front();
              });
    return out;
}

CMatrix assemble_codeword(const LinearSTBC& code, const RVector& s) {
    require(s.size() == code.k(), "symbol vector length mismatch");
    require(s.allFinite(), "symbol vector has non-finite entries");
    CMatrix x = CMatrix::Zero(code.n_tx, code.n_slots);
    for (int i = 0; i < code.k(); ++i) x += s[i] * code.weights[i];
    return code.energy_scale * x;
}

CMatrix group_codeword(const LinearSTBC& code, const CSRPartition& p,
                       int group_id, const RVector& s) {
    require(group_id >= 1 && group_id <= p.p(), "unknown group id");
    require(s.size() == code.k(), "symbol vector length mismatch");
    CMatrix x = CMatrix::Zero(code.n_tx, code.n_slots);
    for (int idx : p.groups[group_id - 1].indices)
        x += s[idx - 1] * code.weights[idx - 1];
    return code.energy_scale * x;
}

bool quasi_orthogonal_pair(const CMatrix& a, const CMatrix& b, double tol) {
    require(a.rows() == b.rows() && a.cols() == b.cols(),
            "dimension mismatch");
    if (tol < 0) tol = 1e-10 * a.norm() * b.norm();
    CMatrix cross = a * b.adjoint() + b * a.adjoint();
    return cross.norm() <= tol;
}

IntraGroupStructure intra_group_structure(const LinearSTBC& code,
                                          const CSRPartition& p, int group_id,
                                          double tol) {
    require(group_id >= 1 && group_id <= p.p(), "unknown group id");
    const auto& members = p.groups[group_id - 1].indices;
    int n = static_cast<int>(members.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!quasi_orthogonal_pair(code.weights[members[a] - 1],
                                       code.weights[members[b] - 1], tol))
                parent[find(a)] = find(b);

    std::vector<std::vector<int>> comp(n);
    for (int i = 0; i < n; ++i) comp[find(i)].push_back(members[i]);

    IntraGroupStructure s;
    s.group_id = group_id;
    for (auto& c : comp)
        if (!c.empty()) s.subgroups.push_back(std::move(c));
    std::sort(s.subgroups.begin(), s.subgroups.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return s;
}

std::vector<RVector> enumerate_symbol_vectors(const LinearSTBC& code,
                                              const Constellation& c,
                                              std::size_t cap) {
    require(code.k() % 2 == 0,
            "constellation mapping needs an even number of real symbols");
    int pairs = code.k() / 2;
    double count = 1.0;
    for (int i = 0; i < pairs; ++i) count *= c.m;
    if (count > double(cap))
        throw InvalidArgument("codebook-too-large: " + std::to_string(count) +
                              " codewords exceeds cap " + std::to_string(cap));

    std::vector<RVector> out;
    out.reserve(static_cast<size_t>(count));
    RVector s = RVector::Zero(code.k());
    std::vector<int> digit(pairs, 0);
    while (true) {
        for (int i = 0; i < pairs; ++i) {
            s[2 * i] = c.points[digit[i]].real();
            s[2 * i + 1] = c.points[digit[i]].imag();
        }
        out.push_back(s);
        int pos = pairs - 1;
        while (pos >= 0 && ++digit[pos] == c.m) digit[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

CodeMetrics code_metrics(const LinearSTBC& code, const Constellation& c,
                         std::size_t cap) {
    auto vectors = enumerate_symbol_vectors(code, c, cap);
    std::vector<CMatrix> words;
    words.reserve(vectors.size());
    for (const auto& s : vectors) words.push_back(assemble_codeword(code, s));

    CodeMetrics m;
    m.min_rank = code.n_tx;
    m.coding_gain = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < words.size(); ++a) {
        for (size_t b = a + 1; b < words.size(); ++b) {
            CMatrix diff = words[a] - words[b];
            CMatrix gram = diff * diff.adjoint();
            cx det = gram.determinant();
            if (std::abs(det.imag()) > 1e-10 * std::max(1.0, std::abs(det)))
                throw NumericFailure("difference Gram determinant not real");
            m.coding_gain = std::min(m.coding_gain, std::max(0.0, det.real()));

            Eigen::JacobiSVD<CMatrix> svd(diff);
            const auto& sv = svd.singularValues();
            double rank_tol = 1e-9 * sv(0);
            int rank = 0;
            for (Eigen::Index i = 0; i < sv.size(); ++i)
                if (sv(i) > rank_tol) ++rank;
            m.min_rank = std::min(m.min_rank, rank);
            ++m.pair_count_examined;
        }
    }
    if (!std::isfinite(m.coding_gain)) m.coding_gain = 0.0;
    if (m.min_rank < code.n_tx) m.coding_gain = 0.0;
    return m;
}

int diversity_rank(const LinearSTBC& code, const Constellation& c,
                   std::size_t cap) {
    return code_metrics(code, c, cap).min_rank;
}

CodeMetrics coding_gain(const LinearSTBC& code, const Constellation& c,
                        std::size_t cap) {
    return code_metrics(code, c, cap);
}

}  // namespace tops
