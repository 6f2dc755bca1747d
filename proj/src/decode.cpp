#include "tops/decode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <Eigen/QR>

namespace tops {

namespace {

// Enumeration unit: a complex coordinate pair (2j-1, 2j) iterating the point
// list, or a lone real coordinate iterating its PAM axis.
struct EnumUnit {
    int coord_a = 0;
    int coord_b = 0;  // 0 for a single real coordinate
};

std::vector<EnumUnit> plan_units(std::vector<int> coords,
                                 const Constellation& c) {
    std::sort(coords.begin(), coords.end());
    std::vector<EnumUnit> units;
    for (size_t i = 0; i < coords.size();) {
        int k = coords[i];
        if (k % 2 == 1 && i + 1 < coords.size() && coords[i + 1] == k + 1) {
            units.push_back({k, k + 1});
            i += 2;
            continue;
        }
        if (!c.separable)
            throw NotSeparable(
                "not-separable: lone real coordinate needs a separable "
                "constellation");
        units.push_back({k, 0});
        ++i;
    }
    return units;
}

int unit_choices(const EnumUnit& u, const Constellation& c) {
    return u.coord_b ? c.m : c.axis_for(u.coord_a).size();
}

double candidate_count(const std::vector<EnumUnit>& units,
                       const Constellation& c) {
    double n = 1.0;
    for (const auto& u : units) n *= unit_choices(u, c);
    return n;
}

void apply_digit(const EnumUnit& u, int digit, const Constellation& c,
                 RVector& s) {
    if (u.coord_b) {
        s[u.coord_a - 1] = c.points[digit].real();
        s[u.coord_b - 1] = c.points[digit].imag();
    } else {
        s[u.coord_a - 1] = c.axis_for(u.coord_a).levels[digit];
    }
}

// Visits every candidate in lexicographic digit order (first unit most
// significant); fn sees the filled coordinates in `s`.
template <class F>
long long for_each_candidate(const std::vector<EnumUnit>& units,
                             const Constellation& c, RVector& s, F&& fn) {
    std::vector<int> digit(units.size(), 0);
    for (size_t i = 0; i < units.size(); ++i) apply_digit(units[i], 0, c, s);
    long long visited = 0;
    while (true) {
        fn();
        ++visited;
        int pos = static_cast<int>(units.size()) - 1;
        while (pos >= 0) {
            if (++digit[pos] < unit_choices(units[pos], c)) {
                apply_digit(units[pos], digit[pos], c, s);
                break;
            }
            digit[pos] = 0;
            apply_digit(units[pos], 0, c, s);
            --pos;
        }
        if (pos < 0) break;
    }
    return visited;
}

// Real-valued view of one group's observation model: y = G s + n over the
// group's real coordinates.
struct GroupModel {
    std::vector<int> coords;  // ascending global symbol indices
    RMatrix g;                // 2*n_rx*T x coords.size()
    RVector y;                // stacked Re/Im of Y_g
};

RVector stack_real(const CMatrix& m) {
    const int n = static_cast<int>(m.size());
    RVector v(2 * n);
    int idx = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            v[idx] = m(r, c).real();
            v[idx + n] = m(r, c).imag();
            ++idx;
        }
    return v;
}

std::vector<GroupModel> build_models(const FilteredObservations& obs,
                                     const CMatrix& h, const LinearSTBC& code,
                                     const CSRPartition& partition) {
    require(obs.group_count() == partition.p(),
            "partition-mismatch: observation group count differs from "
            "partition");
    std::vector<GroupModel> models;
    for (int g = 0; g < partition.p(); ++g) {
        const auto& grp = partition.groups[g];
        GroupModel m;
        m.coords = grp.indices;
        m.y = stack_real(obs.y[g]);
        m.g = RMatrix(m.y.size(), grp.size());
        for (int local = 0; local < grp.size(); ++local) {
            CMatrix b = code.energy_scale *
                        (h * code.weights[grp.indices[local] - 1]);
            m.g.col(local) = stack_real(b);
        }
        models.push_back(std::move(m));
    }
    return models;
}

RVector local_values(const GroupModel& m, const RVector& s) {
    RVector v(m.coords.size());
    for (size_t i = 0; i < m.coords.size(); ++i) v[i] = s[m.coords[i] - 1];
    return v;
}

// Minimizes ||y - G_subset s_subset||^2 over the candidates of `units`,
// writing the winner into `s`. Ties keep the earlier (lexicographically
// smaller) candidate.
long long minimize_subset(const GroupModel& m,
                          const std::vector<int>& subset_coords,
                          const std::vector<EnumUnit>& units,
                          const Constellation& c, RVector& s) {
    std::vector<int> cols;
    for (int coord : subset_coords) {
        auto it = std::find(m.coords.begin(), m.coords.end(), coord);
        require(it != m.coords.end(), "structure-mismatch: coordinate not in group");
        cols.push_back(static_cast<int>(it - m.coords.begin()));
    }
    RMatrix gs(m.y.size(), cols.size());
    for (size_t i = 0; i < cols.size(); ++i) gs.col(i) = m.g.col(cols[i]);

    double best = std::numeric_limits<double>::infinity();
    RVector best_vals(subset_coords.size());
    RVector vals(subset_coords.size());
    RVector scratch = RVector::Zero(s.size());
    long long evals = for_each_candidate(units, c, scratch, [&] {
        for (size_t i = 0; i < subset_coords.size(); ++i)
            vals[i] = scratch[subset_coords[i] - 1];
        double metric = (m.y - gs * vals).squaredNorm();
        if (metric < best) {
            best = metric;
            best_vals = vals;
        }
    });
    for (size_t i = 0; i < subset_coords.size(); ++i)
        s[subset_coords[i] - 1] = best_vals[i];
    return evals;
}

DecodeResult finish(const LinearSTBC& code, const Constellation& c,
                    RVector s_hat, long long evals, std::string strategy) {
    DecodeResult r;
    r.s_hat = std::move(s_hat);
    r.x_hat = assemble_codeword(code, r.s_hat);
    r.bits = bits_from_symbols(code, c, r.s_hat);
    r.metric_evals = evals;
    r.strategy = std::move(strategy);
    return r;
}

void check_cap(double count, std::size_t cap) {
    if (count > static_cast<double>(cap))
        throw InvalidArgument("codebook-too-large: " + std::to_string(count) +
                              " candidates exceeds cap " + std::to_string(cap));
}

}  // namespace

std::vector<std::uint8_t> bits_from_symbols(const LinearSTBC& code,
                                            const Constellation& c,
                                            const RVector& s) {
    require(s.size() == code.k(), "symbol vector length mismatch");
    require(code.k() % 2 == 0, "bit mapping needs coordinate pairs");
    std::vector<std::uint8_t> bits;
    for (int j = 0; j < code.k() / 2; ++j) {
        std::uint32_t label = 0;
        if (c.separable) {
            int ki = nearest_level(c.axis_i, s[2 * j]);
            int kq = nearest_level(c.axis_q, s[2 * j + 1]);
            label = (gray_code(static_cast<std::uint32_t>(ki)) << c.axis_q.bits) |
                    gray_code(static_cast<std::uint32_t>(kq));
        } else {
            cx p(s[2 * j], s[2 * j + 1]);
            int best = 0;
            double best_d = std::abs(p - c.points[0]);
            for (int k = 1; k < c.m; ++k) {
                double d = std::abs(p - c.points[k]);
                if (d < best_d) {
                    best_d = d;
                    best = k;
                }
            }
            label = c.labels[best];
        }
        for (int b = c.bits_per_symbol - 1; b >= 0; --b)
            bits.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
    }
    return bits;
}

DecodeResult joint_ml(const FilteredObservations& obs, const CMatrix& h,
                      const LinearSTBC& code, const CSRPartition& partition,
                      const Constellation& c, std::size_t cap) {
    auto models = build_models(obs, h, code, partition);
    std::vector<int> all(code.k());
    for (int i = 0; i < code.k(); ++i) all[i] = i + 1;
    auto units = plan_units(all, c);
    check_cap(candidate_count(units, c), cap);

    RVector s = RVector::Zero(code.k());
    RVector best_s = s;
    double best = std::numeric_limits<double>::infinity();
    long long evals = for_each_candidate(units, c, s, [&] {
        double metric = 0.0;
        for (const auto& m : models)
            metric += (m.y - m.g * local_values(m, s)).squaredNorm();
        if (metric < best) {
            best = metric;
            best_s = s;
        }
    });
    return finish(code, c, std::move(best_s), evals, "joint");
}

DecodeResult group_ml(const FilteredObservations& obs, const CMatrix& h,
                      const LinearSTBC& code, const CSRPartition& partition,
                      const Constellation& c, std::size_t cap) {
    auto models = build_models(obs, h, code, partition);
    RVector s_hat = RVector::Zero(code.k());
    long long evals = 0;
    for (const auto& m : models) {
        auto units = plan_units(m.coords, c);
        check_cap(candidate_count(units, c), cap);
        evals += minimize_subset(m, m.coords, units, c, s_hat);
    }
    return finish(code, c, std::move(s_hat), evals, "group");
}

std::vector<IntraGroupStructure> intra_all(const LinearSTBC& code,
                                           const CSRPartition& partition) {
    std::vector<IntraGroupStructure> out;
    for (int g = 1; g <= partition.p(); ++g)
        out.push_back(intra_group_structure(code, partition, g));
    return out;
}

DecodeResult subgroup_ml(const FilteredObservations& obs, const CMatrix& h,
                         const LinearSTBC& code, const CSRPartition& partition,
                         const std::vector<IntraGroupStructure>& intra,
                         const Constellation& c, std::size_t cap) {
    require(static_cast<int>(intra.size()) == partition.p(),
            "structure-mismatch: need one intra structure per group");
    auto models = build_models(obs, h, code, partition);
    RVector s_hat = RVector::Zero(code.k());
    long long evals = 0;
    for (int g = 0; g < partition.p(); ++g) {
        std::set<int> members(partition.groups[g].indices.begin(),
                              partition.groups[g].indices.end());
        int covered = 0;
        for (const auto& sub : intra[g].subgroups) {
            for (int coord : sub)
                require(members.count(coord),
                        "structure-mismatch: subgroup symbol outside group");
            covered += static_cast<int>(sub.size());
            auto units = plan_units(sub, c);
            check_cap(candidate_count(units, c), cap);
            evals += minimize_subset(models[g], sub, units, c, s_hat);
        }
        require(covered == partition.groups[g].size(),
                "structure-mismatch: subgroups do not cover the group");
    }
    return finish(code, c, std::move(s_hat), evals, "subgroup");
}

DecodeResult iq_separated_ml(const FilteredObservations& obs, const CMatrix& h,
                             const LinearSTBC& code,
                             const CSRPartition& partition,
                             const Constellation& c, std::size_t cap) {
    if (!c.separable)
        throw NotSeparable("not-separable: constellation has no I/Q axes");
    auto models = build_models(obs, h, code, partition);
    RVector s_hat = RVector::Zero(code.k());
    long long evals = 0;
    for (int g = 0; g < partition.p(); ++g) {
        std::vector<int> iset, qset;
        for (int coord : partition.groups[g].indices)
            (coord % 2 == 1 ? iset : qset).push_back(coord);
        for (int a : iset)
            for (int b : qset)
                if (!quasi_orthogonal_pair(code.weights[a - 1],
                                           code.weights[b - 1]))
                    throw NotSeparable(
                        "not-separable: I/Q weight sets are coupled in group " +
                        std::to_string(g + 1));
        for (const auto& side : {iset, qset}) {
            if (side.empty()) continue;
            std::vector<EnumUnit> units;
            for (int coord : side) units.push_back({coord, 0});
            check_cap(candidate_count(units, c), cap);
            evals += minimize_subset(models[g], side, units, c, s_hat);
        }
    }
    return finish(code, c, std::move(s_hat), evals, "iq");
}

std::vector<int> default_condition_set(const CSRPartition& partition) {
    std::vector<int> cond;
    for (const auto& g : partition.groups) cond.push_back(g.indices.back());
    return cond;
}

DecodeResult qr_hardlimit_ml(const FilteredObservations& obs, const CMatrix& h,
                             const LinearSTBC& code,
                             const CSRPartition& partition,
                             const Constellation& c,
                             const std::vector<int>& condition_set,
                             std::size_t cap) {
    if (!c.separable)
        throw NotSeparable("not-separable: hard-limiting needs PAM axes");
    auto models = build_models(obs, h, code, partition);
    std::set<int> cond(condition_set.begin(), condition_set.end());

    RVector s_hat = RVector::Zero(code.k());
    long long evals = 0;
    for (const auto& m : models) {
        std::vector<int> free_coords, cond_coords;
        for (int coord : m.coords)
            (cond.count(coord) ? cond_coords : free_coords).push_back(coord);
        const int n_free = static_cast<int>(free_coords.size());
        const int n_all = static_cast<int>(m.coords.size());

        // Permuted system: free coordinates first, conditioned last, so
        // back-substitution resolves the free ones given the conditioned.
        std::vector<int> order = free_coords;
        order.insert(order.end(), cond_coords.begin(), cond_coords.end());
        RMatrix gp(m.y.size(), n_all);
        for (int i = 0; i < n_all; ++i) {
            auto it = std::find(m.coords.begin(), m.coords.end(), order[i]);
            gp.col(i) = m.g.col(it - m.coords.begin());
        }
        Eigen::HouseholderQR<RMatrix> qr(gp);
        RMatrix r_full = qr.matrixQR()
                             .topRows(n_all)
                             .template triangularView<Eigen::Upper>();
        RVector z = (qr.householderQ().transpose() * m.y).head(n_all);

        double max_diag = 0.0, min_free_diag =
                                   std::numeric_limits<double>::infinity();
        for (int i = 0; i < n_all; ++i)
            max_diag = std::max(max_diag, std::abs(r_full(i, i)));
        for (int i = 0; i < n_free; ++i)
            min_free_diag = std::min(min_free_diag, std::abs(r_full(i, i)));
        if (n_free > 0 && min_free_diag <= 1e-9 * max_diag) {
            // Degenerate channel realization.
            DecodeResult fb = group_ml(obs, h, code, partition, c, cap);
            fb.strategy = "qr-hardlimit";
            fb.fallback = true;
            return fb;
        }

        std::vector<EnumUnit> units;
        for (int coord : cond_coords) units.push_back({coord, 0});
        check_cap(std::max(1.0, candidate_count(units, c)), cap);

        double best = std::numeric_limits<double>::infinity();
        RVector best_vals(n_all), vals(n_all);
        RVector scratch = RVector::Zero(code.k());
        auto evaluate = [&] {
            for (int i = 0; i < static_cast<int>(cond_coords.size()); ++i)
                vals[n_free + i] = scratch[cond_coords[i] - 1];
            for (int i = n_free - 1; i >= 0; --i) {
                double acc = z[i];
                for (int j = i + 1; j < n_all; ++j) acc -= r_full(i, j) * vals[j];
                double u = acc / r_full(i, i);
                const PamAxis& axis = c.axis_for(order[i]);
                vals[i] = axis.levels[nearest_level(axis, u)];
            }
            double metric = (m.y - gp * vals).squaredNorm();
            ++evals;
            if (metric < best) {
                best = metric;
                best_vals = vals;
            }
        };
        if (units.empty()) {
            evaluate();
        } else {
            for_each_candidate(units, c, scratch, evaluate);
        }
        for (int i = 0; i < n_all; ++i) s_hat[order[i] - 1] = best_vals[i];
    }
    return finish(code, c, std::move(s_hat), evals, "qr-hardlimit");
}

bool known_strategy(const std::string& strategy) {
    return strategy == "joint" || strategy == "group" ||
           strategy == "subgroup" || strategy == "iq" ||
           strategy == "qr-hardlimit";
}

DecodeResult decode_with_strategy(const std::string& strategy,
                                  const FilteredObservations& obs,
                                  const CMatrix& h, const LinearSTBC& code,
                                  const CSRPartition& partition,
                                  const Constellation& c, std::size_t cap) {
    if (strategy == "joint") return joint_ml(obs, h, code, partition, c, cap);
    if (strategy == "group") return group_ml(obs, h, code, partition, c, cap);
    if (strategy == "subgroup")
        return subgroup_ml(obs, h, code, partition, intra_all(code, partition),
                           c, cap);
    if (strategy == "iq")
        return iq_separated_ml(obs, h, code, partition, c, cap);
    if (strategy == "qr-hardlimit")
        return qr_hardlimit_ml(obs, h, code, partition, c,
                               default_condition_set(partition), cap);
    throw InvalidArgument("unknown strategy: " + strategy);
}

AuditResult complexity_audit(const LinearSTBC& code,
                             const std::string& strategy,
                             const std::vector<int>& m_list, int n_rx,
                             std::uint64_t seed, std::size_t cap) {
    require(!m_list.empty(), "need at least one constellation size");
    CSRPartition partition = csr_partition(code);
    AuditResult res;
    res.code_name = code.name;
    res.strategy = strategy;
    for (int m : m_list) {
        Constellation c = make_qam(m);
        Rng sym_rng(seed, m, 0), chan_rng(seed, m, 1), noise_rng(seed, m, 2);
        RVector s(code.k());
        for (int j = 0; j < code.k() / 2; ++j) {
            cx p = c.points[sym_rng.uniform_int(c.m)];
            s[2 * j] = p.real();
            s[2 * j + 1] = p.imag();
        }
        ChannelRealization h = draw_channel(code.n_tx, n_rx, chan_rng);
        double n0 = 0.1;
        auto obs = discrete_shortcut(split_codeword(code, partition, s), h, n0,
                                     noise_rng);
        DecodeResult d =
            decode_with_strategy(strategy, obs, h.h, code, partition, c, cap);
        res.entries.push_back({m, d.metric_evals});
    }
    // Least-squares slope of log(count) against log(M).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = static_cast<int>(res.entries.size());
    for (const auto& e : res.entries) {
        double x = std::log(double(e.m));
        double y = std::log(double(e.metric_evals));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    res.exponent =
        n > 1 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
    return res;
}

}  // namespace tops
