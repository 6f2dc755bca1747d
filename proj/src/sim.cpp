#include "tops/sim.hpp"

namespace tops {

ChannelRealization draw_channel(int n_tx, int n_rx, Rng& rng) {
    require(n_tx >= 1 && n_rx >= 1, "channel dimensions must be positive");
    CMatrix h(n_rx, n_tx);
    for (int i = 0; i < n_rx; ++i)
        for (int j = 0; j < n_tx; ++j) h(i, j) = rng.cnormal(1.0);
    return {h};
}

WaveformFrame transmit(const std::vector<CMatrix>& x_groups,
                       const PulseFamily& pulses, const ChannelRealization& h,
                       double n0, Rng& rng) {
    require(static_cast<int>(x_groups.size()) == pulses.p_count(),
            "group-count-mismatch: one pulse per group required");
    require(!x_groups.empty(), "need at least one group");
    require(n0 >= 0.0, "noise density must be non-negative");
    const int n_rx = static_cast<int>(h.h.rows());
    const int slots = static_cast<int>(x_groups.front().cols());
    const int n_samp = pulses.grid_size();

    std::vector<CMatrix> hx;
    for (const auto& xg : x_groups) {
        require(xg.rows() == h.h.cols() && xg.cols() == slots,
                "sub-codeword shape mismatch");
        hx.push_back(h.h * xg);
    }

    WaveformFrame frame;
    frame.dt = pulses.dt();
    frame.n0 = n0;
    frame.wave.assign(n_rx, std::vector<CVector>(slots));
    const double sample_sd = n0 > 0 ? std::sqrt(n0 / (2.0 * frame.dt)) : 0.0;
    for (int r = 0; r < n_rx; ++r) {
        for (int i = 0; i < slots; ++i) {
            CVector v = CVector::Zero(n_samp);
            for (size_t g = 0; g < hx.size(); ++g) {
                cx gain = hx[g](r, i);
                for (int k = 0; k < n_samp; ++k)
                    v[k] += gain * pulses.pulses[g].samples[k];
            }
            if (n0 > 0) {
                for (int k = 0; k < n_samp; ++k)
                    v[k] += cx(sample_sd * rng.normal(),
                               sample_sd * rng.normal());
            }
            frame.wave[r][i] = std::move(v);
        }
    }
    return frame;
}

FilteredObservations matched_filter_bank(const WaveformFrame& frame,
                                         const PulseFamily& pulses) {
    require(frame.n_rx() >= 1 && frame.slot_count() >= 1, "empty frame");
    require(frame.dt == pulses.dt(), "grid-mismatch between frame and pulses");
    const int n_samp = pulses.grid_size();
    require(static_cast<int>(frame.wave[0][0].size()) == n_samp,
            "grid-mismatch between frame and pulses");

    FilteredObservations obs;
    obs.n0 = frame.n0;
    for (int g = 0; g < pulses.p_count(); ++g) {
        CMatrix y(frame.n_rx(), frame.slot_count());
        const auto& w = pulses.pulses[g].samples;
        for (int r = 0; r < frame.n_rx(); ++r) {
            for (int i = 0; i < frame.slot_count(); ++i) {
                cx acc = 0.0;
                for (int k = 0; k < n_samp; ++k) {
                    double wt = (k == 0 || k == n_samp - 1) ? 0.5 : 1.0;
                    acc += wt * frame.wave[r][i][k] * w[k];
                }
                y(r, i) = acc * frame.dt;
            }
        }
        obs.y.push_back(std::move(y));
    }
    return obs;
}

FilteredObservations discrete_shortcut(const std::vector<CMatrix>& x_groups,
                                       const ChannelRealization& h, double n0,
                                       Rng& rng) {
    require(!x_groups.empty(), "need at least one group");
    require(n0 >= 0.0, "noise density must be non-negative");
    FilteredObservations obs;
    obs.n0 = n0;
    for (const auto& xg : x_groups) {
        require(xg.rows() == h.h.cols(), "sub-codeword shape mismatch");
        CMatrix y = h.h * xg;
        if (n0 > 0) {
            for (Eigen::Index r = 0; r < y.rows(); ++r)
                for (Eigen::Index c = 0; c < y.cols(); ++c)
                    y(r, c) += rng.cnormal(n0);
        }
        obs.y.push_back(std::move(y));
    }
    return obs;
}

std::vector<CMatrix> split_codeword(const LinearSTBC& code,
                                    const CSRPartition& p, const RVector& s) {
    std::vector<CMatrix> xs;
    xs.reserve(p.p());
    for (int g = 1; g <= p.p(); ++g)
        xs.push_back(group_codeword(code, p, g, s));
    return xs;
}

}  // namespace tops
