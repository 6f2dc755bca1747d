#pragma once

#include <vector>

#include "tops/pulse.hpp"
#include "tops/rng.hpp"
#include "tops/stbc.hpp"

namespace tops {

// Quasi-static flat Rayleigh channel, n_rx x n_tx, entries CN(0,1).
struct ChannelRealization {
    CMatrix h;
};

// Received sampled waveforms, one per (receive antenna, slot), on the pulse
// family's grid.
struct WaveformFrame {
    std::vector<std::vector<CVector>> wave;  // [rx][slot] -> samples
    double dt = 0.0;
    double n0 = 0.0;

    int n_rx() const { return static_cast<int>(wave.size()); }
    int slot_count() const {
        return wave.empty() ? 0 : static_cast<int>(wave.front().size());
    }
};

// Per-group matched-filter outputs Y_g = H X_g + N_g.
struct FilteredObservations {
    std::vector<CMatrix> y;  // one n_rx x T matrix per group
    double n0 = 0.0;

    int group_count() const { return static_cast<int>(y.size()); }
};

ChannelRealization draw_channel(int n_tx, int n_rx, Rng& rng);

// Waveform-level transmission: slot waveform at receive antenna r is
// sum_g w_g(t) * (H X_g)(r, slot) plus complex AWGN of per-sample variance
// n0/dt (n0/2 per real dimension after unit-energy matched filtering).
WaveformFrame transmit(const std::vector<CMatrix>& x_groups,
                       const PulseFamily& pulses, const ChannelRealization& h,
                       double n0, Rng& rng);

FilteredObservations matched_filter_bank(const WaveformFrame& frame,
                                         const PulseFamily& pulses);

// Statistically equivalent fast path: Y_g = H X_g + N_g directly.
FilteredObservations discrete_shortcut(const std::vector<CMatrix>& x_groups,
                                       const ChannelRealization& h, double n0,
                                       Rng& rng);

// Sub-codewords X_g for every group of the partition.
std::vector<CMatrix> split_codeword(const LinearSTBC& code,
                                    const CSRPartition& p, const RVector& s);

}  // namespace tops
