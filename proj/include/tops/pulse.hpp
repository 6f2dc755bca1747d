#pragma once

#include <iosfwd>
#include <vector>

#include "tops/types.hpp"

namespace tops {

// Real waveform sampled on a uniform grid over [0, duration], endpoints
// included: samples[k] at t = k*dt, (samples.size()-1)*dt == duration.
struct SampledWaveform {
    std::vector<double> samples;
    double dt = 0.0;
    double duration = 0.0;

    double energy() const;  // trapezoidal integral of s(t)^2
};

// P mutually orthonormal pulses on a common grid with their Gram matrix
// (identity by construction).
struct PulseFamily {
    std::vector<SampledWaveform> pulses;
    RMatrix gram;

    int p_count() const { return static_cast<int>(pulses.size()); }
    double dt() const { return pulses.front().dt; }
    int grid_size() const { return static_cast<int>(pulses.front().samples.size()); }
};

// Hermite-Gaussian H_order(u) exp(-u^2/2), u = (t - t_s/2)/width, normalized
// to unit energy on the grid of `oversampling` intervals covering [0, t_s].
SampledWaveform hermite_waveform(int order, double t_s, int oversampling,
                                 double width);

// Family of orders 0..p_count-1, re-orthonormalized on the discrete grid so
// the Gram matrix is identity to 1e-12. width < 0 selects t_s/8.
PulseFamily build_pulse_family(int p_count, double t_s = 1.0,
                               int oversampling = 64, double width = -1.0);

// Trapezoidal inner product; waveforms must share the grid.
double inner_product(const SampledWaveform& a, const SampledWaveform& b);

// Smallest two-sided bandwidth containing `fraction` of the spectral energy.
double fractional_energy_bandwidth(const SampledWaveform& w, double fraction);

// CSV: first column time, one column per pulse.
void export_pulses_csv(std::ostream& os, const PulseFamily& family);

}  // namespace tops
