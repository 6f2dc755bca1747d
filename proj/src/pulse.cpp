#include "tops/pulse.hpp"

#include <cmath>
#include <ostream>

namespace tops {

namespace {

double trapz_weight(int k, int n) { return (k == 0 || k == n - 1) ? 0.5 : 1.0; }

}  // namespace

double SampledWaveform::energy() const { return inner_product(*this, *this); }

double inner_product(const SampledWaveform& a, const SampledWaveform& b) {
    require(a.samples.size() == b.samples.size() && a.dt == b.dt,
            "grid-mismatch in inner product");
    int n = static_cast<int>(a.samples.size());
    double acc = 0.0;
    for (int k = 0; k < n; ++k)
        acc += trapz_weight(k, n) * a.samples[k] * b.samples[k];
    return acc * a.dt;
}

SampledWaveform hermite_waveform(int order, double t_s, int oversampling,
                                 double width) {
    require(order >= 0 && order <= 16, "Hermite order must be in [0, 16]");
    require(oversampling >= 2, "need at least two grid intervals");
    require(t_s > 0 && width > 0, "duration and width must be positive");

    SampledWaveform w;
    w.duration = t_s;
    w.dt = t_s / oversampling;
    w.samples.resize(oversampling + 1);
    for (int k = 0; k <= oversampling; ++k) {
        double u = (k * w.dt - t_s / 2.0) / width;
        // Physicists' Hermite recurrence.
        double h_prev = 1.0, h = 2.0 * u;
        if (order == 0) h = 1.0;
        for (int m = 2; m <= order; ++m) {
            double next = 2.0 * u * h - 2.0 * (m - 1) * h_prev;
            h_prev = h;
            h = next;
        }
        w.samples[k] = h * std::exp(-u * u / 2.0);
    }
    double e = w.energy();
    if (!(e > 1e-300))
        throw NumericFailure("unstable-order: Hermite waveform energy underflow");
    double inv = 1.0 / std::sqrt(e);
    for (auto& s : w.samples) s *= inv;
    return w;
}

PulseFamily build_pulse_family(int p_count, double t_s, int oversampling,
                               double width) {
    require(p_count >= 1, "need at least one pulse");
    require(oversampling >= 8 * p_count,
            "oversampling must be at least 8 per pulse");
    if (width < 0) width = t_s / 8.0;

    PulseFamily fam;
    for (int p = 0; p < p_count; ++p)
        fam.pulses.push_back(hermite_waveform(p, t_s, oversampling, width));

    // Modified Gram-Schmidt, two passes; truncation to [0, t_s] leaves the
    // raw Hermite functions only approximately orthogonal.
    for (int pass = 0; pass < 2; ++pass) {
        for (int p = 0; p < p_count; ++p) {
            auto& cur = fam.pulses[p];
            for (int q = 0; q < p; ++q) {
                double proj = inner_product(fam.pulses[q], cur);
                for (size_t k = 0; k < cur.samples.size(); ++k)
                    cur.samples[k] -= proj * fam.pulses[q].samples[k];
            }
            double e = cur.energy();
            if (!(e > 1e-16))
                throw NumericFailure(
                    "degenerate-family: pulse family is numerically rank "
                    "deficient");
            double inv = 1.0 / std::sqrt(e);
            for (auto& s : cur.samples) s *= inv;
        }
    }

    fam.gram = RMatrix(p_count, p_count);
    for (int a = 0; a < p_count; ++a)
        for (int b = 0; b < p_count; ++b)
            fam.gram(a, b) = inner_product(fam.pulses[a], fam.pulses[b]);
    if ((fam.gram - RMatrix::Identity(p_count, p_count))
            .cwiseAbs()
            .maxCoeff() > 1e-12)
        throw NumericFailure("degenerate-family: Gram matrix not identity");
    return fam;
}

double fractional_energy_bandwidth(const SampledWaveform& w, double fraction) {
    require(fraction > 0.0 && fraction < 1.0, "fraction must be in (0,1)");
    int n = static_cast<int>(w.samples.size());
    // Plain DFT; pulse grids are small.
    std::vector<double> bin_energy(n);
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        cx acc = 0.0;
        for (int j = 0; j < n; ++j)
            acc += w.samples[j] * std::polar(1.0, -2.0 * M_PI * k * j / n);
        bin_energy[k] = std::norm(acc);
        total += bin_energy[k];
    }
    // Accumulate symmetric bins outward from DC; frequency of bin k is
    // k/(n*dt) for k <= n/2.
    double df = 1.0 / (n * w.dt);
    double acc = bin_energy[0];
    if (acc >= fraction * total) return 0.0;
    for (int k = 1; k <= n / 2; ++k) {
        acc += bin_energy[k];
        int mirror = n - k;
        if (mirror != k && mirror > n / 2) acc += bin_energy[mirror];
        if (acc >= fraction * total) return 2.0 * k * df;
    }
    return 2.0 * (n / 2) * df;
}

void export_pulses_csv(std::ostream& os, const PulseFamily& family) {
    os << "t";
    for (int p = 0; p < family.p_count(); ++p) os << ",w" << p;
    os << "\n";
    for (int k = 0; k < family.grid_size(); ++k) {
        os << k * family.dt();
        for (const auto& pulse : family.pulses) os << "," << pulse.samples[k];
        os << "\n";
    }
}

}  // namespace tops
