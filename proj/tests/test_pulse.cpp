#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tops/pulse.hpp"

using namespace tops;

namespace {

// Independent quadrature oracle: Kahan-compensated trapezoid in reverse
// sample order with long double accumulation.
long double trapezoid_oracle(const SampledWaveform& a,
                             const SampledWaveform& b) {
    const int n = static_cast<int>(a.samples.size());
    long double sum = 0.0L, comp = 0.0L;
    for (int i = n - 1; i >= 0; --i) {
        long double w = (i == 0 || i == n - 1) ? 0.5L : 1.0L;
        long double term = w * static_cast<long double>(a.samples[i]) *
                           static_cast<long double>(b.samples[i]);
        long double y = term - comp;
        long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum * static_cast<long double>(a.dt);
}

}  // namespace

TEST_CASE("hermite waveforms have unit energy and alternating symmetry") {
    for (int order = 0; order <= 6; ++order) {
        SampledWaveform w = hermite_waveform(order, 1.0, 128, 1.0 / 8.0);
        CHECK(w.energy() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(w.samples.size() == 129);
        CHECK(w.dt == doctest::Approx(1.0 / 128.0));
        // H_n(-u) = (-1)^n H_n(u) about the midpoint t = Ts/2.
        int n = static_cast<int>(w.samples.size());
        double sign = (order % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i)
            CHECK(w.samples[i] ==
                  doctest::Approx(sign * w.samples[n - 1 - i]).epsilon(1e-9));
    }
}

TEST_CASE("pulse family gram is identity under an independent quadrature") {
    for (int p : {1, 2, 4, 8}) {
        PulseFamily f = build_pulse_family(p, 1.0, 128);
        REQUIRE(f.p_count() == p);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) {
                double want = (i == j) ? 1.0 : 0.0;
                CHECK(std::abs(f.gram(i, j) - want) < 1e-12);
                long double oracle =
                    trapezoid_oracle(f.pulses[i], f.pulses[j]);
                CHECK(std::abs(static_cast<double>(oracle) - want) < 1e-10);
            }
    }
}

TEST_CASE("inner_product matches the oracle on non-orthogonal pairs") {
    SampledWaveform a = hermite_waveform(0, 1.0, 64, 1.0 / 8.0);
    SampledWaveform b = hermite_waveform(0, 1.0, 64, 1.0 / 6.0);
    double got = inner_product(a, b);
    CHECK(got == doctest::Approx(static_cast<double>(trapezoid_oracle(a, b)))
                     .epsilon(1e-13));
    CHECK(got > 0.9);  // same-order different-width Gaussians overlap heavily
}

TEST_CASE("bandwidth grows with hermite order") {
    // The measure is quantized to DFT bins, so adjacent orders may tie;
    // growth must be monotone and strict across the range.
    std::vector<double> bw;
    for (int order = 0; order < 6; ++order) {
        SampledWaveform w = hermite_waveform(order, 1.0, 256, 1.0 / 8.0);
        bw.push_back(fractional_energy_bandwidth(w, 0.99));
    }
    for (size_t i = 1; i < bw.size(); ++i) CHECK(bw[i] >= bw[i - 1]);
    CHECK(bw.back() > bw.front());
    CHECK(bw.front() > 0.0);
}

TEST_CASE("duration scaling contracts bandwidth") {
    SampledWaveform slow = hermite_waveform(2, 2.0, 256, 2.0 / 8.0);
    SampledWaveform fast = hermite_waveform(2, 1.0, 256, 1.0 / 8.0);
    double bw_slow = fractional_energy_bandwidth(slow, 0.99);
    double bw_fast = fractional_energy_bandwidth(fast, 0.99);
    CHECK(bw_slow == doctest::Approx(bw_fast / 2.0).epsilon(0.05));
}

TEST_CASE("family construction guards") {
    CHECK_THROWS_AS(build_pulse_family(0), InvalidArgument);
    CHECK_THROWS_AS(build_pulse_family(4, 1.0, 16), InvalidArgument);
    CHECK_THROWS_AS(build_pulse_family(4, -1.0), InvalidArgument);
    CHECK_THROWS_AS(hermite_waveform(17, 1.0, 256, 1.0 / 8.0),
                    InvalidArgument);
    CHECK_THROWS_AS(hermite_waveform(-1, 1.0, 64, 1.0 / 8.0),
                    InvalidArgument);
}

TEST_CASE("csv export shape") {
    PulseFamily f = build_pulse_family(3, 1.0, 24);
    std::ostringstream os;
    export_pulses_csv(os, f);
    std::istringstream is(os.str());
    std::string line;
    int lines = 0, commas = 0;
    while (std::getline(is, line)) {
        if (lines == 0)
            commas = static_cast<int>(std::count(line.begin(), line.end(), ','));
        ++lines;
    }
    CHECK(commas == 3);       // time + 3 pulses
    CHECK(lines == 25 + 1);   // header + grid points
}
