// Acceptance suite: one line per criterion, "PASS"/"FAIL" with a short
// explanation; exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "tops/catalog.hpp"
#include "tops/decode.hpp"
#include "tops/experiment.hpp"
#include "tops/pulse.hpp"
#include "tops/sim.hpp"

using namespace tops;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("%s criterion-%d: %s\n", ok ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

// ---- 1: partition counts ---------------------------------------------

void criterion_partitions() {
    struct Want {
        const char* code;
        int p;
    };
    const Want wants[] = {
        {"vblast4", 4}, {"golden", 2}, {"sr2x2", 2}, {"sr4x2", 2},
        {"fast4x2", 2},
    };
    bool ok = true;
    std::string detail = "CSR partition counts:";
    for (const auto& w : wants) {
        int got = csr_partition(make_code(w.code)).p();
        detail += std::string(" ") + w.code + "=" + std::to_string(got) +
                  "(want " + std::to_string(w.p) + ")";
        if (got != w.p) ok = false;
    }
    report(1, ok, detail);
}

// ---- 2: ML equivalence over the waveform path ------------------------

void criterion_ml_equivalence() {
    bool ok = true;
    std::string detail;
    for (const char* name : {"golden", "sr2x2"}) {
        LinearSTBC code = make_code(name);
        Constellation cons = make_constellation("qam4");
        CSRPartition part = pulse_assignable_partition(csr_partition(code));
        PulseFamily pulses = build_pulse_family(part.p(), 1.0, 64);
        const int n_rx = 2;
        // Eb/N0 = 10 dB under the received-energy convention.
        double bits_per_cw = 2.0 * (code.k() / 2);
        double eb = code.n_tx * code.n_slots / bits_per_cw;
        double n0 = eb / std::pow(10.0, 1.0);
        int agree = 0;
        const int trials = 2000;
        for (int t = 0; t < trials; ++t) {
            Rng sym(2024, t, 0), ch(2024, t, 1), noise(2024, t, 2);
            RVector s = RVector::Zero(code.k());
            for (int j = 0; j < code.k() / 2; ++j) {
                cx pt = cons.points[sym.uniform_int(cons.m)];
                s[2 * j] = pt.real();
                s[2 * j + 1] = pt.imag();
            }
            ChannelRealization h = draw_channel(code.n_tx, n_rx, ch);
            WaveformFrame frame = transmit(split_codeword(code, part, s),
                                           pulses, h, n0, noise);
            FilteredObservations obs = matched_filter_bank(frame, pulses);
            DecodeResult joint = joint_ml(obs, h.h, code, part, cons);
            DecodeResult grp = group_ml(obs, h.h, code, part, cons);
            DecodeResult sub = subgroup_ml(obs, h.h, code, part,
                                           intra_all(code, part), cons);
            if (joint.bits == grp.bits && joint.bits == sub.bits) ++agree;
        }
        detail += std::string(name) + " agree " + std::to_string(agree) +
                  "/" + std::to_string(trials) + "  ";
        if (agree != trials) ok = false;
    }
    report(2, ok, "group/subgroup vs joint over waveform path: " + detail);
}

// ---- 3: complexity exponents ------------------------------------------

void criterion_complexity() {
    struct Want {
        const char* code;
        const char* strategy;
        double exponent;
    };
    const Want wants[] = {
        {"vblast4", "joint", 4.0},   {"vblast4", "group", 1.0},
        {"vblast4", "iq", 0.5},      {"golden", "joint", 4.0},
        {"golden", "group", 2.0},    {"golden", "iq", 1.0},
        {"golden", "qr-hardlimit", 0.5},
        {"sr2x2", "subgroup", 1.0},  {"sr2x2", "qr-hardlimit", 0.5},
        {"sr4x2", "subgroup", 1.0},  {"sr4x2", "qr-hardlimit", 0.5},
        {"fast4x2", "qr-hardlimit", 0.5},
    };
    bool ok = true;
    std::string detail = "fitted exponents:";
    for (const auto& w : wants) {
        LinearSTBC code = make_code(w.code);
        AuditResult a = complexity_audit(code, w.strategy, {4, 16, 64},
                                         default_n_rx(code));
        bool hit = std::abs(a.exponent - w.exponent) <= 0.05;
        char buf[96];
        std::snprintf(buf, sizeof(buf), " %s/%s=%.2f", w.code, w.strategy,
                      a.exponent);
        detail += buf;
        if (!hit) ok = false;
    }
    report(3, ok, detail);
}

// ---- 4: waveform vs discrete consistency -------------------------------

void criterion_waveform_consistency() {
    bool ok = true;
    double worst = 0.0;
    for (const auto& name : catalog_names()) {
        LinearSTBC code = make_code(name);
        CSRPartition part = pulse_assignable_partition(csr_partition(code));
        PulseFamily pulses = build_pulse_family(
            part.p(), 1.0, std::max(64, 8 * part.p()));
        int n_rx = (code.n_slots == 1) ? code.n_tx : 2;
        Rng rng(4242);
        for (int t = 0; t < 500; ++t) {
            RVector s(code.k());
            for (int i = 0; i < code.k(); ++i) s[i] = rng.normal();
            auto xg = split_codeword(code, part, s);
            ChannelRealization h = draw_channel(code.n_tx, n_rx, rng);
            Rng noiseless(0);
            WaveformFrame frame = transmit(xg, pulses, h, 0.0, noiseless);
            FilteredObservations a = matched_filter_bank(frame, pulses);
            Rng noiseless2(0);
            FilteredObservations b = discrete_shortcut(xg, h, 0.0, noiseless2);
            for (int g = 0; g < b.group_count(); ++g)
                worst = std::max(worst,
                                 (a.y[g] - b.y[g]).cwiseAbs().maxCoeff());
        }
    }
    if (worst >= 1e-8) ok = false;

    // Matched-filter noise statistics.
    PulseFamily pulses = build_pulse_family(2, 1.0, 64);
    ChannelRealization h;
    h.h = CMatrix::Zero(2, 2);
    std::vector<CMatrix> xg = {CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)};
    const double n0 = 0.6;
    Rng rng(999);
    double sum = 0.0, sum2 = 0.0, cross = 0.0;
    long n = 0, nc = 0;
    while (n < 100000) {
        WaveformFrame frame = transmit(xg, pulses, h, n0, rng);
        FilteredObservations obs = matched_filter_bank(frame, pulses);
        for (int g = 0; g < 2; ++g)
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) {
                    sum += obs.y[g](r, c).real() + obs.y[g](r, c).imag();
                    sum2 += std::norm(obs.y[g](r, c));
                    n += 2;
                }
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                cross += obs.y[0](r, c).real() * obs.y[1](r, c).real();
                ++nc;
            }
    }
    double mean = sum / n;
    double var = sum2 / n - mean * mean;
    double rho = (cross / nc) / var;
    bool var_ok = std::abs(var - n0 / 2.0) / (n0 / 2.0) < 0.02;
    bool rho_ok = std::abs(rho) < 0.01;
    if (!var_ok || !rho_ok) ok = false;

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "noiseless max dev %.2e (<1e-8), MF noise var %.4f vs %.4f "
                  "(2%%), cross-group rho %.4f (<0.01)",
                  worst, var, n0 / 2.0, rho);
    report(4, ok, buf);
}

// ---- 5: pulse gram under an independent quadrature ----------------------

void criterion_pulses() {
    bool ok = true;
    double worst = 0.0;
    for (int p : {1, 2, 4, 8}) {
        PulseFamily f = build_pulse_family(p, 1.0, std::max(64, 8 * p));
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) {
                // Reverse-order long double trapezoid, independent of the
                // library's accumulation.
                long double acc = 0.0L;
                int m = static_cast<int>(f.pulses[i].samples.size());
                for (int k = m - 1; k >= 0; --k) {
                    long double w = (k == 0 || k == m - 1) ? 0.5L : 1.0L;
                    acc += w *
                           static_cast<long double>(f.pulses[i].samples[k]) *
                           static_cast<long double>(f.pulses[j].samples[k]);
                }
                double got = static_cast<double>(
                    acc * static_cast<long double>(f.pulses[i].dt));
                double want = (i == j) ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(got - want));
            }
    }
    if (worst >= 1e-10) ok = false;
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "gram identity worst deviation %.2e (<1e-10), P in {1,2,4,8}",
                  worst);
    report(5, ok, buf);
}

// ---- 6: alamouti 2x1 BPSK vs the closed form ----------------------------

void criterion_alamouti_ber() {
    ExperimentConfig cfg;
    cfg.code = "alamouti";
    cfg.constellation = "bpsk";
    cfg.strategies = {"joint"};
    cfg.snr_db = {0, 5, 10};
    cfg.bits = 1000000;
    cfg.seed = 606;
    cfg.n_rx = 1;
    ExperimentResult res = run_ber_sweep(cfg);
    bool ok = true;
    std::string detail = "alamouti 2x1 BPSK vs two-branch diversity oracle:";
    for (const auto& row : res.ber_rows) {
        double ebn0 = std::pow(10.0, row.snr_db / 10.0);
        double gc = ebn0 / 2.0;  // per-branch average SNR (3 dB split)
        double mu = std::sqrt(gc / (1.0 + gc));
        double p = (1.0 - mu) / 2.0;
        double pb = p * p * (3.0 - 2.0 * p);
        double se = std::sqrt(pb * (1.0 - pb) / row.bits);
        double dev = std::abs(row.ber - pb) / se;
        char buf[120];
        std::snprintf(buf, sizeof(buf), " %gdB ber=%.3e oracle=%.3e (%.2f se)",
                      row.snr_db, row.ber, pb, dev);
        detail += buf;
        if (dev > 3.0) ok = false;
    }
    report(6, ok, detail);
}

// ---- 7: golden vs sr2x2 coding gain -------------------------------------

void criterion_coding_gain() {
    Constellation q4 = make_constellation("qam4");
    CodeMetrics g = code_metrics(make_code("golden"), q4);
    CodeMetrics s = code_metrics(make_code("sr2x2"), q4);
    double rel = std::abs(g.coding_gain - s.coding_gain) /
                 std::abs(g.coding_gain);
    bool ok = rel <= 1e-9;
    char buf[120];
    std::snprintf(buf, sizeof(buf),
                  "min det golden=%.12f sr2x2=%.12f rel diff %.2e (<=1e-9)",
                  g.coding_gain, s.coding_gain, rel);
    report(7, ok, buf);
}

// ---- 8: diversity ranks ---------------------------------------------------

void criterion_diversity() {
    int al = code_metrics(make_code("alamouti"),
                          make_constellation("bpsk")).min_rank;
    int go = code_metrics(make_code("golden"),
                          make_constellation("qam4")).min_rank;
    int vb = code_metrics(build_vblast(2),
                          make_constellation("bpsk")).min_rank;
    bool ok = (al == 2) && (go == 2) && (vb == 1);
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "alamouti=%d (want 2), golden=%d (want 2), vblast=%d (want 1)",
                  al, go, vb);
    report(8, ok, buf);
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion_partitions();
    criterion_ml_equivalence();
    criterion_complexity();
    criterion_waveform_consistency();
    criterion_pulses();
    criterion_alamouti_ber();
    criterion_coding_gain();
    criterion_diversity();
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0)
                  .count();
    std::printf("%d/8 criteria passed in %.1fs\n", 8 - failures, dt);
    return failures;
}
