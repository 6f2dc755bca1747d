#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tops/decode.hpp"

namespace tops {

// Invalid experiment configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string code = "golden";
    std::string constellation = "qam4";
    std::vector<std::string> strategies = {"joint"};
    std::vector<double> snr_db;  // strictly increasing Eb/N0 grid
    long long bits = 100000;     // target bit count per SNR point
    std::uint64_t seed = 1;
    bool waveform = false;  // full pulse path instead of the discrete shortcut
    int oversampling = 64;
    double pulse_width = -1.0;
    int n_rx = 0;  // 0 -> code default (n_tx for the T=1 code, else 2)
    std::string output;

    void validate() const;
    // Canonical key=value serialization (the config-file format).
    std::string canonical() const;
    std::uint64_t hash() const;  // FNV-1a of canonical()
};

// "a:b:step" range or comma-separated list of Eb/N0 points in dB.
std::vector<double> parse_snr_spec(const std::string& spec);

// key=value lines mirroring the CLI flags; '#' starts a comment.
ExperimentConfig parse_config_file(const std::string& path);
void apply_config_line(ExperimentConfig& cfg, const std::string& line,
                       int line_no);

struct BerRow {
    std::string code;
    std::string strategy;
    std::string constellation;
    double snr_db = 0.0;
    long long bits = 0;
    long long bit_errors = 0;
    double ber = 0.0;
    double mean_metric_evals = 0.0;
    double wall_ms = 0.0;
};

struct ExperimentResult {
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::vector<BerRow> ber_rows;
    std::vector<AuditResult> audits;
};

// Monte-Carlo BER sweep. Per-trial RNG streams are keyed by
// (seed, trial, role) so all strategies decode the same observations and
// results are independent of scheduling. SNR is Eb/N0 with Eb the average
// received codeword energy per information bit per receive antenna.
ExperimentResult run_ber_sweep(const ExperimentConfig& cfg);

// Complexity audit across codes; cfg.code may be "all".
ExperimentResult run_complexity_audit(const ExperimentConfig& cfg);

// Human-readable partition / structure report for a catalog name or a code
// description file path.
std::string report_partition(const std::string& code_name_or_file);

void write_ber_csv(std::ostream& os, const ExperimentResult& r);
void write_audit_csv(std::ostream& os, const ExperimentResult& r);

// Default receive antenna count used by experiments for a code.
int default_n_rx(const LinearSTBC& code);

// Strategy chain audited per catalog code (the documented defaults).
std::vector<std::string> default_audit_strategies(const std::string& code_name);

double ebn0_db_to_n0(const LinearSTBC& code, const Constellation& c,
                     double ebn0_db);

}  // namespace tops
