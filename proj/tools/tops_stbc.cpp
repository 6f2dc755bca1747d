#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "tops/catalog.hpp"
#include "tops/codefile.hpp"
#include "tops/experiment.hpp"

namespace {

void write_output(const std::string& path,
                  const std::function<void(std::ostream&)>& emit) {
    if (path.empty() || path == "-") {
        emit(std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f.good())
        throw tops::ConfigError("config-invalid: cannot open output file " +
                                path);
    emit(f);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Space-time block code analysis: common-support partitions, "
                 "time-orthogonal pulse assignment, group ML decoding"};
    app.require_subcommand(1);

    // partition <code>
    std::string part_code;
    auto* sub_part = app.add_subcommand(
        "partition", "Report the common-support partition of a code");
    sub_part->add_option("code", part_code,
                         "catalog name or code description file")
        ->required();

    // catalog
    auto* sub_catalog =
        app.add_subcommand("catalog", "List the built-in code catalog");
    std::string dump_name;
    sub_catalog->add_option("--dump", dump_name,
                            "emit a catalog code in the code-description "
                            "format");

    // ber
    tops::ExperimentConfig ber_cfg;
    ber_cfg.strategies.clear();
    std::string ber_snr, ber_strategies, ber_config_file, ber_m;
    auto* sub_ber = app.add_subcommand("ber", "Monte-Carlo BER sweep");
    sub_ber->add_option("--config", ber_config_file, "key=value config file");
    sub_ber->add_option("--code", ber_cfg.code, "code name or file");
    sub_ber->add_option("--M", ber_m, "constellation size (2 -> BPSK)");
    sub_ber->add_option("--constellation", ber_cfg.constellation,
                        "constellation name (overrides --M)");
    sub_ber->add_option("--strategy", ber_strategies,
                        "comma-separated strategy ids: joint,group,subgroup,"
                        "iq,qr-hardlimit");
    sub_ber->add_option("--snr", ber_snr, "Eb/N0 grid, a:b:step or list (dB)");
    sub_ber->add_option("--bits", ber_cfg.bits, "target bits per SNR point");
    sub_ber->add_option("--seed", ber_cfg.seed, "RNG seed");
    sub_ber->add_flag("--waveform", ber_cfg.waveform,
                      "use the full waveform path instead of the discrete "
                      "shortcut");
    sub_ber->add_option("--oversampling", ber_cfg.oversampling,
                        "samples per symbol duration");
    sub_ber->add_option("--n-rx", ber_cfg.n_rx, "receive antennas");
    sub_ber->add_option("-o,--output", ber_cfg.output, "output CSV path");

    // audit
    tops::ExperimentConfig audit_cfg;
    audit_cfg.strategies.clear();
    std::string audit_codes = "all", audit_strategies;
    auto* sub_audit =
        app.add_subcommand("audit", "Decoding-complexity audit across codes");
    sub_audit->add_option("--codes", audit_codes,
                          "comma-separated code names or 'all'");
    sub_audit->add_option("--strategy", audit_strategies,
                          "strategies (default: per-code chains)");
    sub_audit->add_option("--seed", audit_cfg.seed, "RNG seed");
    sub_audit->add_option("-o,--output", audit_cfg.output, "output CSV path");

    // pulses
    int pulses_p = 4, pulses_oversampling = 64;
    std::string pulses_out;
    auto* sub_pulses = app.add_subcommand(
        "pulses", "Export an orthonormal pulse family as CSV");
    sub_pulses->add_option("--P", pulses_p, "family size")->required();
    sub_pulses->add_option("--oversampling", pulses_oversampling,
                           "samples per symbol duration");
    sub_pulses->add_option("-o,--output", pulses_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sub_part) {
            std::cout << tops::report_partition(part_code);
        } else if (*sub_catalog) {
            if (!dump_name.empty()) {
                tops::write_code(std::cout, tops::make_code(dump_name));
            } else {
                for (const auto& name : tops::catalog_names()) {
                    auto code = tops::make_code(name);
                    std::cout << name << ": Nt=" << code.n_tx
                              << " T=" << code.n_slots << " K=" << code.k()
                              << " P=" << tops::csr_partition(code).p()
                              << "\n";
                }
            }
        } else if (*sub_ber) {
            tops::ExperimentConfig cfg;
            if (!ber_config_file.empty())
                cfg = tops::parse_config_file(ber_config_file);
            // Explicit flags override the config file.
            if (sub_ber->count("--code")) cfg.code = ber_cfg.code;
            if (sub_ber->count("--constellation"))
                cfg.constellation = ber_cfg.constellation;
            else if (!ber_m.empty())
                cfg.constellation = (ber_m == "2") ? "bpsk" : ("qam" + ber_m);
            if (!ber_strategies.empty()) {
                cfg.strategies.clear();
                std::stringstream ss(ber_strategies);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    cfg.strategies.push_back(tok);
            }
            if (cfg.strategies.empty()) cfg.strategies = {"joint"};
            if (!ber_snr.empty()) cfg.snr_db = tops::parse_snr_spec(ber_snr);
            if (sub_ber->count("--bits")) cfg.bits = ber_cfg.bits;
            if (sub_ber->count("--seed")) cfg.seed = ber_cfg.seed;
            if (sub_ber->count("--waveform")) cfg.waveform = true;
            if (sub_ber->count("--oversampling"))
                cfg.oversampling = ber_cfg.oversampling;
            if (sub_ber->count("--n-rx")) cfg.n_rx = ber_cfg.n_rx;
            if (sub_ber->count("--output")) cfg.output = ber_cfg.output;
            auto res = tops::run_ber_sweep(cfg);
            write_output(cfg.output,
                         [&](std::ostream& os) { tops::write_ber_csv(os, res); });
        } else if (*sub_audit) {
            audit_cfg.code = audit_codes;
            if (!audit_strategies.empty()) {
                audit_cfg.strategies.clear();
                std::stringstream ss(audit_strategies);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    audit_cfg.strategies.push_back(tok);
            }
            auto res = tops::run_complexity_audit(audit_cfg);
            write_output(audit_cfg.output, [&](std::ostream& os) {
                tops::write_audit_csv(os, res);
            });
        } else if (*sub_pulses) {
            auto fam = tops::build_pulse_family(
                pulses_p, 1.0, std::max(pulses_oversampling, 8 * pulses_p));
            write_output(pulses_out, [&](std::ostream& os) {
                tops::export_pulses_csv(os, fam);
            });
        }
    } catch (const tops::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tops::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tops::NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
