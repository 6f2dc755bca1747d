#include "tops/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tops/catalog.hpp"
#include "tops/codefile.hpp"

namespace tops {

void ExperimentConfig::validate() const {
    if (bits < 1) throw ConfigError("config-invalid: bits must be >= 1");
    if (strategies.empty())
        throw ConfigError("config-invalid: need at least one strategy");
    for (const auto& s : strategies)
        if (!known_strategy(s))
            throw ConfigError("config-invalid: unknown strategy '" + s + "'");
    for (size_t i = 1; i < snr_db.size(); ++i)
        if (snr_db[i] <= snr_db[i - 1])
            throw ConfigError("config-invalid: SNR grid must be strictly "
                              "increasing");
    if (oversampling < 8)
        throw ConfigError("config-invalid: oversampling must be >= 8");
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream os;
    os.precision(17);
    os << "code=" << code << "\n";
    os << "constellation=" << constellation << "\n";
    os << "strategy=";
    for (size_t i = 0; i < strategies.size(); ++i)
        os << (i ? "," : "") << strategies[i];
    os << "\n";
    os << "snr=";
    for (size_t i = 0; i < snr_db.size(); ++i)
        os << (i ? "," : "") << snr_db[i];
    os << "\n";
    os << "bits=" << bits << "\n";
    os << "seed=" << seed << "\n";
    os << "waveform=" << (waveform ? 1 : 0) << "\n";
    os << "oversampling=" << oversampling << "\n";
    os << "pulse_width=" << pulse_width << "\n";
    os << "n_rx=" << n_rx << "\n";
    return os.str();
}

std::uint64_t ExperimentConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

std::vector<double> parse_snr_spec(const std::string& spec) {
    auto to_db = [](const std::string& tok) {
        try {
            size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size())
                throw ConfigError("config-invalid: bad SNR value '" + tok +
                                  "'");
            return v;
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("config-invalid: bad SNR value '" + tok + "'");
        }
    };
    std::vector<double> grid;
    if (spec.find(':') != std::string::npos) {
        auto parts = split(spec, ':');
        if (parts.size() != 3)
            throw ConfigError("config-invalid: SNR range must be a:b:step");
        double a = to_db(parts[0]), b = to_db(parts[1]),
               step = to_db(parts[2]);
        if (step <= 0)
            throw ConfigError("config-invalid: SNR step must be positive");
        for (double v = a; v <= b + 1e-9; v += step) grid.push_back(v);
    } else {
        for (const auto& tok : split(spec, ','))
            if (!trim(tok).empty()) grid.push_back(to_db(trim(tok)));
    }
    if (grid.empty()) throw ConfigError("config-invalid: empty SNR grid");
    return grid;
}

void apply_config_line(ExperimentConfig& cfg, const std::string& raw,
                       int line_no) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') return;
    auto eq = line.find('=');
    if (eq == std::string::npos)
        throw ConfigError("config-invalid: line " + std::to_string(line_no) +
                          ": expected key=value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    try {
        if (key == "code")
            cfg.code = val;
        else if (key == "constellation")
            cfg.constellation = val;
        else if (key == "M")
            cfg.constellation = (val == "2") ? "bpsk" : ("qam" + val);
        else if (key == "strategy")
            cfg.strategies = split(val, ',');
        else if (key == "snr")
            cfg.snr_db = parse_snr_spec(val);
        else if (key == "bits")
            cfg.bits = std::stoll(val);
        else if (key == "seed")
            cfg.seed = std::stoull(val);
        else if (key == "waveform")
            cfg.waveform = (val == "1" || val == "true");
        else if (key == "oversampling")
            cfg.oversampling = std::stoi(val);
        else if (key == "pulse_width")
            cfg.pulse_width = std::stod(val);
        else if (key == "n_rx")
            cfg.n_rx = std::stoi(val);
        else if (key == "output")
            cfg.output = val;
        else
            throw ConfigError("config-invalid: line " +
                              std::to_string(line_no) + ": unknown key '" +
                              key + "'");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("config-invalid: line " + std::to_string(line_no) +
                          ", field '" + key + "': " + e.what());
    }
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f.good()) throw ConfigError("config-invalid: cannot open " + path);
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(f, line)) apply_config_line(cfg, line, ++line_no);
    return cfg;
}

int default_n_rx(const LinearSTBC& code) {
    return code.n_slots == 1 ? code.n_tx : 2;
}

double ebn0_db_to_n0(const LinearSTBC& code, const Constellation& c,
                     double ebn0_db) {
    double bits_per_codeword = (code.k() / 2.0) * c.bits_per_symbol;
    double eb = code.n_tx * code.n_slots / bits_per_codeword;
    return eb / std::pow(10.0, ebn0_db / 10.0);
}

namespace {

LinearSTBC resolve_code(const std::string& name_or_file) {
    try {
        return make_code(name_or_file);
    } catch (const InvalidArgument&) {
        return load_code(name_or_file);
    }
}

// Cross-path fidelity check run at waveform-sweep start: noiseless frames
// must agree between the waveform and discrete paths.
void cross_path_check(const LinearSTBC& code, const CSRPartition& part,
                      const Constellation& c, const PulseFamily& pulses,
                      int n_rx, std::uint64_t seed, int frames) {
    for (int t = 0; t < frames; ++t) {
        Rng sym_rng(seed, t, 100), chan_rng(seed, t, 101);
        RVector s(code.k());
        for (int j = 0; j < code.k() / 2; ++j) {
            cx p = c.points[sym_rng.uniform_int(c.m)];
            s[2 * j] = p.real();
            s[2 * j + 1] = p.imag();
        }
        auto xg = split_codeword(code, part, s);
        ChannelRealization h = draw_channel(code.n_tx, n_rx, chan_rng);
        Rng dummy(0);
        auto wf = matched_filter_bank(transmit(xg, pulses, h, 0.0, dummy),
                                      pulses);
        auto ds = discrete_shortcut(xg, h, 0.0, dummy);
        for (int g = 0; g < part.p(); ++g)
            if ((wf.y[g] - ds.y[g]).cwiseAbs().maxCoeff() > 1e-8)
                throw NumericFailure(
                    "waveform/discrete cross-path disagreement on code " +
                    code.name);
    }
}

}  // namespace

ExperimentResult run_ber_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.snr_db.empty())
        throw ConfigError("config-invalid: BER sweep needs an SNR grid");
    LinearSTBC code = resolve_code(cfg.code);
    Constellation c = make_constellation(cfg.constellation);
    CSRPartition part = pulse_assignable_partition(csr_partition(code));
    int n_rx = cfg.n_rx > 0 ? cfg.n_rx : default_n_rx(code);

    PulseFamily pulses;
    if (cfg.waveform) {
        pulses = build_pulse_family(part.p(), 1.0,
                                    std::max(cfg.oversampling, 8 * part.p()),
                                    cfg.pulse_width);
        cross_path_check(code, part, c, pulses, n_rx, cfg.seed, 500);
    }

    const int bits_per_codeword = (code.k() / 2) * c.bits_per_symbol;
    require(bits_per_codeword > 0, "constellation carries no bits");
    const long long trials = (cfg.bits + bits_per_codeword - 1) / bits_per_codeword;

    ExperimentResult res;
    res.config_hash = cfg.hash();
    res.seed = cfg.seed;
    for (double snr : cfg.snr_db) {
        double n0 = ebn0_db_to_n0(code, c, snr);
        std::vector<BerRow> rows(cfg.strategies.size());
        for (size_t si = 0; si < cfg.strategies.size(); ++si) {
            rows[si] = {code.name, cfg.strategies[si], c.name, snr, 0, 0, 0.0,
                        0.0, 0.0};
        }
        std::vector<long long> eval_sum(cfg.strategies.size(), 0);
        std::vector<double> wall(cfg.strategies.size(), 0.0);
        for (long long t = 0; t < trials; ++t) {
            Rng sym_rng(cfg.seed, t, 0), chan_rng(cfg.seed, t, 1),
                noise_rng(cfg.seed, t, 2);
            RVector s(code.k());
            for (int j = 0; j < code.k() / 2; ++j) {
                cx p = c.points[sym_rng.uniform_int(c.m)];
                s[2 * j] = p.real();
                s[2 * j + 1] = p.imag();
            }
            auto tx_bits = bits_from_symbols(code, c, s);
            auto xg = split_codeword(code, part, s);
            ChannelRealization h = draw_channel(code.n_tx, n_rx, chan_rng);
            FilteredObservations obs =
                cfg.waveform
                    ? matched_filter_bank(
                          transmit(xg, pulses, h, n0, noise_rng), pulses)
                    : discrete_shortcut(xg, h, n0, noise_rng);
            for (size_t si = 0; si < cfg.strategies.size(); ++si) {
                auto t0 = std::chrono::steady_clock::now();
                DecodeResult d = decode_with_strategy(cfg.strategies[si], obs,
                                                      h.h, code, part, c);
                wall[si] += std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
                eval_sum[si] += d.metric_evals;
                for (size_t b = 0; b < tx_bits.size(); ++b)
                    rows[si].bit_errors += (d.bits[b] != tx_bits[b]);
                rows[si].bits += static_cast<long long>(tx_bits.size());
            }
        }
        for (size_t si = 0; si < cfg.strategies.size(); ++si) {
            rows[si].ber = double(rows[si].bit_errors) / double(rows[si].bits);
            rows[si].mean_metric_evals = double(eval_sum[si]) / double(trials);
            rows[si].wall_ms = wall[si];
            res.ber_rows.push_back(rows[si]);
        }
    }
    return res;
}

std::vector<std::string> default_audit_strategies(const std::string& name) {
    if (name.rfind("vblast", 0) == 0) return {"joint", "group", "iq"};
    if (name == "golden") return {"joint", "group", "iq", "qr-hardlimit"};
    if (name == "sr2x2") return {"subgroup", "qr-hardlimit"};
    if (name == "sr4x2") return {"subgroup", "qr-hardlimit"};
    if (name == "fast4x2") return {"qr-hardlimit"};
    if (name == "alamouti") return {"joint", "group"};
    if (name == "ciod4") return {"subgroup", "qr-hardlimit"};
    throw ConfigError("config-invalid: no default strategies for code '" +
                      name + "'");
}

ExperimentResult run_complexity_audit(const ExperimentConfig& cfg) {
    // An empty strategy list selects the per-code default chains below.
    ExperimentConfig checked = cfg;
    if (checked.strategies.empty()) checked.strategies = {"joint"};
    checked.validate();
    std::vector<std::string> codes;
    if (cfg.code == "all") {
        codes = {"vblast4", "golden", "sr2x2", "sr4x2", "fast4x2"};
    } else {
        codes = split(cfg.code, ',');
    }
    ExperimentResult res;
    res.config_hash = cfg.hash();
    res.seed = cfg.seed;
    std::vector<int> m_list = {4, 16, 64};
    for (const auto& name : codes) {
        LinearSTBC code = resolve_code(name);
        auto strategies = cfg.strategies.empty()
                              ? default_audit_strategies(code.name)
                              : cfg.strategies;
        for (const auto& strat : strategies) {
            res.audits.push_back(complexity_audit(
                code, strat, m_list, default_n_rx(code), cfg.seed));
        }
    }
    return res;
}

std::string report_partition(const std::string& code_name_or_file) {
    LinearSTBC code = resolve_code(code_name_or_file);
    CSRPartition part = csr_partition(code);
    CSRPartition pap = pulse_assignable_partition(part);
    std::ostringstream os;
    os << "code " << code.name << ": Nt=" << code.n_tx << " T=" << code.n_slots
       << " K=" << code.k() << "\n";
    os << "P=" << part.p() << "\n";
    for (int g = 1; g <= part.p(); ++g) {
        const auto& grp = part.groups[g - 1];
        os << "group " << g << ": g_i=" << grp.size() << " support "
           << grp.support.to_string() << " symbols {";
        for (size_t i = 0; i < grp.indices.size(); ++i)
            os << (i ? "," : "") << grp.indices[i];
        os << "}\n";
        auto intra = intra_group_structure(code, part, g);
        os << "  intra: Q=" << intra.q() << " subgroup sizes";
        for (const auto& sub : intra.subgroups) os << " " << sub.size();
        os << "\n";
    }
    if (pap.p() != part.p())
        os << "pulse-assignable coarsening: P=" << pap.p()
           << " (CSR classes overlap in space-time)\n";
    return os.str();
}

void write_ber_csv(std::ostream& os, const ExperimentResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(r.config_hash));
    os << "# tops-stbc-csv v1 kind=ber\n";
    os << "# config_hash=" << buf << " seed=" << r.seed << "\n";
    os << "code,strategy,constellation,snr_db,bits,bit_errors,ber,"
          "mean_metric_evals,wall_ms\n";
    os.precision(12);
    for (const auto& row : r.ber_rows) {
        os << row.code << "," << row.strategy << "," << row.constellation
           << "," << row.snr_db << "," << row.bits << "," << row.bit_errors
           << "," << row.ber << "," << row.mean_metric_evals << ","
           << row.wall_ms << "\n";
    }
}

void write_audit_csv(std::ostream& os, const ExperimentResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(r.config_hash));
    os << "# tops-stbc-csv v1 kind=audit\n";
    os << "# config_hash=" << buf << " seed=" << r.seed << "\n";
    os << "code,strategy,M,metric_evals,exponent\n";
    os.precision(12);
    for (const auto& a : r.audits)
        for (const auto& e : a.entries)
            os << a.code_name << "," << a.strategy << "," << e.m << ","
               << e.metric_evals << "," << a.exponent << "\n";
}

}  // namespace tops
