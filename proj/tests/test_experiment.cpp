#include <doctest.h>

#include <fstream>
#include <sstream>

#include "tops/catalog.hpp"
#include "tops/codefile.hpp"
#include "tops/experiment.hpp"

using namespace tops;

namespace {

// CSV text with volatile timing column removed.
std::string strip_wall(const std::string& csv) {
    std::istringstream is(csv);
    std::ostringstream os;
    std::string line;
    while (std::getline(is, line)) {
        auto pos = line.rfind(',');
        if (pos != std::string::npos && line.find("wall_ms") == std::string::npos &&
            line[0] != '#')
            line = line.substr(0, pos);
        os << line << "\n";
    }
    return os.str();
}

std::string ber_csv(const ExperimentResult& r) {
    std::ostringstream os;
    write_ber_csv(os, r);
    return os.str();
}

}  // namespace

TEST_CASE("snr spec parsing") {
    CHECK(parse_snr_spec("0:10:5") == std::vector<double>{0, 5, 10});
    CHECK(parse_snr_spec("3") == std::vector<double>{3});
    CHECK(parse_snr_spec("1,2.5,7") == std::vector<double>{1, 2.5, 7});
    CHECK_THROWS_AS(parse_snr_spec("10:0:5"), ConfigError);
    CHECK_THROWS_AS(parse_snr_spec("0:10:0"), ConfigError);
    CHECK_THROWS_AS(parse_snr_spec("abc"), ConfigError);
}

TEST_CASE("config file parsing and diagnostics") {
    ExperimentConfig cfg;
    apply_config_line(cfg, "code = sr2x2", 1);
    apply_config_line(cfg, "M = 16", 2);
    apply_config_line(cfg, "strategy = subgroup,qr-hardlimit", 3);
    apply_config_line(cfg, "snr = 0:6:3", 4);
    apply_config_line(cfg, "bits = 5000", 5);
    apply_config_line(cfg, "seed = 42", 6);
    apply_config_line(cfg, "# comment", 7);
    apply_config_line(cfg, "", 8);
    CHECK(cfg.code == "sr2x2");
    CHECK(cfg.constellation == "qam16");
    CHECK(cfg.strategies == std::vector<std::string>{"subgroup",
                                                     "qr-hardlimit"});
    CHECK(cfg.snr_db == std::vector<double>{0, 3, 6});
    CHECK(cfg.bits == 5000);
    CHECK(cfg.seed == 42);
    CHECK_NOTHROW(cfg.validate());

    CHECK_THROWS_WITH_AS(apply_config_line(cfg, "bogus = 1", 9),
                         doctest::Contains("line 9"), ConfigError);
    CHECK_THROWS_WITH_AS(apply_config_line(cfg, "no_equals_here", 10),
                         doctest::Contains("line 10"), ConfigError);
    CHECK_THROWS_AS(apply_config_line(cfg, "bits = nonsense", 11),
                    ConfigError);
}

TEST_CASE("config validation failures") {
    ExperimentConfig cfg;
    cfg.strategies = {"warp"};
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("warp"),
                         ConfigError);
    cfg.strategies = {"joint"};
    cfg.bits = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.bits = 100;
    cfg.snr_db = {5, 5};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("config hash tracks content, not formatting") {
    ExperimentConfig a, b;
    a.snr_db = b.snr_db = {0, 5};
    CHECK(a.hash() == b.hash());
    b.seed = 2;
    CHECK(a.hash() != b.hash());
}

TEST_CASE("ber sweeps reproduce byte-identically modulo timing") {
    ExperimentConfig cfg;
    cfg.code = "alamouti";
    cfg.constellation = "bpsk";
    cfg.strategies = {"joint", "group"};
    cfg.snr_db = {0, 6};
    cfg.bits = 4000;
    cfg.seed = 31;
    std::string a = strip_wall(ber_csv(run_ber_sweep(cfg)));
    std::string b = strip_wall(ber_csv(run_ber_sweep(cfg)));
    CHECK(a == b);
    CHECK(a.find("# tops-stbc-csv v1 kind=ber") == 0);
    CHECK(a.find("seed=31") != std::string::npos);

    cfg.seed = 32;
    CHECK(strip_wall(ber_csv(run_ber_sweep(cfg))) != a);
}

TEST_CASE("waveform and discrete paths give identical decisions per seed") {
    // The per-trial streams are keyed identically; only the noise transport
    // differs. BERs must be close, not equal, but the noiseless cross-check
    // inside the waveform path plus equal-seed symbol streams keep the rows
    // structurally identical.
    ExperimentConfig cfg;
    cfg.code = "golden";
    cfg.constellation = "qam4";
    cfg.strategies = {"group"};
    cfg.snr_db = {8};
    cfg.bits = 3000;
    cfg.seed = 7;
    ExperimentResult discrete = run_ber_sweep(cfg);
    cfg.waveform = true;
    ExperimentResult wave = run_ber_sweep(cfg);
    REQUIRE(discrete.ber_rows.size() == 1);
    REQUIRE(wave.ber_rows.size() == 1);
    CHECK(discrete.ber_rows[0].bits == wave.ber_rows[0].bits);
    // Same decoder facing statistically identical observations.
    CHECK(std::abs(discrete.ber_rows[0].ber - wave.ber_rows[0].ber) < 0.02);
}

TEST_CASE("audit csv layout and defaults") {
    ExperimentConfig cfg;
    cfg.code = "vblast4";
    cfg.strategies.clear();
    ExperimentResult r = run_complexity_audit(cfg);
    std::ostringstream os;
    write_audit_csv(os, r);
    std::string text = os.str();
    CHECK(text.find("# tops-stbc-csv v1 kind=audit") == 0);
    CHECK(text.find("vblast4,joint,4,256,4") != std::string::npos);
    CHECK(text.find("vblast4,iq,64,64,0.5") != std::string::npos);
}

TEST_CASE("file-based codes run end to end") {
    // Round-trip a catalog code through the file format and sweep it.
    ExperimentConfig cfg;
    cfg.code = "alamouti";
    cfg.constellation = "qam4";
    cfg.strategies = {"group"};
    cfg.snr_db = {10};
    cfg.bits = 2000;
    ExperimentResult by_name = run_ber_sweep(cfg);

    std::string path = "alamouti_roundtrip.stbc";
    {
        std::ofstream f(path);
        REQUIRE(f.good());
        f << "stbc alamouti 2 2 4\n";
    }
    // A header-only file is invalid; write the real thing via the library.
    save_code(path, make_code("alamouti"));
    cfg.code = path;
    ExperimentResult by_file = run_ber_sweep(cfg);
    CHECK(by_name.ber_rows[0].ber == by_file.ber_rows[0].ber);
    CHECK(by_name.ber_rows[0].bit_errors == by_file.ber_rows[0].bit_errors);
}
