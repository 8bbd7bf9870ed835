#include "tripletcv/config.hpp"
#include "tripletcv/report.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace tripletcv;
using Catch::Matchers::WithinAbs;

namespace {

const char* kSample = R"({
  "input_a": {"squeezing_db": -4.6, "antisqueezing_db": 22.3, "theta_sq_deg": 4.0},
  "input_b": {"squeezing_db": -4.5, "antisqueezing_db": 22.2, "theta_sq_deg": 4.0},
  "beamsplitter": {"transmittance": 0.477, "relative_phase_rad": 1.5877963267948966},
  "visibility": 0.98,
  "combiner": {"gain": 1.0, "sign": "sum"},
  "metadata": {"measurement_frequency_mhz": 17.5}
})";

}  // namespace

TEST_CASE("config parsing") {
    const auto cfg = config::parse_config(config::json::parse(kSample));
    CHECK_THAT(cfg.input_a.squeezing_db, WithinAbs(-4.6, 1e-12));
    CHECK_THAT(cfg.input_b.antisqueezing_db, WithinAbs(22.2, 1e-12));
    CHECK_THAT(cfg.input_a.theta_sq, WithinAbs(4.0 * M_PI / 180.0, 1e-12));
    CHECK_THAT(cfg.bs_transmittance, WithinAbs(0.477, 1e-12));
    CHECK_THAT(cfg.visibility, WithinAbs(0.98, 1e-12));
    CHECK(cfg.combiner.sign == experiment::CombinerSign::sum);
    CHECK_THAT(cfg.metadata.at("measurement_frequency_mhz"), WithinAbs(17.5, 1e-12));
}

TEST_CASE("config parse errors name the offending field") {
    auto j = config::json::parse(kSample);
    j.erase("visibility");
    try {
        (void)config::parse_config(j);
        FAIL("expected ConfigError");
    } catch (const config::ConfigError& e) {
        CHECK(e.field() == "visibility");
    }

    j = config::json::parse(kSample);
    j["beamsplitter"]["transmittance"] = 1.4;
    CHECK_THROWS_AS(config::parse_config(j), config::ConfigError);

    j = config::json::parse(kSample);
    j["combiner"]["sign"] = "product";
    CHECK_THROWS_AS(config::parse_config(j), config::ConfigError);
}

TEST_CASE("config round-trip is idempotent") {
    const auto cfg = config::parse_config(config::json::parse(kSample));
    const auto once = config::serialize_config(cfg);
    const auto twice = config::serialize_config(config::parse_config(once));
    CHECK(once.dump() == twice.dump());
}

TEST_CASE("config digest is stable and sensitive") {
    const auto cfg = config::parse_config(config::json::parse(kSample));
    CHECK(config::config_digest(cfg) == config::config_digest(cfg));
    auto other = cfg;
    other.visibility = 0.97;
    CHECK(config::config_digest(cfg) != config::config_digest(other));
}

TEST_CASE("committed fixtures parse") {
    for (const char* name : {"paper.config", "ideal.config", "vacuum.config"}) {
        const auto cfg = config::load_config(std::string(TRIPLETCV_CONFIG_DIR) + "/" + name);
        CHECK(cfg.bs_transmittance > 0.0);
    }
}

TEST_CASE("result table serialization") {
    report::ResultTable table;
    table.columns = {"a", "b"};
    table.add_row({std::string("x"), 0.123456789123});
    std::ostringstream out;
    auto manifest = report::RunManifest::for_command("test");
    setenv("SOURCE_DATE_EPOCH", "0", 1);
    table.write_csv(out, manifest);
    unsetenv("SOURCE_DATE_EPOCH");
    const std::string text = out.str();
    CHECK(text.find("# command: test\n") != std::string::npos);
    CHECK(text.find("a,b\n") != std::string::npos);
    CHECK(text.find("x,0.123456789\n") != std::string::npos);  // 9 significant digits
}
