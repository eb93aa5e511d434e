#include <doctest.h>

#include <cmath>
#include <random>

#include "spectator/device.hpp"
#include "spectator/errors.hpp"

using namespace spectator;

namespace {
const char* kDataDir = SPECTATOR_DATA_DIR;
}

TEST_CASE("bundled 7-qubit device loads with full connectivity") {
  const DeviceTopology device =
      load_device(std::string(kDataDir) + "/device7.json");
  CHECK(device.qubits.size() == 7);
  CHECK(device.couplings.size() == 7);
  CHECK(device.coupling_j("Q1", "Q4") == doctest::Approx(4.5));
  CHECK(device.coupling_j("Q4", "Q1") == doctest::Approx(4.5));
  CHECK(!device.coupling_j("Q1", "Q7"));
  const auto n4 = device.neighbors("Q4");
  CHECK(n4.size() == 4);
  CHECK(device.qubit("Q1").anh == doctest::Approx(-289.0));
  CHECK(device.qubit("Q3").freq - device.qubit("Q1").freq ==
        doctest::Approx(-384.0));
}

TEST_CASE("empty qubit list is a valid topology") {
  const DeviceTopology device = parse_device(R"({"qubits": [], "couplings": []})");
  CHECK(device.qubits.empty());
  CHECK(device.couplings.empty());
}

TEST_CASE("device validation reports field paths") {
  SUBCASE("dangling coupling") {
    CHECK_THROWS_WITH_AS(
        parse_device(R"({"qubits": [{"id": "Q1", "freq_mhz": 5000, "anh_mhz": -300}],
                         "couplings": [{"a": "Q1", "b": "Q9", "j_mhz": 4.5}]})"),
        doctest::Contains("Q9"), ValidationError);
  }
  SUBCASE("duplicate qubit id") {
    CHECK_THROWS_WITH_AS(
        parse_device(R"({"qubits": [{"id": "Q1", "freq_mhz": 5000, "anh_mhz": -300},
                                    {"id": "Q1", "freq_mhz": 5200, "anh_mhz": -300}]})"),
        doctest::Contains("duplicate"), ValidationError);
  }
  SUBCASE("unknown keys rejected") {
    CHECK_THROWS_WITH_AS(
        parse_device(R"({"qubits": [{"id": "Q1", "freq_mhz": 5000, "anh_mhz": -300,
                                     "color": "red"}]})"),
        doctest::Contains("unknown key"), ValidationError);
  }
  SUBCASE("positive anharmonicity rejected") {
    CHECK_THROWS_WITH_AS(
        parse_device(R"({"qubits": [{"id": "Q1", "freq_mhz": 5000, "anh_mhz": 300}]})"),
        doctest::Contains("anh_mhz"), ValidationError);
  }
  SUBCASE("beta bounded by anharmonicity") {
    CHECK_THROWS_AS(
        parse_device(R"({"qubits": [{"id": "Q1", "freq_mhz": 5000, "anh_mhz": -300,
                                     "beta_mhz": -400}]})"),
        ValidationError);
  }
  SUBCASE("duplicate coupling pair") {
    CHECK_THROWS_WITH_AS(
        parse_device(R"({"qubits": [{"id": "A", "freq_mhz": 5000, "anh_mhz": -300},
                                    {"id": "B", "freq_mhz": 5400, "anh_mhz": -300}],
                         "couplings": [{"a": "A", "b": "B", "j_mhz": 4.0},
                                       {"a": "B", "b": "A", "j_mhz": 4.0}]})"),
        doctest::Contains("duplicate coupling"), ValidationError);
  }
  SUBCASE("parse failure") {
    CHECK_THROWS_WITH_AS(parse_device("not json"),
                         doctest::Contains("parse failure"), ValidationError);
  }
}

TEST_CASE("serialize + reload round-trips the topology byte for byte") {
  const DeviceTopology device =
      load_device(std::string(kDataDir) + "/device7.json");
  const std::string once = device_to_json(device);
  const DeviceTopology again = parse_device(once);
  CHECK(device_to_json(again) == once);
  REQUIRE(again.qubits.size() == device.qubits.size());
  for (std::size_t i = 0; i < device.qubits.size(); ++i) {
    CHECK(again.qubits[i].id == device.qubits[i].id);
    CHECK(again.qubits[i].freq == device.qubits[i].freq);
    CHECK(again.qubits[i].anh == device.qubits[i].anh);
    CHECK(again.qubits[i].beta == device.qubits[i].beta);
  }
}

TEST_CASE("gate duration from coupling") {
  // 10^3 / (2 sqrt(2) * 4.5) = 78.567... ns, the paper-scale value.
  CHECK(gate_duration_from_j(4.5) == doctest::Approx(78.56742013183862));
  CHECK(gate_duration_from_j(4.5) == doctest::Approx(78.6).epsilon(0.001));
  CHECK(gate_duration_from_j(2.25) == doctest::Approx(157.13484026367723));
  CHECK(gate_duration_from_j(1.0e3 / (2.0 * std::sqrt(2.0))) ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(gate_duration_from_j(0.0), ValidationError);
  CHECK_THROWS_AS(gate_duration_from_j(-1.0), ValidationError);
}

TEST_CASE("duration times coupling is constant") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const double j = 0.01 + 20.0 * double(rng() >> 11) * 0x1.0p-53;
    CHECK(gate_duration_from_j(j) * j ==
          doctest::Approx(1.0e3 / (2.0 * std::sqrt(2.0))).epsilon(1e-12));
  }
}

TEST_CASE("gate context derives spectator roles from the topology") {
  const DeviceTopology device =
      load_device(std::string(kDataDir) + "/device7.json");

  const GateContext ctx =
      make_gate_context(device, "Q4", "Q2", {"Q1", "Q6", "Q7"});
  CHECK(ctx.j == doctest::Approx(4.5));
  REQUIRE(ctx.spectators.size() == 3);
  for (const auto& [label, role] : ctx.spectators) {
    CAPTURE(label);
    CHECK(role == SpectatorRole::kComputational);
  }
  CHECK(ctx.phase_window() == doctest::Approx(143.0));

  const GateContext leak_ctx = make_gate_context(device, "Q4", "Q1", {"Q3"});
  CHECK(leak_ctx.spectators[0].second == SpectatorRole::kLeakage);

  SUBCASE("spectator coupled to neither gate qubit") {
    CHECK_THROWS_WITH_AS(make_gate_context(device, "Q4", "Q2", {"Q3"}),
                         doctest::Contains("neither"), ValidationError);
  }
  SUBCASE("spectator equal to a gate qubit") {
    CHECK_THROWS_AS(make_gate_context(device, "Q4", "Q2", {"Q4"}),
                    ValidationError);
  }
  SUBCASE("no coupling between gate qubits") {
    CHECK_THROWS_AS(make_gate_context(device, "Q1", "Q2", {}), ValidationError);
    CHECK_NOTHROW(make_gate_context(device, "Q1", "Q2", {}, 80, 5, 53, 4.4));
  }
}

TEST_CASE("spectator config must match the context spectator set") {
  const DeviceTopology device =
      load_device(std::string(kDataDir) + "/device7.json");
  const GateContext ctx =
      make_gate_context(device, "Q4", "Q2", {"Q1", "Q6", "Q7"});

  SpectatorConfig config;
  config.bits = {{"Q1", 1}, {"Q6", 0}, {"Q7", 1}};
  CHECK_NOTHROW(validate_config(ctx, config));

  config.bits = {{"Q1", 1}, {"Q6", 0}};
  CHECK_THROWS_AS(validate_config(ctx, config), ValidationError);

  config.bits = {{"Q1", 1}, {"Q6", 0}, {"Q5", 1}};
  CHECK_THROWS_AS(validate_config(ctx, config), ValidationError);

  config.bits = {{"Q1", 2}, {"Q6", 0}, {"Q7", 1}};
  CHECK_THROWS_AS(validate_config(ctx, config), ValidationError);
}
