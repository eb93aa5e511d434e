#include "spectator/device.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spectator/errors.hpp"

namespace spectator {

using ordered_json = nlohmann::ordered_json;

const TransmonSpec* DeviceTopology::find_qubit(std::string_view id) const {
  for (const auto& q : qubits) {
    if (q.id == id) return &q;
  }
  return nullptr;
}

const TransmonSpec& DeviceTopology::qubit(std::string_view id) const {
  const TransmonSpec* q = find_qubit(id);
  if (q == nullptr) {
    throw ValidationError("unknown qubit id '" + std::string(id) + "'");
  }
  return *q;
}

std::optional<double> DeviceTopology::coupling_j(std::string_view a,
                                                 std::string_view b) const {
  for (const auto& c : couplings) {
    if ((c.a == a && c.b == b) || (c.a == b && c.b == a)) return c.j;
  }
  return std::nullopt;
}

std::vector<std::string> DeviceTopology::neighbors(std::string_view id) const {
  std::vector<std::string> out;
  for (const auto& c : couplings) {
    if (c.a == id) out.push_back(c.b);
    if (c.b == id) out.push_back(c.a);
  }
  return out;
}

void validate_device(const DeviceTopology& device) {
  std::set<std::string> ids;
  for (std::size_t i = 0; i < device.qubits.size(); ++i) {
    const auto& q = device.qubits[i];
    const std::string path = "qubits[" + std::to_string(i) + "]";
    if (q.id.empty()) throw ValidationError(path + ".id: must be non-empty");
    if (!ids.insert(q.id).second) {
      throw ValidationError(path + ".id: duplicate qubit id '" + q.id + "'");
    }
    if (!(q.freq > 0.0)) {
      throw ValidationError(path + ".freq_mhz: must be > 0");
    }
    if (!(q.anh < 0.0)) {
      throw ValidationError(path + ".anh_mhz: must be < 0 (transmon regime)");
    }
    if (!(std::abs(q.beta) < std::abs(q.anh))) {
      throw ValidationError(path + ".beta_mhz: |beta| must be < |anh|");
    }
  }
  std::set<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < device.couplings.size(); ++i) {
    const auto& c = device.couplings[i];
    const std::string path = "couplings[" + std::to_string(i) + "]";
    if (c.a == c.b) {
      throw ValidationError(path + ": endpoints must differ");
    }
    for (const std::string* end : {&c.a, &c.b}) {
      if (ids.find(*end) == ids.end()) {
        throw ValidationError(path + ": coupling to undeclared qubit '" +
                              *end + "'");
      }
    }
    if (!(c.j > 0.0)) {
      throw ValidationError(path + ".j_mhz: must be > 0");
    }
    auto key = std::minmax(c.a, c.b);
    if (!pairs.insert(key).second) {
      throw ValidationError(path + ": duplicate coupling for pair (" + key.first +
                            ", " + key.second + ")");
    }
  }
}

namespace {

double require_number(const ordered_json& obj, const std::string& key,
                      const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(path + "." + key + ": missing");
  }
  if (!it->is_number()) {
    throw ValidationError(path + "." + key + ": must be a number");
  }
  return it->get<double>();
}

std::string require_string(const ordered_json& obj, const std::string& key,
                           const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(path + "." + key + ": missing");
  }
  if (!it->is_string()) {
    throw ValidationError(path + "." + key + ": must be a string");
  }
  return it->get<std::string>();
}

void reject_unknown_keys(const ordered_json& obj,
                         const std::set<std::string>& allowed,
                         const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (allowed.find(it.key()) == allowed.end()) {
      throw ValidationError(path + ": unknown key '" + it.key() + "'");
    }
  }
}

}  // namespace

DeviceTopology parse_device(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("device file parse failure: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ValidationError("device file: top level must be an object");
  }
  reject_unknown_keys(doc, {"qubits", "couplings"}, "device");

  DeviceTopology device;
  if (doc.contains("qubits")) {
    const auto& arr = doc["qubits"];
    if (!arr.is_array()) throw ValidationError("qubits: must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "qubits[" + std::to_string(i) + "]";
      const auto& item = arr[i];
      if (!item.is_object()) throw ValidationError(path + ": must be an object");
      reject_unknown_keys(item, {"id", "freq_mhz", "anh_mhz", "beta_mhz"}, path);
      TransmonSpec q;
      q.id = require_string(item, "id", path);
      q.freq = require_number(item, "freq_mhz", path);
      q.anh = require_number(item, "anh_mhz", path);
      q.beta = item.contains("beta_mhz") ? require_number(item, "beta_mhz", path)
                                         : 0.0;
      device.qubits.push_back(std::move(q));
    }
  }
  if (doc.contains("couplings")) {
    const auto& arr = doc["couplings"];
    if (!arr.is_array()) throw ValidationError("couplings: must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "couplings[" + std::to_string(i) + "]";
      const auto& item = arr[i];
      if (!item.is_object()) throw ValidationError(path + ": must be an object");
      reject_unknown_keys(item, {"a", "b", "j_mhz"}, path);
      Coupling c;
      c.a = require_string(item, "a", path);
      c.b = require_string(item, "b", path);
      c.j = require_number(item, "j_mhz", path);
      device.couplings.push_back(std::move(c));
    }
  }
  validate_device(device);
  return device;
}

DeviceTopology load_device(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open device file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_device(buf.str());
}

std::string device_to_json(const DeviceTopology& device) {
  ordered_json doc;
  doc["qubits"] = ordered_json::array();
  for (const auto& q : device.qubits) {
    ordered_json item;
    item["id"] = q.id;
    item["freq_mhz"] = q.freq;
    item["anh_mhz"] = q.anh;
    item["beta_mhz"] = q.beta;
    doc["qubits"].push_back(std::move(item));
  }
  doc["couplings"] = ordered_json::array();
  for (const auto& c : device.couplings) {
    ordered_json item;
    item["a"] = c.a;
    item["b"] = c.b;
    item["j_mhz"] = c.j;
    doc["couplings"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

void save_device(const DeviceTopology& device,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write device file '" + path.string() + "'");
  }
  out << device_to_json(device);
}

double gate_duration_from_j(double j_mhz) {
  if (!(j_mhz > 0.0)) {
    throw ValidationError("gate_duration_from_j: j must be > 0 MHz");
  }
  return 1.0e3 / (2.0 * std::sqrt(2.0) * j_mhz);
}

void validate_gate_context(const GateContext& ctx) {
  if (ctx.g1 == ctx.g2) {
    throw ValidationError("gate context: g1 and g2 must differ");
  }
  if (ctx.t_g < 0.0 || ctx.t_b < 0.0 || ctx.t_s < 0.0) {
    throw ValidationError("gate context: timings must be >= 0");
  }
  if (!(ctx.j > 0.0)) {
    throw ValidationError("gate context: coupling j must be > 0");
  }
  std::set<std::string> seen;
  for (const auto& [label, role] : ctx.spectators) {
    (void)role;
    if (label == ctx.g1 || label == ctx.g2) {
      throw ValidationError("gate context: spectator '" + label +
                            "' coincides with a gate qubit");
    }
    if (!seen.insert(label).second) {
      throw ValidationError("gate context: duplicate spectator '" + label + "'");
    }
  }
}

GateContext make_gate_context(const DeviceTopology& device, std::string_view g1,
                              std::string_view g2,
                              const std::vector<std::string>& spectators,
                              double t_g, double t_b, double t_s,
                              double j_override) {
  GateContext ctx;
  ctx.g1 = std::string(g1);
  ctx.g2 = std::string(g2);
  ctx.t_g = t_g;
  ctx.t_b = t_b;
  ctx.t_s = t_s;
  device.qubit(g1);
  device.qubit(g2);
  if (j_override > 0.0) {
    ctx.j = j_override;
  } else {
    auto j = device.coupling_j(g1, g2);
    if (!j) {
      throw ValidationError("gate context: no coupling between '" +
                            std::string(g1) + "' and '" + std::string(g2) +
                            "' in the device and no explicit j given");
    }
    ctx.j = *j;
  }
  for (const auto& label : spectators) {
    device.qubit(label);
    const bool on_g1 = device.coupling_j(label, g1).has_value();
    const bool on_g2 = device.coupling_j(label, g2).has_value();
    if (on_g1 == on_g2) {
      throw ValidationError(
          "gate context: spectator '" + label +
          (on_g1 ? "' couples to both gate qubits; role is ambiguous"
                 : "' couples to neither gate qubit"));
    }
    ctx.spectators.emplace_back(label, on_g1 ? SpectatorRole::kComputational
                                             : SpectatorRole::kLeakage);
  }
  validate_gate_context(ctx);
  return ctx;
}

void validate_config(const GateContext& ctx, const SpectatorConfig& config) {
  if (config.bits.size() != ctx.spectators.size()) {
    throw ValidationError("spectator config: wrong number of entries");
  }
  for (const auto& [label, role] : ctx.spectators) {
    (void)role;
    auto it = config.bits.find(label);
    if (it == config.bits.end()) {
      throw ValidationError("spectator config: missing entry for '" + label +
                            "'");
    }
    if (it->second != 0 && it->second != 1) {
      throw ValidationError("spectator config: bit for '" + label +
                            "' must be 0 or 1");
    }
  }
}

}  // namespace spectator
