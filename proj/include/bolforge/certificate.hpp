#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace bolforge {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness;
  long long ms = 0;
};

/// Named-check verification report. The overall verdict is the conjunction
/// of the individual checks; witnesses are concrete elements or indices.
class Certificate {
public:
  explicit Certificate(std::string artifact) : artifact_(std::move(artifact)) {}

  void add(const std::string &name, bool pass, const std::string &witness = "");
  void absorb(const Certificate &other, const std::string &prefix);

  bool pass() const;
  const std::vector<CheckResult> &checks() const { return checks_; }
  const CheckResult *find(const std::string &name) const;
  const std::string &artifact() const { return artifact_; }

  nlohmann::ordered_json &params() { return params_; }
  const nlohmann::ordered_json &params() const { return params_; }

  /// Schema: { artifact, version, params, checks:[{name,pass,witness,ms}],
  /// pass }. Timings are emitted as 0 unless with_timings is set, keeping
  /// default outputs byte-identical across runs.
  nlohmann::ordered_json to_json(bool with_timings = false) const;
  std::string summary() const;

private:
  std::string artifact_;
  nlohmann::ordered_json params_ = nlohmann::ordered_json::object();
  std::vector<CheckResult> checks_;
};

} // namespace bolforge
