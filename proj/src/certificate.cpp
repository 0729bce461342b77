#include "bolforge/certificate.hpp"

namespace bolforge {

void Certificate::add(const std::string &name, bool pass,
                      const std::string &witness) {
  checks_.push_back(CheckResult{name, pass, witness, 0});
}

void Certificate::absorb(const Certificate &other, const std::string &prefix) {
  for (const auto &c : other.checks_)
    checks_.push_back(CheckResult{prefix + c.name, c.pass, c.witness, c.ms});
}

bool Certificate::pass() const {
  for (const auto &c : checks_)
    if (!c.pass)
      return false;
  return true;
}

const CheckResult *Certificate::find(const std::string &name) const {
  for (const auto &c : checks_)
    if (c.name == name)
      return &c;
  return nullptr;
}

nlohmann::ordered_json Certificate::to_json(bool with_timings) const {
  nlohmann::ordered_json j;
  j["artifact"] = artifact_;
  j["version"] = "1.0";
  j["params"] = params_;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto &c : checks_) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["witness"] = c.witness;
    e["ms"] = with_timings ? c.ms : 0;
    arr.push_back(e);
  }
  j["checks"] = arr;
  j["pass"] = pass();
  return j;
}

std::string Certificate::summary() const {
  std::string s;
  for (const auto &c : checks_) {
    s += c.pass ? "[ok]   " : "[FAIL] ";
    s += c.name;
    if (!c.witness.empty()) {
      s += "  (";
      s += c.witness;
      s += ")";
    }
    s += "\n";
  }
  return s;
}

} // namespace bolforge
