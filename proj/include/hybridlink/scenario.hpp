#pragma once

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace hybridlink {

inline constexpr int kScenarioVersion = 1;

struct GridSpec {
  double start;
  double stop;
  int count;

  std::vector<double> points() const {
    if (count < 1) throw std::invalid_argument("grid count must be >= 1");
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
      g[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
    return g;
  }
};

// A command's parameter block: JSON file + --param overrides, validated
// against the command's key whitelist. Unknown keys are rejected.
class Scenario {
public:
  Scenario() : data_(nlohmann::json::object()) {}

  static Scenario from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open scenario file: " + path);
    Scenario s;
    try {
      s.data_ = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(std::string("scenario parse error: ") + e.what());
    }
    if (!s.data_.is_object()) throw std::invalid_argument("scenario must be a JSON object");
    if (!s.data_.contains("version"))
      throw std::invalid_argument("scenario missing required key: version");
    if (s.data_["version"] != kScenarioVersion)
      throw std::invalid_argument("unsupported scenario version");
    return s;
  }

  // "key=value"; value parsed as JSON when possible, comma lists as arrays.
  void apply_override(const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("malformed --param (expected key=value): " + kv);
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    try {
      data_[key] = nlohmann::json::parse(val);
      return;
    } catch (const nlohmann::json::parse_error&) {
    }
    if (val.find(',') != std::string::npos) {
      nlohmann::json arr = nlohmann::json::array();
      std::string item;
      std::istringstream ss(val);
      while (std::getline(ss, item, ',')) {
        try {
          arr.push_back(std::stod(item));
        } catch (const std::exception&) {
          throw std::invalid_argument("malformed numeric list in --param: " + kv);
        }
      }
      data_[key] = arr;
      return;
    }
    data_[key] = val;
  }

  void validate_keys(const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : data_.items()) {
      if (key == "version") continue;
      if (!allowed.contains(key)) throw std::invalid_argument("unknown scenario key: " + key);
    }
  }

  bool has(const std::string& key) const { return data_.contains(key); }

  double number(const std::string& key, double fallback) const {
    return data_.contains(key) ? data_[key].get<double>() : fallback;
  }

  int integer(const std::string& key, int fallback) const {
    return data_.contains(key) ? data_[key].get<int>() : fallback;
  }

  std::vector<double> list(const std::string& key, std::vector<double> fallback) const {
    if (!data_.contains(key)) return fallback;
    if (data_[key].is_number()) return {data_[key].get<double>()};
    return data_[key].get<std::vector<double>>();
  }

  GridSpec grid(const std::string& key, GridSpec fallback) const {
    if (!data_.contains(key)) return fallback;
    const auto& g = data_[key];
    for (const auto& [k, v] : g.items())
      if (k != "start" && k != "stop" && k != "count")
        throw std::invalid_argument("unknown grid key: " + k);
    return {g.at("start").get<double>(), g.at("stop").get<double>(), g.at("count").get<int>()};
  }

  const nlohmann::json& raw() const { return data_; }

private:
  nlohmann::json data_;
};

}  // namespace hybridlink
