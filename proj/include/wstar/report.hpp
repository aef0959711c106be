#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

namespace wstar {

struct Failure {
  std::string law;
  std::size_t index = 0;
  double defect = 0.0;
};

/// Outcome of a sampled verification: worst defect and the samples that broke the threshold.
struct Report {
  std::string check;
  double threshold = 0.0;
  std::size_t samples = 0;
  double max_defect = 0.0;
  std::vector<Failure> failures;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json extra = nlohmann::json::object();

  Report() = default;
  Report(std::string name, double thr) : check(std::move(name)), threshold(thr) {}

  /// Records a defect; non-finite defects always count as failures.
  void record(const std::string& law, std::size_t index, double defect);
  void fail_law(const std::string& law, std::size_t index) { record(law, index, std::numeric_limits<double>::infinity()); }
  void merge(const Report& other);
  bool pass() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

}  // namespace wstar
