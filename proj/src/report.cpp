#include "wstar/report.hpp"

#include <algorithm>
#include <cmath>

namespace wstar {

namespace {

nlohmann::json number_or_inf(double v) {
  if (std::isfinite(v)) return v;
  return "inf";
}

}  // namespace

void Report::record(const std::string& law, std::size_t index, double defect) {
  ++samples;
  if (!std::isfinite(defect) || std::isnan(defect)) {
    max_defect = std::numeric_limits<double>::infinity();
    failures.push_back({law, index, defect});
    return;
  }
  max_defect = std::max(max_defect, defect);
  if (defect > threshold) failures.push_back({law, index, defect});
}

void Report::merge(const Report& other) {
  samples += other.samples;
  max_defect = std::max(max_defect, other.max_defect);
  for (const auto& f : other.failures) failures.push_back({other.check + "/" + f.law, f.index, f.defect});
}

nlohmann::json Report::to_json() const {
  nlohmann::json fs = nlohmann::json::array();
  for (std::size_t i = 0; i < failures.size() && i < 20; ++i)
    fs.push_back({{"law", failures[i].law}, {"index", failures[i].index},
                  {"defect", number_or_inf(failures[i].defect)}});
  nlohmann::json j = {{"check", check},         {"params", params},
                      {"samples", samples},     {"max_defect", number_or_inf(max_defect)},
                      {"threshold", threshold}, {"pass", pass()},
                      {"failure_count", failures.size()}, {"failures", fs}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

}  // namespace wstar
