#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "relops/core/errors.hpp"

namespace relops {

enum class CollectorSource { DriverLog, OsLog, Accelerator, Pcie, Interconnect, JobKpi };

inline const char* to_string(CollectorSource s) {
  switch (s) {
    case CollectorSource::DriverLog: return "driver-log";
    case CollectorSource::OsLog: return "os-log";
    case CollectorSource::Accelerator: return "accelerator";
    case CollectorSource::Pcie: return "pcie";
    case CollectorSource::Interconnect: return "interconnect";
    case CollectorSource::JobKpi: return "job-kpi";
  }
  return "?";
}

inline CollectorSource collector_source_from(const std::string& s) {
  if (s == "driver-log") return CollectorSource::DriverLog;
  if (s == "os-log") return CollectorSource::OsLog;
  if (s == "accelerator") return CollectorSource::Accelerator;
  if (s == "pcie") return CollectorSource::Pcie;
  if (s == "interconnect") return CollectorSource::Interconnect;
  if (s == "job-kpi") return CollectorSource::JobKpi;
  throw ValidationError("unknown collector source: " + s);
}

inline bool is_log_source(CollectorSource s) {
  return s == CollectorSource::DriverLog || s == CollectorSource::OsLog;
}

// One entry of the declarative collection document. For log sources the
// collector name doubles as the log channel name.
struct CollectorSpec {
  std::string name;
  CollectorSource source = CollectorSource::Accelerator;
  std::vector<std::string> metrics;  // empty for log sources
  double interval_s = 60.0;
  std::map<std::string, std::string> labels;
};

namespace detail {
inline void validate_collectors(const std::vector<CollectorSpec>& specs) {
  std::set<std::string> names;
  std::set<std::string> metrics;
  for (const auto& c : specs) {
    if (c.name.empty()) throw ValidationError("collector with empty name");
    if (!names.insert(c.name).second) throw ValidationError("duplicate collector name: " + c.name);
    if (c.interval_s <= 0.0) throw ValidationError("nonpositive interval for collector " + c.name);
    if (is_log_source(c.source) && !c.metrics.empty())
      throw ValidationError("log collector " + c.name + " must not declare metrics");
    if (!is_log_source(c.source) && c.metrics.empty())
      throw ValidationError("metric collector " + c.name + " declares no metrics");
    for (const auto& m : c.metrics)
      if (!metrics.insert(m).second) throw ValidationError("metric declared twice: " + m);
  }
}
}  // namespace detail

// Parses a collector configuration document:
//
//   collectors:
//     - name: accel
//       source: accelerator
//       metrics: [accel_util]
//       interval_s: 60
//       labels: {tier: sim}
inline std::vector<CollectorSpec> load_collectors(const std::string& document) {
  YAML::Node root;
  try {
    root = YAML::Load(document);
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("collector document: ") + e.what());
  }
  std::vector<CollectorSpec> specs;
  if (!root || root.IsNull()) return specs;
  const YAML::Node list = root.IsSequence() ? root : root["collectors"];
  if (!list || list.IsNull()) return specs;
  if (!list.IsSequence()) throw ParseError("collectors: expected a sequence");
  try {
    for (const auto& n : list) {
      CollectorSpec c;
      c.name = n["name"].as<std::string>();
      c.source = collector_source_from(n["source"].as<std::string>());
      if (n["metrics"])
        for (const auto& m : n["metrics"]) c.metrics.push_back(m.as<std::string>());
      if (n["interval_s"]) c.interval_s = n["interval_s"].as<double>();
      if (n["labels"])
        for (const auto& kv : n["labels"])
          c.labels[kv.first.as<std::string>()] = kv.second.as<std::string>();
      specs.push_back(std::move(c));
    }
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("collector document: ") + e.what());
  }
  detail::validate_collectors(specs);
  return specs;
}

}  // namespace relops
