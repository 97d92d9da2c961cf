#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "relops/core/time.hpp"
#include "relops/telemetry/collector.hpp"

namespace relops {

enum class NodeState { Available, Allocated, Suspect, Cordoned, InRepair, Migrated, Validating };

inline const char* to_string(NodeState s) {
  switch (s) {
    case NodeState::Available: return "Available";
    case NodeState::Allocated: return "Allocated";
    case NodeState::Suspect: return "Suspect";
    case NodeState::Cordoned: return "Cordoned";
    case NodeState::InRepair: return "InRepair";
    case NodeState::Migrated: return "Migrated";
    case NodeState::Validating: return "Validating";
  }
  return "?";
}

enum class JobState { Pending, Loading, Training, Hung, Degraded, Interrupted, Recovering, Completed };

inline const char* to_string(JobState s) {
  switch (s) {
    case JobState::Pending: return "Pending";
    case JobState::Loading: return "Loading";
    case JobState::Training: return "Training";
    case JobState::Hung: return "Hung";
    case JobState::Degraded: return "Degraded";
    case JobState::Interrupted: return "Interrupted";
    case JobState::Recovering: return "Recovering";
    case JobState::Completed: return "Completed";
  }
  return "?";
}

enum class ComponentClass {
  AcceleratorMemory,
  Interconnect,
  HostOs,
  SilentHang,
  ThroughputDegradation,
};

inline const char* to_string(ComponentClass c) {
  switch (c) {
    case ComponentClass::AcceleratorMemory: return "accelerator-memory";
    case ComponentClass::Interconnect: return "interconnect";
    case ComponentClass::HostOs: return "host-os";
    case ComponentClass::SilentHang: return "silent-hang";
    case ComponentClass::ThroughputDegradation: return "throughput-degradation";
  }
  return "?";
}

inline ComponentClass component_class_from(const std::string& s) {
  if (s == "accelerator-memory") return ComponentClass::AcceleratorMemory;
  if (s == "interconnect") return ComponentClass::Interconnect;
  if (s == "host-os") return ComponentClass::HostOs;
  if (s == "silent-hang") return ComponentClass::SilentHang;
  if (s == "throughput-degradation") return ComponentClass::ThroughputDegradation;
  throw ValidationError("unknown component class: " + s);
}

enum class ManifestationKind { Crash, Hang, Degrade, LogPattern };

inline const char* to_string(ManifestationKind k) {
  switch (k) {
    case ManifestationKind::Crash: return "crash";
    case ManifestationKind::Hang: return "hang";
    case ManifestationKind::Degrade: return "degrade";
    case ManifestationKind::LogPattern: return "log-pattern";
  }
  return "?";
}

inline ManifestationKind manifestation_kind_from(const std::string& s) {
  if (s == "crash") return ManifestationKind::Crash;
  if (s == "hang") return ManifestationKind::Hang;
  if (s == "degrade") return ManifestationKind::Degrade;
  if (s == "log-pattern") return ManifestationKind::LogPattern;
  throw ValidationError("unknown manifestation: " + s);
}

struct Manifestation {
  ManifestationKind kind = ManifestationKind::Crash;
  double factor = 1.0;  // degrade only, in (0,1)
  std::string text;     // log-pattern only
};

// Optional duty cycle: the fault's physical effect toggles on/off with the
// given period, active for `duty` of it. Crash faults ignore this.
struct Intermittent {
  double period_s = 0.0;
  double duty = 1.0;
};

struct FaultModel {
  ComponentClass component = ComponentClass::AcceleratorMemory;
  double rate_per_node_hour = 0.0;  // background arrival rate; 0 = injection-only
  Manifestation manifestation;
  bool known = false;
  std::string signature_id;  // required when known
  std::string log_line;      // emitted to the node's log channel at onset
  std::string log_channel = "driver_log";
  std::optional<Intermittent> intermittent;

  void validate() const {
    if (rate_per_node_hour < 0.0) throw ValidationError("fault rate must be >= 0");
    if (manifestation.kind == ManifestationKind::Degrade &&
        (manifestation.factor <= 0.0 || manifestation.factor >= 1.0))
      throw ValidationError("degrade factor must lie in (0,1)");
    if (known && signature_id.empty())
      throw ValidationError("known fault model requires a signature_id");
  }
};

struct JobSpec {
  std::string job_id;
  int requested_accelerators = 0;
  std::int64_t checkpoint_interval_steps = 500;
  double step_time_s = 10.0;
  double peak_tps = 1.0e6;  // tokens/second at full health
  double load_time_s = 0.0;
  std::optional<std::int64_t> total_steps;
  TimeMs submit_at = 0;

  int requested_accelerator_nodes(int accels_per_node) const {
    return requested_accelerators / accels_per_node;
  }
};

struct SimConfig {
  std::uint64_t seed = 1;
  int node_count = 1;
  int accelerators_per_node = 8;
  std::vector<FaultModel> fault_models;  // background fleet-wide processes
  double telemetry_interval_s = 60.0;
  std::vector<CollectorSpec> collectors;
  bool pre_validated = true;      // nodes start with a validation stamp
  double restart_delay_s = 120.0; // Recovering -> Training
  double kpi_noise_rel = 0.005;   // relative sigma on the job KPI stream

  void validate() const {
    if (node_count < 1) throw ValidationError("node_count must be >= 1");
    if (telemetry_interval_s <= 0.0) throw ValidationError("telemetry_interval must be > 0");
    if (accelerators_per_node < 1) throw ValidationError("accelerators_per_node must be >= 1");
    for (const auto& f : fault_models) f.validate();
  }
};

// Healthy-noise model for one metric: Gaussian around the mean for the node's
// activity level, clamped at zero.
struct MetricProfile {
  double busy_mean = 1.0;
  double busy_sigma = 0.05;
  double idle_mean = 0.05;
  double idle_sigma = 0.01;
};

inline MetricProfile default_profile(CollectorSource src) {
  switch (src) {
    case CollectorSource::Accelerator: return {0.90, 0.018, 0.02, 0.004};
    case CollectorSource::Pcie: return {12.0, 0.35, 0.40, 0.05};
    case CollectorSource::Interconnect: return {40.0, 1.2, 0.50, 0.08};
    case CollectorSource::JobKpi: return {1.0, 0.0, 0.0, 0.0};
    default: return {16.0, 0.8, 1.0, 0.15};  // host-os load
  }
}

struct SimEvent {
  TimeMs t = 0;
  std::uint64_t seq = 0;
  std::string kind;
  std::string node_id;
  std::string job_id;
  nlohmann::json detail = nlohmann::json::object();

  nlohmann::json to_json() const {
    return nlohmann::json{{"t_ms", t}, {"kind", kind}, {"node_id", node_id},
                          {"job_id", job_id}, {"detail", detail}};
  }
};

}  // namespace relops
