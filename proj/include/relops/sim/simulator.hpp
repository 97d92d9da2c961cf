#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "relops/core/errors.hpp"
#include "relops/core/rng.hpp"
#include "relops/core/time.hpp"
#include "relops/sim/types.hpp"
#include "relops/telemetry/store.hpp"

namespace relops {

// Deterministic single-threaded discrete-event simulator of nodes, faults and
// synchronous training jobs. The seed fully determines every trajectory;
// event ties are broken by schedule order.
class Simulator {
 public:
  using TelemetrySink = std::function<void(std::vector<TelemetrySample>&&)>;

  struct ActiveFault {
    int fault_id = 0;
    FaultModel model;
    TimeMs onset = 0;
    bool physical_on = true;  // intermittent duty toggle
  };

  struct NodeRt {
    std::string id;
    NodeState state = NodeState::Available;
    std::optional<TimeMs> last_validation;
    TimeMs last_cordon = -1;
    bool down = false;  // crashed; collectors silent
    std::vector<ActiveFault> faults;
    std::string job_id;

    bool hang_active() const {
      for (const auto& f : faults)
        if (f.model.manifestation.kind == ManifestationKind::Hang && f.physical_on) return true;
      return false;
    }
    // Product of active degrade factors; 1.0 when healthy.
    double degrade_factor() const {
      double f = 1.0;
      for (const auto& af : faults)
        if (af.model.manifestation.kind == ManifestationKind::Degrade && af.physical_on)
          f *= af.model.manifestation.factor;
      return f;
    }
    bool has_fault_class(ComponentClass c) const {
      for (const auto& f : faults)
        if (f.model.component == c) return true;
      return false;
    }
  };

  struct JobRt {
    JobSpec spec;
    JobState state = JobState::Pending;
    std::vector<std::string> nodes;
    double steps = 0.0;
    TimeMs anchor_t = 0;
    double rate_steps_per_ms = 0.0;
    TimeMs training_start = -1;  // current run segment
    TimeMs interrupted_at = -1;
    int segment = 0;
    Rng kpi_noise{1};
    std::uint64_t completion_gen = 0;
  };

  explicit Simulator(SimConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    interval_ms_ = seconds_ms(cfg_.telemetry_interval_s);
    const int width = std::max(3, static_cast<int>(std::to_string(cfg_.node_count - 1).size()));
    nodes_.resize(cfg_.node_count);
    for (int i = 0; i < cfg_.node_count; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "node-%0*d", width, i);
      nodes_[i].id = buf;
      if (cfg_.pre_validated) nodes_[i].last_validation = 0;
      node_index_[nodes_[i].id] = i;
    }
    for (const auto& c : cfg_.collectors)
      for (const auto& m : c.metrics)
        if (!profiles_.count(m)) profiles_[m] = default_profile(c.source);
    noise_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      noise_.emplace_back(Rng::derive(cfg_.seed, "noise", i));
    // Background fault processes: one independent stream per (node, model).
    arrival_rng_.resize(nodes_.size());
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      for (std::size_t m = 0; m < cfg_.fault_models.size(); ++m) {
        arrival_rng_[n].emplace_back(Rng::derive(cfg_.seed, "arrival", n * 4096 + m));
        if (cfg_.fault_models[m].rate_per_node_hour > 0.0)
          schedule_arrival(static_cast<int>(n), static_cast<int>(m), 0);
      }
    }
    for (std::size_t c = 0; c < cfg_.collectors.size(); ++c)
      schedule(seconds_ms(cfg_.collectors[c].interval_s), Pending::Tick, {.collector = static_cast<int>(c)});
  }

  void set_telemetry_sink(TelemetrySink sink) { sink_ = std::move(sink); }

  TimeMs now() const { return clock_; }
  const SimConfig& config() const { return cfg_; }

  std::vector<std::string> node_ids() const {
    std::vector<std::string> out;
    for (const auto& n : nodes_) out.push_back(n.id);
    return out;
  }

  const NodeRt& node(const std::string& id) const { return nodes_[index_of(id)]; }
  const JobRt* find_job(const std::string& id) const {
    auto it = jobs_.find(id);
    return it == jobs_.end() ? nullptr : &it->second;
  }
  const std::map<std::string, JobRt>& jobs() const { return jobs_; }
  const std::vector<SimEvent>& event_log() const { return log_; }

  std::int64_t job_progress(const std::string& job_id) const {
    const auto& j = jobs_.at(job_id);
    return static_cast<std::int64_t>(j.steps + (clock_ - j.anchor_t) * j.rate_steps_per_ms);
  }

  // Current throughput fraction of peak (min over assigned node factors; 0 when
  // hung or not running). Synchronous training is gated by the slowest node.
  double job_factor(const JobRt& j) const {
    if (j.state != JobState::Training && j.state != JobState::Degraded && j.state != JobState::Hung)
      return 0.0;
    double f = 1.0;
    for (const auto& nid : j.nodes) {
      const auto& n = nodes_[index_of(nid)];
      if (n.hang_active() || n.down) return 0.0;
      f = std::min(f, n.degrade_factor());
    }
    return j.state == JobState::Hung ? 0.0 : f;
  }

  // --- operations -----------------------------------------------------------

  std::vector<SimEvent> advance(double duration_s) {
    if (duration_s <= 0.0) throw ValidationError("advance duration must be > 0");
    const std::size_t first = log_.size();
    const TimeMs end = clock_ + seconds_ms(duration_s);
    while (!queue_.empty() && queue_.top().t <= end) {
      Pending p = queue_.top();
      queue_.pop();
      clock_ = std::max(clock_, p.t);
      dispatch(p);
    }
    clock_ = end;
    return {log_.begin() + static_cast<std::ptrdiff_t>(first), log_.end()};
  }

  std::string submit_job(const JobSpec& spec) {
    if (spec.requested_accelerators <= 0 ||
        spec.requested_accelerators % cfg_.accelerators_per_node != 0)
      throw ValidationError("requested accelerators must be a positive multiple of " +
                            std::to_string(cfg_.accelerators_per_node));
    const int need = spec.requested_accelerators / cfg_.accelerators_per_node;
    std::vector<int> chosen;
    for (std::size_t i = 0; i < nodes_.size() && static_cast<int>(chosen.size()) < need; ++i) {
      const auto& n = nodes_[i];
      if (n.state == NodeState::Available && n.last_validation.has_value())
        chosen.push_back(static_cast<int>(i));
    }
    if (static_cast<int>(chosen.size()) < need)
      throw InsufficientCapacity("need " + std::to_string(need) + " validated nodes, have " +
                                 std::to_string(chosen.size()));
    JobRt j;
    j.spec = spec;
    j.kpi_noise.reseed(Rng::derive(cfg_.seed, "kpi:" + spec.job_id));
    j.state = JobState::Loading;
    j.anchor_t = clock_;
    for (int idx : chosen) {
      nodes_[idx].state = NodeState::Allocated;
      nodes_[idx].job_id = spec.job_id;
      j.nodes.push_back(nodes_[idx].id);
    }
    nlohmann::json detail{{"nodes", j.nodes}, {"accelerators", spec.requested_accelerators}};
    jobs_[spec.job_id] = std::move(j);
    record("job_submitted", "", spec.job_id, detail);
    record("job_state", "", spec.job_id,
           {{"from", "Pending"}, {"to", "Loading"}, {"reason", "submitted"}});
    schedule(clock_ + seconds_ms(spec.load_time_s), Pending::JobLoaded, {.job = spec.job_id});
    return spec.job_id;
  }

  SimEvent inject_fault(const std::string& node_id, const FaultModel& fault, TimeMs at) {
    if (!node_index_.count(node_id)) throw UnknownNode(node_id);
    if (at < clock_) throw ValidationError("injection time precedes the clock");
    fault.validate();
    Pending p{at, order_++, Pending::FaultArrival,
              {.node = index_of(node_id), .model = -1}};
    p.payload.injected = fault;
    queue_.push(p);
    SimEvent ev;
    ev.t = at;
    ev.kind = "fault_scheduled";
    ev.node_id = node_id;
    ev.detail = {{"component", to_string(fault.component)},
                 {"manifestation", to_string(fault.manifestation.kind)}};
    return ev;
  }

  // Samples for the current instant, one per active collector per subject.
  std::vector<TelemetrySample> emit_telemetry() {
    std::vector<TelemetrySample> out;
    for (const auto& c : cfg_.collectors) collect(c, out);
    return out;
  }

  // --- engine hooks for the remediation / policy layers ----------------------

  void set_node_state(const std::string& node_id, NodeState to, const std::string& cause) {
    auto& n = nodes_[index_of(node_id)];
    const NodeState from = n.state;
    if (from == to) return;
    n.state = to;
    if (to == NodeState::Cordoned) n.last_cordon = clock_;
    if (to != NodeState::Allocated) n.job_id.clear();
    record("node_state", node_id, "",
           {{"from", to_string(from)}, {"to", to_string(to)}, {"cause", cause}});
  }

  void stamp_validation(const std::string& node_id) {
    nodes_[index_of(node_id)].last_validation = clock_;
  }
  void clear_validation(const std::string& node_id) {
    nodes_[index_of(node_id)].last_validation.reset();
  }

  void interrupt_job(const std::string& job_id, const std::string& reason) {
    auto& j = jobs_.at(job_id);
    if (j.state == JobState::Interrupted || j.state == JobState::Completed) return;
    set_job_state(j, JobState::Interrupted, reason);
  }

  // Healthy Allocated nodes of the job go back to Available (faulty ones are
  // handled by remediation separately).
  void release_job_nodes(const std::string& job_id) {
    auto& j = jobs_.at(job_id);
    for (const auto& nid : j.nodes) {
      auto& n = nodes_[index_of(nid)];
      if (n.state == NodeState::Allocated && n.job_id == job_id) {
        n.state = NodeState::Available;
        n.job_id.clear();
      }
    }
    j.nodes.clear();
  }

  struct ResumeInfo {
    std::int64_t resumed_at_step = 0;
    std::int64_t lost_steps = 0;
    TimeMs downtime_ms = 0;
  };

  // Re-allocates validated spares, rolls progress back to the last checkpoint
  // and schedules the Training transition after the restart delay.
  ResumeInfo resume_job(const std::string& job_id) {
    auto& j = jobs_.at(job_id);
    if (j.state != JobState::Interrupted && j.state != JobState::Hung &&
        j.state != JobState::Degraded)
      throw ValidationError("job " + job_id + " is not recoverable from state " +
                            to_string(j.state));
    const int need = j.spec.requested_accelerator_nodes(cfg_.accelerators_per_node);
    std::vector<int> chosen;
    for (std::size_t i = 0; i < nodes_.size() && static_cast<int>(chosen.size()) < need; ++i) {
      const auto& n = nodes_[i];
      if (n.state == NodeState::Available && n.last_validation.has_value())
        chosen.push_back(static_cast<int>(i));
    }
    if (static_cast<int>(chosen.size()) < need)
      throw NoSpareCapacity("job " + job_id + " needs " + std::to_string(need) + " nodes");
    if (j.interrupted_at < 0) j.interrupted_at = clock_;
    sync_progress(j);
    release_job_nodes(job_id);
    auto& jj = jobs_.at(job_id);
    for (int idx : chosen) {
      nodes_[idx].state = NodeState::Allocated;
      nodes_[idx].job_id = job_id;
      jj.nodes.push_back(nodes_[idx].id);
    }
    const std::int64_t progress = static_cast<std::int64_t>(jj.steps);
    const std::int64_t ckpt = jj.spec.checkpoint_interval_steps;
    const std::int64_t resumed_at = ckpt > 0 ? (progress / ckpt) * ckpt : progress;
    ResumeInfo info;
    info.resumed_at_step = resumed_at;
    info.lost_steps = progress - resumed_at;
    info.downtime_ms = clock_ + seconds_ms(cfg_.restart_delay_s) - jj.interrupted_at;
    jj.steps = static_cast<double>(resumed_at);
    jj.rate_steps_per_ms = 0.0;
    jj.anchor_t = clock_;
    set_job_state(jj, JobState::Recovering, "recovery");
    schedule(clock_ + seconds_ms(cfg_.restart_delay_s), Pending::JobLoaded, {.job = job_id});
    record("job_recovery", "", job_id,
           {{"resumed_at_step", info.resumed_at_step},
            {"lost_steps", info.lost_steps},
            {"downtime_ms", info.downtime_ms}});
    return info;
  }

  // Node health probes backing the validation battery.
  bool probe_responsive(const std::string& node_id) const {
    const auto& n = nodes_[index_of(node_id)];
    return !n.down && !n.hang_active();
  }
  double probe_compute_factor(const std::string& node_id) const {
    return nodes_[index_of(node_id)].degrade_factor();
  }
  bool probe_class_fault(const std::string& node_id, ComponentClass c) const {
    return nodes_[index_of(node_id)].has_fault_class(c);
  }

  // Reboot clears soft faults (host-os, silent-hang). Returns cleared count.
  int clear_soft_faults(const std::string& node_id) {
    auto& n = nodes_[index_of(node_id)];
    int cleared = 0;
    for (auto it = n.faults.begin(); it != n.faults.end();) {
      const auto c = it->model.component;
      if (c == ComponentClass::HostOs || c == ComponentClass::SilentHang) {
        record("fault_cleared", node_id, "",
               {{"fault_id", it->fault_id}, {"how", "reboot"}, {"component", to_string(c)}});
        reschedule_after_clear(node_id, it->model);
        it = n.faults.erase(it);
        ++cleared;
      } else {
        ++it;
      }
    }
    return cleared;
  }

  // Hardware repair (host migration): every fault cleared, node back up.
  void repair_node(const std::string& node_id) {
    auto& n = nodes_[index_of(node_id)];
    for (const auto& f : n.faults) {
      record("fault_cleared", node_id, "",
             {{"fault_id", f.fault_id}, {"how", "repair"}, {"component", to_string(f.model.component)}});
      reschedule_after_clear(node_id, f.model);
    }
    n.faults.clear();
    n.down = false;
  }

  void record_external(const std::string& kind, const std::string& node_id,
                       const std::string& job_id, nlohmann::json detail) {
    record(kind, node_id, job_id, std::move(detail));
  }

 private:
  struct Payload {
    int node = -1;
    int model = -1;
    int fault_id = -1;
    int collector = -1;
    std::string job;
    std::uint64_t gen = 0;
    std::optional<FaultModel> injected;
  };
  struct Pending {
    TimeMs t = 0;
    std::uint64_t order = 0;
    enum Kind { FaultArrival, FaultToggle, Tick, JobLoaded, JobComplete } kind = Tick;
    Payload payload;
  };
  struct PendingAfter {
    bool operator()(const Pending& a, const Pending& b) const {
      return a.t != b.t ? a.t > b.t : a.order > b.order;
    }
  };

  int index_of(const std::string& id) const {
    auto it = node_index_.find(id);
    if (it == node_index_.end()) throw UnknownNode(id);
    return it->second;
  }

  void schedule(TimeMs t, Pending::Kind kind, Payload payload) {
    queue_.push(Pending{t, order_++, kind, std::move(payload)});
  }

  void schedule_arrival(int node, int model, TimeMs from) {
    const double rate = cfg_.fault_models[model].rate_per_node_hour;
    if (rate <= 0.0) return;
    const double mean_h = 1.0 / rate;
    const TimeMs dt = hours_ms(arrival_rng_[node][model].exponential(mean_h));
    schedule(from + std::max<TimeMs>(1, dt), Pending::FaultArrival, {.node = node, .model = model});
  }

  void reschedule_after_clear(const std::string& node_id, const FaultModel& m) {
    // Background processes resume after repair; injected faults do not recur.
    for (std::size_t i = 0; i < cfg_.fault_models.size(); ++i) {
      if (cfg_.fault_models[i].rate_per_node_hour > 0.0 &&
          cfg_.fault_models[i].component == m.component &&
          cfg_.fault_models[i].manifestation.kind == m.manifestation.kind) {
        schedule_arrival(index_of(node_id), static_cast<int>(i), clock_);
        return;
      }
    }
  }

  void record(const std::string& kind, const std::string& node_id, const std::string& job_id,
              nlohmann::json detail) {
    SimEvent ev;
    ev.t = clock_;
    ev.seq = seq_++;
    ev.kind = kind;
    ev.node_id = node_id;
    ev.job_id = job_id;
    ev.detail = std::move(detail);
    log_.push_back(std::move(ev));
  }

  void sync_progress(JobRt& j) {
    j.steps += static_cast<double>(clock_ - j.anchor_t) * j.rate_steps_per_ms;
    j.anchor_t = clock_;
  }

  void refresh_rate(JobRt& j) {
    sync_progress(j);
    const double f = job_factor(j);
    j.rate_steps_per_ms =
        (j.state == JobState::Training || j.state == JobState::Degraded)
            ? f / (j.spec.step_time_s * 1000.0)
            : 0.0;
    if (j.spec.total_steps && j.rate_steps_per_ms > 0.0) {
      const double remaining = static_cast<double>(*j.spec.total_steps) - j.steps;
      if (remaining > 0.0) {
        ++j.completion_gen;
        schedule(clock_ + static_cast<TimeMs>(remaining / j.rate_steps_per_ms) + 1,
                 Pending::JobComplete, {.job = j.spec.job_id, .gen = j.completion_gen});
      }
    }
  }

  void set_job_state(JobRt& j, JobState to, const std::string& reason) {
    const JobState from = j.state;
    if (from == to) return;
    sync_progress(j);
    j.state = to;
    if (to == JobState::Training && (from == JobState::Loading || from == JobState::Recovering)) {
      j.training_start = clock_;
      j.interrupted_at = -1;
      ++j.segment;
    }
    if (to == JobState::Interrupted || to == JobState::Hung) j.interrupted_at = clock_;
    refresh_rate(j);
    record("job_state", "", j.spec.job_id,
           {{"from", to_string(from)}, {"to", to_string(to)}, {"reason", reason}});
  }

  // Re-derives Training/Degraded/Hung after a node-level change.
  void reconcile_job(JobRt& j, const std::string& reason) {
    if (j.state != JobState::Training && j.state != JobState::Degraded &&
        j.state != JobState::Hung)
      return;
    bool hang = false;
    double f = 1.0;
    for (const auto& nid : j.nodes) {
      const auto& n = nodes_[index_of(nid)];
      hang = hang || n.hang_active();
      f = std::min(f, n.degrade_factor());
    }
    JobState want = hang ? JobState::Hung : (f < 0.9995 ? JobState::Degraded : JobState::Training);
    if (want != j.state)
      set_job_state(j, want, reason);
    else
      refresh_rate(j);
  }

  void apply_fault(int node_idx, const FaultModel& model) {
    auto& n = nodes_[node_idx];
    if (n.state != NodeState::Available && n.state != NodeState::Allocated) {
      record("fault_suppressed", n.id, "", {{"component", to_string(model.component)}});
      return;
    }
    const int fid = fault_id_++;
    n.faults.push_back(ActiveFault{fid, model, clock_, true});
    record("fault_onset", n.id, n.job_id,
           {{"fault_id", fid},
            {"component", to_string(model.component)},
            {"manifestation", to_string(model.manifestation.kind)},
            {"factor", model.manifestation.factor},
            {"known", model.known},
            {"signature_id", model.signature_id}});
    // Rule-matchable footprint: onset line lands on the node's log channel.
    std::string line = model.log_line;
    if (model.manifestation.kind == ManifestationKind::LogPattern && line.empty())
      line = model.manifestation.text;
    if (!line.empty()) emit_log_line(n, model.log_channel, line);

    switch (model.manifestation.kind) {
      case ManifestationKind::Crash: {
        n.down = true;
        if (!n.job_id.empty()) {
          auto& j = jobs_.at(n.job_id);
          if (j.state == JobState::Training || j.state == JobState::Degraded ||
              j.state == JobState::Hung || j.state == JobState::Loading)
            set_job_state(j, JobState::Interrupted, "crash on " + n.id);
        }
        break;
      }
      case ManifestationKind::Hang:
      case ManifestationKind::Degrade: {
        if (model.intermittent && model.intermittent->period_s > 0.0) {
          const TimeMs on = seconds_ms(model.intermittent->period_s * model.intermittent->duty);
          schedule(clock_ + on, Pending::FaultToggle, {.node = node_idx, .fault_id = fid});
        }
        if (!n.job_id.empty()) reconcile_job(jobs_.at(n.job_id), to_string(model.manifestation.kind));
        break;
      }
      case ManifestationKind::LogPattern:
        break;
    }
  }

  void toggle_fault(int node_idx, int fault_id) {
    auto& n = nodes_[node_idx];
    for (auto& f : n.faults) {
      if (f.fault_id != fault_id) continue;
      f.physical_on = !f.physical_on;
      const auto& im = *f.model.intermittent;
      const TimeMs period = seconds_ms(im.period_s);
      const TimeMs on = seconds_ms(im.period_s * im.duty);
      schedule(clock_ + (f.physical_on ? on : period - on), Pending::FaultToggle,
               {.node = node_idx, .fault_id = fault_id});
      record("fault_toggle", n.id, n.job_id, {{"fault_id", fault_id}, {"on", f.physical_on}});
      if (!n.job_id.empty()) reconcile_job(jobs_.at(n.job_id), "fault_toggle");
      return;
    }
  }

  void emit_log_line(const NodeRt& n, const std::string& channel, const std::string& line) {
    for (const auto& c : cfg_.collectors) {
      if (is_log_source(c.source) && c.name == channel) {
        std::vector<TelemetrySample> batch{log_sample(channel, clock_, n.id, line, n.job_id)};
        batch.back().labels = c.labels;
        if (sink_) sink_(std::move(batch));
        return;
      }
    }
  }

  void collect(const CollectorSpec& c, std::vector<TelemetrySample>& out) {
    if (is_log_source(c.source)) return;  // log channels are event-driven
    if (c.source == CollectorSource::JobKpi) {
      for (auto& [id, j] : jobs_) {
        if (j.state != JobState::Training && j.state != JobState::Degraded &&
            j.state != JobState::Hung)
          continue;
        const double f = job_factor(j);
        double v = 0.0;
        if (f > 0.0)
          v = std::max(0.0, j.spec.peak_tps * f * (1.0 + j.kpi_noise.normal(0.0, cfg_.kpi_noise_rel)));
        for (const auto& m : c.metrics) {
          auto s = metric_sample(m, clock_, j.nodes.empty() ? "" : j.nodes.front(), v, id);
          s.labels = c.labels;
          out.push_back(std::move(s));
        }
      }
      return;
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      auto& n = nodes_[i];
      if (n.down) continue;  // crashed node: metric dropout
      const JobRt* j = n.job_id.empty() ? nullptr : &jobs_.at(n.job_id);
      const bool busy = j && (j->state == JobState::Training || j->state == JobState::Degraded ||
                              j->state == JobState::Hung);
      // A hung node stalls to idle level while its peers spin-wait at the busy
      // level; that asymmetry is what spatial scoring keys on.
      const bool stalled = busy && n.hang_active();
      double factor = 1.0;
      if (busy && !stalled) {
        for (const auto& af : n.faults)
          if (af.physical_on && af.model.manifestation.kind == ManifestationKind::Degrade &&
              source_of(af.model.component) == c.source)
            factor *= af.model.manifestation.factor;
      }
      for (const auto& m : c.metrics) {
        const auto& p = profiles_.at(m);
        const bool active = busy && !stalled;
        const double mu = (active ? p.busy_mean * factor : p.idle_mean);
        const double sigma = (active ? p.busy_sigma * factor : p.idle_sigma);
        auto s = metric_sample(m, clock_, n.id, noise_[i].normal_nonneg(mu, sigma), n.job_id);
        s.labels = c.labels;
        out.push_back(std::move(s));
      }
    }
  }

  static CollectorSource source_of(ComponentClass c) {
    switch (c) {
      case ComponentClass::AcceleratorMemory:
      case ComponentClass::ThroughputDegradation:
      case ComponentClass::SilentHang: return CollectorSource::Accelerator;
      case ComponentClass::Interconnect: return CollectorSource::Interconnect;
      case ComponentClass::HostOs: return CollectorSource::Pcie;  // host faults show on host metrics
    }
    return CollectorSource::Accelerator;
  }

  void dispatch(const Pending& p) {
    switch (p.kind) {
      case Pending::FaultArrival: {
        if (p.payload.injected) {
          apply_fault(p.payload.node, *p.payload.injected);
        } else {
          apply_fault(p.payload.node, cfg_.fault_models[p.payload.model]);
          // Next background arrival is drawn when the fault clears.
          const auto& n = nodes_[p.payload.node];
          bool active = false;
          for (const auto& f : n.faults)
            if (f.model.component == cfg_.fault_models[p.payload.model].component) active = true;
          if (!active) schedule_arrival(p.payload.node, p.payload.model, clock_);
        }
        break;
      }
      case Pending::FaultToggle:
        toggle_fault(p.payload.node, p.payload.fault_id);
        break;
      case Pending::Tick: {
        const auto& c = cfg_.collectors[p.payload.collector];
        std::vector<TelemetrySample> batch;
        collect(c, batch);
        if (sink_ && !batch.empty()) sink_(std::move(batch));
        schedule(p.t + seconds_ms(c.interval_s), Pending::Tick, {.collector = p.payload.collector});
        break;
      }
      case Pending::JobLoaded: {
        auto it = jobs_.find(p.payload.job);
        if (it == jobs_.end()) break;
        auto& j = it->second;
        if (j.state == JobState::Loading || j.state == JobState::Recovering) {
          set_job_state(j, JobState::Training, "loaded");
          reconcile_job(j, "loaded");
        }
        break;
      }
      case Pending::JobComplete: {
        auto it = jobs_.find(p.payload.job);
        if (it == jobs_.end() || it->second.completion_gen != p.payload.gen) break;
        auto& j = it->second;
        if (j.state == JobState::Training || j.state == JobState::Degraded) {
          sync_progress(j);
          if (j.spec.total_steps && j.steps + 1e-9 >= static_cast<double>(*j.spec.total_steps)) {
            j.steps = static_cast<double>(*j.spec.total_steps);
            set_job_state(j, JobState::Completed, "completed");
            release_nodes_of_completed(j);
          }
        }
        break;
      }
    }
  }

  void release_nodes_of_completed(JobRt& j) {
    for (const auto& nid : j.nodes) {
      auto& n = nodes_[index_of(nid)];
      if (n.state == NodeState::Allocated && n.job_id == j.spec.job_id) {
        n.state = NodeState::Available;
        n.job_id.clear();
      }
    }
    j.nodes.clear();
  }

  SimConfig cfg_;
  TimeMs interval_ms_ = 0;
  TimeMs clock_ = 0;
  std::uint64_t order_ = 0;
  std::uint64_t seq_ = 0;
  int fault_id_ = 1;
  std::vector<NodeRt> nodes_;
  std::map<std::string, int> node_index_;
  std::map<std::string, JobRt> jobs_;
  std::vector<Rng> noise_;
  std::vector<std::vector<Rng>> arrival_rng_;
  std::priority_queue<Pending, std::vector<Pending>, PendingAfter> queue_;
  std::vector<SimEvent> log_;
  TelemetrySink sink_;
};

}  // namespace relops
