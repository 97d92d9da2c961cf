#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "relops/core/time.hpp"
#include "relops/core/util.hpp"
#include "relops/telemetry/collector.hpp"

namespace relops {

// One observation: either a numeric metric sample or a log line, never both.
struct TelemetrySample {
  std::string metric;  // metric name, or log channel for is_log samples
  bool is_log = false;
  double value = 0.0;
  std::string line;
  TimeMs t = 0;
  std::string node_id;
  std::string job_id;  // empty = none
  std::map<std::string, std::string> labels;
};

inline TelemetrySample metric_sample(std::string metric, TimeMs t, std::string node, double value,
                                     std::string job = {}) {
  TelemetrySample s;
  s.metric = std::move(metric);
  s.t = t;
  s.node_id = std::move(node);
  s.value = value;
  s.job_id = std::move(job);
  return s;
}

inline TelemetrySample log_sample(std::string channel, TimeMs t, std::string node, std::string line,
                                  std::string job = {}) {
  TelemetrySample s;
  s.metric = std::move(channel);
  s.is_log = true;
  s.t = t;
  s.node_id = std::move(node);
  s.line = std::move(line);
  s.job_id = std::move(job);
  return s;
}

enum class GroupBy { Node, Job, None };

struct SeriesQuery {
  std::string metric;
  TimeMs t0 = 0;
  TimeMs t1 = 0;  // [t0, t1)
  std::optional<std::set<std::string>> nodes;
  std::optional<std::string> job;
  GroupBy group_by = GroupBy::None;
};

// Groups keyed by node_id / job_id / "" depending on group_by; samples
// time-ascending, ties ordered by node_id. Empty groups omitted.
using GroupedSeries = std::map<std::string, std::vector<TelemetrySample>>;

struct IngestResult {
  std::size_t accepted = 0;
  std::vector<std::pair<std::size_t, std::string>> rejected;  // (batch index, error kind)
};

enum class AggOp { Mean, Max, Min, Count, Rate };

inline AggOp agg_op_from(const std::string& s) {
  if (s == "mean") return AggOp::Mean;
  if (s == "max") return AggOp::Max;
  if (s == "min") return AggOp::Min;
  if (s == "count") return AggOp::Count;
  if (s == "rate") return AggOp::Rate;
  throw ParseError("unknown aggregate op: " + s);
}

struct AggPoint {
  TimeMs t = 0;  // window start
  double value = 0.0;
};

// Tumbling-window aggregation, left-closed right-open, aligned to t0. One
// output point per non-empty window, stamped at the window start. Rate is the
// per-second slope (last-first)/(span); windows with fewer than two samples
// emit no rate point.
inline std::vector<AggPoint> aggregate(const std::vector<TelemetrySample>& series, TimeMs t0,
                                       double window_s, AggOp op) {
  if (window_s <= 0.0) throw ValidationError("aggregate window must be positive");
  const TimeMs w = seconds_ms(window_s);
  std::map<TimeMs, std::vector<const TelemetrySample*>> buckets;
  for (const auto& s : series) {
    if (s.is_log) continue;
    TimeMs k = s.t - t0;
    if (k < 0) k -= w - 1;  // floor division for samples before t0
    buckets[t0 + (k / w) * w].push_back(&s);
  }
  std::vector<AggPoint> out;
  for (auto& [start, items] : buckets) {
    std::sort(items.begin(), items.end(),
              [](const TelemetrySample* a, const TelemetrySample* b) { return a->t < b->t; });
    double v = 0.0;
    switch (op) {
      case AggOp::Mean: {
        for (const auto* s : items) v += s->value;
        v /= static_cast<double>(items.size());
        break;
      }
      case AggOp::Max: {
        v = items.front()->value;
        for (const auto* s : items) v = std::max(v, s->value);
        break;
      }
      case AggOp::Min: {
        v = items.front()->value;
        for (const auto* s : items) v = std::min(v, s->value);
        break;
      }
      case AggOp::Count:
        v = static_cast<double>(items.size());
        break;
      case AggOp::Rate: {
        if (items.size() < 2) continue;
        const double dv = items.back()->value - items.front()->value;
        const double dt_s = ms_to_seconds(items.back()->t - items.front()->t);
        if (dt_s <= 0.0) continue;
        v = dv / dt_s;
        break;
      }
    }
    out.push_back({start, v});
  }
  return out;
}

// In-memory time-series/log store. Ingest is validated against the active
// collector set; history survives hot reloads. Reads take a shared lock and
// copy out, so a query sees a consistent snapshot of every batch.
class TelemetryStore {
 public:
  explicit TelemetryStore(std::size_t max_samples_per_series = 1u << 20)
      : cap_(max_samples_per_series) {}

  TelemetryStore(const TelemetryStore& other) : cap_(other.cap_) {
    std::shared_lock lk(other.mu_);
    collectors_ = other.collectors_;
    metric_owner_ = other.metric_owner_;
    channels_ = other.channels_;
    known_metrics_ = other.known_metrics_;
    data_ = other.data_;
  }
  TelemetryStore& operator=(const TelemetryStore&) = delete;

  // Atomically replaces the active collector set; already-ingested data stays.
  void reload(std::vector<CollectorSpec> specs) {
    detail::validate_collectors(specs);
    std::unique_lock lk(mu_);
    collectors_.clear();
    metric_owner_.clear();
    channels_.clear();
    for (auto& c : specs) {
      for (const auto& m : c.metrics) {
        metric_owner_[m] = c.name;
        known_metrics_.insert(m);
      }
      if (is_log_source(c.source)) {
        channels_.insert(c.name);
        known_metrics_.insert(c.name);
      }
      collectors_[c.name] = std::move(c);
    }
  }

  std::vector<CollectorSpec> active_collectors() const {
    std::shared_lock lk(mu_);
    std::vector<CollectorSpec> out;
    for (const auto& [_, c] : collectors_) out.push_back(c);
    return out;
  }

  // Validates and stores one sample. Throws UnknownCollector / NonFiniteValue.
  void ingest_one(const TelemetrySample& s) {
    std::unique_lock lk(mu_);
    ingest_locked(s);
  }

  // Batch ingest; invalid entries are skipped and reported, valid ones land.
  IngestResult ingest(const std::vector<TelemetrySample>& batch) {
    IngestResult r;
    std::unique_lock lk(mu_);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      try {
        ingest_locked(batch[i]);
        ++r.accepted;
      } catch (const UnknownCollector&) {
        r.rejected.emplace_back(i, "UnknownCollector");
      } catch (const NonFiniteValue&) {
        r.rejected.emplace_back(i, "NonFiniteValue");
      }
    }
    return r;
  }

  GroupedSeries query(const SeriesQuery& q) const {
    if (q.t0 >= q.t1) throw ValidationError("query range must satisfy t0 < t1");
    std::shared_lock lk(mu_);
    if (!known_metrics_.count(q.metric)) throw UnknownMetric(q.metric);
    GroupedSeries out;
    auto it = data_.find(q.metric);
    if (it == data_.end()) return out;
    for (const auto& [node, series] : it->second) {
      if (q.nodes && !q.nodes->count(node)) continue;
      for (const auto& s : series) {
        if (s.t < q.t0 || s.t >= q.t1) continue;
        if (q.job && s.job_id != *q.job) continue;
        std::string key;
        switch (q.group_by) {
          case GroupBy::Node: key = s.node_id; break;
          case GroupBy::Job: key = s.job_id; break;
          case GroupBy::None: key = ""; break;
        }
        out[key].push_back(s);
      }
    }
    for (auto& [_, v] : out) {
      std::stable_sort(v.begin(), v.end(), [](const TelemetrySample& a, const TelemetrySample& b) {
        return a.t != b.t ? a.t < b.t : a.node_id < b.node_id;
      });
    }
    return out;
  }

  // Flat convenience query: all samples for a metric/node in [t0, t1).
  std::vector<TelemetrySample> series(const std::string& metric, const std::string& node, TimeMs t0,
                                      TimeMs t1) const {
    SeriesQuery q;
    q.metric = metric;
    q.t0 = t0;
    q.t1 = t1;
    q.nodes = std::set<std::string>{node};
    q.group_by = GroupBy::None;
    auto g = query(q);
    return g.empty() ? std::vector<TelemetrySample>{} : std::move(g.begin()->second);
  }

  std::set<std::string> nodes_seen(const std::string& metric) const {
    std::shared_lock lk(mu_);
    std::set<std::string> out;
    auto it = data_.find(metric);
    if (it != data_.end())
      for (const auto& [node, _] : it->second) out.insert(node);
    return out;
  }

  // Active numeric metrics and log channels (the rule-DSL schema).
  std::pair<std::set<std::string>, std::set<std::string>> schema() const {
    std::shared_lock lk(mu_);
    std::set<std::string> metrics;
    for (const auto& [m, _] : metric_owner_) metrics.insert(m);
    return {metrics, channels_};
  }

  // CSV export (t_ms,node_id,job_id,metric,value|line), rows ordered (t, node).
  std::string to_csv(const std::string& metric) const {
    SeriesQuery q;
    q.metric = metric;
    q.t0 = std::numeric_limits<TimeMs>::min() / 2;
    q.t1 = std::numeric_limits<TimeMs>::max() / 2;
    auto g = query(q);
    std::string out = "t_ms,node_id,job_id,metric,value\n";
    if (g.empty()) return out;
    for (const auto& s : g.begin()->second) {
      out += std::to_string(s.t) + "," + s.node_id + "," + s.job_id + "," + s.metric + ",";
      out += s.is_log ? s.line : to_fixed(s.value, 9);
      out += "\n";
    }
    return out;
  }

  std::vector<TelemetrySample> all_samples() const {
    std::shared_lock lk(mu_);
    std::vector<TelemetrySample> out;
    for (const auto& [_, per_node] : data_)
      for (const auto& [__, series] : per_node) out.insert(out.end(), series.begin(), series.end());
    std::stable_sort(out.begin(), out.end(), [](const TelemetrySample& a, const TelemetrySample& b) {
      if (a.t != b.t) return a.t < b.t;
      if (a.metric != b.metric) return a.metric < b.metric;
      return a.node_id < b.node_id;
    });
    return out;
  }

 private:
  void ingest_locked(const TelemetrySample& s) {
    if (s.is_log) {
      if (!channels_.count(s.metric)) throw UnknownCollector(s.metric);
    } else {
      if (!metric_owner_.count(s.metric)) throw UnknownCollector(s.metric);
      if (!std::isfinite(s.value)) throw NonFiniteValue(s.metric);
    }
    auto& series = data_[s.metric][s.node_id];
    series.push_back(s);
    if (series.size() > cap_) {
      std::stable_sort(series.begin(), series.end(),
                       [](const TelemetrySample& a, const TelemetrySample& b) { return a.t < b.t; });
      series.erase(series.begin(), series.begin() + static_cast<std::ptrdiff_t>(series.size() - cap_));
    }
  }

  std::size_t cap_;
  mutable std::shared_mutex mu_;
  std::map<std::string, CollectorSpec> collectors_;
  std::map<std::string, std::string> metric_owner_;  // metric -> collector
  std::set<std::string> channels_;
  std::set<std::string> known_metrics_;  // includes removed collectors' metrics
  std::map<std::string, std::map<std::string, std::vector<TelemetrySample>>> data_;
};

}  // namespace relops
