#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <utility>
#include <vector>

#include "meshnav/state/types.hpp"

namespace meshnav::state {

/// Sorted sliding-window buffer of timestamped payloads.
///
/// Insertion at an arbitrary timestamp keeps the buffer ordered; eviction
/// only ever removes the oldest end, driven by an entry-count cap, an age
/// window relative to the newest entry, or both (0 disables a cap).
///
/// Duplicate-timestamp policy: `replace` overwrites the payload at an equal
/// timestamp (belief/factor histories, keeps timestamps strictly increasing);
/// `append` inserts after the existing entries (measurement logs, preserves
/// arrival order among ties).
template <typename Payload>
class SlidingHistory {
 public:
  struct Entry {
    double t;
    Payload value;
  };
  enum class OnEqual { replace, append };

  explicit SlidingHistory(std::size_t max_entries = 0, double max_age = 0.0,
                          OnEqual policy = OnEqual::replace)
      : max_entries_(max_entries), max_age_(max_age), policy_(policy) {}

  void insert(double t, Payload value) {
    auto it = std::upper_bound(
        entries_.begin(), entries_.end(), t,
        [](double lhs, const Entry& rhs) { return lhs < rhs.t; });
    if (policy_ == OnEqual::replace && it != entries_.begin() &&
        std::prev(it)->t == t) {
      std::prev(it)->value = std::move(value);
    } else {
      entries_.insert(it, Entry{t, std::move(value)});
    }
    evict();
  }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // Entry with the greatest timestamp <= t, or nullptr if none.
  const Entry* query_entry(double t) const {
    auto it = std::upper_bound(
        entries_.begin(), entries_.end(), t,
        [](double lhs, const Entry& rhs) { return lhs < rhs.t; });
    if (it == entries_.begin()) {
      return nullptr;
    }
    return &*std::prev(it);
  }

  // Payload at or before t; throws when the history starts after t.
  const Payload& query(double t) const {
    const Entry* e = query_entry(t);
    if (e == nullptr) {
      throw HistoryError("no entry at or before requested time");
    }
    return e->value;
  }

  const Entry& front() const { return require_nonempty(), entries_.front(); }
  const Entry& back() const { return require_nonempty(), entries_.back(); }
  const Payload& latest() const { return back().value; }
  Payload& latest_mutable() { require_nonempty(); return entries_.back().value; }
  double latest_time() const { return back().t; }

  // Drop every entry strictly newer than t.
  void truncate_after(double t) {
    while (!entries_.empty() && entries_.back().t > t) {
      entries_.pop_back();
    }
  }

  std::vector<Entry> entries_after(double t) const {
    std::vector<Entry> out;
    for (const Entry& e : entries_) {
      if (e.t > t) {
        out.push_back(e);
      }
    }
    return out;
  }

  void clear() { entries_.clear(); }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  void require_nonempty() const {
    if (entries_.empty()) {
      throw HistoryError("history is empty");
    }
  }

  void evict() {
    if (max_entries_ > 0) {
      while (entries_.size() > max_entries_) {
        entries_.pop_front();
      }
    }
    if (max_age_ > 0.0 && !entries_.empty()) {
      const double cutoff = entries_.back().t - max_age_;
      while (entries_.size() > 1 && entries_.front().t < cutoff) {
        entries_.pop_front();
      }
    }
  }

  std::deque<Entry> entries_;
  std::size_t max_entries_;
  double max_age_;
  OnEqual policy_;
};

}  // namespace meshnav::state
