// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace spider {

// One keyed collection of opaque records. Insertion order is preserved so
// scans are deterministic; a hash index keeps point lookups O(1).
class StoreCollection {
 public:
  std::optional<std::string> get(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return entries_[it->second].second;
  }

  bool contains(const std::string& key) const { return index_.count(key) != 0; }

  // Inserts or overwrites. Overwrite keeps the original position.
  void put(const std::string& key, std::string value) {
    auto it = index_.find(key);
    if (it != index_.end()) {
      entries_[it->second].second = std::move(value);
      return;
    }
    index_.emplace(key, entries_.size());
    entries_.emplace_back(key, std::move(value));
  }

  // Returns false when the key was absent.
  bool erase(const std::string& key) {
    auto it = index_.find(key);
    if (it == index_.end()) return false;
    size_t pos = it->second;
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(pos));
    index_.erase(it);
    for (auto& [k, p] : index_) {
      if (p > pos) --p;
    }
    return true;
  }

  size_t size() const { return entries_.size(); }

  // Visits records in insertion order.
  template <typename F>
  void scan(F&& fn) const {
    for (const auto& [k, v] : entries_) fn(k, v);
  }

  void clear() {
    entries_.clear();
    index_.clear();
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::unordered_map<std::string, size_t> index_;
};

// Keyed state shared by the services of one controller instance. Access
// control against declared read/write sets lives in HandlerContext; the
// store itself only holds data.
class StateStore {
 public:
  StoreCollection& object(const std::string& id) { return objects_[id]; }

  const StoreCollection* find(const std::string& id) const {
    auto it = objects_.find(id);
    return it == objects_.end() ? nullptr : &it->second;
  }

  // Empties every collection; the set of known object ids is irrelevant
  // afterwards since collections are created lazily.
  void reset() { objects_.clear(); }

 private:
  // Ordered map so any iteration over objects is deterministic.
  std::map<std::string, StoreCollection> objects_;
};

}  // namespace spider
