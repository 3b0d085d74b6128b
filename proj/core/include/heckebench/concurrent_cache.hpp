#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

namespace heckebench {

/// Sharded hash map safe for concurrent readers and writers.
///
/// Values are computed outside any lock, so a slow computation for one key never
/// blocks lookups or inserts for other keys. Two threads racing on the same
/// missing key may both compute it; the first insert wins.
template <class Key, class Value, class Hash = std::hash<Key>, std::size_t Shards = 16>
class ConcurrentCache {
 public:
  std::optional<Value> find(const Key& key) const {
    const Shard& s = shard(key);
    std::shared_lock lock(s.mutex);
    auto it = s.map.find(key);
    if (it == s.map.end()) return std::nullopt;
    return it->second;
  }

  template <class Compute>
  Value get_or_compute(const Key& key, Compute&& compute) {
    if (auto hit = find(key)) return *hit;
    Value v = compute();
    Shard& s = shard(key);
    std::unique_lock lock(s.mutex);
    return s.map.try_emplace(key, std::move(v)).first->second;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const Shard& s : shards_) {
      std::shared_lock lock(s.mutex);
      n += s.map.size();
    }
    return n;
  }

  void clear() {
    for (Shard& s : shards_) {
      std::unique_lock lock(s.mutex);
      s.map.clear();
    }
  }

 private:
  struct Shard {
    mutable std::shared_mutex mutex;
    std::unordered_map<Key, Value, Hash> map;
  };

  Shard& shard(const Key& key) { return shards_[Hash{}(key) % Shards]; }
  const Shard& shard(const Key& key) const { return shards_[Hash{}(key) % Shards]; }

  std::array<Shard, Shards> shards_;
};

}  // namespace heckebench
