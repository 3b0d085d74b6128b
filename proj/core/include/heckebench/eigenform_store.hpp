#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "heckebench/forms.hpp"

namespace heckebench::forms {

using EigenformSet = std::shared_ptr<const std::vector<EigenformRecord>>;

/// Environment variable naming the default eigenform cache directory.
inline constexpr const char* kCacheEnvVar = "HECKEBENCH_CACHE_DIR";
/// First line of every cache file; anything else triggers a rebuild.
inline constexpr const char* kCacheMagic = "# heckebench-eigenforms v1";

/// Thread-safe, memoizing source of Hecke eigenbases with an optional on-disk
/// cache (one file per weight, written atomically).
class EigenformStore {
 public:
  explicit EigenformStore(std::optional<std::filesystem::path> cache_dir = std::nullopt);

  /// Process-wide store, cache directory taken from HECKEBENCH_CACHE_DIR if set.
  static EigenformStore& global();

  /// Default truncation for weight k: enough for the L-value and moment routines.
  static int default_truncation(int k);

  /// Eigenforms of weight k with at least max(default_truncation(k), min_N) coefficients.
  EigenformSet get(int k, int min_N = 0);

  void set_cache_dir(std::optional<std::filesystem::path> dir);
  std::optional<std::filesystem::path> cache_dir() const;
  /// When set, ignore existing cache files (they are still rewritten).
  void set_force_rebuild(bool force);
  void clear_memory();

  std::filesystem::path cache_file(int k) const;

 private:
  std::optional<std::vector<EigenformRecord>> load(int k, int min_N) const;
  void save(int k, const std::vector<EigenformRecord>& forms) const;

  mutable std::mutex mutex_;
  std::map<int, std::shared_ptr<std::mutex>> weight_locks_;
  std::map<int, EigenformSet> memory_;
  std::optional<std::filesystem::path> dir_;
  bool force_rebuild_ = false;
};

/// Writes / reads the cache format: magic line, "k N dim", then "index a(1) .. a(N)".
void write_eigenform_file(const std::filesystem::path& path, int k,
                          const std::vector<EigenformRecord>& forms);
std::optional<std::vector<EigenformRecord>> read_eigenform_file(const std::filesystem::path& path,
                                                                int k);

}  // namespace heckebench::forms
