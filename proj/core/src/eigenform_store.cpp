#include "heckebench/eigenform_store.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

#include "heckebench/errors.hpp"

namespace heckebench::forms {

namespace fs = std::filesystem;

void write_eigenform_file(const fs::path& path, int k, const std::vector<EigenformRecord>& forms) {
  const int N = forms.empty() ? 0 : forms.front().N;
  std::ostringstream tag;
  tag << std::this_thread::get_id();
  const fs::path tmp = path.string() + ".tmp" + tag.str();
  {
    std::ofstream out(tmp);
    if (!out) throw ParameterError("cannot write eigenform cache file " + tmp.string());
    out << kCacheMagic << '\n' << k << ' ' << N << ' ' << forms.size() << '\n';
    char buf[64];
    for (const auto& f : forms) {
      out << f.index;
      for (int n = 1; n <= N; ++n) {
        std::snprintf(buf, sizeof buf, " %.17g", f.a[n]);
        out << buf;
      }
      out << '\n';
    }
    if (!out) throw ParameterError("failed writing eigenform cache file " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::optional<std::vector<EigenformRecord>> read_eigenform_file(const fs::path& path, int k) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != kCacheMagic) return std::nullopt;
  int fk = 0, N = 0, dim = 0;
  if (!std::getline(in, line)) return std::nullopt;
  {
    std::istringstream hdr(line);
    if (!(hdr >> fk >> N >> dim) || fk != k || N < 0 || dim != cusp_dimension(k)) return std::nullopt;
  }
  std::vector<EigenformRecord> forms;
  for (int i = 0; i < dim; ++i) {
    if (!std::getline(in, line)) return std::nullopt;
    const char* p = line.data();
    const char* end = p + line.size();
    EigenformRecord rec;
    rec.k = k;
    rec.N = N;
    rec.a.assign(static_cast<std::size_t>(N) + 1, 0.0);
    auto r = std::from_chars(p, end, rec.index);
    if (r.ec != std::errc() || rec.index != i) return std::nullopt;
    p = r.ptr;
    for (int n = 1; n <= N; ++n) {
      while (p < end && *p == ' ') ++p;
      auto rr = std::from_chars(p, end, rec.a[n]);
      if (rr.ec != std::errc()) return std::nullopt;
      p = rr.ptr;
    }
    forms.push_back(std::move(rec));
  }
  return forms;
}

EigenformStore::EigenformStore(std::optional<fs::path> cache_dir) : dir_(std::move(cache_dir)) {}

EigenformStore& EigenformStore::global() {
  static EigenformStore store = [] {
    const char* env = std::getenv(kCacheEnvVar);
    return EigenformStore(env && *env ? std::optional<fs::path>(env) : std::nullopt);
  }();
  return store;
}

int EigenformStore::default_truncation(int k) {
  const int gl3 = 52 * k + 64;
  const int afe = static_cast<int>(0.1875 * k * k) + 64;
  return std::max({200, gl3, afe});
}

void EigenformStore::set_cache_dir(std::optional<fs::path> dir) {
  std::lock_guard lock(mutex_);
  dir_ = std::move(dir);
}

std::optional<fs::path> EigenformStore::cache_dir() const {
  std::lock_guard lock(mutex_);
  return dir_;
}

void EigenformStore::set_force_rebuild(bool force) {
  std::lock_guard lock(mutex_);
  force_rebuild_ = force;
  memory_.clear();
}

void EigenformStore::clear_memory() {
  std::lock_guard lock(mutex_);
  memory_.clear();
}

fs::path EigenformStore::cache_file(int k) const {
  const auto dir = cache_dir();
  if (!dir) return {};
  return *dir / ("eigenforms_k" + std::to_string(k) + ".txt");
}

std::optional<std::vector<EigenformRecord>> EigenformStore::load(int k, int min_N) const {
  const fs::path file = cache_file(k);
  if (file.empty()) return std::nullopt;
  auto forms = read_eigenform_file(file, k);
  if (!forms) return std::nullopt;
  if (!forms->empty() && forms->front().N < min_N) return std::nullopt;
  return forms;
}

void EigenformStore::save(int k, const std::vector<EigenformRecord>& forms) const {
  const fs::path file = cache_file(k);
  if (file.empty()) return;
  fs::create_directories(file.parent_path());
  write_eigenform_file(file, k, forms);
}

EigenformSet EigenformStore::get(int k, int min_N) {
  if (k < 4 || k % 2 != 0) throw DomainError("eigenforms need even weight >= 4");
  const int N = std::max(default_truncation(k), min_N);
  std::shared_ptr<std::mutex> weight_lock;
  bool force;
  {
    std::lock_guard lock(mutex_);
    auto it = memory_.find(k);
    if (it != memory_.end() && (it->second->empty() || it->second->front().N >= N)) return it->second;
    auto& slot = weight_locks_[k];
    if (!slot) slot = std::make_shared<std::mutex>();
    weight_lock = slot;
    force = force_rebuild_;
  }
  // One builder per weight; other weights proceed in parallel.
  std::lock_guard build(*weight_lock);
  {
    std::lock_guard lock(mutex_);
    auto it = memory_.find(k);
    if (it != memory_.end() && (it->second->empty() || it->second->front().N >= N)) return it->second;
  }
  std::optional<std::vector<EigenformRecord>> forms;
  if (!force) forms = load(k, N);
  if (!forms) {
    forms = hecke_eigenforms(k, N);
    save(k, *forms);
  }
  auto shared = std::make_shared<const std::vector<EigenformRecord>>(std::move(*forms));
  std::lock_guard lock(mutex_);
  memory_[k] = shared;
  return shared;
}

}  // namespace heckebench::forms
