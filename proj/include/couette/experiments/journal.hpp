#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <string>

#include <json.hpp>

namespace couette::experiments {

// Append-only JSON-lines log of finished runs, keyed by run hash. A scan that
// is re-invoked skips every hash already present. A torn last line (from an
// interrupted write) is ignored on load.
class Journal {
 public:
  explicit Journal(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }
  bool contains(const std::string& hash) const;
  // The stored row for a hash; throws InvalidArgument when absent.
  nlohmann::json row(const std::string& hash) const;
  std::size_t size() const;

  // Thread safe; the line is flushed before returning.
  void append(const std::string& hash, const nlohmann::json& row);

 private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::map<std::string, nlohmann::json> rows_;
};

// COUETTE_WORKERS when set to a positive integer, otherwise the hardware
// concurrency (at least 1).
int worker_count();

// Calls task(i) for i in [0, n) on up to `width` threads. Exceptions escaping
// a task are rethrown after all tasks finish (the first one by index).
void parallel_for(std::size_t n, int width, const std::function<void(std::size_t)>& task);

}  // namespace couette::experiments
