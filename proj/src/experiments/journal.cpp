#include "couette/experiments/journal.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <thread>
#include <vector>

#include "couette/core/error.hpp"

namespace couette::experiments {

namespace fs = std::filesystem;
using nlohmann::json;

Journal::Journal(fs::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json entry = json::parse(line, nullptr, false);
    if (entry.is_discarded() || !entry.contains("hash") || !entry.contains("row")) continue;
    rows_[entry["hash"].get<std::string>()] = entry["row"];
  }
}

bool Journal::contains(const std::string& hash) const {
  std::lock_guard lock(mutex_);
  return rows_.count(hash) > 0;
}

json Journal::row(const std::string& hash) const {
  std::lock_guard lock(mutex_);
  auto it = rows_.find(hash);
  if (it == rows_.end()) throw InvalidArgument("journal: no entry for " + hash);
  return it->second;
}

std::size_t Journal::size() const {
  std::lock_guard lock(mutex_);
  return rows_.size();
}

void Journal::append(const std::string& hash, const json& row) {
  std::lock_guard lock(mutex_);
  if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
  // A torn line left by an interrupted writer must not swallow this one.
  bool needs_newline = false;
  if (fs::exists(path_) && fs::file_size(path_) > 0) {
    std::ifstream in(path_, std::ios::binary);
    in.seekg(-1, std::ios::end);
    needs_newline = in.get() != '\n';
  }
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (needs_newline) out << '\n';
  out << json{{"hash", hash}, {"row", row}}.dump() << '\n';
  out.flush();
  if (!out) throw IoError("journal: cannot append to " + path_.string());
  rows_[hash] = row;
}

int worker_count() {
  if (const char* env = std::getenv("COUETTE_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int width, const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, width)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace couette::experiments
