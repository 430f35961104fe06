#pragma once

// Append-only key/value cache file, one "key<TAB>value" line per entry.
// Unreadable or malformed lines are skipped; the last entry for a key wins.

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace dpcob {

inline constexpr const char* kCacheEnv = "DPCOB_CACHE";

class Cache {
 public:
  explicit Cache(std::string path) : path_(std::move(path)) { load(); }

  /// Path from the explicit flag, else from the environment; nullopt disables caching.
  static std::optional<std::string> resolve_path(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv(kCacheEnv); env && *env) return std::string(env);
    return std::nullopt;
  }

  const std::string& path() const { return path_; }

  std::optional<std::string> get(const std::string& key) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  /// Records the entry in memory and appends it to the file; write failures are ignored.
  void put(const std::string& key, const std::string& value) {
    if (!valid(key) || !valid(value)) return;
    std::lock_guard lock(mutex_);
    entries_[key] = value;
    const bool newline = ends_unterminated();
    std::ofstream out(path_, std::ios::app);
    if (out) out << (newline ? "\n" : "") << key << '\t' << value << '\n';
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
  }

 private:
  static bool valid(const std::string& s) { return !s.empty() && s.find_first_of("\t\n\r") == std::string::npos; }

  bool ends_unterminated() const {
    std::ifstream in(path_, std::ios::binary | std::ios::ate);
    if (!in || in.tellg() <= 0) return false;
    in.seekg(-1, std::ios::end);
    return in.get() != '\n';
  }

  void load() {
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      const auto tab = line.find('\t');
      if (tab == std::string::npos) continue;
      std::string key = line.substr(0, tab), value = line.substr(tab + 1);
      if (valid(key) && valid(value)) entries_[std::move(key)] = std::move(value);
    }
  }

  std::string path_;
  std::map<std::string, std::string> entries_;
  mutable std::mutex mutex_;
};

}  // namespace dpcob
