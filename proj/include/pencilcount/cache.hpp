#pragma once

// Persistent JSON-lines store of computed invariants.

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>

#include <nlohmann/json.hpp>

#include "pencilcount/error.hpp"
#include "pencilcount/integer.hpp"

namespace pencilcount {

inline constexpr const char* kEngineVersion = "1.0.0";

/// Cached result. Quadric kinds (gw2, w2) use a and b; space kinds (gw3, w3)
/// use d. Unused numeric fields are absent and written as null.
struct InvariantRecord {
  std::string kind;
  std::optional<int> a;
  std::optional<int> b;
  std::optional<int> d;
  std::optional<int> l;
  Integer value;
  std::string convention;
  std::string version = kEngineVersion;

  using Key = std::tuple<std::string, int, int, int, int, std::string, std::string>;

  Key key() const {
    return {kind, a.value_or(-1), b.value_or(-1), d.value_or(-1), l.value_or(-1), convention, version};
  }

  /// Serializes with the fixed field order.
  std::string to_line() const {
    nlohmann::ordered_json j;
    auto opt = [](const std::optional<int>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr); };
    j["kind"] = kind;
    j["a"] = opt(a);
    j["b"] = opt(b);
    j["d"] = opt(d);
    j["l"] = opt(l);
    j["value"] = to_decimal(value);
    j["convention"] = convention;
    j["version"] = version;
    return j.dump();
  }

  static InvariantRecord from_line(const std::string& line) {
    const auto j = nlohmann::json::parse(line);
    auto opt = [&](const char* f) -> std::optional<int> {
      if (!j.contains(f) || j[f].is_null()) return std::nullopt;
      return j[f].get<int>();
    };
    InvariantRecord r;
    r.kind = j.at("kind").get<std::string>();
    r.a = opt("a");
    r.b = opt("b");
    r.d = opt("d");
    r.l = opt("l");
    r.value = from_decimal(j.at("value").get<std::string>());
    r.convention = j.at("convention").get<std::string>();
    r.version = j.at("version").get<std::string>();
    return r;
  }
};

/// In-memory map backed by an append-only file. Reads share a lock; writes
/// take it exclusively and hold an advisory file lock while appending, so
/// concurrent processes never interleave lines. Malformed lines are skipped.
class ResultCache {
 public:
  ResultCache() = default;

  explicit ResultCache(std::string path) : path_(std::move(path)) { load(); }

  const std::string& path() const { return path_; }
  bool persistent() const { return !path_.empty(); }

  std::optional<Integer> find(const InvariantRecord::Key& key) const {
    std::shared_lock lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void store(const InvariantRecord& r) {
    std::unique_lock lock(mu_);
    auto [it, fresh] = entries_.emplace(r.key(), r.value);
    if (!fresh) return;
    if (persistent()) append(r.to_line());
  }

  /// Drops the in-memory copy; the file is untouched.
  void clear_memory() {
    std::unique_lock lock(mu_);
    entries_.clear();
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return entries_.size();
  }

 private:
  void load() {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        auto r = InvariantRecord::from_line(line);
        entries_.emplace(r.key(), r.value);
      } catch (const std::exception&) {
        // foreign or truncated line
      }
    }
  }

  void append(const std::string& line) {
    const int fd = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
    if (fd < 0) throw InputError("cannot open cache file " + path_);
    ::flock(fd, LOCK_EX);
    const std::string out = line + "\n";
    const auto written = ::write(fd, out.data(), out.size());
    ::flock(fd, LOCK_UN);
    ::close(fd);
    if (written != static_cast<ssize_t>(out.size())) throw InputError("short write to cache file " + path_);
  }

  std::string path_;
  mutable std::shared_mutex mu_;
  std::map<InvariantRecord::Key, Integer> entries_;
};

}  // namespace pencilcount
