#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <system_error>

namespace renorm {

/// Bumped whenever a recursion, normalization or table changes, so stale cache entries
/// are never reused.
inline constexpr const char* kEngineVersion = "engines-3: 1d hmm fat 2d, corrected tables x5, fat sqrt2";

/// FNV-1a, 64 bit, as lowercase hex.
inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

inline std::string engine_hash() { return fnv1a_hex(kEngineVersion); }

/// File cache under $RENORM_CACHE_DIR. Entries are written to a unique temporary file and
/// renamed into place, so concurrent readers only ever see complete files.
class DiskCache {
 public:
  static std::optional<DiskCache> from_env() {
    const char* dir = std::getenv("RENORM_CACHE_DIR");
    if (!dir || !*dir) return std::nullopt;
    return DiskCache(dir);
  }

  explicit DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(const std::string& key) const {
    return dir_ / (fnv1a_hex(key) + "-" + engine_hash() + ".json");
  }

  std::optional<std::string> load(const std::string& key) const {
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void store(const std::string& key, const std::string& value) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    std::random_device rd;
    auto tmp = dir_ / (".tmp-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) return;  // an unwritable cache is not an error
      out << value;
    }
    std::filesystem::rename(tmp, path_for(key), ec);
    if (ec) std::filesystem::remove(tmp, ec);
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace renorm
