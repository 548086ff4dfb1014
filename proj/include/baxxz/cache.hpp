#pragma once

#include <optional>
#include <string>

#include "baxxz/common.hpp"

namespace baxxz {

// On-disk memo for per-point evaluation records.  Keys are canonical
// parameter strings; values are serialized records (JSON text).  Each entry
// is one file named by a stable 64-bit hash of the key, written via a
// temporary file plus rename so concurrent writers never expose partial
// records.  The key itself is stored inside the record file and checked on
// read, so hash collisions degrade to cache misses instead of wrong data.
class EvalCache {
 public:
  // Root precedence: explicit dir, then $BAXXZ_CACHE_DIR, then
  // <out_dir>/cache when out_dir is non-empty, else ".baxxz-cache".
  explicit EvalCache(std::string dir = "", std::string out_dir = "");

  const std::string& root() const { return root_; }

  std::optional<std::string> get(const std::string& key) const;
  void put(const std::string& key, const std::string& value) const;

 private:
  std::string root_;
  std::string path_for(const std::string& key) const;
};

// FNV-1a, the stable hash behind cache filenames (exposed for tests).
std::uint64_t stable_hash(const std::string& s);

}  // namespace baxxz
