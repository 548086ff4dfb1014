#include "baxxz/cache.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace baxxz {

std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

EvalCache::EvalCache(std::string dir, std::string out_dir) {
  if (dir.empty()) {
    if (const char* env = std::getenv("BAXXZ_CACHE_DIR"); env && *env)
      dir = env;
    else if (!out_dir.empty())
      dir = (fs::path(out_dir) / "cache").string();
    else
      dir = ".baxxz-cache";
  }
  root_ = dir;
  fs::create_directories(root_);
}

std::string EvalCache::path_for(const std::string& key) const {
  char name[24];
  std::snprintf(name, sizeof name, "%016llx",
                static_cast<unsigned long long>(stable_hash(key)));
  return (fs::path(root_) / (std::string(name) + ".json")).string();
}

std::optional<std::string> EvalCache::get(const std::string& key) const {
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  // Records open with {"key":"<key>", so a prefix check guards against
  // hash collisions without a JSON parse.
  std::string expect = "{\"key\":\"";
  for (char ch : key) {
    if (ch == '"' || ch == '\\') expect += '\\';
    expect += ch;
  }
  expect += '"';
  if (text.compare(0, expect.size(), expect) != 0) return std::nullopt;
  const auto pos = text.find(",\"value\":");
  if (pos == std::string::npos) return std::nullopt;
  // The value is stored as raw JSON text between marker and closing brace.
  const auto start = pos + 9;
  if (text.size() < start + 1 || text.back() != '}') return std::nullopt;
  return text.substr(start, text.size() - start - 1);
}

void EvalCache::put(const std::string& key, const std::string& value) const {
  std::string record = "{\"key\":\"";
  for (char ch : key) {
    if (ch == '"' || ch == '\\') record += '\\';
    record += ch;
  }
  record += "\",\"value\":";
  record += value;
  record += '}';

  static std::atomic<std::uint64_t> counter{0};
  const std::string final_path = path_for(key);
  std::ostringstream tmp_name;
  tmp_name << final_path << ".tmp." << ::getpid() << "."
           << counter.fetch_add(1);
  {
    std::ofstream out(tmp_name.str(), std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cache: cannot open " + tmp_name.str());
    out << record;
    if (!out) throw Error("cache: short write to " + tmp_name.str());
  }
  std::error_code ec;
  fs::rename(tmp_name.str(), final_path, ec);
  if (ec) {
    fs::remove(tmp_name.str(), ec);
    throw Error("cache: rename failed for " + final_path);
  }
}

}  // namespace baxxz
