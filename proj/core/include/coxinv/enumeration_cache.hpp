#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "coxinv/enumeration.hpp"

namespace coxinv {

/// Append-only record file of sphere counts keyed by (matrix digest, radius,
/// source). Every record carries a checksum; a file with a bad header or any
/// bad record is ignored as a whole and rewritten on the next store.
class EnumerationCache {
 public:
  static constexpr const char* kHeader = "coxinv-enumeration-cache 1";
  static constexpr const char* kFileName = "enumeration.cache";

  explicit EnumerationCache(std::filesystem::path directory);

  /// $COXINV_CACHE_DIR when set.
  static std::optional<std::filesystem::path> directory_from_environment();

  std::optional<SphereCounts> lookup(const std::string& digest, int radius, const std::string& source);
  void store(const std::string& digest, const SphereCounts& counts);

  /// True when the last read found a corrupt file.
  bool corrupt() const { return corrupt_; }
  std::filesystem::path file() const { return directory_ / kFileName; }

 private:
  struct Record {
    std::string digest;
    SphereCounts counts;
  };
  void load();

  std::filesystem::path directory_;
  std::vector<Record> records_;
  bool loaded_ = false;
  bool corrupt_ = false;
};

std::string encode_record(const std::string& digest, const SphereCounts& counts);
/// nullopt when the line is malformed or its checksum does not match.
std::optional<std::pair<std::string, SphereCounts>> decode_record(const std::string& line);

}  // namespace coxinv
