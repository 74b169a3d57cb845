#include "coxinv/enumeration_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "coxinv/error.hpp"

namespace coxinv {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtoull(s.c_str(), &end, 10);
  return end && *end == '\0';
}

bool parse_int(const std::string& s, int& out) {
  std::uint64_t v;
  if (!parse_u64(s, v) || v > 1'000'000) return false;
  out = static_cast<int>(v);
  return true;
}

}  // namespace

std::string encode_record(const std::string& digest, const SphereCounts& counts) {
  std::ostringstream body;
  body << "entry|" << digest << '|' << counts.radius << '|' << counts.source << '|'
       << (counts.exhausted ? 1 : 0) << '|' << counts.num_classes << '|';
  const auto totals = counts.totals();
  for (std::size_t len = 0; len < counts.by_length.size(); ++len) {
    if (len) body << ';';
    body << len << ',' << totals[len] << ',';
    bool first = true;
    for (const auto& [type, n] : counts.by_length[len]) {
      if (!first) body << '/';
      first = false;
      for (std::size_t i = 0; i < type.size(); ++i) body << (i ? "." : "") << type[i];
      body << ':' << n;
    }
  }
  const std::string b = body.str();
  return b + '|' + hex64(fnv1a64(b));
}

std::optional<std::pair<std::string, SphereCounts>> decode_record(const std::string& line) {
  const auto bar = line.rfind('|');
  if (bar == std::string::npos) return std::nullopt;
  const std::string body = line.substr(0, bar);
  if (hex64(fnv1a64(body)) != line.substr(bar + 1)) return std::nullopt;
  const auto f = split(body, '|');
  if (f.size() != 7 || f[0] != "entry") return std::nullopt;
  SphereCounts sc;
  if (!parse_int(f[2], sc.radius) || !parse_int(f[5], sc.num_classes)) return std::nullopt;
  sc.source = f[3];
  if (f[4] != "0" && f[4] != "1") return std::nullopt;
  sc.exhausted = f[4] == "1";
  for (const auto& rec : split(f[6], ';')) {
    const auto parts = split(rec, ',');
    if (parts.size() != 3) return std::nullopt;
    int len;
    std::uint64_t total, sum = 0;
    if (!parse_int(parts[0], len) || len != static_cast<int>(sc.by_length.size()) ||
        !parse_u64(parts[1], total))
      return std::nullopt;
    std::map<std::vector<int>, std::uint64_t> layer;
    if (!parts[2].empty()) {
      for (const auto& tc : split(parts[2], '/')) {
        const auto kv = split(tc, ':');
        if (kv.size() != 2) return std::nullopt;
        std::vector<int> type;
        for (const auto& x : split(kv[0], '.')) {
          int v;
          if (!parse_int(x, v)) return std::nullopt;
          type.push_back(v);
        }
        std::uint64_t n;
        if (static_cast<int>(type.size()) != sc.num_classes || !parse_u64(kv[1], n)) return std::nullopt;
        layer[type] = n;
        sum += n;
      }
    }
    if (sum != total) return std::nullopt;
    sc.by_length.push_back(std::move(layer));
  }
  if (static_cast<int>(sc.by_length.size()) != sc.radius + 1) return std::nullopt;
  return std::make_pair(f[1], std::move(sc));
}

EnumerationCache::EnumerationCache(std::filesystem::path directory) : directory_(std::move(directory)) {}

std::optional<std::filesystem::path> EnumerationCache::directory_from_environment() {
  if (const char* v = std::getenv("COXINV_CACHE_DIR"); v && *v) return std::filesystem::path(v);
  return std::nullopt;
}

void EnumerationCache::load() {
  loaded_ = true;
  records_.clear();
  corrupt_ = false;
  std::ifstream in(file());
  if (!in) return;
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    corrupt_ = true;
    return;
  }
  std::vector<Record> recs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto r = decode_record(line);
    if (!r) {
      corrupt_ = true;
      return;
    }
    recs.push_back(Record{std::move(r->first), std::move(r->second)});
  }
  records_ = std::move(recs);
}

std::optional<SphereCounts> EnumerationCache::lookup(const std::string& digest, int radius,
                                                     const std::string& source) {
  load();
  if (corrupt_) return std::nullopt;
  for (const auto& r : records_)
    if (r.digest == digest && r.counts.radius == radius && r.counts.source == source) return r.counts;
  return std::nullopt;
}

void EnumerationCache::store(const std::string& digest, const SphereCounts& counts) {
  if (!loaded_) load();
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  const bool fresh = corrupt_ || !std::filesystem::exists(file());
  std::ofstream out(file(), fresh ? std::ios::trunc : std::ios::app);
  if (!out) return;  // caching is best effort
  if (fresh) out << kHeader << '\n';
  out << encode_record(digest, counts) << '\n';
  if (fresh) {
    records_.clear();
    corrupt_ = false;
  }
  records_.push_back(Record{digest, counts});
}

}  // namespace coxinv
