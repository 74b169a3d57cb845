#include "coxinv/coxeter_matrix.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "coxinv/error.hpp"
#include "json.hpp"

namespace coxinv {

std::vector<int> members(Subset T) {
  std::vector<int> out;
  while (T) {
    out.push_back(std::countr_zero(T));
    T &= T - 1;
  }
  return out;
}

CoxeterMatrix::CoxeterMatrix(std::vector<std::string> generators,
                             std::vector<std::vector<int>> entries)
    : names_(std::move(generators)) {
  const int n = rank();
  if (n == 0) fail(ErrorKind::SchemaError, "empty generator list");
  if (n > kMaxRank) fail(ErrorKind::SchemaError, "rank above 32 is not supported");
  std::set<std::string> seen;
  for (const auto& g : names_) {
    if (g.empty()) fail(ErrorKind::SchemaError, "empty generator name");
    if (!seen.insert(g).second) fail(ErrorKind::SchemaError, "duplicate generator '" + g + "'");
  }
  if (static_cast<int>(entries.size()) != n)
    fail(ErrorKind::SchemaError, "coxeter_matrix must have one row per generator");
  for (const auto& row : entries)
    if (static_cast<int>(row.size()) != n)
      fail(ErrorKind::SchemaError, "coxeter_matrix rows must have one entry per generator");
  entries_.resize(n * n);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      const int v = entries[s][t];
      if (s == t) {
        if (v != 1)
          fail(ErrorKind::DiagonalError, "m(" + names_[s] + "," + names_[s] + ") must be 1");
      } else {
        if (v != entries[t][s])
          fail(ErrorKind::AsymmetryError,
               "m(" + names_[s] + "," + names_[t] + ") != m(" + names_[t] + "," + names_[s] + ")");
        if (v != kInf && v < 2)
          fail(ErrorKind::BadEntry,
               "m(" + names_[s] + "," + names_[t] + ") must be >= 2 or inf");
      }
      entries_[s * n + t] = v;
    }
  }
}

int CoxeterMatrix::index_of(std::string_view generator) const {
  for (int s = 0; s < rank(); ++s)
    if (names_[s] == generator) return s;
  fail(ErrorKind::UnknownGenerator, "unknown generator '" + std::string(generator) + "'");
}

bool CoxeterMatrix::right_angled() const {
  for (int s = 0; s < rank(); ++s)
    for (int t = s + 1; t < rank(); ++t)
      if (m(s, t) != 2 && m(s, t) != kInf) return false;
  return true;
}

CoxeterMatrix CoxeterMatrix::restrict_to(Subset T) const {
  const auto idx = members(T);
  std::vector<std::string> names;
  std::vector<std::vector<int>> entries;
  for (int s : idx) {
    names.push_back(names_[s]);
    std::vector<int> row;
    for (int t : idx) row.push_back(m(s, t));
    entries.push_back(std::move(row));
  }
  return CoxeterMatrix(std::move(names), std::move(entries));
}

std::string CoxeterMatrix::canonical_text() const {
  std::ostringstream out;
  out << "rank " << rank() << "\n";
  for (const auto& g : names_) out << g << "\n";
  for (int s = 0; s < rank(); ++s) {
    for (int t = 0; t < rank(); ++t) {
      if (t) out << ' ';
      if (infinite(s, t))
        out << "inf";
      else
        out << m(s, t);
    }
    out << "\n";
  }
  return out.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kDigits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::string CoxeterMatrix::digest() const { return hex64(fnv1a64(canonical_text())); }

std::string CoxeterMatrix::format_subset(Subset T) const {
  std::string out = "{";
  bool first = true;
  for (int s : members(T)) {
    if (!first) out += ",";
    out += names_.at(s);
    first = false;
  }
  return out + "}";
}

namespace {

int parse_entry(const nlohmann::json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "∞") return kInf;
    fail(ErrorKind::BadEntry, "unrecognised matrix entry '" + s + "'");
  }
  if (v.is_number_integer()) {
    const auto x = v.get<long long>();
    if (x < 1 || x > 1'000'000) {
      if (x == 0 || x < 0) fail(ErrorKind::BadEntry, "matrix entries must be positive or 'inf'");
      fail(ErrorKind::BadEntry, "matrix entry too large");
    }
    return static_cast<int>(x);
  }
  fail(ErrorKind::SchemaError, "matrix entries must be integers or \"inf\"");
}

const nlohmann::json* find_key(const nlohmann::json& doc, const char* a, const char* b) {
  if (doc.contains(a)) return &doc.at(a);
  if (doc.contains(b)) return &doc.at(b);
  return nullptr;
}

}  // namespace

CoxeterMatrix parse_coxeter_matrix(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::SchemaError, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::SchemaError, "input must be a JSON object");
  const auto* gens = find_key(doc, "generators", "gens");
  const auto* mat = find_key(doc, "coxeter_matrix", "m");
  if (!gens) fail(ErrorKind::SchemaError, "missing field 'generators'");
  if (!mat) fail(ErrorKind::SchemaError, "missing field 'coxeter_matrix'");
  if (!gens->is_array()) fail(ErrorKind::SchemaError, "'generators' must be a list of strings");
  if (!mat->is_array()) fail(ErrorKind::SchemaError, "'coxeter_matrix' must be a list of rows");
  std::vector<std::string> names;
  for (const auto& g : *gens) {
    if (!g.is_string()) fail(ErrorKind::SchemaError, "'generators' must be a list of strings");
    names.push_back(g.get<std::string>());
  }
  std::vector<std::vector<int>> entries;
  for (const auto& row : *mat) {
    if (!row.is_array()) fail(ErrorKind::SchemaError, "'coxeter_matrix' rows must be lists");
    std::vector<int> r;
    for (const auto& v : row) r.push_back(parse_entry(v));
    entries.push_back(std::move(r));
  }
  return CoxeterMatrix(std::move(names), std::move(entries));
}

namespace systems {

CoxeterMatrix infinite_dihedral() { return CoxeterMatrix({"s", "t"}, {{1, kInf}, {kInf, 1}}); }

CoxeterMatrix dihedral(int m) { return CoxeterMatrix({"s", "t"}, {{1, m}, {m, 1}}); }

CoxeterMatrix triangle(int mab, int mbc, int mac) {
  return CoxeterMatrix({"a", "b", "c"}, {{1, mab, mac}, {mab, 1, mbc}, {mac, mbc, 1}});
}

CoxeterMatrix right_angled(int rank, const std::vector<std::pair<int, int>>& commuting) {
  std::vector<std::string> names;
  for (int i = 0; i < rank; ++i) names.push_back("s" + std::to_string(i + 1));
  std::vector<std::vector<int>> m(rank, std::vector<int>(rank, kInf));
  for (int i = 0; i < rank; ++i) m[i][i] = 1;
  for (auto [a, b] : commuting) m[a][b] = m[b][a] = 2;
  return CoxeterMatrix(std::move(names), std::move(m));
}

CoxeterMatrix right_angled_polygon(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return right_angled(n, edges);
}

}  // namespace systems

}  // namespace coxinv
