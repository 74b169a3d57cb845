#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coxinv/building.hpp"
#include "coxinv/coxeter_matrix.hpp"
#include "coxinv/hyperbolic.hpp"
#include "coxinv/measured.hpp"

namespace coxinv {

std::string_view version();

/// The input document: the Coxeter matrix plus optional `thickness`
/// (generator -> integer), `lambda` (number or "bourdon") and
/// `apartment_confdim`.
struct InputDocument {
  CoxeterMatrix matrix;
  std::optional<ThicknessVector> thickness;
  std::optional<VisualParameter> lambda;
  std::optional<double> apartment_confdim;
};

InputDocument parse_input(std::string_view text);
/// SchemaError when the file cannot be read.
InputDocument load_input(const std::filesystem::path& file);

/// "3/2", "2.5", "7" as exact rationals (BadEntry otherwise).
Rational parse_rational(std::string_view text);
/// Comma separated list of rationals.
std::vector<Rational> parse_p_grid(std::string_view text);
/// A number > 1 or "bourdon".
VisualParameter parse_lambda(std::string_view text);

/// A tree of report values. Every real number is a Measured.
struct ReportValue {
  enum class Kind { Null, Bool, Integer, Text, Number, List, Record };
  Kind kind = Kind::Null;
  bool flag = false;
  std::int64_t integer = 0;
  std::string text;
  Measured number;
  std::vector<ReportValue> items;
  std::vector<std::pair<std::string, ReportValue>> fields;

  static ReportValue boolean(bool b);
  static ReportValue integral(std::int64_t i);
  static ReportValue string(std::string s);
  static ReportValue real(Measured m);
  static ReportValue list(std::vector<ReportValue> items = {});
  static ReportValue record();

  /// Record only: appends a field.
  ReportValue& add(std::string key, ReportValue v);
  const ReportValue* find(std::string_view key) const;

  friend bool operator==(const ReportValue&, const ReportValue&) = default;
};

struct InvariantReport {
  /// Top-level sections in output order.
  ReportValue root = ReportValue::record();

  std::string to_text() const;
  /// JSON with the stable key names documented in the README.
  std::string to_machine() const;
  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

/// Inverse of to_machine (SchemaError on malformed text).
InvariantReport parse_machine(std::string_view text);

struct ReportOptions {
  /// Enumeration depth for the fit and the partial sums.
  int depth = 20;
  /// Oracle radius; the report runs the oracle only when set.
  std::optional<int> radius;
  std::vector<Rational> p_grid{Rational(3, 2), Rational(2), Rational(9, 4), Rational(5, 2),
                               Rational(11, 4), Rational(3), Rational(4)};
  std::optional<VisualParameter> lambda;
  std::optional<double> apartment_confdim;
  std::optional<std::filesystem::path> cache_dir;
  EnumerationLimits limits = EnumerationLimits::from_environment();
  int oracle_trials = 1000;
  bool timings = false;
};

ReportValue cmd_classify(const InputDocument& in, const ReportOptions& opts = {});
ReportValue cmd_nerve(const InputDocument& in, const ReportOptions& opts = {});
ReportValue cmd_growth(const InputDocument& in, const ReportOptions& opts = {});
ReportValue cmd_exponents(const InputDocument& in, const ReportOptions& opts = {});
ReportValue cmd_confdim(const InputDocument& in, const ReportOptions& opts = {});
ReportValue cmd_verify_oracle(const InputDocument& in, const ReportOptions& opts = {});

/// All sections; a section whose preconditions fail (not hyperbolic, not
/// right-angled, thin, ...) is recorded as skipped with the reason.
InvariantReport cmd_report(const InputDocument& in, const ReportOptions& opts = {});

/// Wraps a single section as a report.
InvariantReport single_section(const InputDocument& in, std::string name, ReportValue section);

}  // namespace coxinv
