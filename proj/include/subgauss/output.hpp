#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "subgauss/regions.hpp"

namespace subgauss {

/// 17 significant digits, '.' decimal point, "nan"/"inf"/"-inf" for
/// non-finite values.
std::string format_number(double x);

/// Flat ordered key/value record printed either as a JSON object or as
/// "key = value" lines.
class OutputRecord {
 public:
  using Value = std::variant<double, long long, bool, std::string>;

  OutputRecord& add(std::string key, double v);
  OutputRecord& add(std::string key, long long v);
  OutputRecord& add(std::string key, long v) { return add(std::move(key), static_cast<long long>(v)); }
  OutputRecord& add(std::string key, int v) { return add(std::move(key), static_cast<long long>(v)); }
  OutputRecord& add(std::string key, bool v);
  OutputRecord& add(std::string key, std::string v);
  OutputRecord& add(std::string key, const char* v) { return add(std::move(key), std::string(v)); }

  const std::vector<std::pair<std::string, Value>>& fields() const noexcept { return fields_; }

  /// Non-finite doubles become null.
  std::string to_json() const;
  std::string to_text() const;

 private:
  std::vector<std::pair<std::string, Value>> fields_;
};

/// Header p1,p2,residual,status; unsolved rows keep p1 and leave p2 and
/// residual empty.
void write_curve_csv(std::ostream& os, const BoundaryCurve& curve);

}  // namespace subgauss
