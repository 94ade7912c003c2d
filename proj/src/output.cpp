#include "subgauss/output.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

namespace subgauss {
namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<unsigned>(c));
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  // fmt is locale-independent unless asked otherwise
  return fmt::format("{:.17g}", x);
}

OutputRecord& OutputRecord::add(std::string key, double v) {
  fields_.emplace_back(std::move(key), v);
  return *this;
}

OutputRecord& OutputRecord::add(std::string key, long long v) {
  fields_.emplace_back(std::move(key), v);
  return *this;
}

OutputRecord& OutputRecord::add(std::string key, bool v) {
  fields_.emplace_back(std::move(key), v);
  return *this;
}

OutputRecord& OutputRecord::add(std::string key, std::string v) {
  fields_.emplace_back(std::move(key), std::move(v));
  return *this;
}

std::string OutputRecord::to_json() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, value] : fields_) {
    if (!first) out += ", ";
    first = false;
    out += '"' + json_escape(key) + "\": ";
    if (const double* d = std::get_if<double>(&value)) {
      out += std::isfinite(*d) ? format_number(*d) : "null";
    } else if (const long long* i = std::get_if<long long>(&value)) {
      out += fmt::format("{}", *i);
    } else if (const bool* b = std::get_if<bool>(&value)) {
      out += *b ? "true" : "false";
    } else {
      out += '"' + json_escape(std::get<std::string>(value)) + '"';
    }
  }
  out += "}\n";
  return out;
}

std::string OutputRecord::to_text() const {
  std::string out;
  for (const auto& [key, value] : fields_) {
    out += key + " = ";
    if (const double* d = std::get_if<double>(&value)) {
      out += format_number(*d);
    } else if (const long long* i = std::get_if<long long>(&value)) {
      out += fmt::format("{}", *i);
    } else if (const bool* b = std::get_if<bool>(&value)) {
      out += *b ? "true" : "false";
    } else {
      out += std::get<std::string>(value);
    }
    out += '\n';
  }
  return out;
}

void write_curve_csv(std::ostream& os, const BoundaryCurve& curve) {
  std::string buf = "p1,p2,residual,status\n";
  for (const auto& pt : curve.points) {
    if (pt.solved) {
      buf += fmt::format("{},{},{},ok\n", format_number(pt.p1), format_number(pt.p2), format_number(pt.residual));
    } else {
      buf += fmt::format("{},,,unsolved\n", format_number(pt.p1));
    }
  }
  os << buf;
}

}  // namespace subgauss
