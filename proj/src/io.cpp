#include "takagi/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace takagi::io {

namespace {

void putLE64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> buf{};
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(buf.data(), 8);
}

bool getLE64(std::istream& is, std::uint64_t& v) {
  std::array<unsigned char, 8> buf{};
  is.read(reinterpret_cast<char*>(buf.data()), 8);
  if (is.gcount() == 0) return false;
  if (is.gcount() != 8) throw std::runtime_error("truncated raw stream");
  v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
  return true;
}

nlohmann::json jsonNumber(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

}  // namespace

std::string formatDouble(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void writeGridCsv(std::ostream& os, int level, const Eigen::VectorXd& values) {
  os << "k,t,value\n";
  for (Eigen::Index k = 0; k < values.size(); ++k)
    os << k << ',' << formatDouble(std::ldexp(static_cast<double>(k), -level)) << ','
       << formatDouble(values[k]) << '\n';
}

void writeIncrementsCsvHeader(std::ostream& os) { os << "k,t,d\n"; }

void writeIncrementsCsvRows(std::ostream& os, int level, std::uint64_t first,
                            std::span<const double> d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    const std::uint64_t k = first + i;
    os << k << ',' << formatDouble(std::ldexp(static_cast<double>(k), -level)) << ','
       << formatDouble(d[i]) << '\n';
  }
}

void writeRawHeader(std::ostream& os, int level) { putLE64(os, static_cast<std::uint64_t>(level)); }

void writeRawValues(std::ostream& os, std::span<const double> values) {
  for (double v : values) putLE64(os, std::bit_cast<std::uint64_t>(v));
}

RawData readRaw(std::istream& is) {
  RawData out;
  std::uint64_t word = 0;
  if (!getLE64(is, word)) throw std::runtime_error("empty raw stream");
  out.level = static_cast<int>(word);
  while (getLE64(is, word)) out.values.push_back(std::bit_cast<double>(word));
  return out;
}

void writeVariationCsv(std::ostream& os, const VariationReport& r) {
  os << "n,V_n,predicted_limit,regime\n";
  for (const auto& l : r.levels)
    os << l.n << ',' << formatDouble(l.vn) << ',' << formatDouble(r.predicted_limit) << ','
       << toString(r.regime) << '\n';
}

nlohmann::json toJson(const VariationReport& r) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : r.levels) levels.push_back({{"n", l.n}, {"V_n", l.vn}});
  return {{"H", r.H},
          {"p", r.p},
          {"t", r.t},
          {"levels", levels},
          {"predicted_limit", jsonNumber(r.predicted_limit)},
          {"predicted_limit_error", r.predicted_limit_error},
          {"regime", toString(r.regime)}};
}

nlohmann::json momentJson(double lambda, int p, const MomentValue& m) {
  nlohmann::json j = {{"lambda", lambda},
                      {"p", p},
                      {"value", m.value},
                      {"exact", m.exact.has_value()},
                      {"method", m.method}};
  if (m.exact) j["rational"] = m.exact->str();
  return j;
}

nlohmann::json toJson(const MomentEstimate& e) {
  return {{"value", e.mean},
          {"standard_error", e.standard_error},
          {"samples", e.samples},
          {"truncation", e.truncation},
          {"truncation_bias_bound", e.truncation_bias_bound},
          {"exact", false},
          {"method", "monte carlo"}};
}

nlohmann::json toJson(const SlopeEstimate& s) {
  return {{"value", s.value},
          {"standard_error", s.standard_error},
          {"exact", s.exact},
          {"method", s.method}};
}

nlohmann::json toJson(const ExtremeResult& e) {
  nlohmann::json j = {{"value", e.value}, {"locations", e.locations}};
  if (e.level) j["level"] = *e.level;
  return j;
}

nlohmann::json toJson(const ModulusReport& r, bool include_rows) {
  nlohmann::json j = {{"level", r.level},
                      {"bound_factor", r.bound_factor},
                      {"max_ratio", r.max_ratio},
                      {"t_at_max", r.t_at_max},
                      {"h_at_max", r.h_at_max}};
  if (include_rows) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"h", row.h}, {"omega", row.omega}, {"max_ratio", row.max_ratio}});
    j["rows"] = rows;
  }
  return j;
}

void writeModulusCsv(std::ostream& os, const ModulusReport& r) {
  os << "h,omega,max_increment,max_ratio\n";
  for (const auto& row : r.rows)
    os << formatDouble(row.h) << ',' << formatDouble(row.omega) << ','
       << formatDouble(row.max_increment) << ',' << formatDouble(row.max_ratio) << '\n';
}

nlohmann::json toJson(const SharpnessPoint& s) {
  return {{"n", s.n},         {"h", s.h},
          {"nu", s.nu},       {"lhs", s.lhs},
          {"omega", s.omega}, {"identity_rhs", s.identity_rhs},
          {"ratio", s.ratio}};
}

void writeCsv(std::ostream& os, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

}  // namespace takagi::io
