#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "takagi/bernoulli.hpp"
#include "takagi/extremal.hpp"
#include "takagi/variation.hpp"

namespace takagi::io {

/// Shortest round-trip decimal form, independent of the C locale.
/// Infinities print as "inf"/"-inf".
std::string formatDouble(double v);

// Grid exports. CSV columns are k,t,value and k,t,d.
void writeGridCsv(std::ostream& os, int level, const Eigen::VectorXd& values);
void writeIncrementsCsvHeader(std::ostream& os);
void writeIncrementsCsvRows(std::ostream& os, int level, std::uint64_t first,
                            std::span<const double> d);

// Raw stream: 8-byte little-endian level, then little-endian IEEE-754
// binary64 values until end of stream.
void writeRawHeader(std::ostream& os, int level);
void writeRawValues(std::ostream& os, std::span<const double> values);

struct RawData {
  int level = 0;
  std::vector<double> values;
};
RawData readRaw(std::istream& is);

// Variation reports: CSV columns n,V_n,predicted_limit,regime.
void writeVariationCsv(std::ostream& os, const VariationReport& r);
nlohmann::json toJson(const VariationReport& r);

nlohmann::json momentJson(double lambda, int p, const MomentValue& m);
nlohmann::json toJson(const MomentEstimate& e);
nlohmann::json toJson(const SlopeEstimate& s);

nlohmann::json toJson(const ExtremeResult& e);
nlohmann::json toJson(const ModulusReport& r, bool include_rows);
void writeModulusCsv(std::ostream& os, const ModulusReport& r);
nlohmann::json toJson(const SharpnessPoint& s);

/// Writes rows as CSV with a header line. Values are pre-formatted strings.
void writeCsv(std::ostream& os, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows);

}  // namespace takagi::io
