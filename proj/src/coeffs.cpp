#include "takagi/coeffs.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace takagi {

CoefficientSource CoefficientSource::allPlus() {
  return {CoefficientKind::AllPlus, 0, nullptr};
}

CoefficientSource CoefficientSource::tilde() {
  return {CoefficientKind::Tilde, 0, nullptr};
}

CoefficientSource CoefficientSource::seeded(std::uint64_t seed) {
  return {CoefficientKind::Seeded, seed, nullptr};
}

CoefficientSource CoefficientSource::fromRows(std::vector<std::vector<Sign>> rows) {
  if (rows.size() > static_cast<std::size_t>(kMaxAddressableGeneration) + 1)
    throw std::invalid_argument("too many coefficient rows");
  for (std::size_t m = 0; m < rows.size(); ++m) {
    if (rows[m].size() != (std::size_t{1} << m))
      throw std::invalid_argument("coefficient row " + std::to_string(m) + " must have " +
                                  std::to_string(std::size_t{1} << m) + " entries");
    for (Sign s : rows[m])
      if (s != 1 && s != -1)
        throw std::invalid_argument("coefficients must be +1 or -1");
  }
  return {CoefficientKind::Explicit, 0,
          std::make_shared<const std::vector<std::vector<Sign>>>(std::move(rows))};
}

CoefficientSource CoefficientSource::fromJson(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("coefficient JSON: ") + e.what());
  }
  if (!doc.is_array()) throw std::invalid_argument("coefficient JSON must be an array of rows");
  std::vector<std::vector<Sign>> rows;
  for (const auto& row : doc) {
    if (!row.is_array()) throw std::invalid_argument("coefficient row must be an array");
    auto& out = rows.emplace_back();
    out.reserve(row.size());
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw std::invalid_argument("coefficients must be integers");
      out.push_back(static_cast<Sign>(v.get<int>()));
      if (v.get<int>() != 1 && v.get<int>() != -1)
        throw std::invalid_argument("coefficients must be +1 or -1");
    }
  }
  return fromRows(std::move(rows));
}

CoefficientSource CoefficientSource::parse(const std::string& spec) {
  if (spec == "plus" || spec == "all_plus" || spec == "all-plus") return allPlus();
  if (spec == "tilde") return tilde();
  if (spec.rfind("seeded:", 0) == 0) {
    const std::string num = spec.substr(7);
    std::size_t used = 0;
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(num, &used, 0);
    } catch (const std::exception&) {
      used = 0;
    }
    if (num.empty() || used != num.size())
      throw std::invalid_argument("bad seed in coefficient spec: " + spec);
    return seeded(seed);
  }
  if (spec.rfind("explicit:", 0) == 0) {
    std::ifstream in(spec.substr(9));
    if (!in) throw std::invalid_argument("cannot open coefficient file: " + spec.substr(9));
    return fromJson(in);
  }
  throw std::invalid_argument("unknown coefficient source: " + spec);
}

Sign CoefficientSource::get(int m, std::uint64_t k) const {
  checkIndex(FSIndex{m, k});
  switch (kind_) {
    case CoefficientKind::AllPlus:
      return 1;
    case CoefficientKind::Tilde:
      if (m == 0) return 1;
      return k < (std::uint64_t{1} << (m - 1)) ? 1 : -1;
    case CoefficientKind::Seeded: {
      const std::uint64_t h =
          mix64(mix64(seed_ ^ mix64(static_cast<std::uint64_t>(m))) ^ k);
      return (h >> 63) ? Sign{-1} : Sign{1};
    }
    case CoefficientKind::Explicit:
      if (static_cast<std::size_t>(m) >= rows_->size())
        throw std::out_of_range("explicit coefficients not supplied for generation " +
                                std::to_string(m));
      return (*rows_)[m][k];
  }
  return 1;
}

Sign CoefficientSource::branchSign(int m, bool right_half) const {
  switch (kind_) {
    case CoefficientKind::AllPlus:
      return 1;
    case CoefficientKind::Tilde:
      return (m == 0 || !right_half) ? Sign{1} : Sign{-1};
    default:
      throw std::out_of_range("coefficient source is not addressable beyond generation " +
                              std::to_string(kMaxAddressableGeneration));
  }
}

int CoefficientSource::depth() const {
  if (kind_ == CoefficientKind::Explicit) return static_cast<int>(rows_->size());
  if (kind_ == CoefficientKind::Seeded) return kMaxAddressableGeneration + 1;
  return -1;
}

std::string CoefficientSource::describe() const {
  switch (kind_) {
    case CoefficientKind::AllPlus:
      return "plus";
    case CoefficientKind::Tilde:
      return "tilde";
    case CoefficientKind::Seeded:
      return "seeded:" + std::to_string(seed_);
    case CoefficientKind::Explicit:
      return "explicit(" + std::to_string(rows_->size()) + " rows)";
  }
  return "?";
}

}  // namespace takagi
