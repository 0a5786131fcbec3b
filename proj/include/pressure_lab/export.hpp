#pragma once

#include "pressure_lab/domination.hpp"
#include "pressure_lab/orbits.hpp"
#include "pressure_lab/pressure.hpp"
#include "pressure_lab/transition.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pressure_lab {

/// %.17g; "nan", "inf", "-inf" for non-finite values.
std::string format_real(double v);

/// Comma-separated table; fields containing ',', '"' or newlines are quoted.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

CsvTable catalog_table(const OrbitCatalog& catalog);
std::string catalog_json(const OrbitCatalog& catalog);

/// One row: method, value, bound_kind, flags (';'-joined), note.
CsvTable estimate_table(const PressureEstimate& e);
CsvTable parameter_table(const PressureEstimate& e);
std::string estimate_json(const PressureEstimate& e);

/// Two-column plot series; header-only when empty.
CsvTable series_table(const std::vector<SeriesPoint>& series, const std::string& x_name,
                      const std::string& value_name);

struct DominationRow {
  std::size_t orbit = 0;
  DominationReport report;
  std::vector<std::optional<bool>> weak;  // aligned with report.tested_n
};

CsvTable domination_table(const std::vector<DominationRow>& rows);
CsvTable gap_table(const std::vector<double>& gap);

CsvTable curve_table(const TransitionReport& rep);
CsvTable candidate_table(const TransitionReport& rep, const OrbitCatalog& catalog);
std::string transition_json(const TransitionReport& rep);

}  // namespace pressure_lab
