#include "pressure_lab/export.hpp"

#include "pressure_lab/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>

namespace pressure_lab {

using nlohmann::ordered_json;

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string quote(const std::string& f) {
  if (f.find_first_of(",\"\n\r") == std::string::npos) return f;
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// JSON has no NaN; emit null.
ordered_json real(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

}  // namespace

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw InvalidArgument("CSV row width mismatch");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += quote(fields[i]);
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

CsvTable catalog_table(const OrbitCatalog& catalog) {
  CsvTable t({"id", "period", "x", "y", "lambda_minus", "lambda_plus", "classification", "delta",
              "residual"});
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& o = catalog.orbits[i];
    t.add_row({std::to_string(i), std::to_string(o.period), format_real(o.point.x()),
               format_real(o.point.y()), format_real(o.exponents[0]), format_real(o.exponents[1]),
               to_string(o.classification), format_real(delta(o)), format_real(o.residual)});
  }
  return t;
}

std::string catalog_json(const OrbitCatalog& catalog) {
  ordered_json j;
  j["system"] = catalog.system_name;
  j["max_period"] = catalog.max_period;
  j["grid_density"] = catalog.grid_density;
  j["newton_iterations"] = catalog.newton_iterations;
  j["seed"] = catalog.seed;
  j["seeds_tried"] = catalog.seeds_tried;
  j["seeds_degenerate"] = catalog.seeds_degenerate;
  j["exhaustiveness"] = to_string(catalog.exhaustiveness);
  j["orbits"] = ordered_json::array();
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& o = catalog.orbits[i];
    ordered_json r;
    r["id"] = i;
    r["period"] = o.period;
    r["point"] = {real(o.point.x()), real(o.point.y())};
    r["exponents"] = {real(o.exponents[0]), real(o.exponents[1])};
    r["classification"] = to_string(o.classification);
    r["delta"] = real(delta(o));
    r["residual"] = real(o.residual);
    j["orbits"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

CsvTable estimate_table(const PressureEstimate& e) {
  CsvTable t({"method", "value", "bound_kind", "flags", "note"});
  t.add_row({to_string(e.method), format_real(e.value), to_string(e.bound_kind), join(e.flags, ";"),
             e.note});
  return t;
}

CsvTable parameter_table(const PressureEstimate& e) {
  CsvTable t({"name", "value"});
  for (const auto& [k, v] : e.parameters) t.add_row({k, format_real(v)});
  return t;
}

std::string estimate_json(const PressureEstimate& e) {
  ordered_json j;
  j["method"] = to_string(e.method);
  j["value"] = real(e.value);
  j["bound_kind"] = to_string(e.bound_kind);
  j["parameters"] = ordered_json::object();
  for (const auto& [k, v] : e.parameters) j["parameters"][k] = real(v);
  j["series"] = ordered_json::array();
  for (const auto& s : e.series) j["series"].push_back({real(s.x), real(s.value)});
  j["flags"] = e.flags;
  j["note"] = e.note;
  return j.dump(2) + "\n";
}

CsvTable series_table(const std::vector<SeriesPoint>& series, const std::string& x_name,
                      const std::string& value_name) {
  CsvTable t({x_name, value_name});
  for (const auto& s : series) t.add_row({format_real(s.x), format_real(s.value)});
  return t;
}

CsvTable domination_table(const std::vector<DominationRow>& rows) {
  CsvTable t({"orbit", "period", "n", "horizon", "verdict", "weak", "reason"});
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.report.tested_n.size(); ++i) {
      std::string weak = "indeterminate";
      if (i < r.weak.size() && r.weak[i]) weak = *r.weak[i] ? "true" : "false";
      t.add_row({std::to_string(r.orbit), std::to_string(r.report.period),
                 std::to_string(r.report.tested_n[i]), std::to_string(r.report.horizon),
                 to_string(r.report.verdicts[i]), weak, r.report.reason});
    }
  }
  return t;
}

CsvTable gap_table(const std::vector<double>& gap) {
  CsvTable t({"n", "gap"});
  for (std::size_t i = 0; i < gap.size(); ++i) t.add_row({std::to_string(i + 1), format_real(gap[i])});
  return t;
}

CsvTable curve_table(const TransitionReport& rep) {
  CsvTable t({"t", "value", "argmax"});
  for (const auto& c : rep.curve) {
    t.add_row({format_real(c.t), format_real(c.value), std::to_string(c.argmax)});
  }
  return t;
}

CsvTable candidate_table(const TransitionReport& rep, const OrbitCatalog& catalog) {
  CsvTable t({"orbit", "period", "x", "y", "lambda_plus"});
  for (std::size_t i : rep.candidates) {
    const auto& o = catalog.orbits.at(i);
    t.add_row({std::to_string(i), std::to_string(o.period), format_real(o.point.x()),
               format_real(o.point.y()), format_real(o.lambda_plus())});
  }
  return t;
}

std::string transition_json(const TransitionReport& rep) {
  ordered_json j;
  j["m"] = rep.m;
  j["catalog"] = to_string(rep.catalog_state);
  j["curve"] = ordered_json::array();
  for (const auto& c : rep.curve) {
    j["curve"].push_back({{"t", real(c.t)}, {"value", real(c.value)}, {"argmax", c.argmax}});
  }
  j["branches"] = ordered_json::array();
  for (const auto& b : rep.branches) {
    j["branches"].push_back(
        {{"orbit", b.orbit}, {"intercept", real(b.intercept)}, {"slope", real(b.slope)}});
  }
  j["t0"] = rep.t0 ? real(*rep.t0) : ordered_json(nullptr);
  j["t0_orbit"] = rep.t0_orbit ? ordered_json(*rep.t0_orbit) : ordered_json(nullptr);
  j["kinks"] = ordered_json::array();
  for (double k : rep.kinks) j["kinks"].push_back(real(k));
  j["candidates"] = rep.candidates;
  return j.dump(2) + "\n";
}

}  // namespace pressure_lab
