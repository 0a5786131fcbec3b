#include "pressure_lab/errors.hpp"
#include "pressure_lab/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pressure_lab {

std::string to_string(Method m) {
  switch (m) {
    case Method::bowen: return "bowen";
    case Method::periodic: return "periodic";
    case Method::grassmann: return "grassmann";
    case Method::sft: return "sft";
  }
  return "?";
}

std::string to_string(BoundKind b) {
  switch (b) {
    case BoundKind::lower: return "lower";
    case BoundKind::upper: return "upper";
    case BoundKind::two_sided: return "two-sided";
    case BoundKind::heuristic: return "heuristic";
  }
  return "?";
}

bool PressureEstimate::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

PeriodicPressure periodic_pressure(const OrbitCatalog& catalog, const SystemDef& sys,
                                   const Potential& phi) {
  if (catalog.empty()) throw EmptyCatalog();
  PeriodicPressure out;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < catalog.orbits.size(); ++i) {
    const double v = delta_phi(catalog.orbits[i], sys, phi);
    if (v > best) {
      best = v;
      out.argmax = i;
    }
  }
  auto& e = out.estimate;
  e.value = best;
  e.method = Method::periodic;
  e.bound_kind = BoundKind::lower;
  e.parameters["max_period"] = catalog.max_period;
  e.parameters["orbits"] = static_cast<double>(catalog.size());
  e.parameters["argmax_orbit"] = static_cast<double>(out.argmax);
  e.parameters["argmax_period"] = catalog.orbits[out.argmax].period;
  e.series.reserve(catalog.orbits.size());
  for (std::size_t i = 0; i < catalog.orbits.size(); ++i) {
    e.series.push_back({static_cast<double>(i), delta_phi(catalog.orbits[i], sys, phi)});
  }
  if (catalog.exhaustiveness != Exhaustiveness::verified) {
    e.flags.push_back("catalog-" + to_string(catalog.exhaustiveness));
  }
  e.note = "argmax orbit " + std::to_string(out.argmax);
  return out;
}

CrossValidation cross_validate(const SystemDef& sys, const Potential& phi,
                               const CrossValidationOptions& opt) {
  CrossValidation cv;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  cv.bowen.method = Method::bowen;
  cv.periodic.method = Method::periodic;
  cv.grassmann.method = Method::grassmann;
  cv.bowen.value = cv.periodic.value = cv.grassmann.value = nan;

  try {
    cv.bowen = bowen_pressure(sys, phi, opt.bowen).estimate;
  } catch (const Error& e) {
    cv.flags.push_back(std::string("bowen: ") + e.what());
  }
  try {
    const OrbitCatalog cat = find_periodic_orbits(sys, opt.orbits);
    cv.periodic = periodic_pressure(cat, sys, phi).estimate;
  } catch (const Error& e) {
    cv.flags.push_back(std::string("periodic: ") + e.what());
  }
  try {
    cv.grassmann = grassmann_pressure(sys, phi, opt.grassmann).estimate;
  } catch (const Error& e) {
    cv.flags.push_back(std::string("grassmann: ") + e.what());
  }
  for (const auto* est : {&cv.bowen, &cv.periodic, &cv.grassmann}) {
    for (const auto& f : est->flags) cv.flags.push_back(to_string(est->method) + ": " + f);
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : {cv.bowen.value, cv.periodic.value, cv.grassmann.value}) {
    if (std::isnan(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  cv.spread = hi >= lo ? hi - lo : nan;
  cv.disagreement = !(cv.spread <= opt.tolerance);
  cv.ordering_violated = cv.periodic.value > cv.grassmann.value + opt.tolerance;
  if (cv.disagreement) cv.flags.push_back("spread exceeds tolerance");
  if (cv.ordering_violated) cv.flags.push_back("periodic lower bound exceeds grassmann upper bound");
  return cv;
}

}  // namespace pressure_lab
