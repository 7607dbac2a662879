#pragma once

// The identity suite run by `krein-kit verify`, and the JSON views of its
// report and of a BucklingReport.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "krein/buckling.hpp"
#include "krein/extension.hpp"
#include "krein/tolerances.hpp"

namespace krein {

struct CheckItem {
  std::string name;
  std::optional<double> residual;  // empty when the check raised
  double tolerance = 0.0;
  bool pass = false;
  std::string error;   // "Errc: message" when the check raised
  std::string detail;
};

struct VerifyOptions {
  Tolerances tol;
  std::vector<double> shifts{0.1, 1.0, 10.0};
  std::size_t random_extensions = 20;
  std::uint64_t seed = 0x6b7265696eULL;
};

struct VerificationReport {
  std::string provenance;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t kernel_dim = 0;  // dim ker(S*), 0 if the bundle failed
  double epsilon = 0.0;
  Tolerances tol;
  std::vector<CheckItem> items;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::optional<BucklingReport> buckling;

  bool passed() const;
};

/// Runs every check; numerical errors are recorded on the item that raised
/// them and never abort the suite.
VerificationReport run_verification(const RestrictedOperator& op, const VerifyOptions& options = {});

/// A report for an instance that could not be constructed at all.
VerificationReport failed_construction(const std::string& source, const std::string& error);

nlohmann::json to_json(const VerificationReport& report);
nlohmann::json buckling_report_to_json(const BucklingReport& report);

/// Plain-text table rendered from the JSON document.
std::string format_report_table(const nlohmann::json& report);

nlohmann::json tolerances_to_json(const Tolerances& tol);

}  // namespace krein
