#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kstab/serialize.hpp"
#include "kstab/zariski.hpp"

namespace kstab {

struct ReportRow {
  std::string label;
  std::string kind;
  Json computed;
  Json expected;
  std::string citation;
  std::string status;  // pass, fail, discrepancy-noted, computed-only, error
  std::vector<std::string> notes;
};

struct StabilityReport {
  std::vector<ReportRow> rows;
  std::optional<std::uint64_t> seed;

  std::size_t count(const std::string& status) const;
  bool ok() const { return count("fail") == 0 && count("error") == 0; }
};

struct RunOptions {
  std::filesystem::path data_dir;
  std::optional<std::uint64_t> seed;  // overrides per-case seeds when set
};

std::filesystem::path default_data_dir();

// Parsed threefold chamber fixture.
struct ChamberFixture {
  std::string label;
  std::map<std::string, std::shared_ptr<const ToricModel>> models;
  std::string first_model;
  ParametricDivisor total;
  Rational a_top;
  std::optional<Rational> a_log;
  std::vector<ThreefoldChamber> chambers;
};
ChamberFixture load_chamber_fixture(const std::filesystem::path& path, const std::filesystem::path& data_dir);
std::shared_ptr<const ToricModel> load_model(const std::filesystem::path& path);

// Evaluates one case document. Schema problems in the document raise
// ParseError/SchemaError; computation problems become an error row.
ReportRow run_case_json(const Json& doc, const std::string& label, const RunOptions& opts);
ReportRow run_case(const std::filesystem::path& path, const RunOptions& opts);

// Every *.json under data_dir/cases, evaluated on up to `jobs` threads and
// sorted by label.
StabilityReport run_suite(const RunOptions& opts, int jobs);

std::string emit_report(const StabilityReport& report, const std::string& format);
Json report_to_json(const StabilityReport& report);

}  // namespace kstab
