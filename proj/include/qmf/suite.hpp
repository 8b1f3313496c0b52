// suite.hpp: Verification suite runner and report emission

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmf/extended_semigroup.hpp"
#include "qmf/run_config.hpp"

namespace qmf {

inline constexpr const char* kArtifactVersion = "0.1.0";

// upper: pass iff value <= tolerance.  lower: pass iff value >= -tolerance (eigenvalue readings).
enum class Bound { upper, lower };

struct CheckRecord {
    std::string name;
    std::optional<double> t;
    Bound bound = Bound::upper;
    std::optional<double> value; // empty when the check could not be evaluated
    double tolerance = 0.0;
    bool pass = false;
    std::string inputs_digest;
    std::string message;
};

struct Report {
    std::string version = kArtifactVersion;
    Json config;
    Json model;
    Tolerances tolerances;
    std::vector<CheckRecord> checks;

    std::size_t passed() const;
    std::size_t failed() const { return checks.size() - passed(); }
    bool all_passed() const { return failed() == 0; }
};

struct SuiteSelection {
    bool structure = true;
    bool extended = true;
    bool flow = true;
};

// Builds the model from the config; construction errors become failing records.
Report run_suite(const RunConfig& cfg, SuiteSelection selection = {});
Report run_suite(const RunConfig& cfg, const ResolvedModel& model, SuiteSelection selection = {});

Json to_json(const Report& report);
std::string emit_json(const Report& report);
// Columns: check, t, residual, tolerance, pass
std::string emit_csv(const Report& report);

enum class ReportFormat { json, csv };
ReportFormat parse_report_format(std::string_view text);
void emit(const Report& report, ReportFormat format, const std::filesystem::path& path);

// Structural validation against schemas/report.schema.json.
bool validate_report(const Json& report, std::string& error);

struct CpRow {
    double t = 0.0;
    double choi_min_eig = 0.0;
    double conservativity_residual = 0.0;
    double normalization_residual = 0.0;
};

std::vector<CpRow> check_cp(const ExtendedGenerator& g, std::span<const double> t_grid);
// Columns: t, choi_min_eig, conservativity_residual, normalization_residual
std::string cp_csv(const std::vector<CpRow>& rows);

// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

} // namespace qmf
