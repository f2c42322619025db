#pragma once

#include <cstdint>
#include <functional>
#include "json.hpp"
#include <string>
#include <vector>

#include "modrop/params.hpp"

namespace modrop {

std::string version();

struct RunConfig {
    double b = 0.8;
    cplx s = 0.4;
    cplx s1 = 0.4;
    cplx s2 = 0.7;
    cplx s3 = 0.1;
    cplx u = 0.3;
    cplx v = -0.2;
    /// Sampling grid for one- and two-coordinate comparisons.
    double grid_L = 4.0;
    int grid_N = 128;
    double quad_tol = 1e-12;
    double contour_lift = 2.5;
    double truncation = 40.0;
    std::string suite = "fast";
    std::vector<std::string> relations;
    std::string report_path;
    std::string csv_path;
    std::uint64_t seed = 0;
    int jobs = 1;

    /// Throws DomainError for inconsistent values.
    void validate() const;
    NumericsConfig numerics() const;
};

nlohmann::json to_json(const RunConfig& c);
/// Overlays the keys present in j onto c; unknown keys are rejected.
void apply_json(const nlohmann::json& j, RunConfig& c);

struct RelationReport {
    std::string relation_id;
    nlohmann::json params;
    std::string grid;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double wall_time_ms = 0.0;
    std::string anchor;
    bool skipped = false;
    std::string reason;
    std::string error;
};

nlohmann::json to_json(const RelationReport& r);
RelationReport report_from_json(const nlohmann::json& j);

enum class Tier { Fast, Full, Slow };

struct RelationInfo {
    std::string id;
    std::string anchor;
    Tier tier;
};

/// All registered relations in their fixed run order.
const std::vector<RelationInfo>& registry();
std::vector<std::string> relation_ids();
bool is_relation(const std::string& id);

/// Runs one relation; exceptions are captured into a failed report.
RelationReport run_relation(const std::string& id, const RunConfig& cfg);
/// Every relation of the tier and the tiers below it (fast < full < slow).
std::vector<RelationReport> run_suite(const std::string& suite, const RunConfig& cfg);
/// The given relations in registry order; throws DomainError listing the
/// valid ids when the list is empty or contains an unknown id.
std::vector<RelationReport> run_relations(const std::vector<std::string>& ids, const RunConfig& cfg);

struct ConvergenceRow {
    double resolution = 0.0;
    double residual = 0.0;
    double wall_time_ms = 0.0;
};

struct ConvergenceTable {
    std::string relation_id;
    std::string parameter;
    std::vector<ConvergenceRow> rows;
    bool non_increasing = true;
};

/// Relations accepting a resolution argument.
std::vector<std::string> convergence_relations();
/// Residual per resolution. Consecutive rows must not grow by more than 10%
/// (residuals below 1e-12 count as converged).
ConvergenceTable convergence_series(const std::string& relation_id, const std::vector<double>& resolutions,
                                    const RunConfig& cfg);
std::string to_csv(const ConvergenceTable& t);

struct SuiteSummary {
    int passed = 0;
    int failed = 0;
    int skipped = 0;
};
SuiteSummary summarize(const std::vector<RelationReport>& reports);

/// {schema: 1, version, config, summary, reports}.
nlohmann::json report_document(const std::vector<RelationReport>& reports, const RunConfig& cfg);
/// Fixed-width text table of a report document.
std::string render_table(const nlohmann::json& doc);

/// "re+imi" literals: "1.5", "-2i", "0.3-0.1i", "i".
cplx parse_complex(const std::string& text);
std::string format_complex(cplx z);

}  // namespace modrop
