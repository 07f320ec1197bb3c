#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "richness/lexical.hpp"
#include "richness/morphology.hpp"
#include "richness/synonyms.hpp"

namespace richness {

inline constexpr int kReportSchemaVersion = 1;

enum class Direction {
  Up,    // higher means more diverse
  Down,  // lower means more diverse
  None,
};

std::string_view to_string(Direction direction);

/// Every metric a report can carry, in canonical (display) order.
enum class MetricId {
  Ttr, YulesI, Mtld, Tokens, Types,
  LfpB1, LfpB2, LfpB3,
  Ptf, Cdu, SynTtr, SynonymSources,
  MorphH, MorphD, SingleWordformLemmas, MultiWordformLemmas,
};

struct MetricInfo {
  MetricId id;
  std::string_view name;     // JSON / CSV key
  std::string_view heading;  // markdown column heading
  Direction direction;
};

const std::vector<MetricInfo>& metric_catalog();
const MetricInfo& metric_info(MetricId id);
std::optional<MetricId> metric_by_name(std::string_view name);

/// Presentation multipliers; raw values are never altered.
struct Scaling {
  double ttr = 1000;
  double yules_i = 10000;
  double morph = 100;  // H and D
  double syn_ttr = 100000;
  double ptf = 1;
  double cdu = 1;

  double factor(MetricId id) const;
  bool operator==(const Scaling&) const = default;
};

struct MetricValue {
  std::optional<double> raw;     // nullopt = undefined
  std::string undefined_reason;  // set iff raw is nullopt
};

struct Provenance {
  std::vector<std::string> inputs;
  std::string config_digest;
  std::vector<std::string> skipped;  // "metric: reason" for metrics not computed
  bool operator==(const Provenance&) const = default;
};

struct DiversityReport {
  std::string label;
  std::string language;
  std::optional<LexicalScores> lexical;
  std::optional<BandProfile> bands;
  std::optional<SynonymScores> synonym;
  std::optional<MorphAggregate> morph;
  Provenance provenance;
  Scaling scaling;

  /// Present metrics in canonical order.
  std::vector<std::pair<MetricId, MetricValue>> metrics() const;
};

struct AssembleInputs {
  std::optional<LexicalScores> lexical;
  std::optional<BandProfile> bands;
  std::optional<SynonymScores> synonym;
  std::optional<MorphAggregate> morph;
  std::vector<std::string> input_languages;  // languages of the corpora behind the metrics
};

/// Throws ReportError when no metric is present or languages conflict.
DiversityReport assemble(std::string label, std::string language, AssembleInputs inputs,
                         Provenance provenance = {}, Scaling scaling = {});

nlohmann::ordered_json report_to_json(const DiversityReport& report);
/// Throws ReportError on schema-version mismatch or malformed content.
DiversityReport report_from_json(const nlohmann::json& j);

struct ComparisonCell {
  bool present = false;
  MetricValue value;
  std::optional<double> delta;  // raw system - baseline
};

struct ComparisonRow {
  DiversityReport report;
  std::vector<ComparisonCell> cells;  // aligned with ComparisonTable::columns
};

struct ComparisonTable {
  std::string baseline_label;
  std::string language;
  std::vector<MetricId> columns;
  std::vector<ComparisonRow> rows;  // baseline first, then by label
  std::vector<std::string> warnings;
  Scaling scaling;
};

/// Throws ReportError on a missing baseline, duplicate labels or mixed
/// languages. Digest mismatches become warnings.
ComparisonTable compare(std::vector<DiversityReport> reports, const std::string& baseline_label);

enum class RenderFormat { Markdown, Csv, Json };

std::string render(const ComparisonTable& table, RenderFormat format);
nlohmann::ordered_json comparison_to_json(const ComparisonTable& table);

/// Reports carried by a rendered comparison JSON (its rows).
std::vector<DiversityReport> reports_from_comparison_json(const nlohmann::json& j);

/// Half-up rounding to two decimals; never prints "-0.00".
std::string format_display(double value);

}  // namespace richness
