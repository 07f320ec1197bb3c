#include "richness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "richness/error.hpp"

namespace richness {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kYuleUndefined = "every type occurs exactly once (M2 = V)";

bool is_count_metric(MetricId id) {
  return id == MetricId::Tokens || id == MetricId::Types || id == MetricId::SynonymSources ||
         id == MetricId::SingleWordformLemmas || id == MetricId::MultiWordformLemmas;
}

double scaled(const Scaling& s, MetricId id, double raw) { return raw * s.factor(id); }

std::string csv_quote(std::string_view field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string markdown_escape(std::string_view field) {
  std::string out;
  for (char c : field) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string scale_suffix(double factor) {
  if (factor == 1.0) return "";
  std::ostringstream os;
  os << " ×" << static_cast<long long>(factor);
  return os.str();
}

std::string direction_arrow(Direction d) {
  switch (d) {
    case Direction::Up: return " ↑";
    case Direction::Down: return " ↓";
    case Direction::None: return "";
  }
  return "";
}

template <typename J>
const J& field(const J& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ReportError(std::string("report JSON lacks '") + key + "'");
  return *it;
}

double metric_raw(const std::map<MetricId, MetricValue>& values, MetricId id) {
  auto it = values.find(id);
  if (it == values.end() || !it->second.raw) {
    throw ReportError("report JSON lacks metric '" + std::string(metric_info(id).name) + "'");
  }
  return *it->second.raw;
}

std::string count_display(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(value)));
  return buf;
}

std::string cell_text(const ComparisonCell& cell, MetricId id, bool markdown, double factor, bool delta) {
  if (!cell.present) return "";
  if (!cell.value.raw) return delta ? "" : (markdown ? "—" : "undefined");
  auto fmt = is_count_metric(id) ? count_display : format_display;
  if (delta) return cell.delta ? fmt(*cell.delta * factor) : "";
  return fmt(*cell.value.raw * factor);
}

}  // namespace

std::string_view to_string(Direction direction) {
  switch (direction) {
    case Direction::Up: return "up";
    case Direction::Down: return "down";
    case Direction::None: return "none";
  }
  return "none";
}

const std::vector<MetricInfo>& metric_catalog() {
  static const std::vector<MetricInfo> catalog = {
      {MetricId::Ttr, "ttr", "TTR", Direction::Up},
      {MetricId::YulesI, "yules_i", "Yule's I", Direction::Up},
      {MetricId::Mtld, "mtld", "MTLD", Direction::Up},
      {MetricId::Tokens, "tokens", "Tokens", Direction::None},
      {MetricId::Types, "types", "Types", Direction::None},
      {MetricId::LfpB1, "lfp_b1", "B1", Direction::Down},
      {MetricId::LfpB2, "lfp_b2", "B2", Direction::None},
      {MetricId::LfpB3, "lfp_b3", "B3", Direction::Up},
      {MetricId::Ptf, "ptf", "PTF", Direction::Down},
      {MetricId::Cdu, "cdu", "CDU", Direction::Down},
      {MetricId::SynTtr, "syn_ttr", "SynTTR", Direction::Up},
      {MetricId::SynonymSources, "synonym_sources", "Source words", Direction::None},
      {MetricId::MorphH, "h", "H", Direction::Up},
      {MetricId::MorphD, "d", "D", Direction::Down},
      {MetricId::SingleWordformLemmas, "single_wordform_lemmas", "Single", Direction::None},
      {MetricId::MultiWordformLemmas, "multi_wordform_lemmas", "Multi", Direction::None},
  };
  return catalog;
}

const MetricInfo& metric_info(MetricId id) {
  for (const auto& info : metric_catalog()) {
    if (info.id == id) return info;
  }
  throw ReportError("unknown metric");
}

std::optional<MetricId> metric_by_name(std::string_view name) {
  for (const auto& info : metric_catalog()) {
    if (info.name == name) return info.id;
  }
  return std::nullopt;
}

double Scaling::factor(MetricId id) const {
  switch (id) {
    case MetricId::Ttr: return ttr;
    case MetricId::YulesI: return yules_i;
    case MetricId::MorphH:
    case MetricId::MorphD: return morph;
    case MetricId::SynTtr: return syn_ttr;
    case MetricId::Ptf: return ptf;
    case MetricId::Cdu: return cdu;
    default: return 1.0;
  }
}

std::vector<std::pair<MetricId, MetricValue>> DiversityReport::metrics() const {
  std::vector<std::pair<MetricId, MetricValue>> out;
  auto put = [&](MetricId id, double v) { out.push_back({id, {v, {}}}); };
  if (lexical) {
    put(MetricId::Ttr, lexical->ttr);
    if (lexical->yules_i) {
      put(MetricId::YulesI, *lexical->yules_i);
    } else {
      out.push_back({MetricId::YulesI, {std::nullopt, std::string(kYuleUndefined)}});
    }
    put(MetricId::Mtld, lexical->mtld);
    put(MetricId::Tokens, static_cast<double>(lexical->token_count));
    put(MetricId::Types, static_cast<double>(lexical->type_count));
  }
  if (bands) {
    put(MetricId::LfpB1, bands->b1_pct);
    put(MetricId::LfpB2, bands->b2_pct);
    put(MetricId::LfpB3, bands->b3_pct);
  }
  if (synonym) {
    put(MetricId::Ptf, synonym->ptf);
    put(MetricId::Cdu, synonym->cdu);
    put(MetricId::SynTtr, synonym->syn_ttr);
    put(MetricId::SynonymSources, static_cast<double>(synonym->n_source_words_used));
  }
  if (morph) {
    put(MetricId::MorphH, morph->mean_h);
    put(MetricId::MorphD, morph->mean_d);
    put(MetricId::SingleWordformLemmas, static_cast<double>(morph->single_wordform_lemmas));
    put(MetricId::MultiWordformLemmas, static_cast<double>(morph->multi_wordform_lemmas));
  }
  return out;
}

DiversityReport assemble(std::string label, std::string language, AssembleInputs inputs, Provenance provenance,
                         Scaling scaling) {
  if (!inputs.lexical && !inputs.bands && !inputs.synonym && !inputs.morph) {
    throw ReportError("report '" + label + "' has no metric results");
  }
  for (const auto& lang : inputs.input_languages) {
    if (lang.empty() || lang == "und") continue;
    if (language.empty() || language == "und") {
      language = lang;
    } else if (lang != language) {
      throw ReportError("conflicting languages '" + language + "' and '" + lang + "'");
    }
  }
  DiversityReport report;
  report.label = std::move(label);
  report.language = std::move(language);
  report.lexical = inputs.lexical;
  report.bands = inputs.bands;
  report.synonym = inputs.synonym;
  report.morph = inputs.morph;
  report.provenance = std::move(provenance);
  report.scaling = scaling;
  return report;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

ordered_json metric_to_json(const DiversityReport& report, MetricId id, const MetricValue& value) {
  const MetricInfo& info = metric_info(id);
  ordered_json m;
  double factor = report.scaling.factor(id);
  if (value.raw) {
    m["raw"] = *value.raw;
    m["scaled"] = scaled(report.scaling, id, *value.raw);
  } else {
    m["raw"] = nullptr;
    m["scaled"] = nullptr;
  }
  m["scale"] = factor;
  m["direction"] = to_string(info.direction);
  if (!value.raw) m["undefined_reason"] = value.undefined_reason;
  return m;
}

ordered_json provenance_to_json(const DiversityReport& report) {
  ordered_json p;
  p["inputs"] = report.provenance.inputs;
  p["config_digest"] = report.provenance.config_digest;
  p["skipped"] = report.provenance.skipped;
  if (report.bands) {
    p["band_edges"] = {report.bands->band_edges.first, report.bands->band_edges.second};
  }
  return p;
}

template <typename J>
DiversityReport report_from_parts(const J& label, const J& language, const J& metrics, const J& provenance) {
  DiversityReport report;
  report.label = label.template get<std::string>();
  report.language = language.template get<std::string>();

  std::map<MetricId, MetricValue> values;
  for (auto it = metrics.begin(); it != metrics.end(); ++it) {
    auto id = metric_by_name(it.key());
    if (!id) throw ReportError("unknown metric '" + it.key() + "'");
    const auto& m = it.value();
    MetricValue value;
    const auto& raw = field(m, "raw");
    if (raw.is_null()) {
      value.undefined_reason = m.contains("undefined_reason") ? m["undefined_reason"].template get<std::string>()
                                                              : std::string("undefined");
    } else {
      value.raw = raw.template get<double>();
    }
    double scale = field(m, "scale").template get<double>();
    switch (*id) {
      case MetricId::Ttr: report.scaling.ttr = scale; break;
      case MetricId::YulesI: report.scaling.yules_i = scale; break;
      case MetricId::MorphH: report.scaling.morph = scale; break;
      case MetricId::SynTtr: report.scaling.syn_ttr = scale; break;
      case MetricId::Ptf: report.scaling.ptf = scale; break;
      case MetricId::Cdu: report.scaling.cdu = scale; break;
      default: break;
    }
    values[*id] = std::move(value);
  }

  if (values.count(MetricId::Ttr)) {
    LexicalScores lex;
    lex.ttr = metric_raw(values, MetricId::Ttr);
    lex.yules_i = values.count(MetricId::YulesI) ? values[MetricId::YulesI].raw : std::nullopt;
    lex.mtld = metric_raw(values, MetricId::Mtld);
    lex.token_count = static_cast<std::size_t>(metric_raw(values, MetricId::Tokens));
    lex.type_count = static_cast<std::size_t>(metric_raw(values, MetricId::Types));
    report.lexical = lex;
  }
  if (values.count(MetricId::LfpB1)) {
    BandProfile bands;
    bands.b1_pct = metric_raw(values, MetricId::LfpB1);
    bands.b2_pct = metric_raw(values, MetricId::LfpB2);
    bands.b3_pct = metric_raw(values, MetricId::LfpB3);
    if (provenance.contains("band_edges")) {
      const auto& edges = provenance["band_edges"];
      bands.band_edges = {edges.at(0).template get<std::size_t>(), edges.at(1).template get<std::size_t>()};
    }
    report.bands = bands;
  }
  if (values.count(MetricId::Ptf)) {
    SynonymScores syn;
    syn.ptf = metric_raw(values, MetricId::Ptf);
    syn.cdu = metric_raw(values, MetricId::Cdu);
    syn.syn_ttr = metric_raw(values, MetricId::SynTtr);
    syn.n_source_words_used = static_cast<std::size_t>(metric_raw(values, MetricId::SynonymSources));
    report.synonym = syn;
  }
  if (values.count(MetricId::MorphH)) {
    MorphAggregate morph;
    morph.mean_h = metric_raw(values, MetricId::MorphH);
    morph.mean_d = metric_raw(values, MetricId::MorphD);
    morph.single_wordform_lemmas = static_cast<std::size_t>(metric_raw(values, MetricId::SingleWordformLemmas));
    morph.multi_wordform_lemmas = static_cast<std::size_t>(metric_raw(values, MetricId::MultiWordformLemmas));
    report.morph = morph;
  }

  report.provenance.inputs = field(provenance, "inputs").template get<std::vector<std::string>>();
  report.provenance.config_digest = field(provenance, "config_digest").template get<std::string>();
  if (provenance.contains("skipped")) {
    report.provenance.skipped = provenance["skipped"].template get<std::vector<std::string>>();
  }
  return report;
}

void check_schema(const nlohmann::json& j) {
  if (!j.is_object()) throw ReportError("report JSON is not an object");
  const auto& version = field(j, "schema_version");
  if (!version.is_number_integer() || version.get<int>() != kReportSchemaVersion) {
    throw ReportError("unsupported schema_version " + version.dump() + " (expected " +
                      std::to_string(kReportSchemaVersion) + ")");
  }
}

}  // namespace

nlohmann::ordered_json report_to_json(const DiversityReport& report) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["label"] = report.label;
  j["language"] = report.language;
  ordered_json metrics = ordered_json::object();
  for (const auto& [id, value] : report.metrics()) {
    metrics[std::string(metric_info(id).name)] = metric_to_json(report, id, value);
  }
  j["metrics"] = std::move(metrics);
  j["provenance"] = provenance_to_json(report);
  return j;
}

DiversityReport report_from_json(const nlohmann::json& j) {
  check_schema(j);
  try {
    return report_from_parts(field(j, "label"), field(j, "language"), field(j, "metrics"), field(j, "provenance"));
  } catch (const nlohmann::json::exception& e) {
    throw ReportError(std::string("malformed report JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Comparison

ComparisonTable compare(std::vector<DiversityReport> reports, const std::string& baseline_label) {
  std::set<std::string> labels;
  for (const auto& r : reports) {
    if (!labels.insert(r.label).second) throw ReportError("duplicate report label '" + r.label + "'");
  }
  auto baseline_it = std::find_if(reports.begin(), reports.end(),
                                  [&](const DiversityReport& r) { return r.label == baseline_label; });
  if (baseline_it == reports.end()) throw ReportError("baseline '" + baseline_label + "' not among the reports");

  // Baseline first, then the rest by label, independent of input order.
  std::iter_swap(reports.begin(), baseline_it);
  std::sort(reports.begin() + 1, reports.end(),
            [](const DiversityReport& a, const DiversityReport& b) { return a.label < b.label; });

  ComparisonTable table;
  table.baseline_label = baseline_label;
  table.language = reports.front().language;
  table.scaling = reports.front().scaling;
  for (const auto& r : reports) {
    if (r.language != table.language) {
      throw ReportError("mixed languages: '" + table.language + "' and '" + r.language + "' (" + r.label + ")");
    }
    if (r.provenance.config_digest != reports.front().provenance.config_digest) {
      table.warnings.push_back("config digest of '" + r.label + "' (" + r.provenance.config_digest +
                               ") differs from baseline (" + reports.front().provenance.config_digest + ")");
    }
    if (!(r.scaling == table.scaling)) {
      table.warnings.push_back("display scaling of '" + r.label + "' differs from baseline; baseline scaling used");
    }
  }

  std::vector<std::map<MetricId, MetricValue>> values;
  std::set<MetricId> present;
  for (const auto& r : reports) {
    auto& m = values.emplace_back();
    for (auto& [id, value] : r.metrics()) {
      m[id] = value;
      present.insert(id);
    }
  }
  for (const auto& info : metric_catalog()) {
    if (present.count(info.id)) table.columns.push_back(info.id);
  }

  const auto& base = values.front();
  for (std::size_t r = 0; r < reports.size(); ++r) {
    ComparisonRow row;
    for (MetricId id : table.columns) {
      ComparisonCell cell;
      auto it = values[r].find(id);
      if (it != values[r].end()) {
        cell.present = true;
        cell.value = it->second;
        auto b = base.find(id);
        if (cell.value.raw && b != base.end() && b->second.raw) cell.delta = *cell.value.raw - *b->second.raw;
      }
      row.cells.push_back(std::move(cell));
    }
    row.report = std::move(reports[r]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string format_display(double value) {
  double rounded = std::round(value * 100.0) / 100.0;
  if (rounded == 0.0) rounded = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", rounded);
  return buf;
}

nlohmann::ordered_json comparison_to_json(const ComparisonTable& table) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "comparison";
  j["baseline"] = table.baseline_label;
  j["language"] = table.language;
  ordered_json columns = ordered_json::array();
  for (MetricId id : table.columns) {
    const auto& info = metric_info(id);
    columns.push_back({{"name", info.name}, {"scale", table.scaling.factor(id)}, {"direction", to_string(info.direction)}});
  }
  j["columns"] = std::move(columns);
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r = report_to_json(row.report);
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const auto& cell = row.cells[c];
      if (!cell.present) continue;
      auto& m = r["metrics"][std::string(metric_info(table.columns[c]).name)];
      m["delta"] = cell.delta ? ordered_json(*cell.delta) : ordered_json(nullptr);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["warnings"] = table.warnings;
  return j;
}

std::vector<DiversityReport> reports_from_comparison_json(const nlohmann::json& j) {
  check_schema(j);
  if (!j.contains("kind") || j["kind"] != "comparison") throw ReportError("not a comparison JSON");
  std::vector<DiversityReport> reports;
  for (const auto& row : field(j, "rows")) reports.push_back(report_from_json(row));
  return reports;
}

std::string render(const ComparisonTable& table, RenderFormat format) {
  if (format == RenderFormat::Json) return comparison_to_json(table).dump(2) + "\n";

  std::ostringstream out;
  const bool markdown = format == RenderFormat::Markdown;
  if (markdown) {
    out << "| System |";
    for (MetricId id : table.columns) {
      const auto& info = metric_info(id);
      out << ' ' << info.heading << scale_suffix(table.scaling.factor(id)) << direction_arrow(info.direction)
          << " | Δ |";
    }
    out << "\n|---|";
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << "---:|---:|";
    out << '\n';
  } else {
    out << "label";
    for (MetricId id : table.columns) {
      const auto& info = metric_info(id);
      out << ',' << info.name << ',' << info.name << "_delta";
    }
    out << '\n';
  }

  for (const auto& row : table.rows) {
    if (markdown) {
      out << "| " << markdown_escape(row.report.label) << " |";
    } else {
      out << csv_quote(row.report.label);
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      MetricId id = table.columns[c];
      double factor = table.scaling.factor(id);
      std::string value = cell_text(row.cells[c], id, markdown, factor, false);
      std::string delta = cell_text(row.cells[c], id, markdown, factor, true);
      if (markdown) {
        out << ' ' << value << " | " << delta << " |";
      } else {
        out << ',' << value << ',' << delta;
      }
    }
    out << '\n';
  }
  if (markdown) {
    for (const auto& w : table.warnings) out << "\n> warning: " << w << '\n';
  }
  return out.str();
}

}  // namespace richness
