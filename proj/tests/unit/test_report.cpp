#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "richness/error.hpp"
#include "richness/report.hpp"

using namespace richness;

namespace {

LexicalScores lex(double ttr, std::optional<double> yule = 1.5, double mtld = 80) {
  return LexicalScores{ttr, yule, mtld, 1000, static_cast<std::size_t>(ttr * 1000)};
}

DiversityReport full(const std::string& label, double h = 0.7520) {
  AssembleInputs in;
  in.lexical = lex(0.00302);
  in.bands = BandProfile{79.80, 6.59, 13.61, {1000, 2000}};
  in.synonym = SynonymScores{0.41, 0.33, 0.0005615, 12};
  in.morph = MorphAggregate{h, 0.31, 40, 60};
  return assemble(label, "fr", in, {{"input=x:0"}, "digest", {}});
}

std::size_t column_of(const ComparisonTable& t, MetricId id) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (t.columns[c] == id) return c;
  }
  FAIL("missing column");
  return 0;
}

// Splits CSV/markdown rows into cells; labels here contain no separators.
std::vector<std::vector<std::string>> cells(const std::string& text, char sep) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '>') continue;
    std::vector<std::string> row;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, sep)) {
      auto b = cell.find_first_not_of(' ');
      auto e = cell.find_last_not_of(' ');
      cell = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
      if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') cell = cell.substr(1, cell.size() - 2);
      row.push_back(cell);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_SUITE("assemble") {
  TEST_CASE("lexical-only report leaves other sections absent") {
    AssembleInputs in;
    in.lexical = lex(0.5);
    auto r = assemble("sys", "en", in);
    CHECK(r.lexical);
    CHECK_FALSE(r.bands);
    CHECK_FALSE(r.synonym);
    CHECK_FALSE(r.morph);
    CHECK(r.metrics().size() == 5);
  }

  TEST_CASE("all sections present") {
    auto r = full("ORIG");
    CHECK(r.metrics().size() == metric_catalog().size());
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(assemble("x", "en", {}), ReportError);
    AssembleInputs in;
    in.lexical = lex(0.5);
    in.input_languages = {"fr", "es"};
    CHECK_THROWS_AS(assemble("x", "und", in), ReportError);
    in.input_languages = {"fr", "und"};
    CHECK(assemble("x", "und", in).language == "fr");
  }
}

TEST_SUITE("compare") {
  TEST_CASE("identical reports have zero deltas") {
    auto t = compare({full("A"), full("B")}, "A");
    for (const auto& row : t.rows) {
      for (const auto& cell : row.cells) {
        REQUIRE(cell.delta);
        CHECK(*cell.delta == 0.0);
      }
    }
  }

  TEST_CASE("baseline deltas are exactly zero and come first") {
    auto t = compare({full("PB-SMT", 0.69), full("ORIG"), full("LSTM", 0.7)}, "ORIG");
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].report.label == "ORIG");
    CHECK(t.rows[1].report.label == "LSTM");
    CHECK(t.rows[2].report.label == "PB-SMT");
    for (const auto& cell : t.rows[0].cells) CHECK(*cell.delta == 0.0);
  }

  TEST_CASE("H delta") {
    auto t = compare({full("ORIG", 0.7520), full("PB-SMT", 0.6900)}, "ORIG");
    auto c = column_of(t, MetricId::MorphH);
    CHECK(*t.rows[1].cells[c].delta == doctest::Approx(-0.0620).epsilon(1e-12));
    auto md = render(t, RenderFormat::Markdown);
    CHECK(md.find("| 69.00 | -6.20 |") != std::string::npos);
  }

  TEST_CASE("missing section is absent, not zero") {
    AssembleInputs in;
    in.lexical = lex(0.00302);
    auto partial = assemble("PB-SMT", "fr", in, {{}, "digest", {}});
    auto t = compare({full("ORIG"), partial}, "ORIG");
    auto c = column_of(t, MetricId::MorphH);
    CHECK_FALSE(t.rows[1].cells[c].present);
    CHECK_FALSE(t.rows[1].cells[c].delta);
    auto rows = cells(render(t, RenderFormat::Csv), ',');
    auto header = rows[0];
    auto h = std::find(header.begin(), header.end(), "h") - header.begin();
    CHECK(rows[2][static_cast<std::size_t>(h)] == "");
  }

  TEST_CASE("errors and warnings") {
    CHECK_THROWS_AS(compare({full("A"), full("B")}, "C"), ReportError);
    CHECK_THROWS_AS(compare({full("A"), full("A")}, "A"), ReportError);
    auto other = full("B");
    other.language = "es";
    CHECK_THROWS_AS(compare({full("A"), other}, "A"), ReportError);
    auto drift = full("B");
    drift.provenance.config_digest = "other";
    CHECK(compare({full("A"), drift}, "A").warnings.size() == 1);
  }
}

TEST_SUITE("render") {
  TEST_CASE("display scaling") {
    CHECK(format_display(0.00302 * 1000) == "3.02");
    CHECK(format_display(0.1811 * 100) == "18.11");
    CHECK(format_display(2.345) == "2.35");
    CHECK(format_display(-0.001) == "0.00");
    auto md = render(compare({full("ORIG")}, "ORIG"), RenderFormat::Markdown);
    CHECK(md.find("| 3.02 |") != std::string::npos);
    CHECK(md.find("TTR ×1000 ↑") != std::string::npos);
    CHECK(md.find("| 1000 |") != std::string::npos);  // token count as an integer
  }

  TEST_CASE("undefined Yule's I") {
    AssembleInputs in;
    in.lexical = lex(1.0, std::nullopt);
    auto r = assemble("hapax", "en", in);
    auto t = compare({r}, "hapax");
    CHECK(render(t, RenderFormat::Markdown).find("| — |") != std::string::npos);
    CHECK(render(t, RenderFormat::Csv).find(",undefined,") != std::string::npos);
    auto j = report_to_json(r);
    CHECK(j["metrics"]["yules_i"]["raw"].is_null());
    CHECK(j["metrics"]["yules_i"]["undefined_reason"].get<std::string>().size() > 0);
  }

  TEST_CASE("json report schema") {
    auto j = report_to_json(full("ORIG"));
    CHECK(j["schema_version"] == kReportSchemaVersion);
    CHECK(j["metrics"]["ttr"]["raw"] == 0.00302);
    CHECK(j["metrics"]["ttr"]["scale"] == 1000.0);
    CHECK(j["metrics"]["ttr"]["direction"] == "up");
    CHECK(j["metrics"]["d"]["direction"] == "down");
    CHECK(j["provenance"]["config_digest"] == "digest");
    auto bad = j;
    bad["schema_version"] = 99;
    CHECK_THROWS_AS(report_from_json(bad), ReportError);
  }

  TEST_CASE("json round trip is a fixed point") {
    auto first = report_to_json(full("ORIG")).dump();
    auto second = report_to_json(report_from_json(nlohmann::json::parse(first))).dump();
    CHECK(first == second);

    auto t = compare({full("ORIG"), full("PB-SMT", 0.69)}, "ORIG");
    auto rendered = render(t, RenderFormat::Json);
    auto again = render(compare(reports_from_comparison_json(nlohmann::json::parse(rendered)), "ORIG"),
                        RenderFormat::Json);
    CHECK(rendered == again);
  }

  TEST_CASE("csv and markdown carry the same numbers") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<DiversityReport> reports;
      for (int s = 0; s < 3; ++s) {
        AssembleInputs in;
        in.lexical = lex(u(rng), u(rng), 100 * u(rng));
        in.morph = MorphAggregate{u(rng), u(rng), 3, 4};
        reports.push_back(assemble("s" + std::to_string(s), "en", in));
      }
      auto t = compare(reports, "s0");
      auto md = cells(render(t, RenderFormat::Markdown), '|');
      auto csv = cells(render(t, RenderFormat::Csv), ',');
      REQUIRE(md.size() == csv.size() + 1);  // markdown separator row
      for (std::size_t r = 1; r < csv.size(); ++r) {
        // markdown rows start with an empty cell before the first '|'
        std::vector<std::string> md_row(md[r + 1].begin() + 1, md[r + 1].end());
        CHECK(md_row == csv[r]);
      }
    }
  }

  TEST_CASE("display scaling preserves ranking") {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> u(0.0, 0.01);
    Scaling scaling;
    for (int trial = 0; trial < 1000; ++trial) {
      double a = u(rng), b = u(rng);
      for (const auto& info : metric_catalog()) {
        double f = scaling.factor(info.id);
        if (a < b) CHECK(a * f <= b * f);
        if (a * f < b * f) CHECK(a < b);
        // Rounded display never inverts an order either.
        if (a <= b) CHECK(std::stod(format_display(a * f)) <= std::stod(format_display(b * f)));
      }
    }
  }
}
