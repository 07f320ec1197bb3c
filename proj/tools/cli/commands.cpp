#include "cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "richness/error.hpp"
#include "richness/frequency.hpp"
#include "richness/lexical.hpp"
#include "richness/morphology.hpp"
#include "richness/synonyms.hpp"
#include "richness/text.hpp"

namespace richness::cli {
namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

/// "basename:fnv64 of content".
std::string file_identifier(const std::string& path) {
  std::ifstream in = open_input(path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::vector<char> buf(1 << 20);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[static_cast<std::size_t>(i)]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return std::filesystem::path(path).filename().string() + ":" + hex;
}

template <typename Fn>
void write_output(const std::optional<std::string>& path, std::ostream& out, Fn&& fn) {
  if (!path) {
    fn(out);
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw IoError("cannot write '" + *path + "'");
  fn(file);
  if (!file) throw IoError("error writing '" + *path + "'");
}

absl::flat_hash_set<std::string> exclusion_set(const RunConfig& config) {
  absl::flat_hash_set<std::string> set;
  if (!config.exclude_unk) return set;
  // Surfaces are folded before exclusion, so the blocklist must be too.
  for (const auto& t : config.unk_tokens) set.insert(config.lowercase ? text::fold_case(t) : t);
  return set;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e) || dynamic_cast<const ConfigError*>(&e)) return kUsageError;
  return kInputError;
}

InputFormat parse_input_format(const std::string& name) {
  if (name == "text") return InputFormat::Text;
  if (name == "conllu") return InputFormat::Conllu;
  if (name == "tsv3") return InputFormat::Tsv3;
  throw UsageError("unknown input format '" + name + "'");
}

RenderFormat parse_render_format(const std::string& name) {
  if (name == "markdown") return RenderFormat::Markdown;
  if (name == "csv") return RenderFormat::Csv;
  if (name == "json") return RenderFormat::Json;
  throw UsageError("unknown output format '" + name + "'");
}

}  // namespace

AnnotatedCorpus load_corpus(const std::string& path, InputFormat format, const RunConfig& config,
                            const std::string& language, const std::string& label) {
  std::ifstream in = open_input(path);
  AnnotatedCorpus corpus;
  if (format == InputFormat::Text) {
    corpus = load_plain_text(in, {.lowercase = config.lowercase, .language = language, .label = label});
  } else {
    corpus = load_annotated(in, format == InputFormat::Conllu ? AnnotatedFormat::Conllu : AnnotatedFormat::Tsv3,
                            language, label);
    if (config.lowercase) corpus = fold_surfaces(corpus);
  }
  if (config.exclude_unk) corpus = exclude_tokens(corpus, exclusion_set(config));
  return corpus;
}

// ---------------------------------------------------------------------------
// freq

int cmd_freq(const FreqArgs& args, std::ostream& out, std::ostream& err) {
  try {
    args.config.validate();
    AnnotatedCorpus corpus = load_corpus(args.input, args.format, args.config, "und", {});
    FrequencyTable table = build_frequency_table(corpus);
    table.set_config_digest(args.config.tokenization_digest());
    write_output(args.out, out, [&](std::ostream& o) { write_frequency_tsv(table, o); });
    std::ostream& summary = args.out ? out : err;
    summary << "total_tokens\t" << table.total_tokens() << "\ntypes\t" << table.size() << '\n';
    return kSuccess;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

// ---------------------------------------------------------------------------
// analyze

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
  for (const auto& group : args.required) {
    if (group != "lexical" && group != "lfp" && group != "synonyms" && group != "morphology") {
      err << "error: unknown metric group '" << group << "'\n";
      return kUsageError;
    }
  }
  try {
    const RunConfig& config = args.config;
    config.validate();
    Provenance provenance;
    provenance.config_digest = config.digest();
    provenance.inputs.push_back("corpus=" + file_identifier(args.input));

    AnnotatedCorpus corpus = load_corpus(args.input, args.format, config, args.language, args.label);
    AssembleInputs inputs;
    inputs.input_languages.push_back(args.language);
    std::set<std::string> computed;
    auto skip = [&](const std::string& group, const std::string& reason) {
      provenance.skipped.push_back(group + ": " + reason);
      err << "warning: skipped " << group << ": " << reason << '\n';
    };
    auto attempt = [&](const std::string& group, auto&& fn) {
      try {
        fn();
        computed.insert(group);
      } catch (const EmptyCorpusError& e) {
        skip(group, e.what());
      } catch (const MetricError& e) {
        skip(group, e.what());
      }
    };

    attempt("lexical", [&] { inputs.lexical = lexical_scores(corpus, config.mtld_threshold); });

    if (args.reference) {
      std::ifstream in = open_input(*args.reference);
      FrequencyTable reference = read_frequency_tsv(in);
      provenance.inputs.push_back("reference=" + file_identifier(*args.reference));
      if (!reference.config_digest().empty() && reference.config_digest() != config.tokenization_digest()) {
        err << "warning: reference frequency list was built with tokenization digest " << reference.config_digest()
            << ", this run uses " << config.tokenization_digest() << '\n';
      }
      attempt("lfp", [&] { inputs.bands = lfp(corpus, reference, config.band_edges); });
    } else {
      skip("lfp", "no --reference frequency list");
    }

    if (!corpus.lemmatized()) {
      skip("morphology", "input is not lemmatized (use --format conllu or tsv3)");
    } else {
      attempt("morphology", [&] {
        ParadigmTable table = build_paradigms(corpus, config.paradigm_pos_excluded);
        inputs.morph = aggregate(table, {.min_wordforms = config.min_wordforms,
                                         .weighting = config.lemma_weighting,
                                         .simpson = config.simpson});
      });
    }

    std::vector<std::string> missing;
    if (!args.lexicon) missing.push_back("--lexicon");
    if (!args.source) missing.push_back("--source");
    if (!corpus.lemmatized()) missing.push_back("lemmatized input");
    if (missing.empty()) {
      std::ifstream lex_in = open_input(*args.lexicon);
      BilingualLexicon lexicon = load_lexicon(lex_in);
      provenance.inputs.push_back("lexicon=" + file_identifier(*args.lexicon));
      if (lexicon.duplicate_count() > 0) {
        err << "warning: lexicon has " << lexicon.duplicate_count() << " duplicate option line(s)\n";
      }
      // The source is the untranslated side; only its lemmas and POS tags matter.
      RunConfig source_config = config;
      source_config.exclude_unk = false;
      AnnotatedCorpus source =
          load_corpus(*args.source, args.source_format, source_config, args.source_language, "source");
      provenance.inputs.push_back("source=" + file_identifier(*args.source));
      if (!source.lemmatized()) {
        skip("synonyms", "source corpus is not lemmatized");
      } else {
        attempt("synonyms", [&] {
          auto distributions = extract_distributions(source, corpus, lexicon, config.pos_filter);
          inputs.synonym = synonym_scores(distributions);
        });
      }
    } else {
      std::string reason = "missing";
      for (const auto& m : missing) reason += " " + m;
      skip("synonyms", reason);
    }

    if (computed.empty()) {
      err << "error: no metric could be computed\n";
      return kNoComputableMetric;
    }
    DiversityReport report =
        assemble(args.label, args.language, std::move(inputs), std::move(provenance), config.scaling());
    write_output(args.out, out, [&](std::ostream& o) { o << report_to_json(report).dump(2) << '\n'; });

    for (const auto& group : args.required) {
      if (!computed.count(group)) {
        err << "error: required metric group '" << group << "' was not computed\n";
        return kNoComputableMetric;
      }
    }
    return kSuccess;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

// ---------------------------------------------------------------------------
// compare

int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& err) {
  try {
    std::vector<DiversityReport> reports;
    for (const auto& path : args.reports) {
      std::ifstream in = open_input(path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw ReportError("'" + path + "' is not valid JSON: " + e.what());
      }
      if (j.is_object() && j.contains("kind") && j["kind"] == "comparison") {
        for (auto& r : reports_from_comparison_json(j)) reports.push_back(std::move(r));
      } else {
        reports.push_back(report_from_json(j));
      }
    }
    if (reports.size() < 2) throw UsageError("compare needs at least two reports");
    bool has_baseline = false;
    for (const auto& r : reports) has_baseline |= r.label == args.baseline;
    if (!has_baseline) throw UsageError("baseline '" + args.baseline + "' not among the reports");

    ComparisonTable table = compare(std::move(reports), args.baseline);
    for (const auto& w : table.warnings) err << "warning: " << w << '\n';
    write_output(args.out, out, [&](std::ostream& o) { o << render(table, args.format); });
    return kSuccess;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

// ---------------------------------------------------------------------------
// command line

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"richness: lexical and morphological diversity of corpora"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> exclude;
  bool lowercase = false;
  bool no_lowercase = false;
  auto add_config_options = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value config file")->check(CLI::ExistingFile);
    cmd->add_option("--exclude-token", exclude, "drop tokens with this surface (repeatable)");
    cmd->add_flag("--lowercase", lowercase, "case-fold surfaces (default)");
    cmd->add_flag("--no-lowercase", no_lowercase, "keep surfaces as written");
  };

  std::string format = "text";
  std::string input;
  std::optional<std::string> out_path;

  auto* freq = app.add_subcommand("freq", "build a reference frequency list");
  freq->add_option("input", input, "corpus file")->required();
  freq->add_option("--format", format, "text, conllu or tsv3");
  freq->add_option("--out", out_path, "output TSV (default: stdout)");
  add_config_options(freq);

  AnalyzeArgs analyze_args;
  std::string source_format = "conllu";
  std::vector<std::string> required;
  auto* analyze = app.add_subcommand("analyze", "compute every metric whose inputs are available");
  analyze->add_option("input", input, "corpus file")->required();
  analyze->add_option("--format", format, "text, conllu or tsv3");
  analyze->add_option("--reference", analyze_args.reference, "reference frequency list (TSV)");
  analyze->add_option("--lexicon", analyze_args.lexicon, "bilingual lexicon (TSV)");
  analyze->add_option("--source", analyze_args.source, "lemmatized source-language corpus");
  analyze->add_option("--source-format", source_format, "conllu or tsv3");
  analyze->add_option("--label", analyze_args.label, "system label, e.g. ORIG or TRANS");
  analyze->add_option("--language", analyze_args.language, "ISO 639-1 code of the corpus");
  analyze->add_option("--source-language", analyze_args.source_language, "ISO 639-1 code of the source");
  analyze->add_option("--require", required, "fail unless this metric group is computed (repeatable)");
  analyze->add_option("--out", out_path, "output JSON (default: stdout)");
  add_config_options(analyze);

  CompareArgs compare_args;
  std::string render_format = "markdown";
  auto* cmp = app.add_subcommand("compare", "compare reports against a baseline");
  cmp->add_option("reports", compare_args.reports, "report or comparison JSON files")->required();
  cmp->add_option("--baseline", compare_args.baseline, "baseline label")->required();
  cmp->add_option("--format", render_format, "markdown, csv or json");
  cmp->add_option("--out", out_path, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  auto build_config = [&]() {
    RunConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw IoError("cannot open config '" + config_path + "'");
      config = load_config(in);
    }
    if (lowercase && no_lowercase) throw UsageError("--lowercase and --no-lowercase are exclusive");
    if (lowercase) config.lowercase = true;
    if (no_lowercase) config.lowercase = false;
    if (!exclude.empty()) {
      config.exclude_unk = true;
      config.unk_tokens = std::set<std::string>(exclude.begin(), exclude.end());
    }
    config.validate();
    return config;
  };

  try {
    if (*freq) {
      FreqArgs args{input, parse_input_format(format), out_path, build_config()};
      return cmd_freq(args, out, err);
    }
    if (*analyze) {
      analyze_args.input = input;
      analyze_args.format = parse_input_format(format);
      analyze_args.source_format = parse_input_format(source_format);
      analyze_args.out = out_path;
      analyze_args.required = std::set<std::string>(required.begin(), required.end());
      analyze_args.config = build_config();
      return cmd_analyze(analyze_args, out, err);
    }
    compare_args.format = parse_render_format(render_format);
    compare_args.out = out_path;
    return cmd_compare(compare_args, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace richness::cli
