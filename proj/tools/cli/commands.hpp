#pragma once

#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "cli/run_config.hpp"
#include "richness/report.hpp"

namespace richness::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kInputError = 2,
  kNoComputableMetric = 3,
};

enum class InputFormat { Text, Conllu, Tsv3 };

struct FreqArgs {
  std::string input;
  InputFormat format = InputFormat::Text;
  std::optional<std::string> out;  // stdout when absent
  RunConfig config;
};

struct AnalyzeArgs {
  std::string input;
  InputFormat format = InputFormat::Text;
  std::optional<std::string> reference;
  std::optional<std::string> lexicon;
  std::optional<std::string> source;
  InputFormat source_format = InputFormat::Conllu;
  std::string label = "corpus";
  std::string language = "und";
  std::string source_language = "und";
  std::optional<std::string> out;
  std::set<std::string> required;  // metric groups: lexical, lfp, synonyms, morphology
  RunConfig config;
};

struct CompareArgs {
  std::vector<std::string> reports;
  std::string baseline;
  RenderFormat format = RenderFormat::Markdown;
  std::optional<std::string> out;
};

int cmd_freq(const FreqArgs& args, std::ostream& out, std::ostream& err);
int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);
int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& err);

/// Loads and normalises a corpus the way every command does: case folding
/// per config, exclusion only when enabled.
AnnotatedCorpus load_corpus(const std::string& path, InputFormat format, const RunConfig& config,
                            const std::string& language, const std::string& label);

/// Full command line entry point ("freq", "analyze", "compare").
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace richness::cli
