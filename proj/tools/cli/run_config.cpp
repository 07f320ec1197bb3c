#include "cli/run_config.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <vector>

#include "richness/error.hpp"

namespace richness::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> items;
  while (!value.empty()) {
    std::size_t comma = value.find(',');
    std::string_view item = trim(value.substr(0, comma));
    if (!item.empty()) items.push_back(item);
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return items;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(std::string(key) + ": expected a boolean, got '" + std::string(value) + "'");
}

std::size_t parse_size(std::string_view key, std::string_view value) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(value) + "'");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  std::string s(value);
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + s + "'");
  }
  return out;
}

std::set<Upos> parse_upos_set(std::string_view key, std::string_view value) {
  std::set<Upos> out;
  for (auto item : split_list(value)) {
    auto tag = parse_upos(item);
    if (!tag) throw ConfigError(std::string(key) + ": unknown UPOS tag '" + std::string(item) + "'");
    out.insert(*tag);
  }
  return out;
}

std::string join_upos(const std::set<Upos>& tags) {
  std::string out;
  for (Upos t : tags) {
    if (!out.empty()) out += ',';
    out += to_string(t);
  }
  return out;
}

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void RunConfig::validate() const {
  if (band_edges.first == 0 || band_edges.second <= band_edges.first) {
    throw ConfigError("band_edges must be positive and strictly increasing");
  }
  if (!(mtld_threshold > 0.0 && mtld_threshold < 1.0)) throw ConfigError("mtld_threshold must lie in (0, 1)");
  if (min_wordforms < 2) throw ConfigError("min_wordforms must be at least 2");
  if (!(synttr_scale > 0) || !(ptf_scale > 0) || !(cdu_scale > 0)) throw ConfigError("scales must be positive");
  if (pos_filter.empty()) throw ConfigError("pos_filter must not be empty");
}

void RunConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "lowercase") {
    lowercase = parse_bool(key, value);
  } else if (key == "exclude_unk") {
    exclude_unk = parse_bool(key, value);
  } else if (key == "unk_tokens") {
    unk_tokens.clear();
    for (auto item : split_list(value)) unk_tokens.emplace(item);
  } else if (key == "band_edges") {
    auto items = split_list(value);
    if (items.size() != 2) throw ConfigError("band_edges: expected two comma-separated ranks");
    band_edges = {parse_size(key, items[0]), parse_size(key, items[1])};
  } else if (key == "mtld_threshold") {
    mtld_threshold = parse_double(key, value);
  } else if (key == "pos_filter") {
    pos_filter = parse_upos_set(key, value);
  } else if (key == "min_wordforms") {
    min_wordforms = parse_size(key, value);
  } else if (key == "synttr_scale") {
    synttr_scale = parse_double(key, value);
  } else if (key == "ptf_scale") {
    ptf_scale = parse_double(key, value);
  } else if (key == "cdu_scale") {
    cdu_scale = parse_double(key, value);
  } else if (key == "paradigm_pos_excluded") {
    paradigm_pos_excluded = parse_upos_set(key, value);
  } else if (key == "simpson") {
    if (value == "sum_of_squares") {
      simpson = SimpsonVariant::SumOfSquares;
    } else if (value == "reciprocal") {
      simpson = SimpsonVariant::Reciprocal;
    } else {
      throw ConfigError("simpson: expected sum_of_squares or reciprocal");
    }
  } else if (key == "lemma_weighting") {
    if (value == "unweighted") {
      lemma_weighting = LemmaWeighting::Unweighted;
    } else if (value == "token") {
      lemma_weighting = LemmaWeighting::TokenWeighted;
    } else {
      throw ConfigError("lemma_weighting: expected unweighted or token");
    }
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

std::string RunConfig::canonical() const {
  std::ostringstream out;
  out << "band_edges=" << band_edges.first << ',' << band_edges.second << '\n';
  out << "cdu_scale=" << number(cdu_scale) << '\n';
  out << "exclude_unk=" << (exclude_unk ? "true" : "false") << '\n';
  out << "lemma_weighting=" << (lemma_weighting == LemmaWeighting::Unweighted ? "unweighted" : "token") << '\n';
  out << "lowercase=" << (lowercase ? "true" : "false") << '\n';
  out << "min_wordforms=" << min_wordforms << '\n';
  out << "mtld_threshold=" << number(mtld_threshold) << '\n';
  out << "paradigm_pos_excluded=" << join_upos(paradigm_pos_excluded) << '\n';
  out << "pos_filter=" << join_upos(pos_filter) << '\n';
  out << "ptf_scale=" << number(ptf_scale) << '\n';
  out << "simpson=" << (simpson == SimpsonVariant::SumOfSquares ? "sum_of_squares" : "reciprocal") << '\n';
  out << "synttr_scale=" << number(synttr_scale) << '\n';
  out << "unk_tokens=";
  bool first = true;
  for (const auto& t : unk_tokens) {
    out << (first ? "" : ",") << t;
    first = false;
  }
  out << '\n';
  return out.str();
}

std::string RunConfig::digest() const { return fnv1a_hex(canonical()); }

std::string RunConfig::tokenization_digest() const {
  std::string key = std::string("lowercase=") + (lowercase ? "true" : "false") + "\nexclude=";
  if (exclude_unk) {
    for (const auto& t : unk_tokens) key += t + ",";
  }
  return fnv1a_hex(key);
}

Scaling RunConfig::scaling() const {
  Scaling s;
  s.syn_ttr = synttr_scale;
  s.ptf = ptf_scale;
  s.cdu = cdu_scale;
  return s;
}

RunConfig load_config(std::istream& in, RunConfig base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    std::size_t eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    base.set(trim(view.substr(0, eq)), view.substr(eq + 1));
  }
  base.validate();
  return base;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace richness::cli
