#include "richness/frequency.hpp"

#include <algorithm>
#include <charconv>

#include "richness/error.hpp"

namespace richness {
namespace {

constexpr std::string_view kTotalHeader = "#total_tokens=";
constexpr std::string_view kDigestHeader = "#config_digest=";

std::uint64_t parse_count(std::string_view field, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line_no, "bad count '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

FrequencyTable FrequencyTable::from_counts(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.type < b.type;
  });
  FrequencyTable table;
  table.rank_index_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].count == 0) throw Error("frequency table entry '" + entries[i].type + "' has zero count");
    if (!table.rank_index_.emplace(entries[i].type, i).second) {
      throw Error("duplicate frequency table entry '" + entries[i].type + "'");
    }
    table.total_ += entries[i].count;
  }
  table.ranking_ = std::move(entries);
  return table;
}

std::uint64_t FrequencyTable::count(std::string_view type) const {
  auto it = rank_index_.find(absl::string_view(type.data(), type.size()));
  return it == rank_index_.end() ? 0 : ranking_[it->second].count;
}

std::optional<std::size_t> FrequencyTable::rank(std::string_view type) const {
  auto it = rank_index_.find(absl::string_view(type.data(), type.size()));
  if (it == rank_index_.end()) return std::nullopt;
  return it->second + 1;
}

FrequencyTable build_frequency_table(const AnnotatedCorpus& corpus) {
  if (corpus.empty()) throw EmptyCorpusError();
  const Vocabulary& vocab = corpus.vocabulary();
  std::vector<std::uint64_t> counts(vocab.size(), 0);
  for (TypeId id : corpus.surface_ids()) ++counts[id];

  std::vector<FrequencyTable::Entry> entries;
  for (TypeId id = 0; id < counts.size(); ++id) {
    if (counts[id] > 0) entries.push_back({std::string(vocab.text(id)), counts[id]});
  }
  return FrequencyTable::from_counts(std::move(entries));
}

void write_frequency_tsv(const FrequencyTable& table, std::ostream& out) {
  out << kTotalHeader << table.total_tokens() << '\n';
  if (!table.config_digest().empty()) out << kDigestHeader << table.config_digest() << '\n';
  for (const auto& [type, count] : table.ranking()) out << type << '\t' << count << '\n';
}

FrequencyTable read_frequency_tsv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::uint64_t> declared_total;
  std::string digest;
  std::vector<FrequencyTable::Entry> entries;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string_view view = line;
    if (view.starts_with(kTotalHeader)) {
      declared_total = parse_count(view.substr(kTotalHeader.size()), line_no);
      continue;
    }
    if (view.starts_with(kDigestHeader)) {
      digest = std::string(view.substr(kDigestHeader.size()));
      continue;
    }
    std::size_t tab = view.rfind('\t');
    if (tab == std::string_view::npos || tab == 0) throw ParseError(line_no, "expected type<TAB>count");
    std::uint64_t count = parse_count(view.substr(tab + 1), line_no);
    if (count == 0) throw ParseError(line_no, "zero count");
    entries.push_back({std::string(view.substr(0, tab)), count});
  }
  if (!declared_total) throw ParseError(line_no, "missing #total_tokens header");
  FrequencyTable table = FrequencyTable::from_counts(std::move(entries));
  if (table.total_tokens() != *declared_total) {
    throw ParseError(line_no, "counts sum to " + std::to_string(table.total_tokens()) + " but header declares " +
                                  std::to_string(*declared_total));
  }
  table.set_config_digest(std::move(digest));
  return table;
}

}  // namespace richness
