#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "richness/corpus.hpp"

namespace richness {

/// Type counts ranked by descending count, ties by ascending byte order.
class FrequencyTable {
 public:
  struct Entry {
    std::string type;
    std::uint64_t count = 0;
    bool operator==(const Entry&) const = default;
  };

  FrequencyTable() = default;

  /// `entries` need not be sorted; counts must be positive and types unique.
  static FrequencyTable from_counts(std::vector<Entry> entries);

  std::uint64_t total_tokens() const { return total_; }
  std::size_t size() const { return ranking_.size(); }
  bool empty() const { return ranking_.empty(); }

  const std::vector<Entry>& ranking() const { return ranking_; }
  std::uint64_t count(std::string_view type) const;
  /// 1-based rank, or nullopt if the type is absent.
  std::optional<std::size_t> rank(std::string_view type) const;

  /// Opaque tokenization digest of the corpus the table was built from, when known.
  const std::string& config_digest() const { return config_digest_; }
  void set_config_digest(std::string digest) { config_digest_ = std::move(digest); }

  bool operator==(const FrequencyTable& other) const {
    return total_ == other.total_ && ranking_ == other.ranking_;
  }

 private:
  std::vector<Entry> ranking_;
  absl::flat_hash_map<std::string, std::size_t> rank_index_;  // 0-based
  std::uint64_t total_ = 0;
  std::string config_digest_;
};

/// Counts token surfaces. Throws EmptyCorpusError.
FrequencyTable build_frequency_table(const AnnotatedCorpus& corpus);

/// TSV: "#total_tokens=<N>" header, optional "#config_digest=<hex>", then
/// "type<TAB>count" lines in rank order.
void write_frequency_tsv(const FrequencyTable& table, std::ostream& out);
FrequencyTable read_frequency_tsv(std::istream& in);

}  // namespace richness
