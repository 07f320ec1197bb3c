#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>

#include <absl/container/flat_hash_map.h>

namespace richness {

using TypeId = std::uint32_t;

/// String interning pool. Ids are dense, assigned in first-seen order.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(const Vocabulary& other);
  Vocabulary& operator=(const Vocabulary& other);
  Vocabulary(Vocabulary&&) noexcept = default;
  Vocabulary& operator=(Vocabulary&&) noexcept = default;

  TypeId intern(std::string_view text);
  std::optional<TypeId> find(std::string_view text) const;

  std::string_view text(TypeId id) const { return strings_[id]; }
  std::size_t size() const { return strings_.size(); }

 private:
  // deque keeps element addresses stable, so the map may key on views of them.
  std::deque<std::string> strings_;
  absl::flat_hash_map<std::string_view, TypeId> index_;
};

}  // namespace richness
