#include "richness/vocabulary.hpp"

namespace richness {

Vocabulary::Vocabulary(const Vocabulary& other) : strings_(other.strings_) {
  index_.reserve(strings_.size());
  for (std::size_t i = 0; i < strings_.size(); ++i) {
    index_.emplace(std::string_view(strings_[i]), static_cast<TypeId>(i));
  }
}

Vocabulary& Vocabulary::operator=(const Vocabulary& other) {
  if (this != &other) *this = Vocabulary(other);
  return *this;
}

TypeId Vocabulary::intern(std::string_view text) {
  if (auto it = index_.find(text); it != index_.end()) return it->second;
  auto id = static_cast<TypeId>(strings_.size());
  strings_.emplace_back(text);
  index_.emplace(std::string_view(strings_.back()), id);
  return id;
}

std::optional<TypeId> Vocabulary::find(std::string_view text) const {
  if (auto it = index_.find(text); it != index_.end()) return it->second;
  return std::nullopt;
}

}  // namespace richness
