#include "stackrl/chem/vocabulary.h"

#include "stackrl/errors.h"

namespace stackrl::chem {

Vocabulary::Vocabulary() {
  add(std::string(kPadToken));
  add(std::string(kStartToken));
  add(std::string(kEndToken));
}

Vocabulary::Vocabulary(const std::vector<std::string>& tokens) : Vocabulary() {
  for (const auto& t : tokens) {
    if (t == kPadToken || t == kStartToken || t == kEndToken) {
      throw DataError("vocabulary token '" + t + "' is reserved");
    }
    add(t);
  }
}

Vocabulary Vocabulary::from_full_list(const std::vector<std::string>& all) {
  if (all.size() < 3 || all[kPad] != kPadToken || all[kStart] != kStartToken || all[kEnd] != kEndToken) {
    throw DataError("vocabulary must begin with the reserved tokens");
  }
  return Vocabulary(std::vector<std::string>(all.begin() + 3, all.end()));
}

void Vocabulary::add(std::string token) {
  if (token.empty()) throw DataError("empty vocabulary token");
  if (index_.count(token)) throw DataError("duplicate vocabulary token '" + token + "'");
  const auto id = static_cast<TokenId>(tokens_.size());
  if (id > kEnd) max_len_ = std::max(max_len_, token.size());
  index_.emplace(token, id);
  tokens_.push_back(std::move(token));
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace stackrl::chem
