#ifndef STACKRL_CHEM_VOCABULARY_H_
#define STACKRL_CHEM_VOCABULARY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stackrl::chem {

using TokenId = std::uint32_t;

// Reserved ids. END is the first emittable token; PAD and START are never
// produced by a generator.
inline constexpr TokenId kPad = 0;
inline constexpr TokenId kStart = 1;
inline constexpr TokenId kEnd = 2;
inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kStartToken = "<start>";
inline constexpr std::string_view kEndToken = "<end>";

// The action alphabet: reserved tokens at ids 0..2, then ordinary tokens.
class Vocabulary {
 public:
  Vocabulary();
  // Ordinary tokens only; reserved ones are prepended. Throws DataError on
  // duplicates, empty tokens or reserved names.
  explicit Vocabulary(const std::vector<std::string>& tokens);
  // Full id-ordered list including the reserved tokens (checkpoint form).
  static Vocabulary from_full_list(const std::vector<std::string>& all);

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(TokenId id) const { return tokens_.at(id); }
  std::optional<TokenId> find(std::string_view token) const;
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t max_token_length() const { return max_len_; }

  // Generator output layer covers END and the ordinary tokens.
  std::size_t emittable_count() const { return tokens_.size() - kEnd; }
  static TokenId from_output_index(std::size_t o) { return static_cast<TokenId>(o + kEnd); }
  static std::size_t to_output_index(TokenId id) { return id - kEnd; }

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  void add(std::string token);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
  std::size_t max_len_ = 0;
};

// Token ids of one string. Sequences fed to or produced by the generator
// start with START; terminal ones end with END.
struct TokenSequence {
  std::vector<TokenId> ids;

  bool terminal() const { return !ids.empty() && ids.back() == kEnd; }
  std::size_t size() const { return ids.size(); }
  bool operator==(const TokenSequence&) const = default;
};

}  // namespace stackrl::chem

#endif  // STACKRL_CHEM_VOCABULARY_H_
