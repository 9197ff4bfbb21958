#ifndef STACKRL_CHEM_TOKENIZER_H_
#define STACKRL_CHEM_TOKENIZER_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stackrl/chem/vocabulary.h"

namespace stackrl::chem {

enum class LexemeKind {
  kAtom,            // organic-subset atom, aliphatic or aromatic
  kBracketAtom,     // "[...]"
  kBond,            // - = # : / '\'
  kBranchOpen,
  kBranchClose,
  kRingBond,        // digit or %nn
  kDot,
  kUnterminatedBracket,
  kInvalid,
};

struct Lexeme {
  LexemeKind kind = LexemeKind::kInvalid;
  std::string text;
  std::size_t position = 0;
};

// Splits SMILES text into syntactic units without consulting a vocabulary.
// Cl and Br are single atoms; a bracket expression is one lexeme.
std::vector<Lexeme> lex_smiles(std::string_view text);

// Lexeme texts of a SMILES string; lexing errors are included verbatim.
std::vector<std::string> smiles_tokens(std::string_view text);

// Every character as its own token (used for non-chemical corpora).
std::vector<std::string> character_tokens(std::string_view text);

enum class TokenMode { kSmiles, kCharacters };

// Sorted set of tokens observed in `texts` (SMILES lexemes or single
// characters) after the reserved ones. In SMILES mode, characters of
// unlexable input become single-character tokens.
Vocabulary build_vocabulary(const std::vector<std::string>& texts, TokenMode mode);

struct UnknownToken {
  std::size_t position = 0;
  char character = 0;
};

struct TokenizeResult {
  std::vector<TokenId> ids;
  std::vector<UnknownToken> unknown;
  bool empty = false;
  bool ok() const { return unknown.empty() && !empty; }
};

// Greedy longest-match against the vocabulary. Characters no token covers
// are reported and skipped.
TokenizeResult tokenize(std::string_view text, const Vocabulary& vocab);

// START + tokens + END. Throws DataError if any character is unknown.
TokenSequence encode(std::string_view text, const Vocabulary& vocab);

// Concatenates token text, dropping reserved tokens.
std::string detokenize(std::span<const TokenId> ids, const Vocabulary& vocab);

}  // namespace stackrl::chem

#endif  // STACKRL_CHEM_TOKENIZER_H_
