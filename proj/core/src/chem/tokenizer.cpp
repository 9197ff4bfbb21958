#include "stackrl/chem/tokenizer.h"

#include <cctype>
#include <set>

#include "stackrl/errors.h"

namespace stackrl::chem {
namespace {

bool is_organic_single(char c) {
  switch (c) {
    case 'B': case 'C': case 'N': case 'O': case 'P': case 'S': case 'F': case 'I':
    case 'b': case 'c': case 'n': case 'o': case 'p': case 's':
      return true;
    default:
      return false;
  }
}

bool is_bond(char c) {
  return c == '-' || c == '=' || c == '#' || c == ':' || c == '/' || c == '\\';
}

}  // namespace

std::vector<Lexeme> lex_smiles(std::string_view text) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    Lexeme lx;
    lx.position = i;
    if (c == '[') {
      const auto close = text.find(']', i + 1);
      if (close == std::string_view::npos) {
        lx.kind = LexemeKind::kUnterminatedBracket;
        lx.text = std::string(text.substr(i));
        i = text.size();
      } else {
        lx.kind = LexemeKind::kBracketAtom;
        lx.text = std::string(text.substr(i, close - i + 1));
        i = close + 1;
      }
    } else if ((c == 'C' && i + 1 < text.size() && text[i + 1] == 'l') ||
               (c == 'B' && i + 1 < text.size() && text[i + 1] == 'r')) {
      lx.kind = LexemeKind::kAtom;
      lx.text = std::string(text.substr(i, 2));
      i += 2;
    } else if (is_organic_single(c)) {
      lx.kind = LexemeKind::kAtom;
      lx.text = std::string(1, c);
      ++i;
    } else if (is_bond(c)) {
      lx.kind = LexemeKind::kBond;
      lx.text = std::string(1, c);
      ++i;
    } else if (c == '(') {
      lx.kind = LexemeKind::kBranchOpen;
      lx.text = "(";
      ++i;
    } else if (c == ')') {
      lx.kind = LexemeKind::kBranchClose;
      lx.text = ")";
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      lx.kind = LexemeKind::kRingBond;
      lx.text = std::string(1, c);
      ++i;
    } else if (c == '%' && i + 2 < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[i + 1])) &&
               std::isdigit(static_cast<unsigned char>(text[i + 2]))) {
      lx.kind = LexemeKind::kRingBond;
      lx.text = std::string(text.substr(i, 3));
      i += 3;
    } else if (c == '.') {
      lx.kind = LexemeKind::kDot;
      lx.text = ".";
      ++i;
    } else {
      lx.kind = LexemeKind::kInvalid;
      lx.text = std::string(1, c);
      ++i;
    }
    out.push_back(std::move(lx));
  }
  return out;
}

std::vector<std::string> smiles_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (auto& lx : lex_smiles(text)) out.push_back(std::move(lx.text));
  return out;
}

std::vector<std::string> character_tokens(std::string_view text) {
  std::vector<std::string> out;
  out.reserve(text.size());
  for (char c : text) out.emplace_back(1, c);
  return out;
}

Vocabulary build_vocabulary(const std::vector<std::string>& texts, TokenMode mode) {
  std::set<std::string> seen;
  for (const auto& text : texts) {
    if (mode == TokenMode::kCharacters) {
      for (auto& t : character_tokens(text)) seen.insert(std::move(t));
      continue;
    }
    for (const Lexeme& lx : lex_smiles(text)) {
      if (lx.kind == LexemeKind::kInvalid || lx.kind == LexemeKind::kUnterminatedBracket) {
        for (char c : lx.text) seen.insert(std::string(1, c));
      } else {
        seen.insert(lx.text);
      }
    }
  }
  return Vocabulary(std::vector<std::string>(seen.begin(), seen.end()));
}

TokenizeResult tokenize(std::string_view text, const Vocabulary& vocab) {
  TokenizeResult result;
  if (text.empty()) {
    result.empty = true;
    return result;
  }
  const std::size_t longest = std::max<std::size_t>(1, vocab.max_token_length());
  std::size_t i = 0;
  while (i < text.size()) {
    bool matched = false;
    for (std::size_t len = std::min(longest, text.size() - i); len > 0; --len) {
      if (auto id = vocab.find(text.substr(i, len)); id && *id > kEnd) {
        result.ids.push_back(*id);
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) {
      result.unknown.push_back({i, text[i]});
      ++i;
    }
  }
  return result;
}

TokenSequence encode(std::string_view text, const Vocabulary& vocab) {
  TokenizeResult r = tokenize(text, vocab);
  if (!r.unknown.empty()) {
    throw DataError("'" + std::string(text) + "': character '" + std::string(1, r.unknown.front().character) +
                    "' at position " + std::to_string(r.unknown.front().position) + " is not in the vocabulary");
  }
  TokenSequence seq;
  seq.ids.reserve(r.ids.size() + 2);
  seq.ids.push_back(kStart);
  seq.ids.insert(seq.ids.end(), r.ids.begin(), r.ids.end());
  seq.ids.push_back(kEnd);
  return seq;
}

std::string detokenize(std::span<const TokenId> ids, const Vocabulary& vocab) {
  std::string out;
  for (TokenId id : ids) {
    if (id <= kEnd) continue;
    out += vocab.token(id);
  }
  return out;
}

}  // namespace stackrl::chem
