#include "stackrl/chem/validator.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <span>

#include "stackrl/chem/tokenizer.h"
#include "valence.h"

namespace stackrl::chem {
namespace detail {
namespace {

std::span<const int> allowed_valences(std::string_view element) {
  static constexpr int kB[] = {3};
  static constexpr int kC[] = {4};
  static constexpr int kN[] = {3, 5};
  static constexpr int kO[] = {2};
  static constexpr int kP[] = {3, 5};
  static constexpr int kS[] = {2, 4, 6};
  static constexpr int kHalogen[] = {1};
  if (element == "B") return kB;
  if (element == "C") return kC;
  if (element == "N") return kN;
  if (element == "O") return kO;
  if (element == "P") return kP;
  if (element == "S") return kS;
  if (element == "F" || element == "Cl" || element == "Br" || element == "I") return kHalogen;
  return {};
}

}  // namespace

std::optional<int> implicit_hydrogens(std::string_view element, bool aromatic, int bond_sum, bool has_double) {
  if (aromatic) {
    if (element == "N" || element == "P") {
      if (bond_sum >= 2 && bond_sum <= 3) return 0;
      return std::nullopt;
    }
    if (element == "O" || element == "S") {
      if (bond_sum == 2) return 0;
      return std::nullopt;
    }
    const int effective = bond_sum + (has_double ? 0 : 1);
    const auto allowed = allowed_valences(element);
    if (allowed.empty()) return std::nullopt;
    if (effective > allowed.back()) return std::nullopt;
    return allowed.back() - effective;
  }
  for (int v : allowed_valences(element)) {
    if (v >= bond_sum) return v - bond_sum;
  }
  return std::nullopt;
}

bool bracket_valence_ok(const Atom& atom, int bond_sum, bool has_double) {
  if (atom.charge != 0 || !is_organic_subset(atom.element)) return true;
  const int total = bond_sum + atom.hydrogens;
  if (atom.aromatic) {
    if (atom.element == "N" || atom.element == "P") return total >= 2 && total <= 3;
    if (atom.element == "O" || atom.element == "S") return total == 2;
    const int effective = total + (has_double ? 0 : 1);
    const auto allowed = allowed_valences(atom.element);
    return !allowed.empty() && effective <= allowed.back();
  }
  const auto allowed = allowed_valences(atom.element);
  return !allowed.empty() && total <= allowed.back();
}

bool has_double_bond(const MoleculeGraph& g, std::size_t atom) {
  for (std::size_t id : g.incident(atom)) {
    if (g.bond(id).order == BondOrder::kDouble) return true;
  }
  return false;
}

}  // namespace detail

std::string_view failure_kind_name(FailureKind kind) {
  switch (kind) {
    case FailureKind::kToken: return "token";
    case FailureKind::kParenthesis: return "parenthesis";
    case FailureKind::kRingClosure: return "ring-closure";
    case FailureKind::kBracketAtom: return "bracket-atom";
    case FailureKind::kValence: return "valence";
    case FailureKind::kEmpty: return "empty";
  }
  return "unknown";
}

bool ValidityReport::has(FailureKind kind) const {
  return std::any_of(failures.begin(), failures.end(), [&](const auto& f) { return f.kind == kind; });
}

std::string ValidityReport::summary() const {
  if (valid) return "valid";
  std::string out;
  for (const auto& f : failures) {
    if (!out.empty()) out += "; ";
    out += std::string(failure_kind_name(f.kind)) + "@" + std::to_string(f.position);
    if (!f.detail.empty()) out += " " + f.detail;
  }
  return out;
}

InvalidSmilesError::InvalidSmilesError(std::string smiles, ValidityReport report)
    : DataError("invalid SMILES '" + smiles + "': " + report.summary()), report_(std::move(report)) {}

namespace {

std::optional<BondOrder> bond_symbol_order(char c) {
  switch (c) {
    case '-': case '/': case '\\': return BondOrder::kSingle;
    case '=': return BondOrder::kDouble;
    case '#': return BondOrder::kTriple;
    case ':': return BondOrder::kAromatic;
    default: return std::nullopt;
  }
}

bool is_known_element(std::string_view s) { return atomic_mass(s).has_value(); }

// Parses "[...]" into an atom; returns an error description on bad syntax.
std::optional<std::string> parse_bracket(std::string_view text, Atom& atom) {
  atom = Atom{};
  atom.bracket = true;
  std::string_view body = text.substr(1, text.size() - 2);
  std::size_t i = 0;
  auto digits = [&](int& out) {
    const std::size_t start = i;
    int v = 0;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
      v = v * 10 + (body[i] - '0');
      ++i;
    }
    out = v;
    return i > start;
  };
  if (body.empty()) return "empty bracket atom";
  int iso = 0;
  if (digits(iso)) atom.isotope = iso;
  if (i >= body.size()) return "missing element symbol";

  const char c = body[i];
  if (c == '*') {
    atom.element = "*";
    ++i;
  } else if (std::islower(static_cast<unsigned char>(c))) {
    static constexpr std::string_view kAromatic2[] = {"se", "as"};
    bool done = false;
    for (auto sym : kAromatic2) {
      if (body.substr(i, 2) == sym) {
        atom.element = std::string(1, static_cast<char>(std::toupper(sym[0]))) + sym[1];
        i += 2;
        done = true;
        break;
      }
    }
    if (!done) {
      if (std::string_view("bcnops").find(c) == std::string_view::npos) {
        return "unknown aromatic symbol '" + std::string(1, c) + "'";
      }
      atom.element = std::string(1, static_cast<char>(std::toupper(c)));
      ++i;
    }
    atom.aromatic = true;
  } else if (std::isupper(static_cast<unsigned char>(c))) {
    if (i + 1 < body.size() && std::islower(static_cast<unsigned char>(body[i + 1])) &&
        is_known_element(body.substr(i, 2))) {
      atom.element = std::string(body.substr(i, 2));
      i += 2;
    } else if (is_known_element(body.substr(i, 1))) {
      atom.element = std::string(body.substr(i, 1));
      ++i;
    } else {
      return "unknown element '" + std::string(body.substr(i, 2)) + "'";
    }
  } else {
    return "missing element symbol";
  }

  // chirality, ignored
  while (i < body.size() && body[i] == '@') ++i;

  if (i < body.size() && body[i] == 'H') {
    ++i;
    int h = 1;
    if (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
      h = body[i] - '0';
      ++i;
    }
    atom.hydrogens = h;
  }

  if (i < body.size() && (body[i] == '+' || body[i] == '-')) {
    const char sign = body[i];
    const int s = sign == '+' ? 1 : -1;
    ++i;
    int magnitude = 1;
    if (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
      digits(magnitude);
    } else {
      while (i < body.size() && body[i] == sign) {
        ++magnitude;
        ++i;
      }
    }
    atom.charge = s * magnitude;
  }

  if (i < body.size() && body[i] == ':') {
    ++i;
    int cls = 0;
    if (!digits(cls)) return "atom class without digits";
  }
  if (i != body.size()) return "unexpected '" + std::string(body.substr(i)) + "'";
  return std::nullopt;
}

struct RingOpen {
  std::size_t atom;
  char symbol;  // 0 if none
  std::size_t position;
};

}  // namespace

ParsedMolecule parse_molecule(std::string_view smiles) {
  ParsedMolecule out;
  ValidityReport& report = out.report;
  auto fail = [&](FailureKind kind, std::size_t pos, std::string detail) {
    report.failures.push_back({kind, pos, std::move(detail)});
  };

  if (smiles.empty()) {
    fail(FailureKind::kEmpty, 0, "empty string");
    return out;
  }

  const std::vector<Lexeme> lexemes = lex_smiles(smiles);

  // Tokens.
  for (const auto& lx : lexemes) {
    if (lx.kind == LexemeKind::kInvalid) fail(FailureKind::kToken, lx.position, "unexpected '" + lx.text + "'");
    if (lx.kind == LexemeKind::kUnterminatedBracket) fail(FailureKind::kBracketAtom, lx.position, "unterminated '['");
  }
  if (!report.failures.empty()) return out;

  // Parentheses.
  {
    std::vector<std::size_t> open;
    for (std::size_t k = 0; k < lexemes.size(); ++k) {
      const auto& lx = lexemes[k];
      if (lx.kind == LexemeKind::kBranchOpen) {
        const bool has_root = k > 0 && (lexemes[k - 1].kind == LexemeKind::kAtom ||
                                        lexemes[k - 1].kind == LexemeKind::kBracketAtom ||
                                        lexemes[k - 1].kind == LexemeKind::kRingBond ||
                                        lexemes[k - 1].kind == LexemeKind::kBranchClose);
        if (!has_root) fail(FailureKind::kParenthesis, lx.position, "branch without a root atom");
        if (k + 1 < lexemes.size() && lexemes[k + 1].kind == LexemeKind::kBranchClose) {
          fail(FailureKind::kParenthesis, lx.position, "empty branch");
        }
        open.push_back(lx.position);
      } else if (lx.kind == LexemeKind::kBranchClose) {
        if (open.empty()) {
          fail(FailureKind::kParenthesis, lx.position, "unmatched ')'");
        } else {
          open.pop_back();
        }
      }
    }
    for (std::size_t pos : open) fail(FailureKind::kParenthesis, pos, "unclosed '('");
  }
  if (!report.failures.empty()) return out;

  // Graph construction: misplaced bonds, ring closures, bracket atoms.
  MoleculeGraph& g = out.graph;
  std::vector<ValidityFailure> token_f, ring_f, bracket_f;
  std::optional<std::size_t> prev;
  struct PendingBond {
    char symbol = 0;  // 0 when no bond is pending
    std::size_t position = 0;
    explicit operator bool() const { return symbol != 0; }
    void reset() { symbol = 0; }
  } pending;
  std::vector<std::optional<std::size_t>> branch_roots;
  std::map<std::string, RingOpen> rings;

  auto default_order = [&](std::size_t a, std::size_t b) {
    return g.atom(a).aromatic && g.atom(b).aromatic ? BondOrder::kAromatic : BondOrder::kSingle;
  };

  for (const auto& lx : lexemes) {
    switch (lx.kind) {
      case LexemeKind::kAtom:
      case LexemeKind::kBracketAtom: {
        Atom atom;
        if (lx.kind == LexemeKind::kAtom) {
          const bool aromatic = std::islower(static_cast<unsigned char>(lx.text[0]));
          atom.element = lx.text;
          if (aromatic) atom.element[0] = static_cast<char>(std::toupper(atom.element[0]));
          atom.aromatic = aromatic;
        } else if (auto err = parse_bracket(lx.text, atom)) {
          bracket_f.push_back({FailureKind::kBracketAtom, lx.position, *err});
          atom = Atom{"C", false, 0, 0, 0, true};
        }
        const std::size_t id = g.add_atom(std::move(atom));
        if (prev) {
          BondOrder order = default_order(*prev, id);
          if (pending) order = *bond_symbol_order(pending.symbol);
          g.add_bond(*prev, id, order);
        } else if (pending) {
          token_f.push_back({FailureKind::kToken, pending.position, "bond without a preceding atom"});
        }
        pending.reset();
        prev = id;
        break;
      }
      case LexemeKind::kBond:
        if (!prev || pending) {
          token_f.push_back({FailureKind::kToken, lx.position, "misplaced bond '" + lx.text + "'"});
        } else {
          pending = {lx.text[0], lx.position};
        }
        break;
      case LexemeKind::kBranchOpen:
        if (pending) {
          token_f.push_back({FailureKind::kToken, pending.position, "bond before '('"});
          pending.reset();
        }
        branch_roots.push_back(prev);
        break;
      case LexemeKind::kBranchClose:
        if (pending) {
          token_f.push_back({FailureKind::kToken, pending.position, "dangling bond before ')'"});
          pending.reset();
        }
        prev = branch_roots.back();
        branch_roots.pop_back();
        break;
      case LexemeKind::kRingBond: {
        if (!prev) {
          ring_f.push_back({FailureKind::kRingClosure, lx.position, "ring bond without an atom"});
          pending.reset();
          break;
        }
        const char symbol = pending ? pending.symbol : 0;
        pending.reset();
        auto it = rings.find(lx.text);
        if (it == rings.end()) {
          rings.emplace(lx.text, RingOpen{*prev, symbol, lx.position});
          break;
        }
        const RingOpen open = it->second;
        rings.erase(it);
        if (open.symbol != 0 && symbol != 0 && open.symbol != symbol) {
          ring_f.push_back({FailureKind::kRingClosure, lx.position,
                            "ring " + lx.text + " closed with conflicting bonds"});
          break;
        }
        if (open.atom == *prev) {
          ring_f.push_back({FailureKind::kRingClosure, lx.position, "ring " + lx.text + " closes on itself"});
          break;
        }
        if (g.bond_between(open.atom, *prev)) {
          ring_f.push_back({FailureKind::kRingClosure, lx.position, "ring " + lx.text + " duplicates a bond"});
          break;
        }
        const char s = symbol != 0 ? symbol : open.symbol;
        const BondOrder order = s != 0 ? *bond_symbol_order(s) : default_order(open.atom, *prev);
        g.add_bond(open.atom, *prev, order);
        break;
      }
      case LexemeKind::kDot:
        if (pending) {
          token_f.push_back({FailureKind::kToken, pending.position, "bond before '.'"});
          pending.reset();
        }
        prev.reset();
        break;
      case LexemeKind::kInvalid:
      case LexemeKind::kUnterminatedBracket:
        break;
    }
  }
  if (pending) token_f.push_back({FailureKind::kToken, pending.position, "dangling bond at end"});
  for (const auto& [digit, open] : rings) {
    ring_f.push_back({FailureKind::kRingClosure, open.position, "ring " + digit + " never closed"});
  }
  std::sort(ring_f.begin(), ring_f.end(), [](const auto& a, const auto& b) { return a.position < b.position; });
  if (g.empty()) token_f.push_back({FailureKind::kToken, 0, "no atoms"});

  for (auto* stage : {&token_f, &ring_f, &bracket_f}) {
    if (!stage->empty()) {
      report.failures = std::move(*stage);
      out.graph = MoleculeGraph{};
      return out;
    }
  }

  // Valence.
  for (std::size_t i = 0; i < g.atom_count(); ++i) {
    Atom& atom = g.atom(i);
    const int sum = g.valence_sum(i);
    const bool has_double = detail::has_double_bond(g, i);
    if (atom.aromatic) {
      int aromatic_bonds = 0;
      for (std::size_t id : g.incident(i)) {
        if (g.bond(id).order == BondOrder::kAromatic) ++aromatic_bonds;
      }
      if (aromatic_bonds < 2) {
        fail(FailureKind::kValence, i, "aromatic " + atom.element + " outside an aromatic ring");
        continue;
      }
    }
    if (atom.bracket) {
      if (!detail::bracket_valence_ok(atom, sum, has_double)) {
        fail(FailureKind::kValence, i, atom.element + " exceeds its valence");
      }
      continue;
    }
    const auto h = detail::implicit_hydrogens(atom.element, atom.aromatic, sum, has_double);
    if (!h) {
      fail(FailureKind::kValence, i, atom.element + " with bond order sum " + std::to_string(sum));
      continue;
    }
    atom.hydrogens = *h;
  }
  if (!report.failures.empty()) {
    out.graph = MoleculeGraph{};
    return out;
  }
  report.valid = true;
  return out;
}

ValidityReport validate(std::string_view smiles) { return parse_molecule(smiles).report; }

MoleculeGraph parse_graph(std::string_view smiles) {
  ParsedMolecule parsed = parse_molecule(smiles);
  if (!parsed.report.valid) throw InvalidSmilesError(std::string(smiles), std::move(parsed.report));
  return std::move(parsed.graph);
}

}  // namespace stackrl::chem
