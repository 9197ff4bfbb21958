#include <cmath>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "stackrl/chem/fingerprint.h"
#include "stackrl/chem/properties.h"
#include "stackrl/chem/rings.h"
#include "stackrl/chem/scaffold.h"
#include "stackrl/chem/tokenizer.h"
#include "stackrl/chem/validator.h"
#include "stackrl/corpus/mini_smiles.h"
#include "stackrl/errors.h"
#include "support/golden.h"
#include "support/oracles.h"

namespace chem = stackrl::chem;
using stackrl::Rng;

namespace {

chem::MoleculeGraph mol(std::string_view s) { return chem::parse_graph(s); }

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  stackrl::shuffle(p, rng);
  return p;
}

}  // namespace

TEST(Tokenize, LongestMatchAndBrackets) {
  EXPECT_EQ(chem::smiles_tokens("CCl"), (std::vector<std::string>{"C", "Cl"}));
  EXPECT_EQ(chem::smiles_tokens("C[NH3+]Br"), (std::vector<std::string>{"C", "[NH3+]", "Br"}));
  EXPECT_EQ(chem::smiles_tokens("C%12CC%12").size(), 5u);
}

TEST(Tokenize, AspirinHas24TokensAndRoundTrips) {
  const std::string aspirin = "CC(=O)OC1=CC=CC=C1C(=O)O";
  const auto vocab = chem::build_vocabulary({aspirin}, chem::TokenMode::kSmiles);
  const auto r = chem::tokenize(aspirin, vocab);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.ids.size(), 24u);
  EXPECT_EQ(chem::detokenize(r.ids, vocab), aspirin);
}

TEST(Tokenize, EmptyInputIsFlagged) {
  const auto vocab = chem::build_vocabulary({"CC"}, chem::TokenMode::kSmiles);
  const auto r = chem::tokenize("", vocab);
  EXPECT_TRUE(r.empty);
  EXPECT_TRUE(r.ids.empty());
  EXPECT_FALSE(r.ok());
}

TEST(Tokenize, UnknownCharacterReportedWithPosition) {
  const auto vocab = chem::build_vocabulary({"CCO"}, chem::TokenMode::kSmiles);
  const auto r = chem::tokenize("CCN", vocab);
  ASSERT_EQ(r.unknown.size(), 1u);
  EXPECT_EQ(r.unknown[0].position, 2u);
  EXPECT_EQ(r.unknown[0].character, 'N');
  EXPECT_THROW(chem::encode("CCN", vocab), stackrl::DataError);
}

TEST(Tokenize, GoldenCorpusRoundTrips) {
  const auto corpus = stackrl::testing::golden_valid();
  const auto vocab = chem::build_vocabulary(corpus, chem::TokenMode::kSmiles);
  for (const auto& s : corpus) {
    const auto seq = chem::encode(s, vocab);
    EXPECT_EQ(chem::detokenize(seq.ids, vocab), s);
    EXPECT_TRUE(seq.terminal());
  }
}

TEST(Vocabulary, ReservedTokensAndDenseIds) {
  chem::Vocabulary v({"C", "O"});
  EXPECT_EQ(v.size(), 5u);
  EXPECT_EQ(v.token(chem::kPad), chem::kPadToken);
  EXPECT_EQ(v.token(chem::kStart), chem::kStartToken);
  EXPECT_EQ(v.token(chem::kEnd), chem::kEndToken);
  EXPECT_EQ(*v.find("O"), 4u);
  EXPECT_FALSE(v.find("N").has_value());
  EXPECT_THROW(chem::Vocabulary({"C", "C"}), stackrl::DataError);
  EXPECT_THROW(chem::Vocabulary({"<end>"}), stackrl::DataError);
  EXPECT_THROW(chem::Vocabulary({""}), stackrl::DataError);
  EXPECT_EQ(chem::Vocabulary::from_full_list(v.tokens()), v);
}

TEST(Validate, SpecExamples) {
  EXPECT_TRUE(chem::validate("CC(=O)OC1=CC=CC=C1C(=O)O").valid);
  auto r = chem::validate("C1CC");
  EXPECT_FALSE(r.valid);
  EXPECT_TRUE(r.has(chem::FailureKind::kRingClosure));
  EXPECT_TRUE(chem::validate("C(C").has(chem::FailureKind::kParenthesis));
  EXPECT_TRUE(chem::validate("C(C)(C)(C)(C)C").has(chem::FailureKind::kValence));
  EXPECT_TRUE(chem::validate("").has(chem::FailureKind::kEmpty));
}

TEST(Validate, GoldenValidCorpusAccepted) {
  const auto corpus = stackrl::testing::golden_valid();
  ASSERT_GE(corpus.size(), 200u);
  for (const auto& s : corpus) {
    const auto r = chem::validate(s);
    EXPECT_TRUE(r.valid) << s << ": " << r.summary();
    EXPECT_TRUE(r.failures.empty());
  }
}

TEST(Validate, GoldenInvalidCorpusRejectedWithExpectedKind) {
  const auto corpus = stackrl::testing::golden_invalid();
  ASSERT_GE(corpus.size(), 100u);
  std::set<std::string> kinds;
  for (const auto& [kind, s] : corpus) {
    const auto r = chem::validate(s);
    ASSERT_FALSE(r.valid) << s;
    EXPECT_EQ(chem::failure_kind_name(r.failures.front().kind), kind) << s << ": " << r.summary();
    kinds.insert(kind);
  }
  EXPECT_EQ(kinds.size(), 5u);
}

TEST(ParseGraph, SimpleMolecules) {
  auto methane = mol("C");
  EXPECT_EQ(methane.atom_count(), 1u);
  EXPECT_EQ(methane.bond_count(), 0u);
  EXPECT_EQ(methane.atom(0).hydrogens, 4);

  auto ethene = mol("C=C");
  ASSERT_EQ(ethene.bond_count(), 1u);
  EXPECT_EQ(ethene.bond(0).order, chem::BondOrder::kDouble);
  EXPECT_EQ(ethene.atom(0).hydrogens, 2);

  auto benzene = mol("c1ccccc1");
  EXPECT_EQ(benzene.atom_count(), 6u);
  EXPECT_EQ(benzene.bond_count(), 6u);
  for (const auto& a : benzene.atoms()) {
    EXPECT_TRUE(a.aromatic);
    EXPECT_EQ(a.hydrogens, 1);
  }
  for (const auto& b : benzene.bonds()) EXPECT_EQ(b.order, chem::BondOrder::kAromatic);
}

TEST(ParseGraph, BracketAtomsAndInvalidInput) {
  auto ammonium = mol("[NH4+]");
  EXPECT_EQ(ammonium.atom(0).hydrogens, 4);
  EXPECT_EQ(ammonium.atom(0).charge, 1);
  EXPECT_EQ(mol("[13CH4]").atom(0).isotope, 13);
  try {
    mol("C1CC");
    FAIL();
  } catch (const chem::InvalidSmilesError& e) {
    EXPECT_TRUE(e.report().has(chem::FailureKind::kRingClosure));
  }
}

TEST(MoleculeGraph, RejectsBadBonds) {
  chem::MoleculeGraph g;
  g.add_atom({"C"});
  g.add_atom({"C"});
  g.add_bond(0, 1, chem::BondOrder::kSingle);
  EXPECT_THROW(g.add_bond(0, 1, chem::BondOrder::kDouble), std::invalid_argument);
  EXPECT_THROW(g.add_bond(1, 1, chem::BondOrder::kSingle), std::invalid_argument);
  EXPECT_THROW(g.add_bond(0, 5, chem::BondOrder::kSingle), std::invalid_argument);
}

TEST(BenzeneRings, SpecExamples) {
  EXPECT_EQ(chem::count_benzene_rings(mol("c1ccccc1")), 1);
  EXPECT_EQ(chem::count_benzene_rings(mol("c1ccccc1-c2ccccc2")), 2);
  EXPECT_EQ(chem::count_benzene_rings(mol("c1ccc2ccccc2c1")), 2);
  EXPECT_EQ(chem::count_benzene_rings(mol("c1ccncc1")), 0);
  EXPECT_EQ(chem::count_benzene_rings(mol("C1CCCCC1")), 0);
  EXPECT_EQ(chem::count_benzene_rings(mol("c1ccc2cc3ccccc3cc2c1")), 3);
}

TEST(BenzeneRings, MatchesBruteForceOnSmallMolecules) {
  std::vector<std::string> pool = stackrl::testing::golden_valid();
  Rng rng(12);
  for (const auto& s : stackrl::corpus::mini_smiles_corpus(600, {}, rng)) pool.push_back(s);
  std::size_t checked = 0;
  for (const auto& s : pool) {
    const auto g = mol(s);
    if (g.atom_count() > 14) continue;
    ++checked;
    EXPECT_EQ(chem::count_benzene_rings(g), stackrl::testing::brute_force_benzene_count(g)) << s;
  }
  EXPECT_GT(checked, 300u);
}

TEST(SimpleCycles, BoundedByLength) {
  auto g = mol("c1ccc2ccccc2c1");
  EXPECT_EQ(chem::simple_cycles(g, 8).size(), 2u);
  EXPECT_EQ(chem::simple_cycles(g, 10).size(), 3u);
  auto ring_atoms = chem::ring_atoms(mol("Cc1ccccc1"));
  EXPECT_FALSE(ring_atoms[0]);
  EXPECT_TRUE(ring_atoms[1]);
}

TEST(Substituents, SpecExamples) {
  EXPECT_EQ(chem::count_substituents(mol("Cc1ccccc1")), 1);
  EXPECT_EQ(chem::count_substituents(mol("Cc1ccccc1O")), 2);
  EXPECT_EQ(chem::count_substituents(mol("c1ccccc1")), 0);
  EXPECT_EQ(chem::count_substituents(mol("N#Cc1ccc(N(=O)=O)cc1Cl")), 3);
  EXPECT_EQ(chem::count_substituents(mol("CCc1ccccc1")), 0);
  EXPECT_EQ(chem::count_substituents(mol("Cc1ccccc1"), {chem::Substituent::kHydroxyl}), 0);
}

TEST(Fingerprint, DeterministicAndDiscriminating) {
  auto benzene = chem::fingerprint(mol("c1ccccc1"));
  EXPECT_EQ(benzene, chem::fingerprint(mol("c1ccccc1")));
  EXPECT_EQ(benzene.width(), 1024u);
  EXPECT_EQ(benzene.radius(), 2);
  EXPECT_LT(chem::tanimoto(benzene, chem::fingerprint(mol("C"))), 1.0);
  EXPECT_THROW(chem::fingerprint(mol("C"), 2, 1000), std::invalid_argument);
}

TEST(Fingerprint, InvariantUnderAtomPermutation) {
  const std::vector<std::string> molecules = {
      "CC(=O)Oc1ccccc1C(=O)O", "c1ccc2ccccc2c1", "CN1C=NC2=C1C(=O)N(C)C(=O)N2C", "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
      "OCC1OC(O)C(O)C(O)C1O", "Clc1ccc(cc1)C(c1ccc(Cl)cc1)C(Cl)(Cl)Cl", "C1CCNCC1", "NC(Cc1ccccc1)C(=O)O",
      "O=[N+]([O-])c1ccccc1", "CC12CCC3C(CCC4=CC(=O)CCC34C)C1CCC2O"};
  Rng rng(20);
  for (const auto& s : molecules) {
    const auto g = mol(s);
    const auto fp = chem::fingerprint(g);
    const auto key = chem::graph_key(g);
    for (int k = 0; k < 20; ++k) {
      const auto p = g.permuted(random_permutation(g.atom_count(), rng));
      EXPECT_EQ(chem::fingerprint(p), fp) << s;
      EXPECT_EQ(chem::graph_key(p), key) << s;
    }
  }
}

TEST(Tanimoto, SpecExamples) {
  chem::Fingerprint a(64, 2), b(64, 2), empty1(64, 2), empty2(64, 2);
  for (int bit : {1, 2, 3}) a.set(bit);
  for (int bit : {2, 3, 4}) b.set(bit);
  EXPECT_DOUBLE_EQ(chem::tanimoto(a, b), 0.5);
  EXPECT_DOUBLE_EQ(chem::tanimoto(a, a), 1.0);
  EXPECT_DOUBLE_EQ(chem::tanimoto(empty1, empty2), 1.0);
  chem::Fingerprint c(64, 2);
  c.set(10);
  EXPECT_DOUBLE_EQ(chem::tanimoto(a, c), 0.0);
  EXPECT_THROW(chem::tanimoto(a, chem::Fingerprint(128, 2)), std::invalid_argument);
  EXPECT_THROW(chem::tanimoto(a, chem::Fingerprint(64, 3)), std::invalid_argument);
}

TEST(Tanimoto, SymmetricReflexiveBoundedOnRandomBitsets) {
  Rng rng(33);
  for (int trial = 0; trial < 500; ++trial) {
    chem::Fingerprint a(256, 2), b(256, 2);
    const double da = stackrl::uniform01(rng), db = stackrl::uniform01(rng);
    for (std::size_t bit = 0; bit < 256; ++bit) {
      if (stackrl::uniform01(rng) < da * 0.3) a.set(bit);
      if (stackrl::uniform01(rng) < db * 0.3) b.set(bit);
    }
    const double ab = chem::tanimoto(a, b);
    EXPECT_EQ(ab, chem::tanimoto(b, a));
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
    EXPECT_EQ(chem::tanimoto(a, a), 1.0);
  }
}

TEST(Scaffold, SpecExamples) {
  auto toluene = chem::murcko_scaffold(mol("Cc1ccccc1"));
  EXPECT_EQ(chem::graph_key(toluene), chem::graph_key(mol("c1ccccc1")));
  EXPECT_EQ(toluene.atom_count(), 6u);
  EXPECT_TRUE(chem::murcko_scaffold(mol("CCCC")).empty());
  auto biphenyl = chem::murcko_scaffold(mol("Cc1ccc(cc1)-c1ccc(C)cc1"));
  EXPECT_EQ(chem::graph_key(biphenyl), chem::graph_key(mol("c1ccc(cc1)-c1ccccc1")));
  // Linker atoms between rings stay.
  auto linked = chem::murcko_scaffold(mol("OCc1ccc(cc1)CCc1ccccc1F"));
  EXPECT_EQ(chem::graph_key(linked), chem::graph_key(mol("c1ccc(cc1)CCc1ccccc1")));
}

TEST(Scaffold, IdempotentOnCorpusMolecules) {
  Rng rng(44);
  const auto corpus = stackrl::corpus::mini_smiles_corpus(1000, {}, rng);
  ASSERT_EQ(corpus.size(), 1000u);
  for (const auto& s : corpus) {
    const auto once = chem::murcko_scaffold(mol(s));
    EXPECT_EQ(chem::murcko_scaffold(once), once) << s;
  }
}

TEST(GraphKey, DistinguishesIsomers) {
  EXPECT_NE(chem::graph_key(mol("CCCC")), chem::graph_key(mol("CC(C)C")));
  EXPECT_NE(chem::graph_key(mol("Cc1ccccc1C")), chem::graph_key(mol("Cc1ccc(C)cc1")));
  EXPECT_EQ(chem::graph_key(mol("OCC")), chem::graph_key(mol("CCO")));
}

TEST(Properties, MolarMassAndScores) {
  EXPECT_NEAR(*chem::molar_mass(mol("O")), 18.015, 1e-3);
  EXPECT_NEAR(*chem::molar_mass(mol("C")), 16.043, 1e-3);
  EXPECT_NEAR(*chem::molar_mass(mol("c1ccccc1")), 78.114, 1e-2);
  EXPECT_DOUBLE_EQ(chem::composition_score("CC"), 1.0);
  EXPECT_DOUBLE_EQ(chem::composition_score("CCO"), 0.5 + 0.5 - 0.7);
  EXPECT_DOUBLE_EQ(chem::composition_score("c1ccccc1"), 6 * 0.35);
  EXPECT_DOUBLE_EQ(chem::composition_score("C[NH3+]"), 0.5 - 0.8);
  // Linear in atom counts: concatenating fragments adds scores.
  EXPECT_DOUBLE_EQ(chem::composition_score("CCl.Br"), chem::composition_score("CCl") + chem::composition_score("Br"));
  EXPECT_EQ(chem::token_count("CC(=O)Cl"), 7.0);
}

TEST(Properties, FeaturesOnInvalidStrings) {
  using F = chem::Feature;
  EXPECT_FALSE(chem::compute_feature(F::kBenzeneRings, "c1cccc").has_value());
  EXPECT_FALSE(chem::compute_feature(F::kMolarMass, "C(").has_value());
  EXPECT_TRUE(chem::compute_feature(F::kTokenCount, "C(").has_value());
  EXPECT_TRUE(chem::compute_feature(F::kCompositionScore, "c1cccc").has_value());
  EXPECT_TRUE(chem::feature_defined_on_invalid(F::kTokenCount));
  EXPECT_FALSE(chem::feature_defined_on_invalid(F::kSubstituents));
  for (F f : {F::kBenzeneRings, F::kSubstituents, F::kCompositionScore, F::kTokenCount, F::kMolarMass}) {
    EXPECT_EQ(chem::parse_feature(chem::feature_name(f)), f);
  }
  EXPECT_THROW(chem::parse_feature("logp"), stackrl::DataError);
}

TEST(MiniSmiles, EveryStringValidAndDistinct) {
  Rng rng(55);
  const auto corpus = stackrl::corpus::mini_smiles_corpus(2000, {}, rng);
  std::set<std::string> seen(corpus.begin(), corpus.end());
  EXPECT_EQ(seen.size(), corpus.size());
  std::size_t fused = 0, nested = 0;
  for (const auto& s : corpus) {
    EXPECT_TRUE(chem::validate(s).valid) << s;
    fused += s.find('2') != std::string::npos;
    nested += s.find("((") != std::string::npos || s.find("C(C(") != std::string::npos;
  }
  EXPECT_GT(fused, 100u);
  EXPECT_GT(nested, 100u);
}
