#include <cmath>
#include <filesystem>
#include <limits>

#include <gtest/gtest.h>

#include "stackrl/chem/validator.h"
#include "stackrl/corpus/dyck.h"
#include "stackrl/corpus/mini_smiles.h"
#include "stackrl/errors.h"
#include "stackrl/io/container.h"
#include "stackrl/io/text.h"

namespace io = stackrl::io;
using stackrl::Rng;

TEST(Text, FormatDoubleRoundTrips) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::ldexp(stackrl::uniform(rng, -1, 1), static_cast<int>(stackrl::uniform_index(rng, 80)) - 40);
    EXPECT_EQ(io::parse_double(io::format_double(v), "v"), v);
  }
  EXPECT_EQ(io::format_double(0.1), "0.1");
  EXPECT_EQ(io::format_double(2.0), "2");
  EXPECT_THROW(io::parse_double("1.5x", "v"), stackrl::DataError);
  EXPECT_THROW(io::parse_double("", "v"), stackrl::DataError);
}

TEST(Text, SplitTrimAndSmilesLines) {
  EXPECT_EQ(io::trim("  ab \t\n"), "ab");
  EXPECT_EQ(io::split("a,,b", ','), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(io::parse_smiles_lines("# c\nCCO name\n\n  c1ccccc1\t7\n"),
            (std::vector<std::string>{"CCO", "c1ccccc1"}));
}

TEST(Text, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "stackrl_io_lines.smi";
  io::write_lines(path, "# generated\n", {"CCO", "CC"});
  EXPECT_EQ(io::read_text(path), "# generated\nCCO\nCC\n");
  EXPECT_EQ(io::read_smiles_file(path), (std::vector<std::string>{"CCO", "CC"}));
  EXPECT_THROW(io::read_text("/nonexistent/file"), stackrl::DataError);
}

TEST(Config, ParseOverrideAndCanonicalForm) {
  auto c = io::KeyValueConfig::parse("# comment\nb = 2\na=hello world\n");
  EXPECT_EQ(c.get_string("a", ""), "hello world");
  EXPECT_EQ(c.get_int("b", 0), 2);
  EXPECT_EQ(c.get_double("missing", 1.5), 1.5);
  c.apply_override("b=3.5");
  EXPECT_EQ(c.get_double("b", 0), 3.5);
  EXPECT_THROW(c.get_int("b", 0), stackrl::DataError);
  EXPECT_THROW(c.apply_override("novalue"), stackrl::DataError);
  c.set("flag", "true");
  EXPECT_TRUE(c.get_bool("flag", false));
  EXPECT_EQ(c.to_string(), "a = hello world\nb = 3.5\nflag = true\n");
  EXPECT_EQ(io::KeyValueConfig::parse(c.to_string()).to_string(), c.to_string());
  EXPECT_THROW(io::KeyValueConfig::parse("just text\n"), stackrl::DataError);
}

TEST(Config, ProvenanceHeaderIsCommented) {
  io::KeyValueConfig c;
  c.set("seed", "4");
  const auto h = io::provenance_header("sample", c);
  EXPECT_FALSE(h.empty());
  for (const auto& line : io::split(h.substr(0, h.size() - 1), '\n')) EXPECT_EQ(line.rfind("# ", 0), 0u) << line;
  EXPECT_NE(h.find("seed = 4"), std::string::npos);
  EXPECT_NE(h.find("sample"), std::string::npos);
}

namespace {
io::Container sample_container() {
  io::Container c;
  c.magic = "TEST";
  c.config = {{"z", "1"}, {"a", "two"}};
  c.vocabulary = {"<pad>", "C", "[NH4+]"};
  stackrl::autodiff::Tensor t({2, 3});
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = 0.1 * static_cast<double>(i) - 0.25;
  c.tensors.emplace_back("w", t);
  c.tensors.emplace_back("b", stackrl::autodiff::Tensor({4}));
  return c;
}
}  // namespace

TEST(Container, EncodeDecodeIsLossless) {
  const auto c = sample_container();
  const auto bytes = io::encode(c);
  const auto back = io::decode(bytes, "TEST");
  EXPECT_EQ(io::encode(back), bytes);
  EXPECT_EQ(back.config, c.config);
  EXPECT_EQ(back.vocabulary, c.vocabulary);
  ASSERT_NE(back.tensor("w"), nullptr);
  EXPECT_EQ(*back.tensor("w"), c.tensors[0].second);
  EXPECT_EQ(*back.config_value("a"), "two");
  EXPECT_EQ(back.config_value("missing"), nullptr);
}

TEST(Container, CorruptionNamesTheSection) {
  const auto bytes = io::encode(sample_container());
  EXPECT_THROW(io::decode(bytes, "PRED"), stackrl::DataError);
  for (std::size_t cut : {std::size_t{6}, std::size_t{20}, bytes.size() - 3}) {
    try {
      io::decode(bytes.substr(0, cut), "TEST");
      FAIL() << "truncated at " << cut;
    } catch (const stackrl::DataError& e) {
      EXPECT_NE(std::string(e.what()).find("section"), std::string::npos) << e.what();
    }
  }
  EXPECT_THROW(io::decode(bytes + "x", "TEST"), stackrl::DataError);
}

TEST(Dyck, WordsAreBalancedAndBounded) {
  Rng rng(2);
  stackrl::corpus::DyckOptions o;
  o.max_depth = 4;
  for (const auto& w : stackrl::corpus::dyck_corpus(500, o, rng)) {
    ASSERT_TRUE(stackrl::corpus::is_dyck_word(w)) << w;
    EXPECT_GE(w.size(), 2 * o.min_pairs);
    EXPECT_LE(w.size(), 2 * o.max_pairs);
    int depth = 0, worst = 0;
    for (char ch : w) {
      depth += (ch == '(' || ch == '[') ? 1 : -1;
      worst = std::max(worst, depth);
    }
    EXPECT_LE(worst, 4);
  }
}

TEST(Dyck, Recognizer) {
  using stackrl::corpus::is_dyck_word;
  EXPECT_TRUE(is_dyck_word("([])[]"));
  EXPECT_FALSE(is_dyck_word(""));
  EXPECT_FALSE(is_dyck_word("(]"));
  EXPECT_FALSE(is_dyck_word("(()"));
  EXPECT_FALSE(is_dyck_word(")("));
  EXPECT_FALSE(is_dyck_word("(a)"));
}

TEST(MiniSmiles, SameSeedSameCorpus) {
  Rng a(9), b(9);
  EXPECT_EQ(stackrl::corpus::mini_smiles_corpus(200, {}, a), stackrl::corpus::mini_smiles_corpus(200, {}, b));
  Rng c(3);
  for (const auto& s : stackrl::corpus::mini_smiles_corpus(300, {}, c)) EXPECT_TRUE(stackrl::chem::validate(s).valid) << s;
}
