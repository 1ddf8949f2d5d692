//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "lgigen/g6.hpp"

#include <set>
#include <string>

#include <gtest/gtest.h>

#include "lgigen/canon.hpp"
#include "lgigen/generate.hpp"
#include "oracles.hpp"

namespace lgigen {
namespace {

Graph triangle() { return Graph::from_edge_list(3, { { 0, 1 }, { 1, 2 }, { 0, 2 } }); }

TEST(G6EncodeTest, Examples) {
  EXPECT_EQ(encode_g6(triangle()), "Bw");
  EXPECT_EQ(encode_g6(Graph(1)), "@");
  EXPECT_EQ(encode_g6(Graph()), "?");
  EXPECT_EQ(encode_g6(Graph(6)).size(), 4u);
  EXPECT_EQ(encode_g6(Graph(62)).size(), 1 + g6_body_length(62));
  EXPECT_THROW(encode_g6(Graph(63)), EncodeError);
}

TEST(G6DecodeTest, Examples) {
  EXPECT_EQ(decode_g6("Bw"), triangle());
  EXPECT_EQ(decode_g6(">>graph6<<Bw\n"), triangle());

  Graph e = decode_g6("EhEG");
  EXPECT_EQ(e.vertex_count(), 6);
  EXPECT_EQ(encode_g6(e), "EhEG");

  EXPECT_THROW(decode_g6("B"), ParseError);
  EXPECT_THROW(decode_g6("Bww"), ParseError);
  EXPECT_THROW(decode_g6("B "), ParseError);  // code 32 below range
  EXPECT_THROW(decode_g6("Bx"), ParseError);  // padding bit set
  EXPECT_THROW(decode_g6("~"), ParseError);   // multi-byte header
  EXPECT_THROW(decode_g6(""), ParseError);
}

// Bits read back by an independent bit-string walk.
Graph decode_by_bitstring(const std::string &s) {
  const int n = s[0] - 63;
  std::string bits;
  for (std::size_t i = 1; i < s.size(); ++i) {
    for (int b = 5; b >= 0; --b)
      bits.push_back(((s[i] - 63) >> b & 1) ? '1' : '0');
  }
  Graph g(n);
  std::size_t k = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (bits[k++] == '1')
        g.add_edge(i, j);
    }
  }
  for (; k < bits.size(); ++k)
    EXPECT_EQ(bits[k], '0');
  return g;
}

TEST(G6RoundtripTest, AllLabeledFiveVertexGraphs) {
  auto all = oracle::all_labeled_graphs(5);
  ASSERT_EQ(all.size(), 1024u);
  std::set<std::string> encodings;
  for (const auto &g: all) {
    std::string s = encode_g6(g);
    for (char c: s) {
      ASSERT_GE(static_cast<unsigned char>(c), 63);
      ASSERT_LE(static_cast<unsigned char>(c), 126);
    }
    ASSERT_EQ(decode_g6(s), g);
    ASSERT_EQ(decode_by_bitstring(s), g);
    ASSERT_EQ(encode_g6(decode_g6(s)), s);
    encodings.insert(s);
  }
  EXPECT_EQ(encodings.size(), 1024u);
}

TEST(G6RoundtripTest, AllClassesUpToFive) {
  for (int n = 0; n <= 5; ++n) {
    for (const auto &g: enumerate_graphs(n))
      EXPECT_EQ(decode_g6(encode_g6(g)), g);
  }
}

TEST(G6ValidityTest, Examples) {
  Graph e = decode_g6("EhEG");
  std::set<int> degrees;
  for (int v = 0; v < e.vertex_count(); ++v)
    degrees.insert(e.degree(v));
  EXPECT_TRUE(check_g6_validity("EhEG", degrees).valid());

  auto bw = check_g6_validity("Bw", { 0, 1 });
  EXPECT_FALSE(bw.valid());
  EXPECT_TRUE(bw.has(FailureKind::kOutOfDomainDegree));
  EXPECT_EQ(bw.failures.size(), 3u);
  EXPECT_EQ(bw.failures[0].actual, 2);

  auto e_alone = check_g6_validity("E", { 0, 1, 2, 3 });
  EXPECT_TRUE(e_alone.has(FailureKind::kBadLength));
  EXPECT_TRUE(check_g6_validity("Bx", { 2 }).has(FailureKind::kNonzeroPadding));
  EXPECT_TRUE(check_g6_validity("B ", { 2 }).has(FailureKind::kCharOutOfRange));
  EXPECT_TRUE(check_g6_validity("~", { 2 }).has(FailureKind::kUnsupportedSize));

  EXPECT_TRUE(parse_valid_g6("Bw", { 2 }).has_value());
  EXPECT_FALSE(parse_valid_g6("Bw", { 1 }).has_value());
}

TEST(G6RandomizeTest, Examples) {
  for (std::uint64_t s = 0; s < 20; ++s)
    EXPECT_EQ(randomize_g6("Bw", s), "Bw");

  Graph p3 = Graph::from_edge_list(3, { { 0, 1 }, { 1, 2 } });
  std::set<std::string> seen;
  for (std::uint64_t s = 0; s < 200; ++s)
    seen.insert(randomized_g6(p3, s));
  // One encoding per position of the middle vertex: 110, 101, 011.
  std::set<std::string> exhaustive;
  std::vector<int> p { 0, 1, 2 };
  do {
    exhaustive.insert(encode_g6(permute(p3, p)));
  } while (std::next_permutation(p.begin(), p.end()));
  EXPECT_EQ(seen, (std::set<std::string> { "Bo", "Bg", "BW" }));
  EXPECT_EQ(seen.size(), 3u);
  EXPECT_EQ(seen, exhaustive);

  EXPECT_THROW(randomize_g6("B", 1), ParseError);
}

TEST(G6RandomizeTest, PreservesIsomorphismClass) {
  for (int n = 1; n <= 5; ++n) {
    for (const auto &g: enumerate_graphs(n)) {
      const std::string s = encode_g6(g);
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        ASSERT_TRUE(
            oracle::isomorphic_by_permutation(decode_g6(randomize_g6(s, seed)), g));
      }
    }
  }
}

}  // namespace
}  // namespace lgigen
