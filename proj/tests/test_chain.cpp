#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace ultranorm;

namespace {

ChainElement ord(const char* s) { return ChainElement::ordinal(Ordinal::parse(s)); }
ChainElement rat(const char* s) { return ChainElement::rational(Scalar::parse(s)); }

std::vector<Chain> all_chain_classes() {
  return {Chain::finite(1),
          Chain::finite(7),
          Chain::ordinal(),
          Chain::ordinal(Ordinal::parse("w^w")),
          Chain::rational_interval01(),
          Chain::descending_omega(),
          Chain::lex(Chain::finite(3), Chain::ordinal()),
          Chain::lex(Chain::ordinal(), Chain::rational_interval01()),
          Chain::lex(Chain::descending_omega(), Chain::finite(2))};
}

}  // namespace

TEST(Ordinal, ParseAndPrint) {
  EXPECT_EQ(Ordinal::parse("w^2*3 + w + 5").to_string(), "w^2*3+w+5");
  EXPECT_EQ(Ordinal::parse("w^(w+1)*2+w^w").to_string(), "w^(w+1)*2+w^w");
  EXPECT_EQ(Ordinal::parse("0").to_string(), "0");
  EXPECT_EQ(Ordinal::parse("w*1").to_string(), "w");
  EXPECT_EQ(Ordinal::parse("12"), Ordinal::natural(12));
  EXPECT_EQ(Ordinal::parse("w"), Ordinal::omega());
  EXPECT_THROW(Ordinal::parse("w+w^2"), Error);  // not in normal form
  EXPECT_THROW(Ordinal::parse("w^"), Error);
  EXPECT_THROW(Ordinal::parse("x"), Error);
}

TEST(Ordinal, Order) {
  EXPECT_LT(Ordinal::parse("w+1"), Ordinal::parse("w*2"));
  EXPECT_LT(Ordinal::parse("1000"), Ordinal::parse("w"));
  EXPECT_LT(Ordinal::parse("w^2*3+w+5"), Ordinal::parse("w^2*3+w*2"));
  EXPECT_LT(Ordinal::parse("w^w"), Ordinal::parse("w^(w+1)"));
  EXPECT_LT(Ordinal::parse("w^5*100"), Ordinal::parse("w^w"));
  EXPECT_TRUE(Ordinal::parse("w+3").is_successor());
  EXPECT_FALSE(Ordinal::parse("w^2").is_successor());
  EXPECT_TRUE(Ordinal::parse("17").is_finite());
}

TEST(Ordinal, SampleBelowIsBelow) {
  Rng rng(5);
  for (const char* s : {"1", "w", "w^2*3+w+5", "w^w", "w^(w*2)+w^3"}) {
    const Ordinal o = Ordinal::parse(s);
    for (int i = 0; i < 500; ++i) {
      auto b = o.sample_below(rng);
      ASSERT_TRUE(b);
      EXPECT_LT(*b, o) << s << " " << b->to_string();
      EXPECT_EQ(Ordinal::parse(b->to_string()), *b);
    }
  }
  EXPECT_FALSE(Ordinal().sample_below(rng));
}

TEST(Chain, CompareExamples) {
  auto c = Chain::ordinal();
  EXPECT_EQ(c.compare(ord("w+1"), ord("w*2")), std::strong_ordering::less);
  auto q = Chain::rational_interval01();
  EXPECT_EQ(q.compare(rat("1/3"), rat("1/2")), std::strong_ordering::less);
  auto d = Chain::descending_omega();
  EXPECT_EQ(d.compare(ChainElement::descending(5), ChainElement::descending(2)), std::strong_ordering::less);
  auto f = Chain::finite(3);
  EXPECT_EQ(f.compare(ChainElement::finite(2), ChainElement::finite(2)), std::strong_ordering::equal);
}

TEST(Chain, WrongChainErrors) {
  auto q = Chain::rational_interval01();
  try {
    (void)q.compare(rat("1/2"), ChainElement::finite(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WrongChain);
  }
  EXPECT_THROW((void)q.compare(rat("3/2"), rat("1/2")), Error);
  EXPECT_THROW((void)Chain::finite(2).compare(ChainElement::finite(2), ChainElement::finite(0)), Error);
  EXPECT_THROW((void)Chain::ordinal(Ordinal::parse("w")).compare(ord("w"), ord("3")), Error);
  EXPECT_THROW((void)(rat("1/2") < ChainElement::descending(1)), Error);
}

TEST(Chain, WellOrderedVerdicts) {
  EXPECT_EQ(Chain::finite(4).is_well_ordered(), WellOrdered::Yes);
  EXPECT_EQ(Chain::ordinal().is_well_ordered(), WellOrdered::Yes);
  EXPECT_EQ(Chain::rational_interval01().is_well_ordered(), WellOrdered::No);
  EXPECT_EQ(Chain::descending_omega().is_well_ordered(), WellOrdered::No);
  EXPECT_EQ(Chain::lex(Chain::finite(5), Chain::ordinal()).is_well_ordered(), WellOrdered::Yes);
  EXPECT_EQ(Chain::lex(Chain::ordinal(), Chain::rational_interval01()).is_well_ordered(), WellOrdered::No);
  EXPECT_EQ(Chain::lex(Chain::descending_omega(), Chain::finite(1)).is_well_ordered(), WellOrdered::No);
  EXPECT_STREQ(to_string(WellOrdered::Yes), "YES");
}

TEST(Chain, DescendingWitnessExamples) {
  auto w = Chain::rational_interval01().descending_witness(3);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0], rat("1/2"));
  EXPECT_EQ(w[1], rat("1/4"));
  EXPECT_EQ(w[2], rat("1/8"));
  auto d = Chain::descending_omega().descending_witness(2);
  EXPECT_EQ(d, (std::vector{ChainElement::descending(1), ChainElement::descending(2)}));
  try {
    (void)Chain::ordinal().descending_witness(3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WellOrderedChain);
  }
  EXPECT_THROW((void)Chain::finite(2).descending_witness(1), Error);
}

TEST(Chain, DescendingWitnessStrictlyDecreasingUpTo100) {
  for (const auto& c : all_chain_classes()) {
    if (c.is_well_ordered() == WellOrdered::Yes) continue;
    for (std::size_t k = 1; k <= 100; ++k) {
      auto w = c.descending_witness(k);
      ASSERT_EQ(w.size(), k);
      for (std::size_t i = 0; i < k; ++i) {
        EXPECT_TRUE(c.contains(w[i]));
        if (i) {
          EXPECT_EQ(c.compare(w[i], w[i - 1]), std::strong_ordering::less) << c.descriptor();
        }
      }
    }
  }
}

TEST(Chain, CompareIsTotalAndTransitive) {
  Rng rng(42);
  for (const auto& c : all_chain_classes()) {
    for (int i = 0; i < 10000; ++i) {
      auto a = c.sample(rng), b = c.sample(rng), d = c.sample(rng);
      ASSERT_TRUE(c.contains(a));
      const auto ab = c.compare(a, b), ba = c.compare(b, a);
      // Totality and antisymmetry.
      EXPECT_EQ(ab == std::strong_ordering::less, ba == std::strong_ordering::greater);
      EXPECT_EQ(ab == std::strong_ordering::equal, a == b);
      if (c.compare(a, b) <= 0 && c.compare(b, d) <= 0) {
        EXPECT_TRUE(c.compare(a, d) <= 0) << c.descriptor();
      }
      if (c.compare(a, b) < 0 && c.compare(b, d) < 0) {
        EXPECT_TRUE(c.compare(a, d) < 0) << c.descriptor();
      }
    }
  }
}

TEST(Chain, SampleBelowIsBelow) {
  Rng rng(7);
  for (const auto& c : all_chain_classes()) {
    for (int i = 0; i < 1000; ++i) {
      auto e = c.sample(rng);
      if (auto b = c.sample_below(e, rng)) {
        EXPECT_TRUE(c.compare(*b, e) < 0) << c.descriptor();
      }
    }
  }
  EXPECT_FALSE(Chain::finite(3).sample_below(ChainElement::finite(0), rng));
}

TEST(Chain, DescriptorRoundTrip) {
  for (const auto& c : all_chain_classes()) {
    EXPECT_EQ(Chain::parse(c.descriptor()), c);
  }
  EXPECT_EQ(Chain::parse("lex(finite:3, lex(ordinal:w^2, qinterval01))").descriptor(),
            "lex(finite:3,lex(ordinal:w^2,qinterval01))");
  EXPECT_THROW(Chain::parse("finite:0"), Error);
  EXPECT_THROW(Chain::parse("reals"), Error);
  EXPECT_THROW(Chain::parse("lex(finite:2)"), Error);
}

TEST(Chain, ElementLiterals) {
  auto lx = Chain::parse("lex(finite:3,qinterval01)");
  auto e = parse_chain_element(lx, "[2|1/3]");
  EXPECT_EQ(e, ChainElement::lex(ChainElement::finite(2), rat("1/3")));
  EXPECT_EQ(e.to_string(), "[2|1/3]");
  EXPECT_EQ(parse_chain_element(Chain::ordinal(), "w^2+1"), ord("w^2+1"));
  EXPECT_THROW(parse_chain_element(Chain::rational_interval01(), "0"), Error);
  EXPECT_THROW(parse_chain_element(Chain::descending_omega(), "0"), Error);
  EXPECT_THROW(parse_chain_element(Chain::finite(2), "2"), Error);
}

TEST(Chain, Segments) {
  auto q = Chain::rational_interval01();
  EXPECT_EQ(q.segment_well_ordered(rat("1"), Segment::AtLeast), WellOrdered::Yes);
  EXPECT_EQ(q.segment_well_ordered(rat("1/2"), Segment::AtLeast), WellOrdered::No);
  EXPECT_EQ(q.segment_well_ordered(rat("1"), Segment::Below), WellOrdered::No);
  auto d = Chain::descending_omega();
  EXPECT_EQ(d.segment_well_ordered(ChainElement::descending(4), Segment::AtLeast), WellOrdered::Yes);
  EXPECT_EQ(d.segment_well_ordered(ChainElement::descending(4), Segment::Below), WellOrdered::No);
  EXPECT_TRUE(d.segment_empty(ChainElement::descending(1), Segment::Above));
  auto o = Chain::ordinal(Ordinal::parse("w+1"));
  EXPECT_TRUE(o.segment_empty(ord("w"), Segment::Above));
  EXPECT_FALSE(o.segment_empty(ord("5"), Segment::Above));
  EXPECT_TRUE(o.segment_empty(ord("0"), Segment::Below));
  // In lex(qinterval01, finite:2) the points at or above [1|0] are [1|0], [1|1]: finite.
  auto l = Chain::lex(q, Chain::finite(2));
  EXPECT_EQ(l.segment_well_ordered(ChainElement::lex(rat("1"), ChainElement::finite(0)), Segment::AtLeast),
            WellOrdered::Yes);
  EXPECT_EQ(l.segment_well_ordered(ChainElement::lex(rat("1/2"), ChainElement::finite(1)), Segment::AtLeast),
            WellOrdered::No);
}
