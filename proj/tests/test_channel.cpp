#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "dnacc/channel.hpp"
#include "dnacc/indexcodes.hpp"
#include "helpers.hpp"

using namespace dnacc;
using testutil::mk;

namespace {

Strand strand(const char* i, const char* d) {
  return {BitVector::from_string(i), BitVector::from_string(d)};
}

bool within(const Strand& read, const Strand& src, std::uint32_t ei,
            std::uint32_t ed) {
  return hamming_distance(read.index, src.index) <= static_cast<int>(ei) &&
         hamming_distance(read.data, src.data) <= static_cast<int>(ed);
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("1") == Rational{1, 1});
  CHECK(Rational::parse("2/5") == Rational{2, 5});
  CHECK(Rational::parse("0.25") == Rational{1, 4});
  CHECK(Rational::parse("0") == Rational{0, 1});
  CHECK(Rational::parse("0.5") == Rational{1, 2});
  CHECK(Rational::parse("3/6") == Rational{1, 2});
  CHECK_THROWS_AS(Rational::parse(""), Error);
  CHECK_THROWS_AS(Rational::parse("x"), Error);
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), Error);
  CHECK(Rational{2, 4}.normalized().num == 1);
  CHECK(Rational{2, 4}.normalized().den == 2);
  CHECK(Rational::parse(Rational{2, 5}.to_string()) == Rational{2, 5});
}

TEST_CASE("channel params and regimes") {
  ChannelParams tau1{Rational{1, 1}, 1, 0, 1};
  CHECK_NOTHROW(tau1.validate());
  CHECK(tau1.max_erroneous() == 1);
  CHECK(tau1.regime() == Regime::Tau1);

  ChannelParams high{Rational{1, 2}, 1, 0, 2};
  CHECK(high.max_erroneous() == 1);
  CHECK(high.regime() == Regime::High);

  ChannelParams low{Rational{1, 3}, 1, 0, 3};
  CHECK(low.max_erroneous() == 1);
  CHECK(low.regime() == Regime::Low);

  ChannelParams low2{Rational{2, 5}, 2, 0, 5};
  CHECK(low2.max_erroneous() == 2);
  CHECK(low2.regime() == Regime::Low);

  // floor(tau*K) is exact: 2/3 of 3 is exactly 2
  CHECK(ChannelParams{Rational{2, 3}, 0, 0, 3}.max_erroneous() == 2);
  CHECK(ChannelParams{Rational{1, 2}, 0, 0, 5}.max_erroneous() == 2);
  CHECK(ChannelParams{Rational{0, 1}, 0, 0, 4}.regime() == Regime::Low);

  CHECK_THROWS_AS((ChannelParams{Rational{3, 2}, 0, 0, 1}.validate()), Error);
  CHECK_THROWS_AS((ChannelParams{Rational{1, 1}, 0, 0, 0}.validate()), Error);
}

TEST_CASE("read pool canonicalization") {
  ReadPool a({strand("00", "111"), strand("01", "000"), strand("00", "111")});
  ReadPool b({strand("01", "000"), strand("00", "111"), strand("00", "111")});
  CHECK(a == b);
  CHECK(a.total() == 3);
  REQUIRE(a.entries().size() == 2);
  CHECK(a.entries()[0].second == 2);

  ReadPool c = ReadPool::from_counts({{strand("00", "111"), 1},
                                      {strand("00", "111"), 1},
                                      {strand("01", "000"), 0}});
  CHECK(c.total() == 2);
  CHECK(c.entries().size() == 1);
}

TEST_CASE("sampling is deterministic and within error budgets") {
  Message z = mk({3, 5, 2}, {{"00", "101"}, {"01", "110"}, {"10", "001"}});
  ChannelParams ch{Rational{1, 2}, 1, 1, 4};
  ReadPool p1 = sample_channel_output(z, ch, 7);
  ReadPool p2 = sample_channel_output(z, ch, 7);
  CHECK(p1 == p2);
  CHECK(p1.total() == 3 * 4);
  CHECK_FALSE(p1 == sample_channel_output(z, ch, 8));

  // single-strand message: every read within the budgets of the source
  Message single = mk({1, 5, 2}, {{"01", "110"}});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ReadPool p = sample_channel_output(single, ch, seed);
    CHECK(p.total() == 4);
    for (const auto& [read, count] : p.entries())
      CHECK(within(read, single.strands()[0], 1, 1));
  }
}

TEST_CASE("tau zero means exact copies") {
  Message z = mk({2, 4, 1}, {{"0", "111"}, {"1", "000"}});
  ChannelParams ch{Rational{0, 1}, 2, 2, 3};
  ReadPool p = sample_channel_output(z, ch, 123);
  REQUIRE(p.entries().size() == 2);
  for (const auto& [read, count] : p.entries()) CHECK(count == 3);
  CHECK(p.entries()[0].first == z.strands()[0]);
  CHECK(p.entries()[1].first == z.strands()[1]);
}

TEST_CASE("worst case pins the error weights") {
  Message single = mk({1, 6, 2}, {{"00", "0000"}});
  ChannelParams ch{Rational{1, 1}, 1, 2, 5};
  ReadPool p = sample_channel_output(single, ch, 9, true);
  CHECK(p.total() == 5);
  for (const auto& [read, count] : p.entries()) {
    CHECK(hamming_distance(read.index, single.strands()[0].index) == 1);
    CHECK(hamming_distance(read.data, single.strands()[0].data) == 2);
  }
}

TEST_CASE("enumeration golden cases") {
  Message z = mk({1, 2, 1}, {{"0", "0"}});

  ChannelParams one_read{Rational{1, 1}, 1, 0, 1};
  auto pools = enumerate_channel_outputs(z, one_read);
  REQUIRE(pools.size() == 2);
  CHECK(pools[0] == ReadPool({strand("0", "0")}));
  CHECK(pools[1] == ReadPool({strand("1", "0")}));

  ChannelParams half{Rational{1, 2}, 1, 0, 2};
  pools = enumerate_channel_outputs(z, half);
  REQUIRE(pools.size() == 2);
  // pools sort by their entry lists; the count-1 entry sorts first
  CHECK(pools[0] == ReadPool({strand("0", "0"), strand("1", "0")}));
  CHECK(pools[1] == ReadPool({strand("0", "0"), strand("0", "0")}));

  ChannelParams two_err{Rational{1, 1}, 1, 0, 2};
  pools = enumerate_channel_outputs(z, two_err);
  REQUIRE(pools.size() == 3);

  // data errors enumerate too
  ChannelParams with_ed{Rational{1, 1}, 0, 1, 1};
  pools = enumerate_channel_outputs(z, with_ed);
  CHECK(pools.size() == 2);
}

TEST_CASE("samples always land inside the enumeration") {
  Message z = mk({2, 4, 2}, {{"00", "01"}, {"11", "10"}});
  ChannelParams ch{Rational{1, 2}, 1, 1, 2};
  auto pools = enumerate_channel_outputs(z, ch);
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    ReadPool p = sample_channel_output(z, ch, seed);
    CHECK(std::binary_search(pools.begin(), pools.end(), p));
  }
  ReadPool worst = sample_channel_output(z, ch, 0, true);
  CHECK(std::binary_search(pools.begin(), pools.end(), worst));
}

TEST_CASE("enumeration budget") {
  Message z = testutil::worked_z1();
  ChannelParams ch{Rational{1, 1}, 1, 1, 4};
  CHECK_THROWS_AS(enumerate_channel_outputs(z, ch, 100), Error);
}

TEST_CASE("disjointness on the walkthrough pair") {
  ChannelParams ch{Rational{1, 1}, 1, 0, 1};
  auto res = outputs_disjoint(testutil::worked_z1(), testutil::worked_z2(), ch);
  CHECK_FALSE(res.disjoint);
  REQUIRE(res.witness.has_value());
  auto p1 = enumerate_channel_outputs(testutil::worked_z1(), ch);
  auto p2 = enumerate_channel_outputs(testutil::worked_z2(), ch);
  CHECK(std::binary_search(p1.begin(), p1.end(), *res.witness));
  CHECK(std::binary_search(p2.begin(), p2.end(), *res.witness));

  // without index errors the pair separates
  ChannelParams clean{Rational{1, 1}, 0, 0, 1};
  CHECK(outputs_disjoint(testutil::worked_z1(), testutil::worked_z2(), clean)
            .disjoint);
}

TEST_CASE("non-graphic pair still collides in the channel") {
  // distance 2 with disjoint unit metric balls, yet one shared output
  ChannelParams ch{Rational{1, 1}, 1, 0, 1};
  auto res =
      outputs_disjoint(testutil::nongraphic_z1(), testutil::nongraphic_z2(), ch);
  CHECK_FALSE(res.disjoint);
}

TEST_CASE("brute force dcc check") {
  ChannelParams ch{Rational{1, 1}, 1, 0, 1};
  auto verdict = is_dcc_brute({testutil::worked_z1(), testutil::worked_z2()}, ch);
  CHECK_FALSE(verdict.is_dcc);
  REQUIRE(verdict.violating_pair.has_value());
  CHECK(verdict.violating_pair->first == 0);
  CHECK(verdict.violating_pair->second == 1);
  CHECK(verdict.witness.has_value());

  CHECK(is_dcc_brute({testutil::worked_z1()}, ch).is_dcc);
  CHECK_THROWS_AS(is_dcc_brute({}, ch), Error);

  // two-element code over distinct multisets separates when e_d = 0
  Message a = mk({2, 3, 1}, {{"0", "00"}, {"1", "00"}});
  Message b = mk({2, 3, 1}, {{"0", "01"}, {"1", "10"}});
  CHECK(is_dcc_brute({a, b}, ch).is_dcc);
}

TEST_CASE("distance verdicts by regime") {
  std::vector<Message> pair{testutil::worked_z1(), testutil::worked_z2()};

  auto tau1 = is_dcc_by_distance(pair, {Rational{1, 1}, 1, 0, 1});
  CHECK(tau1.verdict == Verdict::GuaranteedNo);
  auto tau1_clean = is_dcc_by_distance(pair, {Rational{1, 1}, 0, 0, 1});
  CHECK(tau1_clean.verdict == Verdict::GuaranteedYes);

  CHECK_THROWS_AS(is_dcc_by_distance(pair, {Rational{1, 1}, 1, 1, 1}), Error);
  CHECK(is_dcc_by_distance({testutil::worked_z1()}, {Rational{1, 1}, 1, 0, 1})
            .verdict == Verdict::GuaranteedYes);
  CHECK_THROWS_AS(is_dcc_by_distance({}, {Rational{1, 1}, 1, 0, 1}), Error);

  // distinct-data code from an index code with min distance 2
  IndexCode p_code = search_exact_max_code(2, 4, 2).code.value();
  std::vector<BitVector> fields;
  for (std::uint64_t v = 0; v < 4; ++v) fields.push_back(BitVector(3, v));
  auto code = messages_from_code(p_code, fields);
  auto high = is_dcc_by_distance(code, {Rational{1, 2}, 1, 0, 2});
  CHECK(high.verdict == Verdict::GuaranteedYes);

  // repeated data at distance 2: every matching pairs words two apart
  Message r1 = mk({2, 5, 3}, {{"000", "11"}, {"011", "11"}});
  Message r2 = mk({2, 5, 3}, {{"101", "11"}, {"110", "11"}});
  REQUIRE(dna_distance(r1, r2) == DnaDistance::finite(2));

  // high regime, repeated data, distance above e_i: no guarantee either way
  auto inconclusive = is_dcc_by_distance({r1, r2}, {Rational{1, 2}, 1, 0, 2});
  CHECK(inconclusive.verdict == Verdict::Inconclusive);
  // ... but distance at most e_i stays a hard no
  auto no = is_dcc_by_distance({r1, r2}, {Rational{1, 2}, 2, 0, 2});
  CHECK(no.verdict == Verdict::GuaranteedNo);

  // low regime: distinct data alone suffices
  Message d1 = mk({2, 4, 2}, {{"00", "01"}, {"11", "10"}});
  Message d2 = mk({2, 4, 2}, {{"01", "01"}, {"10", "10"}});
  auto low = is_dcc_by_distance({d1, d2}, {Rational{1, 3}, 2, 0, 3});
  CHECK(low.verdict == Verdict::GuaranteedYes);
  // repeated data but distance above e_i also suffices in the low regime
  auto low_gap = is_dcc_by_distance({r1, r2}, {Rational{1, 3}, 1, 0, 3});
  CHECK(low_gap.verdict == Verdict::GuaranteedYes);
  auto low_rep = is_dcc_by_distance({r1, r2}, {Rational{1, 3}, 2, 0, 3});
  CHECK(low_rep.verdict == Verdict::Inconclusive);
}

TEST_CASE("distance verdict grouping uses data multisets") {
  // different multisets: infinitely separated, guaranteed at tau = 1
  Message a = mk({2, 3, 1}, {{"0", "00"}, {"1", "00"}});
  Message b = mk({2, 3, 1}, {{"0", "01"}, {"1", "10"}});
  ChannelParams ch{Rational{1, 1}, 2, 0, 1};
  auto verdict = is_dcc_by_distance({a, b}, ch);
  CHECK(verdict.verdict == Verdict::GuaranteedYes);
  CHECK(is_dcc_brute({a, b}, ch).is_dcc);
}

TEST_CASE("plurality decode") {
  SystemParams p{4, 4, 2};
  Message z = mk(p, {{"00", "00"}, {"01", "01"}, {"10", "10"}, {"11", "11"}});
  ChannelParams ch{Rational{1, 3}, 1, 0, 3};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ReadPool pool = sample_channel_output(z, ch, seed);
    CHECK(plurality_decode(pool, p, ch) == z);
  }
  ReadPool worst = sample_channel_output(z, ch, 3, true);
  CHECK(plurality_decode(worst, p, ch) == z);

  // wrong regime
  CHECK_THROWS_AS(
      plurality_decode(sample_channel_output(z, {Rational{1, 1}, 1, 0, 3}, 0),
                       p, ChannelParams{Rational{1, 1}, 1, 0, 3}),
      Error);

  // pool with a three-way index tie inside one data cluster
  ReadPool tie = ReadPool::from_counts({{strand("00", "00"), 1},
                                        {strand("01", "00"), 1},
                                        {strand("10", "00"), 1},
                                        {strand("01", "01"), 3},
                                        {strand("10", "10"), 3},
                                        {strand("11", "11"), 3}});
  CHECK_THROWS_AS(plurality_decode(tie, p, ch), Error);

  // wrong total
  ReadPool shorty = ReadPool::from_counts({{strand("00", "00"), 1}});
  CHECK_THROWS_AS(plurality_decode(shorty, p, ch), Error);
}

TEST_CASE("candidate sources") {
  std::vector<Message> code{testutil::worked_z1(), testutil::worked_z2()};
  ChannelParams ch{Rational{1, 1}, 1, 0, 1};
  auto res = outputs_disjoint(code[0], code[1], ch);
  REQUIRE(res.witness.has_value());
  auto sources = candidate_sources(*res.witness, code, ch);
  CHECK(sources == std::vector<std::size_t>{0, 1});

  ReadPool exact = sample_channel_output(code[0], {Rational{0, 1}, 0, 0, 1}, 0);
  auto only = candidate_sources(exact, code, ch);
  REQUIRE_FALSE(only.empty());
  CHECK(only.front() == 0);
}
