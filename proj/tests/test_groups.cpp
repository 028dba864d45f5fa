#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "scengine/conjugacy.hpp"
#include "scengine/constructions.hpp"
#include "scengine/group_spec.hpp"
#include "scengine/normal.hpp"

using namespace scengine;

namespace {

RealizeOptions gens_dir() {
  RealizeOptions opt;
  opt.base_dir = std::filesystem::path(SCENGINE_DATA_DIR) / "gens";
  return opt;
}

FiniteGroup G(const std::string& spec) { return realize_group(spec, gens_dir()); }

}  // namespace

TEST(GroupSpec, RoundTripIsIdempotent) {
  for (const char* text : {"cyclic:3", "elemab:7^2", "dihedral:30", "semidihedral:16", "quaternion:16", "sym:4",
                           "extraspecial:27+", "matgroup(3, 2, @sl2_3.json)", "semidirect(elemab:7^2, @z16.json)",
                           "direct(cyclic:2, sym:3)", "wreath(cyclic:3, cyclic:3)",
                           "semidirect(extraspecial:27+,@gl2_3_z8.json)", "  direct( cyclic:2 ,cyclic:2 ) "}) {
    const auto once = parse_group_spec(text);
    const auto printed = to_string(once);
    EXPECT_EQ(parse_group_spec(printed), once) << text;
    EXPECT_EQ(to_string(parse_group_spec(printed)), printed) << text;
  }
}

TEST(GroupSpec, ErrorsCarryPositions) {
  const auto position = [](const char* text) -> std::size_t {
    try {
      parse_group_spec(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    return std::string::npos;
  };
  EXPECT_EQ(position("cyclic:"), 7u);
  EXPECT_EQ(position("foo:3"), 0u);
  EXPECT_EQ(position("elemab:6^2"), 7u);
  EXPECT_EQ(position("dihedral:7"), 9u);
  EXPECT_EQ(position("cyclic:3 junk"), 9u);
  EXPECT_EQ(position("semidirect(cyclic:3, @x.json)"), 11u);
  EXPECT_EQ(position("sym:9"), 4u);
  EXPECT_NE(position("direct(cyclic:2 cyclic:3)"), std::string::npos);
}

TEST(Groups, NamedOrdersAndClassCounts) {
  const std::map<std::string, std::pair<std::size_t, std::size_t>> expected{
      {"cyclic:1", {1, 1}},          {"cyclic:12", {12, 12}},        {"elemab:2^3", {8, 8}},
      {"dihedral:2", {2, 2}},        {"dihedral:4", {4, 4}},         {"dihedral:8", {8, 5}},
      {"dihedral:30", {30, 9}},      {"quaternion:8", {8, 5}},       {"quaternion:16", {16, 7}},
      {"semidihedral:16", {16, 7}},  {"sym:3", {6, 3}},              {"sym:4", {24, 5}},
      {"sym:5", {120, 7}},           {"extraspecial:27+", {27, 11}}, {"wreath(cyclic:3, cyclic:3)", {81, 17}},
      {"direct(cyclic:2, sym:3)", {12, 6}}, {"matgroup(3, 2, @sl2_3.json)", {24, 7}},
      {"semidirect(elemab:7^2, @gl2_7_sd32.json)", {1568, 17}},
      {"semidirect(extraspecial:27+, @gl2_3_sd16.json)", {432, 14}},
  };
  for (const auto& [spec, oc] : expected) {
    const auto g = G(spec);
    EXPECT_EQ(g.order(), oc.first) << spec;
    EXPECT_EQ(conjugacy_data(g).size(), oc.second) << spec;
    EXPECT_EQ(g.label(), to_string(parse_group_spec(spec)));
  }
  EXPECT_EQ(dicyclic_group(12).order(), 12u);
  EXPECT_EQ(conjugacy_data(dicyclic_group(12)).size(), 6u);
  EXPECT_EQ(extraspecial27().exponent(), 3u);
}

TEST(Groups, ClosureAxioms) {
  for (const char* spec : {"sym:4", "quaternion:16", "semidirect(elemab:3^2, @gl2_3_q8.json)", "extraspecial:27+"}) {
    const auto g = G(spec);
    EXPECT_EQ(g.element_order(0), 1u);
    for (std::size_t a = 0; a < g.order(); ++a) {
      EXPECT_EQ(g.mul(a, g.inverse(a)), 0u);
      EXPECT_EQ(g.mul(0, a), a);
      for (std::size_t b = 0; b < g.order(); b += 5) {
        for (std::size_t c = 0; c < g.order(); c += 7) EXPECT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
      }
    }
  }
}

TEST(Groups, OrderBoundEnforced) {
  EXPECT_THROW(symmetric_group(8), BoundError);  // 40320 > 20000
  EXPECT_THROW(FiniteGroup::from_generators(0, {}), PreconditionError);
}

TEST(Conjugacy, MatchesDefinitionAndClassEquation) {
  for (const char* spec : {"sym:4", "dihedral:18", "quaternion:16", "semidihedral:16", "extraspecial:27+",
                           "semidirect(elemab:5^1, @aut_z5_ord4.json)", "matgroup(3, 2, @sl2_3.json)"}) {
    const auto g = G(spec);
    const auto cd = conjugacy_data(g);
    std::set<std::set<std::size_t>> ours;
    std::size_t total = 0;
    for (std::size_t c = 0; c < cd.size(); ++c) {
      ours.insert(std::set<std::size_t>(cd.classes[c].begin(), cd.classes[c].end()));
      EXPECT_EQ(cd.sizes[c] * cd.centralizer_orders[c], g.order());
      EXPECT_EQ(cd.inverse_map[cd.inverse_map[c]], c);
      total += cd.sizes[c];
    }
    EXPECT_EQ(total, g.order());
    EXPECT_EQ(ours, oracle::brute_classes(g)) << spec;
    EXPECT_EQ(cd.classes[0], std::vector<std::size_t>{0});
  }
}

TEST(Normal, OpMatchesSylowCore) {
  for (auto [spec, p] : std::vector<std::pair<const char*, std::uint64_t>>{
           {"sym:3", 2}, {"sym:3", 3}, {"sym:4", 2}, {"sym:4", 3}, {"matgroup(3, 2, @sl2_3.json)", 2},
           {"dihedral:30", 3}, {"semidirect(elemab:3^2, @gl2_3_q8.json)", 3}, {"extraspecial:27+", 3}}) {
    const auto g = G(spec);
    const auto cd = conjugacy_data(g);
    const auto sylow = sylow_subgroup(g, p);
    EXPECT_EQ(sylow.order(), p_part(g.order(), p)) << spec;
    const auto op = elements_of(cd, o_p_classes(g, cd, p));
    EXPECT_EQ(std::set<std::size_t>(op.begin(), op.end()), oracle::o_p_by_intersection(g, sylow.elements))
        << spec << " p=" << p;
  }
}

TEST(Normal, PComplements) {
  const auto s3 = G("sym:3");
  const auto cd = conjugacy_data(s3);
  const auto c = normal_p_complement_classes(s3, cd, 2);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(elements_of(cd, *c).size(), 3u);
  EXPECT_FALSE(normal_p_complement_classes(s3, cd, 3).has_value());
  const auto s4 = G("sym:4");
  EXPECT_FALSE(normal_p_complement_classes(s4, conjugacy_data(s4), 2).has_value());
  EXPECT_TRUE(normal_p_complement_classes(s4, conjugacy_data(s4), 3) == std::nullopt);
  const auto sl = G("matgroup(3, 2, @sl2_3.json)");
  const auto slcd = conjugacy_data(sl);
  const auto q8 = normal_p_complement_classes(sl, slcd, 3);
  ASSERT_TRUE(q8.has_value());
  EXPECT_EQ(elements_of(slcd, *q8).size(), 8u);
}

TEST(Normal, ComplementInvariants) {
  for (auto [spec, p] : std::vector<std::pair<const char*, std::uint64_t>>{
           {"semidirect(elemab:7^2, @gl2_7_z16.json)", 2}, {"dihedral:30", 2}, {"semidirect(elemab:13^1, @aut_z13_ord3.json)", 3},
           {"semidirect(extraspecial:27+, @gl2_3_z8.json)", 2}}) {
    const auto g = G(spec);
    const auto cd = conjugacy_data(g);
    const auto c = normal_p_complement_classes(g, cd, p);
    ASSERT_TRUE(c.has_value()) << spec;
    const auto n = elements_of(cd, *c).size();
    EXPECT_EQ(std::gcd<std::uint64_t>(n, p), 1u);
    EXPECT_TRUE(is_power_of(g.order() / n, p));
  }
}

TEST(Normal, MinimalNormalAndSolvability) {
  const auto d30 = G("dihedral:30");
  const auto cd = conjugacy_data(d30);
  const auto mins = minimal_normal_subgroups(d30, cd);
  std::multiset<std::size_t> orders;
  for (const auto& m : mins) orders.insert(m.order);
  EXPECT_EQ(orders, (std::multiset<std::size_t>{3, 5}));
  EXPECT_TRUE(is_solvable(d30));
  EXPECT_FALSE(is_solvable(G("sym:5")));
  EXPECT_FALSE(is_p_solvable(G("sym:5"), 2));
  EXPECT_TRUE(is_p_solvable(G("sym:4"), 3));
  const auto ns = normal_structure(G("sym:4"), conjugacy_data(G("sym:4")), 2);
  ASSERT_TRUE(ns.all.has_value());
  EXPECT_EQ(ns.all->size(), 4u);  // 1, V4, A4, S4
}

TEST(Quotients, OrderAndStructure) {
  const auto s4 = G("sym:4");
  const auto cd = conjugacy_data(s4);
  const auto v4 = subgroup_from_elements(s4, elements_of(cd, o_p_classes(s4, cd, 2)));
  const auto q = quotient_group(s4, v4);
  EXPECT_EQ(q.order(), 6u);
  EXPECT_EQ(conjugacy_data(q).size(), 3u);
  EXPECT_FALSE(q.is_abelian());
}
