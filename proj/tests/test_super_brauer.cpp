#include <gtest/gtest.h>

#include "oracles.hpp"
#include "scengine/constructions.hpp"
#include "scengine/super_brauer.hpp"

using namespace scengine;

namespace {

const std::filesystem::path kData = SCENGINE_DATA_DIR;

RealizeOptions gens_dir() {
  RealizeOptions opt;
  opt.base_dir = kData / "gens";
  return opt;
}

FiniteGroup G(const std::string& spec) { return realize_group(spec, gens_dir()); }

struct Instance {
  std::string id;
  std::string group;
  std::uint64_t p;
};

std::vector<Instance> corpus() {
  std::vector<Instance> out;
  const auto doc = load_json_file(kData / "instances.json");
  for (const auto& e : doc["super_brauer"]) {
    out.push_back({e["id"], e["group"], e["p"]});
  }
  return out;
}

std::set<std::pair<Partition, Partition>> as_set(const std::vector<SuperBrauerTheory>& ts) {
  std::set<std::pair<Partition, Partition>> out;
  for (const auto& t : ts) out.insert({t.class_blocks, t.ibr_blocks});
  return out;
}

std::set<std::pair<Partition, Partition>> canonical(const std::set<std::pair<Partition, Partition>>& in) {
  std::set<std::pair<Partition, Partition>> out;
  for (const auto& [c, x] : in) out.insert({canonical_partition(c), canonical_partition(x)});
  return out;
}

}  // namespace

TEST(Context, Modes) {
  const auto d8 = G("dihedral:8");
  EXPECT_EQ(brauer_context(d8, 2).mode, BrauerMode::PGroup);
  const auto s3 = G("sym:3");
  EXPECT_EQ(brauer_context(s3, 2).mode, BrauerMode::NormalPComplement);
  EXPECT_EQ(brauer_context(s3, 3).mode, BrauerMode::Unsupported);
  EXPECT_EQ(brauer_context(s3, 5).mode, BrauerMode::NormalPComplement);
  EXPECT_THROW(brauer_context(s3, 4), PreconditionError);
  const auto ctx = brauer_context(s3, 3);
  EXPECT_THROW(count_super_brauer(ctx), PreconditionError);
  EXPECT_THROW(projective_cover_degree(ctx), PreconditionError);
}

TEST(Green, SymmetricGroupS3AtTwo) {
  const auto s3 = G("sym:3");
  const auto ctx = brauer_context(s3, 2);
  const auto fam = green_ibr(ctx);
  ASSERT_EQ(fam.size(), 2u);
  EXPECT_EQ(ctx.regular_count(), 2u);
  std::multiset<long> degrees;
  for (std::size_t phi = 0; phi < fam.size(); ++phi) degrees.insert(fam.degree(phi).to_rational().get_num().get_si());
  EXPECT_EQ(degrees, (std::multiset<long>{1, 2}));
  EXPECT_EQ(projective_cover_degree(ctx), 2u);
}

// |IBr(G)| equals the number of p-regular classes; the weighted sum of all
// Brauer characters is the regular character of N on G°.
TEST(Green, HallBijectionOnCorpus) {
  for (const auto& inst : corpus()) {
    const auto g = G(inst.group);
    const auto ctx = brauer_context(g, inst.p);
    if (ctx.mode == BrauerMode::Unsupported) continue;
    const auto fam = green_ibr(ctx);
    EXPECT_EQ(fam.size(), ctx.regular_count()) << inst.id;
    const auto n = static_cast<long long>(g.order() / p_part(g.order(), inst.p));
    for (std::size_t j = 0; j < ctx.regular_count(); ++j) {
      Cyclotomic s;
      for (std::size_t phi = 0; phi < fam.size(); ++phi) s += fam.values[phi][j].scaled(fam.weights[phi]);
      EXPECT_EQ(s, Cyclotomic(j == 0 ? n : 0)) << inst.id << " column " << j;
    }
  }
}

TEST(Count, AgreesWithBruteForceOnSmallSections) {
  std::size_t checked = 0;
  for (const auto& inst : corpus()) {
    const auto g = G(inst.group);
    const auto ctx = brauer_context(g, inst.p);
    if (ctx.mode == BrauerMode::Unsupported || ctx.regular_count() > 6) continue;
    const auto fam = green_ibr(ctx);
    const auto count = count_super_brauer(ctx, fam);
    EXPECT_EQ(as_set(count.theories), canonical(oracle::brute_force_super_brauer(fam))) << inst.id;
    ++checked;
  }
  for (auto [spec, p] : std::vector<std::pair<const char*, std::uint64_t>>{
           {"dihedral:8", 2}, {"semidirect(elemab:2^2, @gl2_2_z3.json)", 3}, {"cyclic:6", 2}, {"dihedral:10", 2}}) {
    const auto g = G(spec);
    const auto ctx = brauer_context(g, p);
    const auto fam = green_ibr(ctx);
    EXPECT_EQ(as_set(count_super_brauer(ctx, fam).theories), canonical(oracle::brute_force_super_brauer(fam))) << spec;
    ++checked;
  }
  EXPECT_GE(checked, 30u);
}

TEST(Count, TransportKeepsClassPartitions) {
  for (const auto& inst : corpus()) {
    const auto g = G(inst.group);
    const auto ctx = brauer_context(g, inst.p);
    if (ctx.mode != BrauerMode::NormalPComplement) continue;
    const auto fam = green_ibr(ctx);
    const auto count = count_super_brauer(ctx, fam);
    ASSERT_EQ(count.theories.size(), count.complement_theories.size());
    std::set<std::set<std::size_t>> ours, theirs;
    const auto& n = fam.complement->parent_index;
    for (const auto& t : count.theories) {
      for (const auto& b : t.class_blocks) {
        std::set<std::size_t> elems;
        for (auto j : b) {
          for (auto x : ctx.cd.classes[ctx.regular_classes[j]]) elems.insert(x);
        }
        ours.insert(elems);
      }
    }
    for (const auto& s : count.complement_theories) {
      for (const auto& b : s.class_blocks) {
        std::set<std::size_t> elems;
        for (auto c : b) {
          for (auto x : fam.complement_cd.classes[c]) elems.insert(n[x]);
        }
        theirs.insert(elems);
      }
    }
    EXPECT_EQ(ours, theirs) << inst.id;
  }
}

TEST(Count, IndependentOfSylowChoice) {
  for (auto [spec, p] : std::vector<std::pair<const char*, std::uint64_t>>{
           {"semidirect(elemab:7^1, @aut_z7_ord2.json)", 2}, {"semidirect(elemab:13^1, @aut_z13_ord3.json)", 3},
           {"dihedral:30", 2}, {"matgroup(3, 2, @sl2_3.json)", 3}}) {
    const auto g = G(spec);
    const auto ctx = brauer_context(g, p);
    EXPECT_EQ(count_super_brauer(ctx, green_ibr(ctx)).count, count_super_brauer(ctx, green_ibr(ctx, true)).count)
        << spec;
  }
}

TEST(Theories, FinestAndCoarsest) {
  const auto g = G("dihedral:30");
  const auto ctx = brauer_context(g, 2);
  const auto fam = green_ibr(ctx);
  const auto count = count_super_brauer(ctx, fam);
  EXPECT_EQ(count.count, 8u);
  const auto fine = finest_super_brauer(ctx, fam), coarse = coarsest_super_brauer(ctx, fam);
  EXPECT_NE(std::find(count.theories.begin(), count.theories.end(), fine), count.theories.end());
  EXPECT_NE(std::find(count.theories.begin(), count.theories.end(), coarse), count.theories.end());
  EXPECT_FALSE(verify_super_brauer(ctx, fam, {{0, 1}, {2, 3, 4, 5, 6, 7}}, {{0, 1}, {2, 3, 4, 5, 6, 7}}));
}

TEST(Theories, ThreeBlockWitnessesForD30) {
  const auto g = G("dihedral:30");
  const auto ctx = brauer_context(g, 2);
  const auto fam = green_ibr(ctx);
  std::optional<NormalSubgroupInfo> m3;
  for (const auto& m : minimal_normal_subgroups(g, ctx.cd)) {
    if (m.order == 3) m3 = m;
  }
  ASSERT_TRUE(m3.has_value());
  const auto three = three_block_theory(ctx, fam, m3->classes);
  EXPECT_EQ(three.theory.size(), 3u);
  const auto& m_classes = m3->classes;
  for (std::size_t j = 0; j < ctx.regular_count(); ++j) {
    const bool in_m = std::find(m_classes.begin(), m_classes.end(), ctx.regular_classes[j]) != m_classes.end();
    EXPECT_EQ(three.kernel_witness[j], Cyclotomic(j == 0 ? 20 : in_m ? -10 : 0));
    EXPECT_EQ(three.quotient_witness[j], Cyclotomic(j == 0 || in_m ? 8 : -2));
  }
  // The witnesses are constant on the blocks and lie in the span of the block witnesses.
  for (const auto& w : {three.kernel_witness, three.quotient_witness}) {
    for (const auto& b : three.theory.class_blocks) {
      for (auto j : b) EXPECT_EQ(w[j], w[b.front()]);
    }
  }
  EXPECT_THROW(three_block_theory(ctx, fam, {0}), PreconditionError);
}

TEST(Classify, OneTheoryRows) {
  for (const auto& inst : corpus()) {
    if (inst.id.rfind("one.", 0) != 0) continue;
    const auto r = classify_one(G(inst.group), inst.p);
    EXPECT_TRUE(r.one_theory) << inst.id;
    EXPECT_LE(r.regular_classes, 2u) << inst.id;
    EXPECT_NE(r.row, "unmatched") << inst.id;
  }
  // With O_p nontrivial: S4/V4 = S3 is the Fermat family at q = 3.
  const auto s4 = classify_one(G("sym:4"), 2);
  EXPECT_TRUE(s4.one_theory);
  EXPECT_EQ(s4.row, "Z_q x| Z_{2^n}, q = 2^n + 1 Fermat");
  EXPECT_EQ(classify_one(G("dihedral:8"), 2).row, "1");
  const auto s3 = classify_one(G("sym:3"), 5);
  EXPECT_FALSE(s3.one_theory);
  EXPECT_EQ(s3.regular_classes, 3u);
}

TEST(Classify, OneTheoryIffAtMostTwoRegularClasses) {
  for (const auto& inst : corpus()) {
    const auto g = G(inst.group);
    const auto ctx = brauer_context(g, inst.p);
    if (ctx.mode == BrauerMode::Unsupported) continue;
    const auto r = classify_one(g, inst.p);
    EXPECT_EQ(r.one_theory, count_super_brauer(ctx).count == 1) << inst.id;
  }
}

TEST(Classify, TwoTheories) {
  for (const auto& inst : corpus()) {
    if (inst.id.rfind("two.", 0) != 0) continue;
    const auto r = classify_two(G(inst.group), inst.p);
    EXPECT_TRUE(r.two_theories) << inst.id << ": " << r.reason;
    if (r.nonminimal_two) {
      EXPECT_EQ(r.regular_classes, 3u) << inst.id;
    }
  }
  const auto control = classify_two(G("semidirect(elemab:13^1, @aut_z13_ord3.json)"), 3);
  EXPECT_FALSE(control.two_theories);
  EXPECT_EQ(control.invariant_count, 3u);
  EXPECT_THROW(classify_two(G("sym:3"), 3), PreconditionError);
  EXPECT_THROW(classify_two(G("sym:5"), 2), PreconditionError);
}

TEST(Json, TheoryShape) {
  const auto g = G("sym:3");
  const auto ctx = brauer_context(g, 2);
  const auto fam = green_ibr(ctx);
  const auto j = to_json(finest_super_brauer(ctx, fam));
  EXPECT_EQ(j["class_blocks"].size(), 2u);
  EXPECT_EQ(j["ibr_blocks"].size(), 2u);
  EXPECT_EQ(j["values"].size(), 2u);
}
