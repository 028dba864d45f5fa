// Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.

#include <chrono>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

#include "oracles.hpp"
#include "scengine/scengine.hpp"

using namespace scengine;

namespace {

const std::filesystem::path kData = SCENGINE_DATA_DIR;

RealizeOptions gens_dir() {
  RealizeOptions opt;
  opt.base_dir = kData / "gens";
  return opt;
}

FiniteGroup G(const std::string& spec) { return realize_group(spec, gens_dir()); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::size_t sct_count(const FiniteGroup& g) {
  const auto cd = conjugacy_data(g);
  return enumerate_scts(g, cd, character_table(g, cd)).size();
}

const Report& verifier_report() {
  static const Report r = PaperVerifier(kData).run();
  return r;
}

// Records of one section whose id matches `pattern`; every one must pass.
std::size_t require_records(Outcome& o, const std::string& section, const std::string& pattern) {
  const std::regex re(pattern);
  std::size_t n = 0;
  for (const auto& c : verifier_report().checks) {
    if (c.section != section || !std::regex_search(c.id, re)) continue;
    ++n;
    o.require(c.status == "pass", c.id + " expected " + c.expected.dump() + " computed " + c.computed.dump());
  }
  o.require(n > 0, "no records matching " + pattern);
  return n;
}

struct SbInstance {
  std::string id, group;
  std::uint64_t p;
};

std::vector<SbInstance> super_brauer_instances() {
  const auto doc = load_json_file(kData / "instances.json");
  std::vector<SbInstance> out;
  for (const auto& e : doc["super_brauer"]) out.push_back({e["id"], e["group"], e["p"]});
  return out;
}

std::vector<std::pair<std::string, LinearAction>> corpus_actions() {
  std::vector<std::pair<std::string, LinearAction>> out;
  const std::regex field(R"((?:aut_z|gl\d+_|sl\d+_)(\d+).*\.json)");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(kData / "gens")) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::smatch m;
    const auto name = f.filename().string();
    if (!std::regex_match(name, m, field)) continue;
    out.emplace_back(name, LinearAction::from_json(static_cast<std::uint32_t>(std::stoul(m[1])), load_json_file(f)));
  }
  const auto tables = load_json_file(kData / "tables_1ab.json");
  for (const auto& e : tables["entries"]) {
    out.emplace_back("tables_1ab row " + std::to_string(e["row"].get<int>()),
                     LinearAction::from_json(tables["field"].get<std::uint32_t>(), e["generators"]));
  }
  return out;
}

Outcome criterion1() {
  Outcome o;
  for (auto [spec, expected] : std::vector<std::pair<const char*, std::size_t>>{{"cyclic:2", 1}, {"cyclic:3", 2}, {"sym:3", 2}}) {
    const auto t = Clock::now();
    const auto n = sct_count(G(spec));
    const double s = seconds_since(t);
    o.detail << " " << spec << "=" << n;
    o.require(n == expected, std::string(spec) + " count");
    o.require(s < 1.0, std::string(spec) + " took over 1 s");
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t = Clock::now();
  const std::vector<std::string> specs{
      "cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6", "elemab:2^2", "sym:3", "dihedral:8",
      "quaternion:8", "dihedral:10", "semidirect(elemab:2^2, @gl2_2_z3.json)", "dihedral:12", "dicyclic:12",
      "dihedral:14", "semidirect(elemab:7^1, @aut_z7_ord3.json)", "dihedral:18",
      "semidirect(elemab:3^2, @gl2_3_minus_i.json)", "semidirect(elemab:5^1, @aut_z5_ord4.json)", "sym:4"};
  for (const auto& spec : specs) {
    const auto g = spec == "dicyclic:12" ? dicyclic_group(12) : G(spec);
    const auto cd = conjugacy_data(g);
    const auto table = character_table(g, cd);
    o.require(g.order() <= 24 && cd.size() <= 6, spec + " outside the order/class range");
    std::set<std::pair<Partition, Partition>> ours, brute;
    for (const auto& s : enumerate_scts(g, cd, table)) ours.insert({s.class_blocks, s.char_blocks});
    for (const auto& [c, x] : oracle::brute_force_theories(table)) brute.insert({canonical_partition(c), canonical_partition(x)});
    o.require(ours == brute, spec + " differs from brute force");
  }
  const double s = seconds_since(t);
  o.detail << " " << specs.size() << " groups";
  o.require(s < 120.0, "took over 2 min");
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& inst : super_brauer_instances()) {
    if (inst.id.rfind("one.", 0) != 0) continue;
    const auto g = G(inst.group);
    const auto ctx = brauer_context(g, inst.p);
    const auto count = count_super_brauer(ctx).count;
    const auto one = classify_one(g, inst.p);
    ++n;
    o.require(count == 1, inst.id + " count " + std::to_string(count));
    o.require(ctx.regular_count() <= 2, inst.id + " regular classes");
    o.require(one.one_theory && one.row != "unmatched", inst.id + " classification");
  }
  o.require(n == 8, "expected 8 instances");
  const auto s3 = G("sym:3");
  const auto ctx = brauer_context(s3, 5);
  const auto one = classify_one(s3, 5);
  o.require(!one.one_theory && count_super_brauer(ctx).count != 1, "S3 at p=5 must not have one theory");
  o.detail << " " << n << " instances; S3 p=5 count " << count_super_brauer(ctx).count;
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (const char* spec : {"semidirect(elemab:7^1, @aut_z7_ord2.json)", "semidirect(elemab:7^2, @gl2_7_z16.json)",
                           "semidirect(elemab:7^2, @gl2_7_q16.json)", "semidirect(elemab:7^2, @gl2_7_sd32.json)"}) {
    const auto g = G(spec);
    const auto ctx = brauer_context(g, 2);
    const auto count = count_super_brauer(ctx).count;
    o.detail << " " << count << "/" << ctx.regular_count();
    o.require(count == 2 && ctx.regular_count() == 4, spec);
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  require_records(o, "table_2_6", R"(^table_2_6\.(values|orbit_sizes|equal_value|merged_value|merged_theory|invariant_count)$)");
  for (const auto& c : verifier_report().checks) {
    if (c.id == "table_2_6.values") o.detail << " " << c.computed.dump() << " " << c.notes;
    if (c.id == "table_2_6.invariant_count") o.detail << "; invariant count " << c.computed.dump();
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto n = require_records(o, "table_1e", R"(^table_1e\.)");
  o.detail << " " << n << " records";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto orders = require_records(o, "table_1ab", R"(\.order$)");
  const auto orbit = require_records(o, "table_1ab", R"(\.orbits$)");
  const auto inv = require_records(o, "table_1ab", R"(\.invariant_count$)");
  require_records(o, "table_1ab", R"(\.sylow_order$)");
  o.require(orders == 16 && orbit == 16 && inv == 16, "expected sixteen entries");
  o.detail << " " << orders << " entries";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& inst : super_brauer_instances()) {
    const auto g = G(inst.group);
    const auto ctx = brauer_context(g, inst.p);
    if (ctx.mode != BrauerMode::NormalPComplement) continue;
    ++n;
    const auto fam = green_ibr(ctx);
    o.require(fam.size() == ctx.regular_count(), inst.id + " |IBr|");
    const auto count = count_super_brauer(ctx, fam);
    std::set<std::set<std::set<std::size_t>>> transported, invariant;
    for (const auto& t : count.theories) {
      std::set<std::set<std::size_t>> blocks;
      for (const auto& b : t.class_blocks) {
        std::set<std::size_t> e;
        for (auto j : b) e.insert(ctx.cd.classes[ctx.regular_classes[j]].begin(), ctx.cd.classes[ctx.regular_classes[j]].end());
        blocks.insert(e);
      }
      transported.insert(blocks);
    }
    for (const auto& s : count.complement_theories) {
      std::set<std::set<std::size_t>> blocks;
      for (const auto& b : s.class_blocks) {
        std::set<std::size_t> e;
        for (auto c : b) {
          for (auto x : fam.complement_cd.classes[c]) e.insert(fam.complement->parent_index[x]);
        }
        blocks.insert(e);
      }
      invariant.insert(blocks);
    }
    o.require(transported == invariant, inst.id + " transported partitions");
  }
  o.detail << " " << n << " normal-p-complement instances";
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::set<std::string> specs{"cyclic:12", "dihedral:30", "sym:4", "sym:5", "quaternion:16", "semidihedral:16",
                              "extraspecial:27+", "wreath(cyclic:3, cyclic:3)", "direct(cyclic:2, sym:3)"};
  for (const auto& inst : super_brauer_instances()) specs.insert(inst.group);
  std::size_t tables = 0;
  for (const auto& spec : specs) {
    const auto g = G(spec);
    if (g.order() > 512) continue;
    ++tables;
    o.require(verify_orthogonality(character_table(g, conjugacy_data(g))), spec + " orthogonality");
  }
  std::size_t coprime = 0, three_orbit = 0;
  for (const auto& [name, a] : corpus_actions()) {
    if (std::gcd<std::size_t>(a.group().order(), a.q()) == 1) {
      ++coprime;
      o.require(brauer_permutation_check(a), name + " Brauer permutation");
    }
    if (orbits(a).on_vectors.size() == 3) {
      ++three_orbit;
      o.require(enumerate_invariant_scts(a).size() == 2, name + " three-orbit count");
    }
  }
  for (auto [p, q, m] : std::vector<std::tuple<std::size_t, std::uint32_t, std::size_t>>{{2, 3, 1}, {2, 5, 1}, {3, 2, 2}}) {
    const auto d = DirectSumDecomposition::make(q, std::vector<std::size_t>(p, m));
    try {
      o.require(weight_theory(d, abelian_dual(q, static_cast<std::uint32_t>(m * p))).size() == p + 1, "weight theory size");
    } catch (const Error& e) {
      o.require(false, std::string("weight theory: ") + e.what());
    }
  }
  o.detail << " " << tables << " tables, " << coprime << " coprime actions, " << three_orbit
           << " three-orbit actions, 3 weight theories";
  return o;
}

Outcome criterion10() {
  Outcome o;
  const auto g = G("semidirect(elemab:13^1, @aut_z13_ord3.json)");
  const auto count = count_super_brauer(brauer_context(g, 3)).count;
  o.require(count == 3, "Z13 x| Z3 at p=3 count " + std::to_string(count));
  o.detail << " Z13 x| Z3 p=3 count " << count;
  require_records(o, "table_2_6", R"(^table_2_6\.maximal\.\d+\.exponent3_)");
  for (const auto& c : verifier_report().checks) {
    if (c.id.find(".exponent3_") != std::string::npos) o.detail << "; " << c.id << " " << c.computed.dump();
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"supercharacter theory counts", criterion1},   {"oracle equivalence", criterion2},
      {"one-theory classification", criterion3},     {"two-theory instances", criterion4},
      {"Z3 wr Z3 supercharacter table", criterion5}, {"circulant table over zeta_7", criterion6},
      {"sixteen 2-subgroups of GL4(3)", criterion7}, {"Hall-bijection consistency", criterion8},
      {"property suites", criterion9},               {"negative controls", criterion10}};
  bool all = true;
  const auto start = Clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    all = all && o.pass;
    std::cout << "CRITERION " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << ": " << criteria[i].first << " ("
              << std::fixed << std::setprecision(2) << seconds_since(t) << " s)" << o.detail.str() << std::endl;
  }
  std::cout << "TOTAL " << (all ? "PASS" : "FAIL") << " (" << std::fixed << std::setprecision(2)
            << seconds_since(start) << " s)" << std::endl;
  return all ? 0 : 1;
}
