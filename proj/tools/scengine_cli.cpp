// Command-line front end: supercharacter theories, super-Brauer counts,
// orbit reports, character tables and the table verification harness.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scengine/scengine.hpp"

#ifndef SCENGINE_DATA_DIR
#define SCENGINE_DATA_DIR "data"
#endif

namespace {

using nlohmann::json;
using namespace scengine;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Common {
  bool json_out = false;
  std::string base_dir = ".";
  std::string data_dir;
};

std::filesystem::path data_dir(const Common& c) {
  if (!c.data_dir.empty()) return c.data_dir;
  if (const char* env = std::getenv("SCENGINE_DATA_DIR")) return env;
  return SCENGINE_DATA_DIR;
}

RealizeOptions realize_options(const Common& c) {
  RealizeOptions opt;
  opt.base_dir = c.base_dir;
  opt.fallback_dirs = {data_dir(c) / "gens", data_dir(c)};
  return opt;
}

std::filesystem::path resolve_file(const Common& c, const std::string& file) {
  std::filesystem::path p(file.starts_with("@") ? file.substr(1) : file);
  if (p.is_absolute() || std::filesystem::exists(c.base_dir / p)) return p.is_absolute() ? p : c.base_dir / p;
  for (const auto& dir : realize_options(c).fallback_dirs) {
    if (std::filesystem::exists(dir / p)) return dir / p;
  }
  return c.base_dir / p;
}

void emit(const Common& c, const json& j, const std::string& text) {
  if (c.json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

std::string partition_text(const Partition& p) {
  std::string s = "{";
  for (std::size_t b = 0; b < p.size(); ++b) {
    s += b ? " | " : "";
    for (std::size_t i = 0; i < p[b].size(); ++i) s += (i ? "," : "") + std::to_string(p[b][i]);
  }
  return s + "}";
}

int cmd_sct(const Common& c, const std::string& spec, bool list) {
  const auto g = realize_group(spec, realize_options(c));
  const auto cd = conjugacy_data(g);
  const auto table = character_table(g, cd);
  const auto set = enumerate_scts(g, cd, table);
  json j = {{"group", g.label()}, {"order", g.order()}, {"classes", cd.size()}, {"count", set.size()}};
  std::string text = g.label() + ": order " + std::to_string(g.order()) + ", " + std::to_string(cd.size()) +
                     " classes, " + std::to_string(set.size()) + " supercharacter theories\n";
  if (list) {
    j["theories"] = json::array();
    for (const auto& s : set) {
      j["theories"].push_back(to_json(s));
      text += "  classes " + partition_text(s.class_blocks) + "  characters " + partition_text(s.char_blocks) + "\n";
    }
  }
  emit(c, j, text);
  return kExitOk;
}

int cmd_sbt(const Common& c, const std::string& spec, std::uint64_t p, bool list) {
  const auto g = realize_group(spec, realize_options(c));
  const auto ctx = brauer_context(g, p);
  const auto one = classify_one(g, p);
  json j = {{"group", g.label()},
            {"order", g.order()},
            {"p", p},
            {"mode", to_string(ctx.mode)},
            {"p_regular_classes", ctx.regular_count()},
            {"one_theory", one.one_theory},
            {"table_1_row", one.row}};
  std::string text = g.label() + " at p = " + std::to_string(p) + ": " + std::to_string(ctx.regular_count()) +
                     " p-regular classes, mode " + to_string(ctx.mode) + "\n";
  if (ctx.mode != BrauerMode::Unsupported) {
    const auto fam = green_ibr(ctx);
    const auto count = count_super_brauer(ctx, fam);
    j["ibr_count"] = fam.size();
    j["super_brauer_count"] = count.count;
    text += "  super-Brauer character theories: " + std::to_string(count.count) + "\n";
    if (list) {
      j["theories"] = json::array();
      for (const auto& t : count.theories) {
        j["theories"].push_back(to_json(t));
        text += "  classes " + partition_text(t.class_blocks) + "  IBr " + partition_text(t.ibr_blocks) + "\n";
      }
    }
  } else {
    j["super_brauer_count"] = nullptr;
    text += "  super-Brauer count unavailable without a normal p-complement\n";
  }
  try {
    const auto two = classify_two(g, p);
    j["two_theories"] = two.two_theories;
    j["two_theories_reason"] = two.reason;
    text += std::string("  two theories: ") + (two.two_theories ? "yes" : "no") + " (" + two.reason + ")\n";
  } catch (const PreconditionError& e) {
    j["two_theories"] = nullptr;
    j["two_theories_reason"] = e.what();
  }
  emit(c, j, text);
  return kExitOk;
}

int cmd_orbits(const Common& c, const std::string& file, std::uint32_t q) {
  const auto action = LinearAction::from_json(q, load_json_file(resolve_file(c, file)));
  const auto d = orbits(action);
  json j = to_json(d, action.dimension(), q);
  j["group_order"] = action.group().order();
  j["dimension"] = action.dimension();
  j["field"] = q;
  std::string text = "P of order " + std::to_string(action.group().order()) + " on GF(" + std::to_string(q) + ")^" +
                     std::to_string(action.dimension()) + "\n  orbit sizes on V:   " +
                     j["orbit_sizes_V"].dump() + "\n  orbit sizes on Irr: " + j["orbit_sizes_Irr"].dump() + "\n";
  emit(c, j, text);
  return kExitOk;
}

int cmd_chartab(const Common& c, const std::string& spec) {
  const auto g = realize_group(spec, realize_options(c));
  const auto cd = conjugacy_data(g);
  auto table = character_table(g, cd);
  table.label = g.label();
  if (!verify_orthogonality(table)) throw VerificationError("orthogonality failed");
  std::string text = g.label() + ": " + std::to_string(table.size()) + " irreducible characters, degrees";
  for (const auto& d : table.degrees()) text += " " + std::to_string(d);
  text += "\n";
  for (const auto& row : table.rows) {
    text += " ";
    for (const auto& v : row) text += " " + v.to_string();
    text += "\n";
  }
  emit(c, to_json(table), text);
  return kExitOk;
}

int cmd_invariant(const Common& c, const std::string& vspec, const std::string& file, bool list) {
  const auto spec = parse_group_spec(vspec);
  if (spec.kind != GroupSpec::Kind::Elemab) throw PreconditionError("V must be given as elemab:q^n");
  const auto q = static_cast<std::uint32_t>(spec.params[0]);
  const auto action = LinearAction::from_json(q, load_json_file(resolve_file(c, file)));
  if (action.dimension() != spec.params[1]) throw PreconditionError("action dimension does not match V");
  const auto d = orbits(action);
  const auto set = enumerate_invariant_scts(action);
  json j = {{"V", to_string(spec)},
            {"group_order", action.group().order()},
            {"orbit_sizes_V", d.sizes_vectors()},
            {"invariant_count", set.size()}};
  std::string text = "P of order " + std::to_string(action.group().order()) + " on " + to_string(spec) + ": " +
                     std::to_string(set.size()) + " P-invariant supercharacter theories\n";
  if (list) {
    j["theories"] = json::array();
    for (const auto& s : set) {
      j["theories"].push_back(to_json(s));
      text += "  classes " + partition_text(s.class_blocks) + "\n";
    }
  }
  emit(c, j, text);
  return kExitOk;
}

int cmd_verify(const Common& c, const std::vector<std::string>& sections, const std::string& junit) {
  for (const auto& s : sections) {
    const auto& known = PaperVerifier::sections();
    if (std::find(known.begin(), known.end(), s) == known.end()) throw PreconditionError("unknown section '" + s + "'");
  }
  const PaperVerifier verifier(data_dir(c));
  const auto report = verifier.run(sections);
  if (!junit.empty()) {
    std::ofstream out(junit);
    if (!out) throw PreconditionError("cannot write " + junit);
    out << report.to_junit();
  }
  std::string text;
  for (const auto& r : report.checks) {
    if (r.status != "pass") text += r.status + " " + r.id + ": " + r.notes + "\n";
  }
  text += std::to_string(report.count("pass")) + " passed, " + std::to_string(report.count("fail")) + " failed, " +
          std::to_string(report.count("skipped")) + " skipped\n";
  emit(c, report.to_json(), text);
  return report.all_passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supercharacter and super-Brauer character theories of small finite groups"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--json", common.json_out, "Emit JSON on standard output");
  app.add_option("--base-dir", common.base_dir, "Directory for relative @file references");
  app.add_option("--data-dir", common.data_dir, "Directory holding the table data files");

  std::string spec, file, vspec, junit;
  std::uint64_t p = 0;
  std::uint32_t q = 0;
  bool list = false;
  std::vector<std::string> sections;
  const auto add_json = [&](CLI::App* sub) {
    sub->add_flag("--json", common.json_out, "Emit JSON on standard output");
    sub->add_option("--base-dir", common.base_dir, "Directory for relative @file references");
    sub->add_option("--data-dir", common.data_dir, "Directory holding the table data files");
  };

  auto* sct = app.add_subcommand("sct", "Enumerate supercharacter theories");
  sct->add_option("spec", spec, "Group spec")->required();
  sct->add_flag("--list", list, "List every theory");
  add_json(sct);

  auto* sbt = app.add_subcommand("sbt", "Count super-Brauer character theories");
  sbt->add_option("spec", spec, "Group spec")->required();
  sbt->add_option("--p", p, "Prime")->required()->check(CLI::PositiveNumber);
  sbt->add_flag("--list", list, "List every theory");
  add_json(sbt);

  auto* orb = app.add_subcommand("orbits", "Orbits of a matrix group on V and Irr(V)");
  orb->add_option("generators", file, "JSON file of generator matrices")->required();
  orb->add_option("--field", q, "Prime field order")->required();
  add_json(orb);

  auto* chartab = app.add_subcommand("chartab", "Character table");
  chartab->add_option("spec", spec, "Group spec")->required();
  add_json(chartab);

  auto* inv = app.add_subcommand("invariant", "P-invariant supercharacter theories of V");
  inv->add_option("V", vspec, "elemab:q^n")->required();
  inv->add_option("--action", file, "JSON file of generator matrices")->required();
  inv->add_flag("--list", list, "List every theory");
  add_json(inv);

  auto* verify = app.add_subcommand("verify-paper", "Run the table verification harness");
  verify->add_option("--section", sections, "Sections to run")
      ->check(CLI::IsMember({"table_1ab", "table_2_6", "table_1e", "theorem_instances"}));
  verify->add_option("--junit", junit, "Write JUnit XML to this path");
  add_json(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sct->parsed()) return cmd_sct(common, spec, list);
    if (sbt->parsed()) return cmd_sbt(common, spec, p, list);
    if (orb->parsed()) return cmd_orbits(common, file, q);
    if (chartab->parsed()) return cmd_chartab(common, spec);
    if (inv->parsed()) return cmd_invariant(common, vspec, file, list);
    if (verify->parsed()) return cmd_verify(common, sections, junit);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
