#include <gtest/gtest.h>

#include <fstream>

#include "scengine/paper_verify.hpp"

using namespace scengine;

namespace {

const std::filesystem::path kData = SCENGINE_DATA_DIR;

const Report& full_report() {
  static const Report report = PaperVerifier(kData).run();
  return report;
}

std::filesystem::path scratch_copy() {
  const auto dir = std::filesystem::temp_directory_path() / ("scengine_verify_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::copy(kData, dir, std::filesystem::copy_options::recursive);
  return dir;
}

}  // namespace

TEST(PaperVerify, EverySectionPasses) {
  const auto& r = full_report();
  for (const auto& c : r.checks) EXPECT_NE(c.status, "fail") << c.id << ": " << c.notes;
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.count("skipped"), 3u);
  EXPECT_GE(r.checks.size(), 400u);
  for (const auto& s : PaperVerifier::sections()) {
    EXPECT_TRUE(std::any_of(r.checks.begin(), r.checks.end(), [&](const auto& c) { return c.section == s; })) << s;
  }
}

TEST(PaperVerify, RecordsAreSortedAndUnique) {
  const auto& r = full_report();
  std::set<std::string> ids;
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    EXPECT_TRUE(ids.insert(r.checks[i].id).second) << r.checks[i].id;
    if (i > 0) {
      EXPECT_LE(std::tie(r.checks[i - 1].section, r.checks[i - 1].id), std::tie(r.checks[i].section, r.checks[i].id));
    }
    EXPECT_TRUE(r.checks[i].provenance == "printed_table" || r.checks[i].provenance == "formula" ||
                r.checks[i].provenance == "derived")
        << r.checks[i].id;
  }
}

TEST(PaperVerify, DeterministicJson) {
  const auto again = PaperVerifier(kData).run();
  EXPECT_EQ(again.to_json().dump(), full_report().to_json().dump());
  const auto j = again.to_json();
  EXPECT_EQ(j["summary"]["total"], again.checks.size());
  EXPECT_EQ(j["summary"]["fail"], 0);
  EXPECT_TRUE(j["checks"][0]["expected"].contains("provenance"));
}

TEST(PaperVerify, SectionFilter) {
  const auto r = PaperVerifier(kData).run({"table_2_6"});
  ASSERT_FALSE(r.checks.empty());
  for (const auto& c : r.checks) EXPECT_EQ(c.section, "table_2_6");
  EXPECT_THROW(PaperVerifier(kData).run_section("table_9"), PreconditionError);
}

TEST(PaperVerify, JunitOutput) {
  const auto& r = full_report();
  const auto xml = r.to_junit();
  EXPECT_NE(xml.find("<testsuites tests=\"" + std::to_string(r.checks.size()) + "\" failures=\"0\" skipped=\"3\">"),
            std::string::npos);
  std::size_t suites = 0, skipped = 0;
  for (auto pos = xml.find("<testsuite "); pos != std::string::npos; pos = xml.find("<testsuite ", pos + 1)) ++suites;
  for (auto pos = xml.find("<skipped "); pos != std::string::npos; pos = xml.find("<skipped ", pos + 1)) ++skipped;
  EXPECT_EQ(suites, PaperVerifier::sections().size());
  EXPECT_EQ(skipped, 3u);
}

// A corrupted printed value must surface as a failing record.
TEST(PaperVerify, DetectsTamperedTable) {
  const auto dir = scratch_copy();
  auto data = load_json_file(dir / "table_2_6.json");
  data["values"][1][1] = 6;
  std::ofstream(dir / "table_2_6.json") << data.dump(1);
  const auto r = PaperVerifier(dir).run({"table_2_6"});
  EXPECT_GE(r.count("fail"), 1u);
  EXPECT_FALSE(r.all_passed());
  const auto xml = r.to_junit();
  EXPECT_NE(xml.find("<failure "), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(PaperVerify, DetectsWrongInstanceExpectation) {
  const auto dir = scratch_copy();
  auto data = load_json_file(dir / "instances.json");
  for (auto& e : data["super_brauer"]) {
    if (e["id"] == "control.z13_z3.p3") e["expected"]["super_brauer_count"] = 2;
  }
  std::ofstream(dir / "instances.json") << data.dump(1);
  const auto r = PaperVerifier(dir).run({"theorem_instances"});
  EXPECT_EQ(r.count("fail"), 1u);
  std::filesystem::remove_all(dir);
}

TEST(PaperVerify, MissingDataIsAnError) {
  EXPECT_ANY_THROW(PaperVerifier("/nonexistent/scengine").run({"table_1e"}));
}
