#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "ecsv/cli.hpp"
#include "ecsv/pipeline.hpp"
#include "support.hpp"

namespace ecsv::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ecsv");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return test::fixture_path(name).string(); }

std::map<std::string, std::string> dir_contents(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    files[entry.path().filename().string()] = pipeline::read_file(entry.path());
  }
  return files;
}

TEST(Cli, ValidateRentalPairReportsDiscrepancies) {
  const auto dir = test::scratch_dir("cli_validate");
  const auto r = run_cli({"validate", "--econtract", fx("rental.txt"), "--sol", fx("rental_agreement.sol"),
                          "--out", dir.string()});
  EXPECT_EQ(r.code, kDiscrepancies) << r.err;
  EXPECT_NE(r.out.find("Rent (clause-term)"), std::string::npos);
  EXPECT_NE(r.out.find("aligned: no"), std::string::npos);
  const auto files = dir_contents(dir);
  ASSERT_EQ(files.size(), 1U);
  const auto report = nlohmann::json::parse(files.at("rental_vs_rental_agreement.report.json"));
  EXPECT_GE(report["matched_entities"].size(), 5U);
  EXPECT_EQ(files.at("rental_vs_rental_agreement.report.json"),
            test::read_fixture("golden/rental_vs_rental_agreement.report.json"));
}

TEST(Cli, ValidateCoveringContractIsAligned) {
  const auto dir = test::scratch_dir("cli_covering");
  const auto r = run_cli({"validate", "--econtract", fx("rental.txt"), "--sol", fx("covering.sol"),
                          "--out", dir.string()});
  EXPECT_EQ(r.code, kAligned) << r.out << r.err;
  EXPECT_NE(r.out.find("aligned: yes"), std::string::npos);
}

TEST(Cli, ThresholdOverrideChangesOutcome) {
  const auto dir = test::scratch_dir("cli_tau");
  const auto r = run_cli({"validate", "--econtract", fx("rental.txt"), "--sol", fx("covering.sol"),
                          "--out", dir.string(), "--tau", "1.0", "--tau-p", "1.0"});
  EXPECT_TRUE(r.code == kAligned || r.code == kDiscrepancies) << r.err;
  const auto report = nlohmann::json::parse(pipeline::read_file(dir / "rental_vs_covering.report.json"));
  EXPECT_DOUBLE_EQ(report["config"]["tau"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(report["config"]["tau_p"].get<double>(), 1.0);
}

TEST(Cli, Failures) {
  auto r = run_cli({"validate", "--econtract", fx("rental.txt"), "--sol", "/nonexistent/x.sol"});
  EXPECT_EQ(r.code, kFailure);
  EXPECT_NE(r.err.find("/nonexistent/x.sol"), std::string::npos);

  r = run_cli({"validate", "--econtract", fx("rental.txt"), "--sol", fx("rental_agreement.sol"), "--tau", "0"});
  EXPECT_EQ(r.code, kFailure);
  EXPECT_NE(r.err.find("--tau"), std::string::npos);

  r = run_cli({"validate", "--econtract", fx("rental.txt")});
  EXPECT_EQ(r.code, kFailure);
  r = run_cli({"frobnicate"});
  EXPECT_EQ(r.code, kFailure);
  r = run_cli({"validate", "--econtract", fx("rental.txt"), "--sol", fx("rental_agreement.sol"), "--emit", "pdf"});
  EXPECT_EQ(r.code, kFailure);

  const auto dir = test::scratch_dir("cli_bad");
  pipeline::write_file(dir / "bad.sol", "pragma solidity ^0.8.0;\ncontract A {\n  uint x\n}\n");
  r = run_cli({"parse-sol", (dir / "bad.sol").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, kFailure);
  EXPECT_NE(r.err.find("bad.sol:4:0: syntax error"), std::string::npos) << r.err;

  pipeline::write_file(dir / "old.sol", "pragma solidity ^0.4.24;\ncontract A {}\n");
  r = run_cli({"parse-sol", (dir / "old.sol").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, kFailure);
  EXPECT_NE(r.err.find("UnsupportedVersion"), std::string::npos) << r.err;

  pipeline::write_file(dir / "broken.kg.json", "{ not json");
  r = run_cli({"compare", (dir / "broken.kg.json").string(), (dir / "broken.kg.json").string()});
  EXPECT_EQ(r.code, kFailure);
  EXPECT_NE(r.err.find("SchemaViolation"), std::string::npos) << r.err;
}

TEST(Cli, VersionAndHelp) {
  auto r = run_cli({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, std::string(ECSV_VERSION) + "\n");
  r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("validate"), std::string::npos);
}

TEST(Cli, StageCommands) {
  const auto dir = test::scratch_dir("cli_stages");
  auto r = run_cli({"parse-sol", fx("rental_agreement.sol"), "--out", dir.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "2 top-level nodes\n");
  EXPECT_EQ(pipeline::read_file(dir / "rental_agreement.ast.json"), test::read_fixture("golden/rental_agreement.ast.json"));

  r = run_cli({"describe", fx("empty.sol"), "--out", dir.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1. contract 'Empty'\n");

  r = run_cli({"describe", (dir / "rental_agreement.ast.json").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, test::read_fixture("golden/rental_agreement.describe.txt"));

  r = run_cli({"parse-econtract", fx("rental.txt"), "--out", dir.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "13 clauses, 24 entities, 25 relations\n");
  EXPECT_EQ(pipeline::read_file(dir / "rental.econtract.json"),
            test::read_fixture("golden/rental.econtract.json"));

  r = run_cli({"graph", fx("rental_agreement.sol"), "--out", dir.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "19 nodes, 32 edges\n");
  EXPECT_EQ(pipeline::read_file(dir / "rental_agreement.kg.dot"), test::read_fixture("golden/rental_agreement.kg.dot"));
}

TEST(Cli, CompareIdenticalGraphs) {
  const auto dir = test::scratch_dir("cli_self");
  const auto g = test::rental_graph();
  pipeline::write_file(dir / "e.kg.json", graph::export_json_text(g));
  pipeline::write_file(dir / "s.kg.json", graph::export_json_text(graph::flip_side(g)));
  const auto r = run_cli({"compare", (dir / "e.kg.json").string(), (dir / "s.kg.json").string(), "--out",
                          dir.string()});
  EXPECT_EQ(r.code, kAligned) << r.err;
  EXPECT_TRUE(fs::exists(dir / "e_vs_s.report.json"));
}

TEST(Cli, StemCollisionKeepsArtifactsApart) {
  const auto dir = test::scratch_dir("cli_stem");
  pipeline::write_file(dir / "rental.txt", test::read_fixture("rental.txt"));
  pipeline::write_file(dir / "rental.sol", test::read_fixture("rental_agreement.sol"));
  const auto r = run_cli({"validate", "--econtract", (dir / "rental.txt").string(), "--sol",
                          (dir / "rental.sol").string(), "--out", (dir / "out").string(), "--emit", "kg,report"});
  EXPECT_EQ(r.code, kDiscrepancies) << r.err;
  EXPECT_TRUE(fs::exists(dir / "out" / "rental-econtract.kg.json"));
  EXPECT_TRUE(fs::exists(dir / "out" / "rental-smartcontract.kg.json"));
  EXPECT_TRUE(fs::exists(dir / "out" / "rental_vs_rental.report.json"));
}

// Running the stages one by one produces the same bytes as the one-shot run.
TEST(Cli, StagedEqualsPipelined) {
  const auto piped = test::scratch_dir("cli_piped");
  const auto staged = test::scratch_dir("cli_staged");
  auto r = run_cli({"validate", "--econtract", fx("rental.txt"), "--sol", fx("rental_agreement.sol"), "--out",
                    piped.string(), "--emit", "ast,kg,dot,report,econtract,describe"});
  ASSERT_EQ(r.code, kDiscrepancies) << r.err;

  const std::string out = staged.string();
  ASSERT_EQ(run_cli({"parse-econtract", fx("rental.txt"), "--out", out}).code, 0);
  ASSERT_EQ(run_cli({"parse-sol", fx("rental_agreement.sol"), "--out", out}).code, 0);
  ASSERT_EQ(run_cli({"describe", (staged / "rental_agreement.ast.json").string(), "--out", out}).code, 0);
  ASSERT_EQ(run_cli({"graph", (staged / "rental.econtract.json").string(), "--out", out}).code, 0);
  ASSERT_EQ(run_cli({"graph", (staged / "rental_agreement.ast.json").string(), "--out", out}).code, 0);
  r = run_cli({"compare", (staged / "rental.kg.json").string(), (staged / "rental_agreement.kg.json").string(),
               "--out", out});
  ASSERT_EQ(r.code, kDiscrepancies) << r.err;

  const auto a = dir_contents(piped);
  const auto b = dir_contents(staged);
  EXPECT_EQ(a.size(), 9U);
  EXPECT_EQ(a, b);
}

}  // namespace
}  // namespace ecsv::cli
