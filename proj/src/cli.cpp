#include "ecsv/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "ecsv/compare.hpp"
#include "ecsv/error.hpp"
#include "ecsv/pipeline.hpp"
#include "ecsv/solidity/ast_json.hpp"
#include "ecsv/solidity/parser.hpp"

namespace ecsv::cli {

namespace fs = std::filesystem;

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Prefixes an error message with the input path unless it already names it.
template <typename Fn>
auto with_path(const fs::path& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    const std::string where = path.string();
    std::string message = e.what();
    if (message.find(where) == std::string::npos) message = where + ": " + message;
    throw e.with_message(message);
  }
}

struct CommonOptions {
  std::string out_dir = ".";
  std::string config_path;
  std::optional<double> tau;
  std::optional<double> tau_p;
};

Config load_settings(const CommonOptions& opts) {
  Config config = opts.config_path.empty() ? default_config() : load_config(opts.config_path);
  auto check = [](double value, const char* flag) {
    if (!(value > 0.0 && value <= 1.0)) {
      throw Error(ErrorCode::ConfigError, std::string(flag) + " must be in (0, 1]");
    }
  };
  if (opts.tau) {
    check(*opts.tau, "--tau");
    config.matching.tau = *opts.tau;
  }
  if (opts.tau_p) {
    check(*opts.tau_p, "--tau-p");
    config.matching.tau_p = *opts.tau_p;
  }
  return config;
}

fs::path output_dir(const CommonOptions& opts) {
  fs::path dir(opts.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create output directory '" + dir.string() + "'");
  return dir;
}

pipeline::EContractExtraction load_econtract(const fs::path& path, const Config& config) {
  return with_path(path, [&] {
    econtract::EContractDocument doc{pipeline::read_file(path), path.filename().string()};
    return pipeline::extract_econtract(doc, config.lexicons);
  });
}

solidity::AstNode load_solidity(const fs::path& path) {
  return with_path(path, [&] {
    solidity::SoliditySource src{pipeline::read_file(path), path.string()};
    return solidity::parse_source(src);
  });
}

solidity::AstNode load_ast(const fs::path& path) {
  const std::string name = path.filename().string();
  if (ends_with(name, ".ast.json")) {
    return with_path(path, [&] { return solidity::ast_from_json(pipeline::read_json_file(path)); });
  }
  return load_solidity(path);
}

graph::KnowledgeGraph load_graph(const fs::path& path) {
  return with_path(path, [&] { return graph::import_json(pipeline::read_json_file(path)); });
}

graph::KnowledgeGraph graph_for_input(const fs::path& path, const Config& config) {
  const std::string name = path.filename().string();
  if (ends_with(name, ".econtract.json")) {
    return with_path(path, [&] {
      return pipeline::econtract_graph(pipeline::extraction_from_json(pipeline::read_json_file(path)));
    });
  }
  if (ends_with(name, ".ast.json") || ends_with(name, ".sol")) {
    const auto root = load_ast(path);
    return pipeline::smartcontract_graph(root, describe::Grammar::from_config(config));
  }
  return pipeline::econtract_graph(load_econtract(path, config));
}

int report_exit(const compare::DiscrepancyReport& report) {
  return report.aligned ? kAligned : kDiscrepancies;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Validate a Solidity smart contract against its e-contract", "ecsv"};
  app.set_version_flag("--version", ECSV_VERSION);
  app.require_subcommand(1);

  CommonOptions validate_opts;
  std::string econtract_path, sol_path;
  std::vector<std::string> emit{"report"};
  auto* validate = app.add_subcommand("validate", "Run the full pipeline and compare the two graphs");
  validate->add_option("--econtract", econtract_path, "E-contract text")->required();
  validate->add_option("--sol", sol_path, "Solidity source")->required();
  validate->add_option("--out", validate_opts.out_dir, "Output directory");
  validate->add_option("--tau", validate_opts.tau, "Entity match threshold");
  validate->add_option("--tau-p", validate_opts.tau_p, "Predicate match threshold");
  validate->add_option("--config", validate_opts.config_path, "Config file");
  validate->add_option("--emit", emit, "Artifacts to write")
      ->delimiter(',')
      ->check(CLI::IsMember({"ast", "kg", "dot", "report", "econtract", "describe"}));

  CommonOptions stage_opts;
  std::string input;
  auto* parse_econtract = app.add_subcommand("parse-econtract", "Extract entities and relations");
  auto* parse_sol = app.add_subcommand("parse-sol", "Parse Solidity into AST JSON");
  auto* describe_cmd = app.add_subcommand("describe", "Describe a contract from .sol or .ast.json");
  auto* graph_cmd = app.add_subcommand("graph", "Build a knowledge graph from any stage artifact");
  for (auto* sub : {parse_econtract, parse_sol, describe_cmd, graph_cmd}) {
    sub->add_option("input", input, "Input file")->required();
    sub->add_option("--out", stage_opts.out_dir, "Output directory");
    if (sub != parse_sol) sub->add_option("--config", stage_opts.config_path, "Config file");
  }

  std::string kg_e, kg_s;
  auto* compare_cmd = app.add_subcommand("compare", "Compare two knowledge graph JSON files");
  compare_cmd->add_option("econtract_graph", kg_e, "E-contract side graph")->required();
  compare_cmd->add_option("smartcontract_graph", kg_s, "Smart-contract side graph")->required();
  compare_cmd->add_option("--out", stage_opts.out_dir, "Output directory");
  compare_cmd->add_option("--tau", stage_opts.tau, "Entity match threshold");
  compare_cmd->add_option("--tau-p", stage_opts.tau_p, "Predicate match threshold");
  compare_cmd->add_option("--config", stage_opts.config_path, "Config file");

  std::vector<std::string> reversed;
  for (std::size_t i = args.size(); i > 1; --i) reversed.push_back(args[i - 1]);
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kAligned : kFailure;
  }

  try {
    if (validate->parsed()) {
      const Config config = load_settings(validate_opts);
      const fs::path dir = output_dir(validate_opts);
      const fs::path e_path(econtract_path), s_path(sol_path);
      std::string e_stem = pipeline::artifact_stem(e_path);
      std::string s_stem = pipeline::artifact_stem(s_path);
      const std::string report_name = e_stem + "_vs_" + s_stem + ".report.json";
      if (e_stem == s_stem) {
        e_stem += "-econtract";
        s_stem += "-smartcontract";
      }
      auto wants = [&](const char* what) {
        return std::find(emit.begin(), emit.end(), what) != emit.end();
      };

      const auto extraction = load_econtract(e_path, config);
      const auto ge = pipeline::econtract_graph(extraction);
      const auto root = load_solidity(s_path);
      const auto structure = describe::describe_contract(root, describe::Grammar::from_config(config));
      const auto gs = graph::graph_from_semantic(structure, root);
      const auto report = compare::compute_discrepancy(ge, gs, config.matching);

      if (wants("econtract")) {
        pipeline::write_file(dir / (e_stem + ".econtract.json"), pipeline::extraction_to_json_text(extraction));
      }
      if (wants("ast")) pipeline::write_file(dir / (s_stem + ".ast.json"), solidity::ast_to_json_text(root));
      if (wants("describe")) {
        pipeline::write_file(dir / (s_stem + ".describe.json"), describe::semantic_to_json_text(structure));
        pipeline::write_file(dir / (s_stem + ".describe.txt"), describe::semantic_to_listing(structure));
      }
      if (wants("kg")) {
        pipeline::write_file(dir / (e_stem + ".kg.json"), graph::export_json_text(ge));
        pipeline::write_file(dir / (s_stem + ".kg.json"), graph::export_json_text(gs));
      }
      if (wants("dot")) {
        pipeline::write_file(dir / (e_stem + ".kg.dot"), graph::export_dot(ge));
        pipeline::write_file(dir / (s_stem + ".kg.dot"), graph::export_dot(gs));
      }
      if (wants("report")) {
        pipeline::write_file(dir / report_name, compare::report_to_json_text(report, ge, gs));
      }
      out << compare::report_table(report, ge, gs);
      return report_exit(report);
    }

    if (compare_cmd->parsed()) {
      const Config config = load_settings(stage_opts);
      const fs::path dir = output_dir(stage_opts);
      const auto ge = load_graph(kg_e);
      const auto gs = load_graph(kg_s);
      const auto report = compare::compute_discrepancy(ge, gs, config.matching);
      const std::string name = pipeline::artifact_stem(kg_e) + "_vs_" + pipeline::artifact_stem(kg_s);
      pipeline::write_file(dir / (name + ".report.json"), compare::report_to_json_text(report, ge, gs));
      out << compare::report_table(report, ge, gs);
      return report_exit(report);
    }

    const Config config = load_settings(stage_opts);
    const fs::path in(input);
    const fs::path dir = output_dir(stage_opts);
    const std::string stem = pipeline::artifact_stem(in);

    if (parse_econtract->parsed()) {
      const auto extraction = load_econtract(in, config);
      pipeline::write_file(dir / (stem + ".econtract.json"), pipeline::extraction_to_json_text(extraction));
      out << extraction.text.clauses.size() << " clauses, " << extraction.entities.size()
          << " entities, " << extraction.relations.size() << " relations\n";
    } else if (parse_sol->parsed()) {
      const auto root = load_solidity(in);
      pipeline::write_file(dir / (stem + ".ast.json"), solidity::ast_to_json_text(root));
      out << root.children.size() << " top-level nodes\n";
    } else if (describe_cmd->parsed()) {
      const auto root = load_ast(in);
      const auto structure = describe::describe_contract(root, describe::Grammar::from_config(config));
      pipeline::write_file(dir / (stem + ".describe.json"), describe::semantic_to_json_text(structure));
      pipeline::write_file(dir / (stem + ".describe.txt"), describe::semantic_to_listing(structure));
      out << describe::semantic_to_listing(structure);
    } else if (graph_cmd->parsed()) {
      const auto g = graph_for_input(in, config);
      pipeline::write_file(dir / (stem + ".kg.json"), graph::export_json_text(g));
      pipeline::write_file(dir / (stem + ".kg.dot"), graph::export_dot(g));
      out << g.node_count() << " nodes, " << g.edge_count() << " edges\n";
    }
    return kAligned;
  } catch (const Error& e) {
    err << "ecsv: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "ecsv: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace ecsv::cli
