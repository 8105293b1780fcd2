// Copyright 2026 The mtrbac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mtrbac/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "mtrbac/compiler.hpp"
#include "mtrbac/oracle.hpp"
#include "mtrbac/pdp.hpp"
#include "mtrbac/textio.hpp"

namespace mtrbac::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kDataFailure = 1;
constexpr int kEngineError = 4;
constexpr int kUsageError = 64;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write '" + path.string() + "'");
  }
  out << content;
}

std::vector<fs::path> policy_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xml") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

// Loads every *.xml in `dir` into `repository`; one error line per
// unreadable or unparsable file. Returns the number of defects.
int load_repository(const fs::path& dir, PolicyRepository& repository,
                    std::ostream& err) {
  int defects = 0;
  for (const auto& file : policy_files(dir)) {
    try {
      repository.add(parse_policy_document(read_file(file)));
    } catch (const Error& e) {
      err << file.filename().string() << ": " << e.what() << "\n";
      ++defects;
    }
  }
  return defects;
}

int run_validate(const std::string& policy_dir, std::ostream& err) {
  PolicyRepository repository;
  int defects = load_repository(policy_dir, repository, err);
  for (const auto& diagnostic : validate_repository(repository)) {
    err << to_string(diagnostic) << "\n";
    ++defects;
  }
  return defects == 0 ? kOk : kDataFailure;
}

int run_merge(const std::vector<std::string>& tenant_files,
              const std::string& output, std::ostream& out,
              std::ostream& err) {
  std::vector<RoleHierarchy> hierarchies;
  for (const auto& file : tenant_files) {
    hierarchies.push_back(
        parse_tenant_file(read_file(file), fs::path(file).filename().string()));
  }
  std::string document = write_merged_document(merge_hierarchies(hierarchies));
  if (output.empty()) {
    out << document;
  } else {
    write_file(output, document);
  }
  (void)err;
  return kOk;
}

int run_compile(const std::string& merged_file, const std::string& pa_file,
                const std::string& out_dir, const NamingScheme& naming) {
  MergedRoleSet merged = parse_merged_document(
      read_file(merged_file), fs::path(merged_file).filename().string());
  PrivilegeAssignment pa = parse_privilege_assignments(
      read_file(pa_file), fs::path(pa_file).filename().string(), merged);
  PolicyRepository repository = compile(merged, pa, naming);

  fs::create_directories(out_dir);
  for (const auto& [id, node] : repository.entries()) {
    std::string name = id;
    std::replace(name.begin(), name.end(), ':', '_');
    write_file(fs::path(out_dir) / (name + ".xml"),
               serialize(std::get<PolicySetNode>(node)));
  }
  return kOk;
}

int run_eval(const std::string& policy_dir, const std::string& request_file,
             bool trace, std::ostream& out, std::ostream& err) {
  PolicyRepository repository;
  if (load_repository(policy_dir, repository, err) > 0) {
    return kEngineError;
  }
  try {
    RequestContext request = parse_request_document(read_file(request_file));
    Decision decision = evaluate_request(repository, request);
    out << render_decision(decision, trace);
    return exit_code_for(decision.outcome);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kEngineError;
  }
}

int run_fuzz(uint64_t seeds, uint64_t start, const oracle::Bounds& bounds,
             const std::string& mode, std::ostream& out) {
  uint64_t failures = 0;
  for (uint64_t seed = start; seed < start + seeds; ++seed) {
    oracle::Instance instance = oracle::random_instance(seed, bounds);
    if (mode == "equivalence") {
      for (const auto& divergence : oracle::check_equivalence(instance)) {
        out << "seed=" << seed << " " << to_string(divergence) << "\n";
        ++failures;
      }
    } else {
      for (const auto& violation : oracle::check_isolation(instance)) {
        out << "seed=" << seed << " " << violation << "\n";
        ++failures;
      }
    }
  }
  return failures == 0 ? kOk : kDataFailure;
}

int run_graph(const std::string& merged_file, const std::string& output,
              std::ostream& out) {
  MergedRoleSet merged = parse_merged_document(
      read_file(merged_file), fs::path(merged_file).filename().string());
  std::string dot = write_dot_graph(merged);
  if (output.empty()) {
    out << dot;
  } else {
    write_file(output, dot);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Multi-tenant RBAC policy toolchain", "mtrbac"};
  app.require_subcommand(1);
  app.failure_message([](const CLI::App*, const CLI::Error& e) {
    return "mtrbac: " + std::string(e.what()) + "\n";
  });

  std::string policy_dir;
  std::string request_file;
  std::string merged_file;
  std::string pa_file;
  std::string output;
  std::vector<std::string> tenant_files;
  std::string format = "dot";
  bool no_trace = false;
  bool untenanted = false;
  std::string role_value_prefix;
  uint64_t seeds = 0;
  uint64_t start = 0;
  std::string mode = "equivalence";
  oracle::Bounds bounds;
  bool shared_objects = false;

  CLI::App* validate =
      app.add_subcommand("validate", "Check a directory of policy XML files");
  validate->add_option("policy-dir", policy_dir, "Directory with *.xml")
      ->required()
      ->check(CLI::ExistingDirectory);

  CLI::App* merge =
      app.add_subcommand("merge", "Merge tenant hierarchy files");
  merge->add_option("tenant-files", tenant_files, "Tenant hierarchy files")
      ->required()
      ->check(CLI::ExistingFile);
  merge->add_option("-o,--output", output, "Merged document path (default stdout)");

  CLI::App* compile_cmd =
      app.add_subcommand("compile", "Compile merged roles to policy XML");
  compile_cmd->add_option("merged", merged_file, "Merged-set document")
      ->required()
      ->check(CLI::ExistingFile);
  compile_cmd->add_option("pa", pa_file, "Privilege assignment document")
      ->required()
      ->check(CLI::ExistingFile);
  compile_cmd->add_option("-o,--output", output, "Output directory")
      ->required();
  compile_cmd->add_flag("--untenanted", untenanted,
                         "Omit tenant ids from policy ids and role values");
  compile_cmd->add_option("--role-value-prefix", role_value_prefix,
                          "Role attribute value prefix");

  CLI::App* eval =
      app.add_subcommand("eval", "Evaluate a request against policies");
  eval->add_option("policy-dir", policy_dir, "Directory with *.xml")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval->add_option("request", request_file, "Request XML file")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_flag("--no-trace", no_trace, "Omit the evaluation trace");

  CLI::App* fuzz =
      app.add_subcommand("fuzz", "Compare engine against the oracle");
  fuzz->add_option("--seeds", seeds, "Number of seeds")->required();
  fuzz->add_option("--start", start, "First seed")->capture_default_str();
  fuzz->add_option("--mode", mode, "equivalence or isolation")
      ->capture_default_str()
      ->check(CLI::IsMember({"equivalence", "isolation"}));
  fuzz->add_option("--max-tenants", bounds.max_tenants, "Tenant cap")
      ->capture_default_str()
      ->check(CLI::Range(1, 4));
  fuzz->add_option("--max-roles", bounds.max_roles, "Roles per tenant cap")
      ->capture_default_str()
      ->check(CLI::Range(1, 6));
  fuzz->add_option("--max-objects", bounds.max_objects, "Object cap")
      ->capture_default_str()
      ->check(CLI::Range(1, 5));
  fuzz->add_option("--max-modes", bounds.max_modes, "Access-mode cap")
      ->capture_default_str()
      ->check(CLI::Range(1, 3));
  fuzz->add_option("--max-subjects", bounds.max_subjects, "Subject cap")
      ->capture_default_str()
      ->check(CLI::Range(1, 8));
  fuzz->add_flag("--shared-objects", shared_objects,
                 "Draw shared objects instead of tenant-owned ones");

  CLI::App* graph =
      app.add_subcommand("graph", "Render the merged hierarchy as DOT");
  graph->add_option("merged", merged_file, "Merged-set document")
      ->required()
      ->check(CLI::ExistingFile);
  graph->add_option("--format", format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"dot"}));
  graph->add_option("-o,--output", output, "Output path (default stdout)");

  std::vector<const char*> argv;
  argv.push_back("mtrbac");
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (validate->parsed()) return run_validate(policy_dir, err);
    if (merge->parsed()) return run_merge(tenant_files, output, out, err);
    if (compile_cmd->parsed()) {
      NamingScheme naming =
          untenanted ? NamingScheme::untenanted() : NamingScheme();
      if (!role_value_prefix.empty()) {
        naming.role_value_prefix = role_value_prefix;
      }
      return run_compile(merged_file, pa_file, output, naming);
    }
    if (eval->parsed()) {
      return run_eval(policy_dir, request_file, !no_trace, out, err);
    }
    if (fuzz->parsed()) {
      bounds.tenant_scoped_objects = !shared_objects;
      return run_fuzz(seeds, start, bounds, mode, out);
    }
    if (graph->parsed()) return run_graph(merged_file, output, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kDataFailure;
  }
  return kUsageError;
}

}  // namespace mtrbac::cli
