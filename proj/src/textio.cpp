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

#include "mtrbac/textio.hpp"

#include <sstream>
#include <vector>

namespace mtrbac {

namespace {

struct Line {
  int number = 0;
  std::string text;  // comment-stripped, trimmed
};

std::string trim(std::string_view raw) {
  size_t begin = raw.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return "";
  size_t end = raw.find_last_not_of(" \t\r");
  return std::string(raw.substr(begin, end - begin + 1));
}

std::vector<Line> significant_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view raw = eol == std::string_view::npos
                               ? text.substr(pos)
                               : text.substr(pos, eol - pos);
    ++number;
    if (size_t hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    std::string trimmed = trim(raw);
    if (!trimmed.empty()) {
      lines.push_back({number, std::move(trimmed)});
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

// Thrown by fail() so the catch chains can tell an already-located
// diagnostic from a model error that still needs its position attached.
struct LocatedError : ValidationError {
  using ValidationError::ValidationError;
};

[[noreturn]] void fail(const std::string& source, int line,
                       const std::string& message) {
  throw LocatedError(source + ":" + std::to_string(line) + ": " + message);
}

// Splits on runs of spaces/tabs.
std::vector<std::string> tokens_of(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string token;
  while (in >> token) tokens.push_back(std::move(token));
  return tokens;
}

bool take_prefix(const std::string& text, const char* prefix,
                 std::string* rest) {
  std::string_view view = text;
  std::string_view want = prefix;
  if (view.substr(0, want.size()) != want) return false;
  *rest = trim(view.substr(want.size()));
  return true;
}

}  // namespace

RoleHierarchy parse_tenant_file(std::string_view text,
                                const std::string& source) {
  std::optional<TenantId> tenant;
  std::vector<RoleName> roles;
  std::vector<RoleHierarchy::Edge> edges;
  enum class Section { kNone, kRoles, kEdges } section = Section::kNone;
  int declaration_line = 0;

  for (const auto& line : significant_lines(text)) {
    std::string rest;
    try {
      if (take_prefix(line.text, "tenant:", &rest)) {
        if (tenant) fail(source, line.number, "tenant declared twice");
        if (tokens_of(rest).size() != 1) {
          fail(source, line.number, "expected 'tenant: <id>'");
        }
        tenant.emplace(rest);
        declaration_line = line.number;
      } else if (line.text == "roles:") {
        section = Section::kRoles;
      } else if (line.text == "edges:") {
        section = Section::kEdges;
      } else if (section == Section::kRoles) {
        if (tokens_of(line.text).size() != 1) {
          fail(source, line.number, "expected one role name per line");
        }
        roles.emplace_back(line.text);
      } else if (section == Section::kEdges) {
        auto parts = tokens_of(line.text);
        if (parts.size() != 3 || parts[1] != "->") {
          fail(source, line.number, "expected '<senior> -> <junior>'");
        }
        edges.emplace_back(RoleName(parts[0]), RoleName(parts[2]));
      } else {
        fail(source, line.number, "unexpected line '" + line.text + "'");
      }
    } catch (const LocatedError&) {
      throw;
    } catch (const Error& e) {
      fail(source, line.number, e.what());
    }
  }

  if (!tenant) fail(source, 1, "missing 'tenant:' declaration");
  try {
    return RoleHierarchy::create(*tenant, roles, edges);
  } catch (const Error& e) {
    fail(source, declaration_line, e.what());
  }
}

MergedRoleSet parse_merged_document(std::string_view text,
                                    const std::string& source) {
  struct Block {
    TenantId tenant;
    std::vector<RoleName> roles;
    std::vector<RoleHierarchy::Edge> edges;
    int line = 0;
  };
  std::vector<Block> blocks;

  for (const auto& line : significant_lines(text)) {
    std::string rest;
    try {
      if (take_prefix(line.text, "tenant:", &rest)) {
        if (tokens_of(rest).size() != 1) {
          fail(source, line.number, "expected 'tenant: <id>'");
        }
        blocks.push_back({TenantId(rest), {}, {}, line.number});
      } else if (take_prefix(line.text, "role:", &rest)) {
        if (blocks.empty()) {
          fail(source, line.number, "'role:' before any 'tenant:'");
        }
        auto parts = tokens_of(rest);
        std::string tag;
        if (parts.size() != 2 ||
            !take_prefix(parts[1], "hierarchy=", &tag)) {
          fail(source, line.number,
               "expected 'role: <name> hierarchy=<tenant>'");
        }
        if (tag != blocks.back().tenant.value()) {
          fail(source, line.number, "hierarchy tag '" + tag +
                                        "' does not match tenant '" +
                                        blocks.back().tenant.value() + "'");
        }
        blocks.back().roles.emplace_back(parts[0]);
      } else if (take_prefix(line.text, "edge:", &rest)) {
        if (blocks.empty()) {
          fail(source, line.number, "'edge:' before any 'tenant:'");
        }
        auto parts = tokens_of(rest);
        if (parts.size() != 3 || parts[1] != "->") {
          fail(source, line.number, "expected 'edge: <senior> -> <junior>'");
        }
        blocks.back().edges.emplace_back(RoleName(parts[0]),
                                         RoleName(parts[2]));
      } else {
        fail(source, line.number, "unexpected line '" + line.text + "'");
      }
    } catch (const LocatedError&) {
      throw;
    } catch (const Error& e) {
      fail(source, line.number, e.what());
    }
  }

  std::vector<RoleHierarchy> hierarchies;
  for (const auto& block : blocks) {
    try {
      hierarchies.push_back(
          RoleHierarchy::create(block.tenant, block.roles, block.edges));
    } catch (const Error& e) {
      fail(source, block.line, e.what());
    }
  }
  try {
    return merge_hierarchies(hierarchies);
  } catch (const Error& e) {
    fail(source, 1, e.what());
  }
}

std::string write_merged_document(const MergedRoleSet& merged) {
  std::ostringstream out;
  for (const auto& [tenant, hierarchy] : merged.hierarchies()) {
    out << "tenant: " << tenant.value() << "\n";
    for (const auto& role : hierarchy.roles()) {
      out << "role: " << role.value() << " hierarchy=" << tenant.value()
          << "\n";
    }
    for (const auto& [senior, junior] : hierarchy.edges()) {
      out << "edge: " << senior.value() << " -> " << junior.value() << "\n";
    }
  }
  return out.str();
}

PrivilegeAssignment parse_privilege_assignments(std::string_view text,
                                                const std::string& source,
                                                const MergedRoleSet& merged) {
  PrivilegeAssignment pa;
  std::optional<ParameterizedRole> current;

  for (const auto& line : significant_lines(text)) {
    std::string rest;
    try {
      if (take_prefix(line.text, "role:", &rest)) {
        auto parts = tokens_of(rest);
        if (parts.size() != 3 || parts[1] != "@") {
          fail(source, line.number, "expected 'role: <name> @ <tenant>'");
        }
        ParameterizedRole role{RoleName(parts[0]), TenantId(parts[2])};
        if (!merged.contains(role)) {
          fail(source, line.number, "unknown role '" + parts[0] + "' in tenant '" +
                                        parts[2] + "'");
        }
        current.emplace(std::move(role));
      } else if (take_prefix(line.text, "allow:", &rest)) {
        if (!current) {
          fail(source, line.number, "'allow:' before any 'role:'");
        }
        auto parts = tokens_of(rest);
        std::optional<TenantId> owner;
        if (parts.size() == 3) {
          std::string tag;
          if (!take_prefix(parts[2], "owner=", &tag)) {
            fail(source, line.number,
                 "expected 'allow: <object> <mode> [owner=<tenant>]'");
          }
          owner.emplace(tag);
          if (!merged.has_tenant(*owner)) {
            fail(source, line.number, "unknown owner tenant '" + tag + "'");
          }
        } else if (parts.size() != 2) {
          fail(source, line.number,
               "expected 'allow: <object> <mode> [owner=<tenant>]'");
        }
        pa.grant(*current, Privilege{ObjectId(parts[0], std::move(owner)),
                                     AccessMode(parts[1])});
      } else {
        fail(source, line.number, "unexpected line '" + line.text + "'");
      }
    } catch (const LocatedError&) {
      throw;
    } catch (const Error& e) {
      fail(source, line.number, e.what());
    }
  }
  return pa;
}

std::string write_dot_graph(const MergedRoleSet& merged) {
  std::ostringstream out;
  out << "digraph merged_roles {\n";
  for (const auto& [tenant, hierarchy] : merged.hierarchies()) {
    out << "  subgraph \"cluster_" << tenant.value() << "\" {\n";
    out << "    label=\"" << tenant.value() << "\";\n";
    for (const auto& role : hierarchy.roles()) {
      out << "    \"" << tenant.value() << ":" << role.value()
          << "\" [label=\"" << role.value() << "\"];\n";
    }
    for (const auto& [senior, junior] : hierarchy.edges()) {
      out << "    \"" << tenant.value() << ":" << senior.value() << "\" -> \""
          << tenant.value() << ":" << junior.value() << "\";\n";
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace mtrbac
