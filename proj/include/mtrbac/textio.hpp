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

#ifndef MTRBAC_TEXTIO_HPP_
#define MTRBAC_TEXTIO_HPP_

#include <string>
#include <string_view>

#include "mtrbac/merge.hpp"
#include "mtrbac/model.hpp"

namespace mtrbac {

// Line-oriented text formats used by the CLI. All diagnostics carry
// "<source>:<line>: " prefixes; '#' starts a comment; blank lines are
// ignored; tokens cannot contain whitespace.

// One tenant's hierarchy:
//   tenant: <id>
//   roles:
//     <role>
//   edges:
//     <senior> -> <junior>
RoleHierarchy parse_tenant_file(std::string_view text,
                                const std::string& source);

// The merged role set, grouped per tenant:
//   tenant: <id>
//   role: <name> hierarchy=<id>
//   edge: <senior> -> <junior>
MergedRoleSet parse_merged_document(std::string_view text,
                                    const std::string& source);

// Deterministic inverse of parse_merged_document.
std::string write_merged_document(const MergedRoleSet& merged);

// Privilege assignment blocks:
//   role: <name> @ <tenant>
//   allow: <object> <mode> [owner=<tenant>]
// Roles must exist in `merged`; owners must be merged tenants.
PrivilegeAssignment parse_privilege_assignments(std::string_view text,
                                                const std::string& source,
                                                const MergedRoleSet& merged);

// Graphviz rendering: one cluster per tenant, nodes "<tenant>:<role>"
// labelled with the bare role name, seniority edges downward.
std::string write_dot_graph(const MergedRoleSet& merged);

}  // namespace mtrbac

#endif  // MTRBAC_TEXTIO_HPP_
