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

#ifndef MTRBAC_COMPILER_HPP_
#define MTRBAC_COMPILER_HPP_

#include <string>

#include "mtrbac/merge.hpp"
#include "mtrbac/model.hpp"
#include "mtrbac/policy.hpp"

namespace mtrbac {

// Controls how compiled policy ids and role attribute values are spelled.
// Patterns may use the placeholders "{tenant}" and "{role}".
struct NamingScheme {
  std::string role_attribute_id = kSubjectRoleAttribute;
  std::string role_value_prefix = "urn:example:rolevalues";
  bool tenant_in_role_value = true;
  std::string rps_id_pattern = "RPS:{tenant}:{role}:role";
  std::string pps_id_pattern = "PPS:{tenant}:{role}:role";

  // Naming used by single-tenant deployments that predate tenant
  // qualification: ids and role values mention only the role name.
  static NamingScheme untenanted();

  std::string rps_id(const ParameterizedRole& role) const;
  std::string pps_id(const ParameterizedRole& role) const;
  std::string role_attribute_value(const ParameterizedRole& role) const;
};

// Builds the two-layer policy repository for a merged role set: one
// role policy set (RPS) gating on the subject's role attribute, and one
// permission policy set (PPS) per role.  A PPS pulls in the PPS of each
// immediately junior role by reference, so seniors inherit junior
// permissions.  The PPS of a maximal role closes with a deny backstop
// rule; see carries_deny_backstop().
//
// Throws RepositoryInvalidError when the naming scheme maps two distinct
// roles to the same policy id.
PolicyRepository compile(const MergedRoleSet& merged,
                         const PrivilegeAssignment& pa,
                         const NamingScheme& naming = NamingScheme());

}  // namespace mtrbac

#endif  // MTRBAC_COMPILER_HPP_
