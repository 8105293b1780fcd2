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

#ifndef MTRBAC_MERGE_HPP_
#define MTRBAC_MERGE_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mtrbac/model.hpp"

namespace mtrbac {

// The union of every tenant's roles, each tagged with its hierarchy id.
// Roles with the same name in different tenants stay distinct; the original
// hierarchies are retained so they can be reconstituted losslessly.
class MergedRoleSet {
 public:
  const std::set<ParameterizedRole>& roles() const { return roles_; }
  const std::map<TenantId, RoleHierarchy>& hierarchies() const {
    return hierarchies_;
  }

  bool contains(const ParameterizedRole& role) const;
  bool has_tenant(const TenantId& tenant) const;

  // Throws UnknownTenantError.
  const RoleHierarchy& hierarchy_of(const TenantId& tenant) const;

 private:
  friend MergedRoleSet merge_hierarchies(
      const std::vector<RoleHierarchy>& hierarchies);

  std::set<ParameterizedRole> roles_;
  std::map<TenantId, RoleHierarchy> hierarchies_;
};

// Merges per-tenant hierarchies into one parameterized role set. Tenant ids
// must be pairwise distinct (DuplicateTenantError otherwise). The result
// contains exactly one parameterized role per input role.
MergedRoleSet merge_hierarchies(const std::vector<RoleHierarchy>& hierarchies);

// Returns the hierarchy originally merged for `tenant`, structurally equal
// to the input: same roles, same edges. Throws UnknownTenantError.
RoleHierarchy reconstitute(const MergedRoleSet& merged, const TenantId& tenant);

// An (object pattern, mode) pair from which per-tenant privileges are
// stamped out. The pattern may contain the placeholder "{tenant}" at most
// once.
class PrivilegeTemplate {
 public:
  PrivilegeTemplate(std::string object_pattern, AccessMode mode);

  const std::string& object_pattern() const { return object_pattern_; }
  const AccessMode& mode() const { return mode_; }
  bool has_placeholder() const { return has_placeholder_; }

 private:
  std::string object_pattern_;
  AccessMode mode_;
  bool has_placeholder_;
};

inline constexpr char kTenantPlaceholder[] = "{tenant}";

// Substitutes the tenant id for the placeholder. The resulting object is
// owned by `tenant` when the placeholder was present and shared otherwise.
Privilege instantiate_privilege(const PrivilegeTemplate& tmpl,
                                const TenantId& tenant);

}  // namespace mtrbac

#endif  // MTRBAC_MERGE_HPP_
