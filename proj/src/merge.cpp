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

#include "mtrbac/merge.hpp"

namespace mtrbac {

bool MergedRoleSet::contains(const ParameterizedRole& role) const {
  return roles_.count(role) > 0;
}

bool MergedRoleSet::has_tenant(const TenantId& tenant) const {
  return hierarchies_.count(tenant) > 0;
}

const RoleHierarchy& MergedRoleSet::hierarchy_of(const TenantId& tenant) const {
  auto it = hierarchies_.find(tenant);
  if (it == hierarchies_.end()) {
    throw UnknownTenantError("unknown tenant '" + tenant.value() + "'");
  }
  return it->second;
}

MergedRoleSet merge_hierarchies(const std::vector<RoleHierarchy>& hierarchies) {
  MergedRoleSet merged;
  for (const auto& h : hierarchies) {
    auto [it, inserted] = merged.hierarchies_.emplace(h.tenant(), h);
    if (!inserted) {
      throw DuplicateTenantError("tenant '" + h.tenant().value() +
                                 "' appears more than once");
    }
    for (const auto& role : h.roles()) {
      merged.roles_.insert(ParameterizedRole(role, h.tenant()));
    }
  }
  return merged;
}

RoleHierarchy reconstitute(const MergedRoleSet& merged, const TenantId& tenant) {
  return merged.hierarchy_of(tenant);
}

PrivilegeTemplate::PrivilegeTemplate(std::string object_pattern, AccessMode mode)
    : object_pattern_(std::move(object_pattern)), mode_(std::move(mode)) {
  if (object_pattern_.empty()) {
    throw ValidationError("object pattern must not be empty");
  }
  size_t first = object_pattern_.find(kTenantPlaceholder);
  has_placeholder_ = first != std::string::npos;
  if (has_placeholder_ &&
      object_pattern_.find(kTenantPlaceholder,
                           first + sizeof(kTenantPlaceholder) - 1) !=
          std::string::npos) {
    throw ValidationError("object pattern '" + object_pattern_ +
                          "' uses the tenant placeholder more than once");
  }
}

Privilege instantiate_privilege(const PrivilegeTemplate& tmpl,
                                const TenantId& tenant) {
  if (!tmpl.has_placeholder()) {
    return Privilege{ObjectId(tmpl.object_pattern()), tmpl.mode()};
  }
  std::string object = tmpl.object_pattern();
  object.replace(object.find(kTenantPlaceholder),
                 sizeof(kTenantPlaceholder) - 1, tenant.value());
  return Privilege{ObjectId(std::move(object), tenant), tmpl.mode()};
}

}  // namespace mtrbac
