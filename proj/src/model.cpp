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

#include "mtrbac/model.hpp"

#include <algorithm>
#include <deque>

#include "mtrbac/merge.hpp"

namespace mtrbac {

namespace {

std::string check_identifier(std::string value, const char* what,
                             bool colon_reserved) {
  if (value.empty()) {
    throw ValidationError(std::string(what) + " must not be empty");
  }
  if (colon_reserved && value.find(':') != std::string::npos) {
    throw ValidationError(std::string(what) + " '" + value +
                          "' must not contain ':'");
  }
  return value;
}

}  // namespace

TenantId::TenantId(std::string value)
    : value_(check_identifier(std::move(value), "tenant id", true)) {}

RoleName::RoleName(std::string value)
    : value_(check_identifier(std::move(value), "role name", true)) {}

SubjectId::SubjectId(std::string value)
    : value_(check_identifier(std::move(value), "subject id", false)) {}

AccessMode::AccessMode(std::string value)
    : value_(check_identifier(std::move(value), "access mode", false)) {}

ParameterizedRole::ParameterizedRole(RoleName role_name, TenantId hierarchy_id,
                                     std::vector<RoleParam> extra_params)
    : role_name_(std::move(role_name)), hierarchy_id_(std::move(hierarchy_id)) {
  params_.push_back(RoleParam{kHierarchyParamName, hierarchy_id_.value()});
  for (auto& p : extra_params) {
    if (p.name.empty()) {
      throw ValidationError("role parameter name must not be empty");
    }
    if (p.name == kHierarchyParamName) {
      throw ValidationError(
          "role parameter 'hierarchy' is set implicitly and cannot be "
          "supplied");
    }
    params_.push_back(std::move(p));
  }
}

ObjectId::ObjectId(std::string value, std::optional<TenantId> owner)
    : value_(check_identifier(std::move(value), "object id", false)),
      owner_(std::move(owner)) {}

RoleHierarchy RoleHierarchy::create(TenantId tenant,
                                    const std::vector<RoleName>& roles,
                                    const std::vector<Edge>& seniority) {
  RoleHierarchy h;
  h.tenant_ = std::move(tenant);
  for (const auto& r : roles) {
    if (!h.roles_.insert(r).second) {
      throw DuplicateRoleError("duplicate role '" + r.value() + "' in tenant '" +
                               h.tenant_.value() + "'");
    }
    h.direct_[r];
  }
  for (const auto& [senior, junior] : seniority) {
    for (const auto& endpoint : {senior, junior}) {
      if (!h.contains(endpoint)) {
        throw UnknownRoleError("edge endpoint '" + endpoint.value() +
                               "' is not a role of tenant '" +
                               h.tenant_.value() + "'");
      }
    }
    if (h.edges_.insert({senior, junior}).second) {
      h.direct_[senior].insert(junior);
      h.has_senior_.insert(junior);
    }
  }

  // Kahn's algorithm; anything left over sits on a cycle.
  std::map<RoleName, int> indegree;
  for (const auto& r : h.roles_) indegree[r] = 0;
  for (const auto& [senior, junior] : h.edges_) ++indegree[junior];
  std::deque<RoleName> ready;
  for (const auto& [r, d] : indegree) {
    if (d == 0) ready.push_back(r);
  }
  std::vector<RoleName> topo;
  while (!ready.empty()) {
    RoleName r = ready.front();
    ready.pop_front();
    topo.push_back(r);
    for (const auto& j : h.direct_[r]) {
      if (--indegree[j] == 0) ready.push_back(j);
    }
  }
  if (topo.size() != h.roles_.size()) {
    std::string cyclic;
    for (const auto& [r, d] : indegree) {
      if (d > 0) {
        if (!cyclic.empty()) cyclic += ", ";
        cyclic += r.value();
      }
    }
    throw CycleError("seniority of tenant '" + h.tenant_.value() +
                     "' contains a cycle through: " + cyclic);
  }

  // Junior closures, deepest roles first.
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    std::set<RoleName>& closure = h.closure_[*it];
    for (const auto& j : h.direct_[*it]) {
      closure.insert(j);
      const auto& sub = h.closure_[j];
      closure.insert(sub.begin(), sub.end());
    }
  }
  return h;
}

const std::set<RoleName>& RoleHierarchy::direct_juniors(
    const RoleName& role) const {
  auto it = direct_.find(role);
  if (it == direct_.end()) {
    throw UnknownRoleError("unknown role '" + role.value() + "' in tenant '" +
                           tenant_.value() + "'");
  }
  return it->second;
}

const std::set<RoleName>& RoleHierarchy::juniors_of(const RoleName& role) const {
  auto it = closure_.find(role);
  if (it == closure_.end()) {
    throw UnknownRoleError("unknown role '" + role.value() + "' in tenant '" +
                           tenant_.value() + "'");
  }
  return it->second;
}

bool RoleHierarchy::is_maximal(const RoleName& role) const {
  if (!contains(role)) {
    throw UnknownRoleError("unknown role '" + role.value() + "' in tenant '" +
                           tenant_.value() + "'");
  }
  return has_senior_.count(role) == 0;
}

std::set<RoleName> RoleHierarchy::maximal_roles() const {
  std::set<RoleName> out;
  for (const auto& r : roles_) {
    if (has_senior_.count(r) == 0) out.insert(r);
  }
  return out;
}

RoleHierarchy new_hierarchy(TenantId tenant, const std::vector<RoleName>& roles,
                            const std::vector<RoleHierarchy::Edge>& seniority) {
  return RoleHierarchy::create(std::move(tenant), roles, seniority);
}

void SubjectRoleAssignment::add_subject(const SubjectId& subject) {
  entries_[subject];
}

void SubjectRoleAssignment::assign(const SubjectId& subject,
                                   const ParameterizedRole& role) {
  entries_[subject].insert(role);
}

bool SubjectRoleAssignment::has_subject(const SubjectId& subject) const {
  return entries_.count(subject) > 0;
}

const std::set<ParameterizedRole>& SubjectRoleAssignment::roles_of(
    const SubjectId& subject) const {
  auto it = entries_.find(subject);
  if (it == entries_.end()) {
    throw UnknownSubjectError("unknown subject '" + subject.value() + "'");
  }
  return it->second;
}

void PrivilegeAssignment::grant(const ParameterizedRole& role,
                                const Privilege& privilege) {
  entries_[role].insert(privilege);
}

const std::set<Privilege>& PrivilegeAssignment::privileges_of(
    const ParameterizedRole& role) const {
  static const std::set<Privilege> kEmpty;
  auto it = entries_.find(role);
  return it == entries_.end() ? kEmpty : it->second;
}

bool dominates(const ParameterizedRole& senior, const ParameterizedRole& junior,
               const MergedRoleSet& merged) {
  for (const auto* r : {&senior, &junior}) {
    if (!merged.contains(*r)) {
      throw UnknownRoleError("role '" + r->role_name().value() +
                             "' (tenant '" + r->hierarchy_id().value() +
                             "') is not in the merged role set");
    }
  }
  if (senior.hierarchy_id() != junior.hierarchy_id()) return false;
  if (senior == junior) return true;
  const RoleHierarchy& h = merged.hierarchy_of(senior.hierarchy_id());
  return h.juniors_of(senior.role_name()).count(junior.role_name()) > 0;
}

std::set<Privilege> effective_privileges(const SubjectId& subject,
                                         const SubjectRoleAssignment& assignments,
                                         const PrivilegeAssignment& pa,
                                         const MergedRoleSet& merged) {
  std::set<Privilege> out;
  for (const auto& held : assignments.roles_of(subject)) {
    if (!merged.contains(held)) {
      throw UnknownRoleError("subject '" + subject.value() +
                             "' is assigned role '" + held.role_name().value() +
                             "' (tenant '" + held.hierarchy_id().value() +
                             "') which is not in the merged role set");
    }
    const auto& direct = pa.privileges_of(held);
    out.insert(direct.begin(), direct.end());
    const RoleHierarchy& h = merged.hierarchy_of(held.hierarchy_id());
    for (const auto& junior : h.juniors_of(held.role_name())) {
      const auto& inherited =
          pa.privileges_of(ParameterizedRole(junior, held.hierarchy_id()));
      out.insert(inherited.begin(), inherited.end());
    }
  }
  return out;
}

bool carries_deny_backstop(const RoleHierarchy& hierarchy,
                           const RoleName& role) {
  return hierarchy.is_maximal(role);
}

}  // namespace mtrbac
