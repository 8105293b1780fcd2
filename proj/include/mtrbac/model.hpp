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

#ifndef MTRBAC_MODEL_HPP_
#define MTRBAC_MODEL_HPP_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mtrbac/errors.hpp"

namespace mtrbac {

// Identifier of one tenant (one organization's role hierarchy). Colon is
// reserved: compiled policy identifiers are colon-separated.
class TenantId {
 public:
  explicit TenantId(std::string value);

  const std::string& value() const { return value_; }
  auto operator<=>(const TenantId&) const = default;

 private:
  std::string value_;
};

// Role identifier, unique within its owning hierarchy. Same colon rule as
// TenantId.
class RoleName {
 public:
  explicit RoleName(std::string value);

  const std::string& value() const { return value_; }
  auto operator<=>(const RoleName&) const = default;

 private:
  std::string value_;
};

class SubjectId {
 public:
  explicit SubjectId(std::string value);

  const std::string& value() const { return value_; }
  auto operator<=>(const SubjectId&) const = default;

 private:
  std::string value_;
};

// Access mode of a privilege: read, write, create, null, ... "null" has no
// special meaning here; it is a mode like any other.
class AccessMode {
 public:
  explicit AccessMode(std::string value);

  const std::string& value() const { return value_; }
  auto operator<=>(const AccessMode&) const = default;

 private:
  std::string value_;
};

struct RoleParam {
  std::string name;
  std::string value;

  auto operator<=>(const RoleParam&) const = default;
};

// The parameter entry every merged role carries.
inline constexpr char kHierarchyParamName[] = "hierarchy";

// A role tagged with the hierarchy it came from. The parameter set always
// holds exactly one "hierarchy" entry whose value is the tenant id; further
// parameters are carried opaquely and never affect identity, dominance or
// privilege closure.
//
// Identity is the pair (role name, hierarchy id).
class ParameterizedRole {
 public:
  ParameterizedRole(RoleName role_name, TenantId hierarchy_id,
                    std::vector<RoleParam> extra_params = {});

  const RoleName& role_name() const { return role_name_; }
  const TenantId& hierarchy_id() const { return hierarchy_id_; }

  // The full parameter set; the "hierarchy" entry comes first.
  const std::vector<RoleParam>& params() const { return params_; }

  bool operator==(const ParameterizedRole& other) const {
    return role_name_ == other.role_name_ &&
           hierarchy_id_ == other.hierarchy_id_;
  }
  std::strong_ordering operator<=>(const ParameterizedRole& other) const {
    if (auto c = hierarchy_id_ <=> other.hierarchy_id_; c != 0) return c;
    return role_name_ <=> other.role_name_;
  }

 private:
  RoleName role_name_;
  TenantId hierarchy_id_;
  std::vector<RoleParam> params_;
};

// A protected object. An absent owning tenant means the object is shared
// between tenants.
class ObjectId {
 public:
  explicit ObjectId(std::string value, std::optional<TenantId> owner = {});

  const std::string& value() const { return value_; }
  const std::optional<TenantId>& owning_tenant() const { return owner_; }

  auto operator<=>(const ObjectId&) const = default;

 private:
  std::string value_;
  std::optional<TenantId> owner_;
};

// (object, access mode) pair; the atomic unit of permission.
struct Privilege {
  ObjectId object;
  AccessMode mode;

  auto operator<=>(const Privilege&) const = default;
};

// One tenant's seniority DAG. Edges run senior -> junior; seniors inherit
// their juniors' privileges. Immutable once built; the transitive junior
// closure is precomputed at construction.
class RoleHierarchy {
 public:
  using Edge = std::pair<RoleName, RoleName>;

  // Validates and builds a hierarchy. Throws DuplicateRoleError,
  // UnknownRoleError (edge endpoint not listed) or CycleError.
  static RoleHierarchy create(TenantId tenant,
                              const std::vector<RoleName>& roles,
                              const std::vector<Edge>& seniority);

  const TenantId& tenant() const { return tenant_; }
  const std::set<RoleName>& roles() const { return roles_; }
  const std::set<Edge>& edges() const { return edges_; }

  bool contains(const RoleName& role) const { return roles_.count(role) > 0; }

  // Direct subordinates of `role`.
  const std::set<RoleName>& direct_juniors(const RoleName& role) const;

  // Every role reachable from `role` along seniority edges, excluding
  // `role` itself.
  const std::set<RoleName>& juniors_of(const RoleName& role) const;

  // True when no role is senior to `role`.
  bool is_maximal(const RoleName& role) const;

  std::set<RoleName> maximal_roles() const;

  // Structural equality: same tenant, same role set, same edge set.
  bool operator==(const RoleHierarchy& other) const {
    return tenant_ == other.tenant_ && roles_ == other.roles_ &&
           edges_ == other.edges_;
  }

 private:
  RoleHierarchy() = default;

  TenantId tenant_{std::string("-")};
  std::set<RoleName> roles_;
  std::set<Edge> edges_;
  std::map<RoleName, std::set<RoleName>> direct_;
  std::map<RoleName, std::set<RoleName>> closure_;
  std::set<RoleName> has_senior_;
};

// Convenience wrapper matching the operation surface.
RoleHierarchy new_hierarchy(TenantId tenant, const std::vector<RoleName>& roles,
                            const std::vector<RoleHierarchy::Edge>& seniority);

class MergedRoleSet;

// Subject -> directly held roles. A subject may be present with an empty
// role set, and may hold roles from several tenants at once.
class SubjectRoleAssignment {
 public:
  void add_subject(const SubjectId& subject);
  void assign(const SubjectId& subject, const ParameterizedRole& role);

  bool has_subject(const SubjectId& subject) const;
  // Throws UnknownSubjectError for a subject never added.
  const std::set<ParameterizedRole>& roles_of(const SubjectId& subject) const;

  const std::map<SubjectId, std::set<ParameterizedRole>>& entries() const {
    return entries_;
  }

 private:
  std::map<SubjectId, std::set<ParameterizedRole>> entries_;
};

// Role -> granted privileges.
class PrivilegeAssignment {
 public:
  void grant(const ParameterizedRole& role, const Privilege& privilege);

  // Empty set for roles with no grants.
  const std::set<Privilege>& privileges_of(const ParameterizedRole& role) const;

  const std::map<ParameterizedRole, std::set<Privilege>>& entries() const {
    return entries_;
  }

 private:
  std::map<ParameterizedRole, std::set<Privilege>> entries_;
};

// True iff `senior` and `junior` sit in the same hierarchy and `junior` is
// reachable from `senior` (or they are the same role). Dominance never
// crosses tenants. Throws UnknownRoleError when either role is absent from
// the merged set.
bool dominates(const ParameterizedRole& senior, const ParameterizedRole& junior,
               const MergedRoleSet& merged);

// Union of the privilege assignment over every role the subject holds plus
// every role those roles dominate.
std::set<Privilege> effective_privileges(const SubjectId& subject,
                                         const SubjectRoleAssignment& assignments,
                                         const PrivilegeAssignment& pa,
                                         const MergedRoleSet& merged);

// A role whose permission policy set ends with the deny backstop
// ("FinalRule"). The compiler emits the backstop into exactly these roles'
// permission policy sets and the reference oracle derives its
// Deny/NotApplicable boundary from the same predicate; the two must stay in
// lockstep.
bool carries_deny_backstop(const RoleHierarchy& hierarchy, const RoleName& role);

}  // namespace mtrbac

#endif  // MTRBAC_MODEL_HPP_
