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

#ifndef MTRBAC_ORACLE_HPP_
#define MTRBAC_ORACLE_HPP_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "mtrbac/merge.hpp"
#include "mtrbac/model.hpp"
#include "mtrbac/policy.hpp"

// Reference implementation that decides requests straight from the model,
// plus a deterministic instance generator. The oracle never looks at
// compiled policies; comparing it against the policy engine is what the
// randomized test suites do.
namespace mtrbac::oracle {

struct Bounds {
  int max_tenants = 4;
  int max_roles = 6;  // per tenant
  int max_objects = 5;
  int max_modes = 3;
  int max_subjects = 8;
  // When set, granted objects are spelled per tenant and owned by it;
  // otherwise objects are shared across tenants.
  bool tenant_scoped_objects = true;
};

// One complete world: merged hierarchies, subjects with their roles, the
// privilege assignment, and the object/mode vocabulary to probe with.
struct Instance {
  MergedRoleSet merged;
  SubjectRoleAssignment subjects;
  PrivilegeAssignment pa;
  std::vector<SubjectId> subject_ids;
  std::vector<ObjectId> objects;  // includes one never-granted probe object
  std::vector<AccessMode> modes;  // includes one never-granted probe mode
};

// Decision for a subject holding exactly `roles`: Permit when the privilege
// closure of the held roles contains (object, mode); otherwise Deny when at
// least one held role carries the deny backstop; otherwise NotApplicable.
Outcome decide_for_roles(const Instance& instance,
                         const std::set<ParameterizedRole>& roles,
                         const std::string& object_value,
                         const std::string& mode_value);

Outcome decide(const Instance& instance, const SubjectId& subject,
               const std::string& object_value, const std::string& mode_value);

// Deterministic generators: equal seeds and bounds give equal instances on
// every platform. When the instance has several tenants, the first two are
// guaranteed to share a role name.
Instance random_instance(uint64_t seed, const Bounds& bounds = Bounds());

RoleHierarchy random_hierarchy(uint64_t seed, const TenantId& tenant,
                               int max_roles);

struct Divergence {
  std::string subject;
  std::string object_value;
  std::string mode_value;
  Outcome oracle_outcome = Outcome::kNotApplicable;
  Outcome engine_outcome = Outcome::kNotApplicable;
};

std::string to_string(const Divergence& divergence);

// Compiles the instance and compares the engine against the oracle for
// every subject (plus one synthetic subject per role, holding just that
// role) over the full object/mode vocabulary. Empty result = equivalent.
std::vector<Divergence> check_equivalence(const Instance& instance);

// Cross-tenant isolation: a subject may only reach an owned object through
// a role of the owning tenant. Checked on the model (effective privilege
// closure) and on the compiled engine (exhaustive Permit sweep). Returns
// one description per violation.
std::vector<std::string> check_isolation(const Instance& instance);

}  // namespace mtrbac::oracle

#endif  // MTRBAC_ORACLE_HPP_
