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

#include "mtrbac/oracle.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "mtrbac/compiler.hpp"
#include "mtrbac/pdp.hpp"

namespace mtrbac::oracle {

namespace {

// rng() % n is fine here: deterministic across platforms, which the
// standard distributions are not.
size_t pick(std::mt19937_64& rng, size_t n) { return rng() % n; }

bool chance(std::mt19937_64& rng, int percent) {
  return pick(rng, 100) < static_cast<size_t>(percent);
}

const std::vector<std::string>& role_name_pool() {
  static const std::vector<std::string> kPool{
      "admin",    "manager", "engineer", "auditor",
      "operator", "clerk",   "intern",   "analyst",
      "director", "support", "reviewer", "planner"};
  return kPool;
}

std::string tenant_name(size_t index) {
  static const char* kNames[] = {"alpha", "beta",  "gamma", "delta",
                                 "omega", "sigma", "kappa", "lambda"};
  if (index < 8) return kNames[index];
  return "tenant" + std::to_string(index);
}

std::vector<RoleName> draw_role_names(std::mt19937_64& rng, size_t count,
                                      bool force_first_admin) {
  const auto& pool = role_name_pool();
  std::vector<size_t> order(pool.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[pick(rng, i)]);
  }
  std::vector<RoleName> names;
  if (force_first_admin) {
    names.emplace_back(pool[0]);
  }
  for (size_t i = 0; i < order.size() && names.size() < count; ++i) {
    if (force_first_admin && order[i] == 0) continue;
    names.emplace_back(pool[order[i]]);
  }
  for (size_t i = pool.size(); names.size() < count; ++i) {
    names.emplace_back("role" + std::to_string(i));
  }
  return names;
}

RoleHierarchy draw_hierarchy(std::mt19937_64& rng, const TenantId& tenant,
                             int max_roles, bool force_first_admin) {
  size_t count = 1 + pick(rng, static_cast<size_t>(max_roles));
  std::vector<RoleName> names = draw_role_names(rng, count, force_first_admin);
  std::vector<RoleHierarchy::Edge> edges;
  for (size_t i = 0; i < names.size(); ++i) {
    for (size_t j = i + 1; j < names.size(); ++j) {
      if (chance(rng, 35)) {
        edges.emplace_back(names[i], names[j]);
      }
    }
  }
  return RoleHierarchy::create(tenant, names, edges);
}

}  // namespace

Outcome decide_for_roles(const Instance& instance,
                         const std::set<ParameterizedRole>& roles,
                         const std::string& object_value,
                         const std::string& mode_value) {
  for (const auto& role : roles) {
    const RoleHierarchy& hierarchy =
        instance.merged.hierarchy_of(role.hierarchy_id());
    std::vector<ParameterizedRole> closure{role};
    for (const auto& junior : hierarchy.juniors_of(role.role_name())) {
      closure.emplace_back(junior, role.hierarchy_id());
    }
    for (const auto& member : closure) {
      for (const auto& privilege : instance.pa.privileges_of(member)) {
        if (privilege.object.value() == object_value &&
            privilege.mode.value() == mode_value) {
          return Outcome::kPermit;
        }
      }
    }
  }
  for (const auto& role : roles) {
    const RoleHierarchy& hierarchy =
        instance.merged.hierarchy_of(role.hierarchy_id());
    if (carries_deny_backstop(hierarchy, role.role_name())) {
      return Outcome::kDeny;
    }
  }
  return Outcome::kNotApplicable;
}

Outcome decide(const Instance& instance, const SubjectId& subject,
               const std::string& object_value, const std::string& mode_value) {
  return decide_for_roles(instance, instance.subjects.roles_of(subject),
                          object_value, mode_value);
}

Instance random_instance(uint64_t seed, const Bounds& bounds) {
  std::mt19937_64 rng(seed);
  Instance instance;

  size_t tenants = 1 + pick(rng, static_cast<size_t>(bounds.max_tenants));
  std::vector<RoleHierarchy> hierarchies;
  for (size_t i = 0; i < tenants; ++i) {
    bool force_collision = tenants >= 2 && i < 2;
    hierarchies.push_back(draw_hierarchy(rng, TenantId(tenant_name(i)),
                                         bounds.max_roles, force_collision));
  }
  instance.merged = merge_hierarchies(hierarchies);

  static const char* kObjectBases[] = {"record", "chart",  "invoice", "order",
                                       "ticket", "report", "budget",  "archive"};
  static const char* kModePool[] = {"read", "write", "create", "delete",
                                    "approve"};
  size_t object_bases = 1 + pick(rng, static_cast<size_t>(bounds.max_objects));
  size_t mode_count =
      1 + pick(rng, std::min<size_t>(bounds.max_modes, 5));

  std::set<ObjectId> used_objects;
  std::set<AccessMode> used_modes;
  std::vector<ParameterizedRole> all_roles(instance.merged.roles().begin(),
                                           instance.merged.roles().end());
  for (const auto& role : all_roles) {
    size_t grants = pick(rng, 4);
    for (size_t g = 0; g < grants; ++g) {
      std::string base = kObjectBases[pick(rng, std::min<size_t>(
                                                    object_bases, 8))];
      ObjectId object =
          bounds.tenant_scoped_objects
              ? ObjectId(base + "-" + role.hierarchy_id().value(),
                         role.hierarchy_id())
              : ObjectId(base);
      AccessMode mode{kModePool[pick(rng, mode_count)]};
      instance.pa.grant(role, Privilege{object, mode});
      used_objects.insert(object);
      used_modes.insert(mode);
    }
  }

  instance.objects.assign(used_objects.begin(), used_objects.end());
  instance.objects.emplace_back("orphan-object");
  instance.modes.assign(used_modes.begin(), used_modes.end());
  instance.modes.emplace_back("probe-mode");

  size_t subjects = 1 + pick(rng, static_cast<size_t>(bounds.max_subjects));
  for (size_t i = 0; i < subjects; ++i) {
    SubjectId subject("user" + std::to_string(i));
    instance.subjects.add_subject(subject);
    size_t held = i == 0 && subjects >= 2 ? 0 : pick(rng, 4);
    for (size_t h = 0; h < held; ++h) {
      instance.subjects.assign(subject,
                               all_roles[pick(rng, all_roles.size())]);
    }
    instance.subject_ids.push_back(subject);
  }
  return instance;
}

RoleHierarchy random_hierarchy(uint64_t seed, const TenantId& tenant,
                               int max_roles) {
  std::mt19937_64 rng(seed);
  return draw_hierarchy(rng, tenant, max_roles, /*force_first_admin=*/false);
}

std::string to_string(const Divergence& divergence) {
  return "subject=" + divergence.subject + " object=" +
         divergence.object_value + " mode=" + divergence.mode_value +
         " oracle=" + mtrbac::to_string(divergence.oracle_outcome) +
         " engine=" + mtrbac::to_string(divergence.engine_outcome);
}

namespace {

RequestContext request_for_roles(const std::set<ParameterizedRole>& roles,
                                 const NamingScheme& naming,
                                 const std::string& object_value,
                                 const std::string& mode_value) {
  std::vector<std::string> role_values;
  for (const auto& role : roles) {
    role_values.push_back(naming.role_attribute_value(role));
  }
  return RequestContext::simple(role_values, object_value, mode_value);
}

}  // namespace

std::vector<Divergence> check_equivalence(const Instance& instance) {
  NamingScheme naming;
  PolicyRepository repository = compile(instance.merged, instance.pa, naming);

  struct Probe {
    std::string label;
    std::set<ParameterizedRole> roles;
  };
  std::vector<Probe> probes;
  for (const auto& subject : instance.subject_ids) {
    probes.push_back(
        {subject.value(), instance.subjects.roles_of(subject)});
  }
  for (const auto& role : instance.merged.roles()) {
    probes.push_back({"holder-of:" + role.hierarchy_id().value() + ":" +
                          role.role_name().value(),
                      {role}});
  }

  std::vector<Divergence> divergences;
  for (const auto& probe : probes) {
    for (const auto& object : instance.objects) {
      for (const auto& mode : instance.modes) {
        RequestContext request = request_for_roles(
            probe.roles, naming, object.value(), mode.value());
        Outcome engine = evaluate_request(repository, request).outcome;
        Outcome expected = decide_for_roles(instance, probe.roles,
                                            object.value(), mode.value());
        if (engine != expected) {
          divergences.push_back(
              {probe.label, object.value(), mode.value(), expected, engine});
        }
      }
    }
  }
  return divergences;
}

std::vector<std::string> check_isolation(const Instance& instance) {
  std::vector<std::string> violations;

  auto holds_tenant_role = [&](const SubjectId& subject,
                               const TenantId& tenant) {
    for (const auto& role : instance.subjects.roles_of(subject)) {
      if (role.hierarchy_id() == tenant) return true;
    }
    return false;
  };

  for (const auto& subject : instance.subject_ids) {
    auto effective = effective_privileges(subject, instance.subjects,
                                          instance.pa, instance.merged);
    for (const auto& privilege : effective) {
      const auto& owner = privilege.object.owning_tenant();
      if (owner && !holds_tenant_role(subject, *owner)) {
        violations.push_back("closure: subject " + subject.value() +
                             " reaches " + privilege.object.value() +
                             " owned by " + owner->value() +
                             " without a role of that tenant");
      }
    }
  }

  NamingScheme naming;
  PolicyRepository repository = compile(instance.merged, instance.pa, naming);
  for (const auto& subject : instance.subject_ids) {
    RequestContext base;
    enable_roles(base, subject, instance.subjects, naming);
    for (const auto& object : instance.objects) {
      const auto& owner = object.owning_tenant();
      if (!owner || holds_tenant_role(subject, *owner)) continue;
      for (const auto& mode : instance.modes) {
        RequestContext request = base;
        request.resource.add(kResourceIdAttribute,
                             TypedValue{kStringType, object.value()});
        request.action.add(kActionIdAttribute,
                           TypedValue{kStringType, mode.value()});
        Outcome outcome = evaluate_request(repository, request).outcome;
        if (outcome == Outcome::kPermit) {
          violations.push_back("engine: subject " + subject.value() +
                               " permitted on " + object.value() +
                               " owned by " + owner->value() +
                               " without a role of that tenant");
        }
      }
    }
  }
  return violations;
}

}  // namespace mtrbac::oracle
