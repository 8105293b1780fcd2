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

#include "mtrbac/compiler.hpp"

#include <set>
#include <utility>
#include <vector>

namespace mtrbac {

namespace {

std::string expand(const std::string& pattern, const ParameterizedRole& role) {
  std::string out;
  for (size_t i = 0; i < pattern.size();) {
    if (pattern.compare(i, 8, "{tenant}") == 0) {
      out += role.hierarchy_id().value();
      i += 8;
    } else if (pattern.compare(i, 6, "{role}") == 0) {
      out += role.role_name().value();
      i += 6;
    } else {
      out += pattern[i];
      ++i;
    }
  }
  return out;
}

}  // namespace

NamingScheme NamingScheme::untenanted() {
  NamingScheme naming;
  naming.tenant_in_role_value = false;
  naming.rps_id_pattern = "RPS:{role}:role";
  naming.pps_id_pattern = "PPS:{role}:role";
  return naming;
}

std::string NamingScheme::rps_id(const ParameterizedRole& role) const {
  return expand(rps_id_pattern, role);
}

std::string NamingScheme::pps_id(const ParameterizedRole& role) const {
  return expand(pps_id_pattern, role);
}

std::string NamingScheme::role_attribute_value(
    const ParameterizedRole& role) const {
  std::string value = role_value_prefix;
  value += ':';
  if (tenant_in_role_value) {
    value += role.hierarchy_id().value();
    value += ':';
  }
  value += role.role_name().value();
  return value;
}

PolicyRepository compile(const MergedRoleSet& merged,
                         const PrivilegeAssignment& pa,
                         const NamingScheme& naming) {
  PolicyRepository repository;
  std::set<std::string> seen_ids;
  auto claim = [&](const std::string& id) {
    if (!seen_ids.insert(id).second) {
      throw RepositoryInvalidError("naming scheme produced duplicate id '" +
                                   id + "'");
    }
    return id;
  };

  for (const auto& role : merged.roles()) {
    const RoleHierarchy& hierarchy = merged.hierarchy_of(role.hierarchy_id());

    PolicySetNode rps;
    rps.id = claim(naming.rps_id(role));
    rps.combining = CombiningAlg::kPermitOverrides;
    MatchNode match;
    match.function = MatchFunction::kAnyUriEqual;
    match.literal = naming.role_attribute_value(role);
    match.literal_type = kAnyUriType;
    match.designator = AttributeDesignator{AttributeCategory::kSubject,
                                           naming.role_attribute_id,
                                           kAnyUriType};
    rps.target.subjects = TargetNode::Disjunction{{match}};
    rps.children.push_back(make_child(Reference{naming.pps_id(role)}));
    repository.add(std::move(rps));

    PolicySetNode pps;
    pps.id = claim(naming.pps_id(role));
    pps.combining = CombiningAlg::kPermitOverrides;

    PolicyNode permissions;
    permissions.id = pps.id + ":permissions";
    permissions.rule_combining = CombiningAlg::kPermitOverrides;
    std::set<std::pair<std::string, std::string>> seen_rules;
    for (const auto& privilege : pa.privileges_of(role)) {
      if (!seen_rules
               .insert({privilege.object.value(), privilege.mode.value()})
               .second) {
        continue;
      }
      RuleNode rule;
      rule.id = "Permit:" + privilege.object.value() + ":" +
                privilege.mode.value();
      rule.effect = Effect::kPermit;
      TargetNode target;
      MatchNode resource;
      resource.function = MatchFunction::kStringEqual;
      resource.literal = privilege.object.value();
      resource.literal_type = kStringType;
      resource.designator = AttributeDesignator{AttributeCategory::kResource,
                                                kResourceIdAttribute,
                                                kStringType};
      target.resources = TargetNode::Disjunction{{resource}};
      MatchNode action;
      action.function = MatchFunction::kStringEqual;
      action.literal = privilege.mode.value();
      action.literal_type = kStringType;
      action.designator = AttributeDesignator{AttributeCategory::kAction,
                                              kActionIdAttribute, kStringType};
      target.actions = TargetNode::Disjunction{{action}};
      rule.target = std::move(target);
      permissions.rules.push_back(std::move(rule));
    }
    if (carries_deny_backstop(hierarchy, role.role_name())) {
      RuleNode backstop;
      backstop.id = "FinalRule";
      backstop.effect = Effect::kDeny;
      permissions.rules.push_back(std::move(backstop));
    }
    if (!permissions.rules.empty()) {
      pps.children.push_back(make_child(std::move(permissions)));
    }
    for (const auto& junior : hierarchy.direct_juniors(role.role_name())) {
      pps.children.push_back(make_child(Reference{
          naming.pps_id(ParameterizedRole(junior, role.hierarchy_id()))}));
    }
    repository.add(std::move(pps));
  }

  auto defects = validate_repository(repository);
  if (!defects.empty()) {
    throw RepositoryInvalidError("compiled repository is invalid: " +
                                 defects.front().message);
  }
  return repository;
}

}  // namespace mtrbac
