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

#include <algorithm>
#include <array>
#include <string>

#include "mtrbac/policy.hpp"
#include "mtrbac/xml.hpp"

namespace mtrbac {

namespace {

constexpr char kPolicyCombiningPrefix[] =
    "urn:oasis:names:tc:xacml:1.0:policy-combining-algorithm:";
constexpr char kRuleCombiningPrefix[] =
    "urn:oasis:names:tc:xacml:1.0:rule-combining-algorithm:";
constexpr char kStringEqualFunction[] =
    "urn:oasis:names:tc:xacml:1.0:function:string-equal";
constexpr char kAnyUriEqualFunction[] =
    "urn:oasis:names:tc:xacml:1.0:function:anyURI-equal";

struct SectionNames {
  AttributeCategory category;
  const char* section;
  const char* item;
  const char* match;
  const char* designator;
};

constexpr std::array<SectionNames, 3> kSections{{
    {AttributeCategory::kSubject, "Subjects", "Subject", "SubjectMatch",
     "SubjectAttributeDesignator"},
    {AttributeCategory::kResource, "Resources", "Resource", "ResourceMatch",
     "ResourceAttributeDesignator"},
    {AttributeCategory::kAction, "Actions", "Action", "ActionMatch",
     "ActionAttributeDesignator"},
}};

[[noreturn]] void unsupported(const xml::Element& element,
                              const std::string& message) {
  throw UnsupportedElementError(element.name + ": " + message, element.line,
                                element.column);
}

std::string strip_whitespace(std::string_view raw) {
  std::string out;
  for (char c : raw) {
    if (c != ' ' && c != '\t' && c != '\r' && c != '\n') out += c;
  }
  return out;
}

const std::string& required_attribute(const xml::Element& element,
                                      const char* name) {
  const std::string* value = element.find_attribute(name);
  if (value == nullptr) {
    unsupported(element, std::string("missing required attribute '") + name +
                             "'");
  }
  if (value->empty()) {
    unsupported(element, std::string("attribute '") + name + "' is empty");
  }
  return *value;
}

void check_attributes(const xml::Element& element,
                      std::initializer_list<const char*> allowed) {
  for (const auto& attribute : element.attributes) {
    bool known = std::any_of(allowed.begin(), allowed.end(),
                             [&](const char* name) {
                               return attribute.name == name;
                             });
    if (!known) {
      unsupported(element, "unsupported attribute '" + attribute.name + "'");
    }
  }
}

void check_no_text(const xml::Element& element) {
  if (!element.text.empty()) {
    unsupported(element, "unexpected text content");
  }
}

void check_no_children(const xml::Element& element) {
  if (!element.children.empty()) {
    unsupported(element, "unexpected child element '" +
                             element.children.front().name + "'");
  }
}

CombiningAlg parse_combining(const xml::Element& element, const char* attribute,
                             const char* prefix) {
  const std::string& uri = required_attribute(element, attribute);
  std::string_view view = uri;
  size_t prefix_len = std::string_view(prefix).size();
  if (view.substr(0, prefix_len) == prefix) {
    std::string_view name = view.substr(prefix_len);
    if (name == "permit-overrides") return CombiningAlg::kPermitOverrides;
    if (name == "deny-overrides") return CombiningAlg::kDenyOverrides;
    if (name == "first-applicable") return CombiningAlg::kFirstApplicable;
  }
  throw UnknownCombiningAlgError(
      element.name + ": unknown combining algorithm '" + uri + "'",
      element.line, element.column);
}

Effect parse_effect(const xml::Element& element, const std::string& value) {
  if (value == "Permit") return Effect::kPermit;
  if (value == "Deny") return Effect::kDeny;
  unsupported(element, "unsupported effect '" + value + "'");
}

MatchNode bind_match(const xml::Element& element, const SectionNames& names) {
  check_attributes(element, {"MatchId"});
  check_no_text(element);
  const std::string& match_id = required_attribute(element, "MatchId");

  MatchNode match;
  if (match_id == kStringEqualFunction) {
    match.function = MatchFunction::kStringEqual;
  } else if (match_id == kAnyUriEqualFunction) {
    match.function = MatchFunction::kAnyUriEqual;
  } else {
    unsupported(element, "unsupported match function '" + match_id + "'");
  }
  const char* expected_type = match.function == MatchFunction::kStringEqual
                                  ? kStringType
                                  : kAnyUriType;

  if (element.children.size() != 2 ||
      element.children[0].name != "AttributeValue" ||
      element.children[1].name != names.designator) {
    unsupported(element, std::string("expected AttributeValue followed by ") +
                             names.designator);
  }

  const xml::Element& value = element.children[0];
  check_attributes(value, {"DataType"});
  check_no_children(value);
  match.literal_type = required_attribute(value, "DataType");
  if (match.literal_type != expected_type) {
    throw TypeMismatchError("AttributeValue: data type '" + match.literal_type +
                                "' does not fit match function '" + match_id +
                                "'",
                            value.line, value.column);
  }
  match.literal = match.function == MatchFunction::kAnyUriEqual
                      ? strip_whitespace(value.text)
                      : value.text;

  const xml::Element& designator = element.children[1];
  check_attributes(designator, {"AttributeId", "DataType"});
  check_no_children(designator);
  check_no_text(designator);
  match.designator.category = names.category;
  match.designator.attribute_id = required_attribute(designator, "AttributeId");
  match.designator.data_type = required_attribute(designator, "DataType");
  if (match.designator.data_type != expected_type) {
    throw TypeMismatchError(
        std::string(names.designator) + ": data type '" +
            match.designator.data_type + "' does not fit match function '" +
            match_id + "'",
        designator.line, designator.column);
  }
  return match;
}

TargetNode::Disjunction bind_section(const xml::Element& element,
                                     const SectionNames& names) {
  check_attributes(element, {});
  check_no_text(element);
  if (element.children.empty()) {
    unsupported(element, std::string("must contain at least one ") +
                             names.item);
  }
  TargetNode::Disjunction disjunction;
  for (const auto& item : element.children) {
    if (item.name != names.item) {
      unsupported(item, std::string("unexpected element inside ") +
                            names.section);
    }
    check_attributes(item, {});
    check_no_text(item);
    if (item.children.empty()) {
      unsupported(item, std::string("must contain at least one ") +
                            names.match);
    }
    TargetNode::Conjunction conjunction;
    for (const auto& match : item.children) {
      if (match.name != names.match) {
        unsupported(match, std::string("unexpected element inside ") +
                               names.item);
      }
      conjunction.push_back(bind_match(match, names));
    }
    disjunction.push_back(std::move(conjunction));
  }
  return disjunction;
}

TargetNode bind_target(const xml::Element& element) {
  check_attributes(element, {});
  check_no_text(element);
  TargetNode target;
  size_t next_section = 0;
  for (const auto& child : element.children) {
    size_t index = next_section;
    while (index < kSections.size() && child.name != kSections[index].section) {
      ++index;
    }
    if (index == kSections.size()) {
      unsupported(child, "unexpected element inside Target");
    }
    auto disjunction = bind_section(child, kSections[index]);
    switch (kSections[index].category) {
      case AttributeCategory::kSubject:
        target.subjects = std::move(disjunction);
        break;
      case AttributeCategory::kResource:
        target.resources = std::move(disjunction);
        break;
      case AttributeCategory::kAction:
        target.actions = std::move(disjunction);
        break;
    }
    next_section = index + 1;
  }
  return target;
}

Obligation bind_obligation(const xml::Element& element) {
  check_attributes(element, {"ObligationId", "FulfillOn"});
  check_no_text(element);
  Obligation obligation;
  obligation.id = required_attribute(element, "ObligationId");
  obligation.fulfill_on =
      parse_effect(element, required_attribute(element, "FulfillOn"));
  for (const auto& child : element.children) {
    if (child.name != "AttributeAssignment") {
      unsupported(child, "unexpected element inside Obligation");
    }
    check_attributes(child, {"AttributeId", "DataType"});
    check_no_children(child);
    AttributeAssignment assignment;
    assignment.attribute_id = required_attribute(child, "AttributeId");
    assignment.data_type = required_attribute(child, "DataType");
    assignment.value = assignment.data_type == kAnyUriType
                           ? strip_whitespace(child.text)
                           : child.text;
    obligation.assignments.push_back(std::move(assignment));
  }
  return obligation;
}

RuleNode bind_rule(const xml::Element& element) {
  check_attributes(element, {"RuleId", "Effect"});
  check_no_text(element);
  RuleNode rule;
  rule.id = required_attribute(element, "RuleId");
  rule.effect = parse_effect(element, required_attribute(element, "Effect"));
  for (const auto& child : element.children) {
    if (child.name != "Target" || rule.target.has_value()) {
      unsupported(child, "unexpected element inside Rule");
    }
    rule.target = bind_target(child);
  }
  return rule;
}

PolicyNode bind_policy(const xml::Element& element) {
  check_attributes(element, {"PolicyId", "RuleCombiningAlgId"});
  check_no_text(element);
  PolicyNode policy;
  policy.id = required_attribute(element, "PolicyId");
  policy.rule_combining =
      parse_combining(element, "RuleCombiningAlgId", kRuleCombiningPrefix);

  bool saw_target = false;
  bool saw_obligations = false;
  for (const auto& child : element.children) {
    if (child.name == "Target") {
      if (saw_target || !policy.rules.empty() || saw_obligations) {
        unsupported(child, "Target must be the first child of Policy");
      }
      saw_target = true;
      policy.target = bind_target(child);
    } else if (child.name == "Rule") {
      if (saw_obligations) {
        unsupported(child, "Rule after Obligations");
      }
      RuleNode rule = bind_rule(child);
      for (const auto& existing : policy.rules) {
        if (existing.id == rule.id) {
          unsupported(child, "duplicate RuleId '" + rule.id + "'");
        }
      }
      policy.rules.push_back(std::move(rule));
    } else if (child.name == "Obligations") {
      if (saw_obligations) {
        unsupported(child, "more than one Obligations element");
      }
      saw_obligations = true;
      check_attributes(child, {});
      check_no_text(child);
      if (child.children.empty()) {
        unsupported(child, "must contain at least one Obligation");
      }
      for (const auto& obligation : child.children) {
        if (obligation.name != "Obligation") {
          unsupported(obligation, "unexpected element inside Obligations");
        }
        policy.obligations.push_back(bind_obligation(obligation));
      }
    } else {
      unsupported(child, "unexpected element inside Policy");
    }
  }
  return policy;
}

PolicySetNode bind_policy_set(const xml::Element& element, bool is_root) {
  if (element.name != "PolicySet") {
    unsupported(element, "expected a PolicySet element");
  }
  if (is_root) {
    check_attributes(element, {"xmlns", "PolicySetId", "PolicyCombiningAlgId"});
    const std::string& ns = required_attribute(element, "xmlns");
    if (ns != kPolicyNamespace) {
      unsupported(element, "unsupported namespace '" + ns + "'");
    }
  } else {
    check_attributes(element, {"PolicySetId", "PolicyCombiningAlgId"});
  }
  check_no_text(element);

  PolicySetNode node;
  node.id = required_attribute(element, "PolicySetId");
  node.combining =
      parse_combining(element, "PolicyCombiningAlgId", kPolicyCombiningPrefix);

  bool saw_target = false;
  for (const auto& child : element.children) {
    if (child.name == "Target") {
      if (saw_target || !node.children.empty()) {
        unsupported(child, "Target must be the first child of PolicySet");
      }
      saw_target = true;
      node.target = bind_target(child);
    } else if (child.name == "PolicySet") {
      node.children.push_back(make_child(bind_policy_set(child, false)));
    } else if (child.name == "Policy") {
      node.children.push_back(make_child(bind_policy(child)));
    } else if (child.name == "PolicySetIdReference") {
      check_attributes(child, {});
      check_no_children(child);
      std::string target_id = strip_whitespace(child.text);
      if (target_id.empty()) {
        unsupported(child, "empty reference");
      }
      node.children.push_back(make_child(Reference{std::move(target_id)}));
    } else {
      unsupported(child, "unexpected element inside PolicySet");
    }
  }
  return node;
}

// ---- serialization ----

const char* combining_suffix(CombiningAlg alg) {
  switch (alg) {
    case CombiningAlg::kPermitOverrides:
      return "permit-overrides";
    case CombiningAlg::kDenyOverrides:
      return "deny-overrides";
    case CombiningAlg::kFirstApplicable:
      return "first-applicable";
  }
  return "permit-overrides";
}

xml::Element target_to_element(const TargetNode& target) {
  xml::Element element;
  element.name = "Target";
  struct Section {
    const std::optional<TargetNode::Disjunction>& disjunction;
    const SectionNames& names;
  };
  const std::array<Section, 3> sections{{{target.subjects, kSections[0]},
                                         {target.resources, kSections[1]},
                                         {target.actions, kSections[2]}}};
  for (const auto& [disjunction, names] : sections) {
    if (!disjunction) continue;
    xml::Element section;
    section.name = names.section;
    for (const auto& conjunction : *disjunction) {
      xml::Element item;
      item.name = names.item;
      for (const auto& match : conjunction) {
        xml::Element match_element;
        match_element.name = names.match;
        match_element.attributes.push_back(
            {"MatchId", match.function == MatchFunction::kStringEqual
                            ? kStringEqualFunction
                            : kAnyUriEqualFunction});
        xml::Element value;
        value.name = "AttributeValue";
        value.attributes.push_back({"DataType", match.literal_type});
        value.text = match.literal;
        match_element.children.push_back(std::move(value));

        xml::Element designator;
        designator.name = names.designator;
        designator.attributes.push_back(
            {"AttributeId", match.designator.attribute_id});
        designator.attributes.push_back(
            {"DataType", match.designator.data_type});
        match_element.children.push_back(std::move(designator));
        item.children.push_back(std::move(match_element));
      }
      section.children.push_back(std::move(item));
    }
    element.children.push_back(std::move(section));
  }
  return element;
}

xml::Element rule_to_element(const RuleNode& rule) {
  xml::Element element;
  element.name = "Rule";
  element.attributes.push_back({"RuleId", rule.id});
  element.attributes.push_back({"Effect", to_string(rule.effect)});
  if (rule.target) {
    element.children.push_back(target_to_element(*rule.target));
  }
  return element;
}

xml::Element policy_to_element(const PolicyNode& policy) {
  xml::Element element;
  element.name = "Policy";
  element.attributes.push_back({"PolicyId", policy.id});
  element.attributes.push_back(
      {"RuleCombiningAlgId",
       std::string(kRuleCombiningPrefix) +
           combining_suffix(policy.rule_combining)});
  element.children.push_back(target_to_element(policy.target));
  for (const auto& rule : policy.rules) {
    element.children.push_back(rule_to_element(rule));
  }
  if (!policy.obligations.empty()) {
    xml::Element obligations;
    obligations.name = "Obligations";
    for (const auto& obligation : policy.obligations) {
      xml::Element node;
      node.name = "Obligation";
      node.attributes.push_back({"ObligationId", obligation.id});
      node.attributes.push_back({"FulfillOn", to_string(obligation.fulfill_on)});
      for (const auto& assignment : obligation.assignments) {
        xml::Element child;
        child.name = "AttributeAssignment";
        child.attributes.push_back({"AttributeId", assignment.attribute_id});
        child.attributes.push_back({"DataType", assignment.data_type});
        child.text = assignment.value;
        node.children.push_back(std::move(child));
      }
      obligations.children.push_back(std::move(node));
    }
    element.children.push_back(std::move(obligations));
  }
  return element;
}

xml::Element policy_set_to_element(const PolicySetNode& node, bool is_root) {
  xml::Element element;
  element.name = "PolicySet";
  if (is_root) {
    element.attributes.push_back({"xmlns", kPolicyNamespace});
  }
  element.attributes.push_back({"PolicySetId", node.id});
  element.attributes.push_back(
      {"PolicyCombiningAlgId",
       std::string(kPolicyCombiningPrefix) + combining_suffix(node.combining)});
  element.children.push_back(target_to_element(node.target));
  for (const auto& child : node.children) {
    if (const auto* nested = std::get_if<PolicySetNode>(&child.node)) {
      element.children.push_back(policy_set_to_element(*nested, false));
    } else if (const auto* policy = std::get_if<PolicyNode>(&child.node)) {
      element.children.push_back(policy_to_element(*policy));
    } else {
      const auto& reference = std::get<Reference>(child.node);
      xml::Element ref;
      ref.name = "PolicySetIdReference";
      ref.text = reference.target_id;
      element.children.push_back(std::move(ref));
    }
  }
  return element;
}

}  // namespace

PolicySetNode parse_policy_document(std::string_view text) {
  xml::Element root = xml::parse(text);
  return bind_policy_set(root, /*is_root=*/true);
}

std::string serialize(const PolicySetNode& node) {
  return xml::serialize(policy_set_to_element(node, /*is_root=*/true));
}

}  // namespace mtrbac
