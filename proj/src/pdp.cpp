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

#include "mtrbac/pdp.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "mtrbac/compiler.hpp"
#include "mtrbac/xml.hpp"

namespace mtrbac {

void AttributeBag::add(const std::string& attribute_id, TypedValue value) {
  entries_[attribute_id].push_back(std::move(value));
}

const std::vector<TypedValue>& AttributeBag::values(
    const std::string& attribute_id) const {
  static const std::vector<TypedValue> kEmpty;
  auto it = entries_.find(attribute_id);
  return it == entries_.end() ? kEmpty : it->second;
}

bool AttributeBag::has(const std::string& attribute_id) const {
  return entries_.count(attribute_id) > 0;
}

const AttributeBag& RequestContext::bag(AttributeCategory category) const {
  switch (category) {
    case AttributeCategory::kSubject:
      return subject;
    case AttributeCategory::kResource:
      return resource;
    case AttributeCategory::kAction:
      return action;
  }
  return subject;
}

RequestContext RequestContext::simple(
    const std::vector<std::string>& role_values, const std::string& resource_id,
    const std::string& action_id) {
  RequestContext request;
  for (const auto& role : role_values) {
    request.subject.add(kSubjectRoleAttribute, TypedValue{kAnyUriType, role});
  }
  request.resource.add(kResourceIdAttribute,
                       TypedValue{kStringType, resource_id});
  request.action.add(kActionIdAttribute, TypedValue{kStringType, action_id});
  return request;
}

void enable_roles(RequestContext& request, const SubjectId& subject,
                  const SubjectRoleAssignment& assignments,
                  const NamingScheme& naming) {
  for (const auto& role : assignments.roles_of(subject)) {
    request.subject.add(
        naming.role_attribute_id,
        TypedValue{kAnyUriType, naming.role_attribute_value(role)});
  }
}

namespace {

bool match_one(const MatchNode& match, const RequestContext& request) {
  const AttributeBag& bag = request.bag(match.designator.category);
  for (const auto& value : bag.values(match.designator.attribute_id)) {
    if (value.data_type == match.designator.data_type &&
        value.value == match.literal) {
      return true;
    }
  }
  return false;
}

bool match_section(const TargetNode::Disjunction& disjunction,
                   const RequestContext& request) {
  for (const auto& conjunction : disjunction) {
    bool all = true;
    for (const auto& match : conjunction) {
      if (!match_one(match, request)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

Outcome effect_outcome(Effect effect) {
  return effect == Effect::kPermit ? Outcome::kPermit : Outcome::kDeny;
}

class Evaluator {
 public:
  Evaluator(const PolicyRepository& repository, const RequestContext& request)
      : repository_(repository), request_(request) {}

  Decision run() {
    std::vector<Outcome> outcomes;
    for (const auto& root : repository_.roots()) {
      outcomes.push_back(eval_top_level(root));
    }
    Decision decision;
    decision.outcome =
        apply_combining(CombiningAlg::kPermitOverrides, outcomes);
    decision.trace = std::move(trace_);
    if (decision.outcome == Outcome::kPermit ||
        decision.outcome == Outcome::kDeny) {
      for (const auto& [policy, outcome] : policy_visits_) {
        if (outcome != decision.outcome) continue;
        for (const auto& obligation : policy->obligations) {
          if (effect_outcome(obligation.fulfill_on) == decision.outcome) {
            decision.obligations.push_back(obligation);
          }
        }
      }
    }
    return decision;
  }

 private:
  Outcome eval_top_level(const std::string& id) {
    const PolicyRepository::TopLevel* node = repository_.find(id);
    if (node == nullptr || active_.count(id) > 0) {
      trace_.push_back({id, Outcome::kIndeterminate});
      return Outcome::kIndeterminate;
    }
    active_.insert(id);
    Outcome outcome = std::holds_alternative<PolicySetNode>(*node)
                          ? eval_policy_set(std::get<PolicySetNode>(*node))
                          : eval_policy(std::get<PolicyNode>(*node));
    active_.erase(id);
    return outcome;
  }

  Outcome eval_policy_set(const PolicySetNode& node) {
    if (!match_target(node.target, request_)) {
      trace_.push_back({node.id, Outcome::kNotApplicable});
      return Outcome::kNotApplicable;
    }
    size_t slot = trace_.size();
    trace_.push_back({node.id, Outcome::kNotApplicable});
    std::vector<Outcome> outcomes;
    for (const auto& child : node.children) {
      if (const auto* nested = std::get_if<PolicySetNode>(&child.node)) {
        outcomes.push_back(eval_policy_set(*nested));
      } else if (const auto* policy = std::get_if<PolicyNode>(&child.node)) {
        outcomes.push_back(eval_policy(*policy));
      } else {
        outcomes.push_back(
            eval_top_level(std::get<Reference>(child.node).target_id));
      }
    }
    Outcome outcome = apply_combining(node.combining, outcomes);
    trace_[slot].outcome = outcome;
    return outcome;
  }

  Outcome eval_policy(const PolicyNode& node) {
    if (!match_target(node.target, request_)) {
      trace_.push_back({node.id, Outcome::kNotApplicable});
      record_visit(node, Outcome::kNotApplicable);
      return Outcome::kNotApplicable;
    }
    size_t slot = trace_.size();
    trace_.push_back({node.id, Outcome::kNotApplicable});
    std::vector<Outcome> outcomes;
    for (const auto& rule : node.rules) {
      Outcome outcome = evaluate_rule(rule, request_);
      trace_.push_back({rule.id, outcome});
      outcomes.push_back(outcome);
    }
    Outcome outcome = apply_combining(node.rule_combining, outcomes);
    trace_[slot].outcome = outcome;
    record_visit(node, outcome);
    return outcome;
  }

  void record_visit(const PolicyNode& node, Outcome outcome) {
    if (visited_ids_.insert(node.id).second) {
      policy_visits_.emplace_back(&node, outcome);
    }
  }

  const PolicyRepository& repository_;
  const RequestContext& request_;
  std::vector<TraceEntry> trace_;
  std::vector<std::pair<const PolicyNode*, Outcome>> policy_visits_;
  std::set<std::string> visited_ids_;
  std::set<std::string> active_;
};

}  // namespace

bool match_target(const TargetNode& target, const RequestContext& request) {
  if (target.subjects && !match_section(*target.subjects, request)) {
    return false;
  }
  if (target.resources && !match_section(*target.resources, request)) {
    return false;
  }
  if (target.actions && !match_section(*target.actions, request)) {
    return false;
  }
  return true;
}

Outcome evaluate_rule(const RuleNode& rule, const RequestContext& request) {
  if (rule.target && !match_target(*rule.target, request)) {
    return Outcome::kNotApplicable;
  }
  return effect_outcome(rule.effect);
}

Outcome apply_combining(CombiningAlg alg, const std::vector<Outcome>& outcomes) {
  auto any = [&](Outcome wanted) {
    return std::find(outcomes.begin(), outcomes.end(), wanted) !=
           outcomes.end();
  };
  switch (alg) {
    case CombiningAlg::kPermitOverrides:
      if (any(Outcome::kPermit)) return Outcome::kPermit;
      if (any(Outcome::kIndeterminate)) return Outcome::kIndeterminate;
      if (any(Outcome::kDeny)) return Outcome::kDeny;
      return Outcome::kNotApplicable;
    case CombiningAlg::kDenyOverrides:
      if (any(Outcome::kDeny)) return Outcome::kDeny;
      if (any(Outcome::kIndeterminate)) return Outcome::kIndeterminate;
      if (any(Outcome::kPermit)) return Outcome::kPermit;
      return Outcome::kNotApplicable;
    case CombiningAlg::kFirstApplicable:
      for (Outcome outcome : outcomes) {
        if (outcome != Outcome::kNotApplicable) return outcome;
      }
      return Outcome::kNotApplicable;
  }
  return Outcome::kNotApplicable;
}

Decision evaluate_request(const PolicyRepository& repository,
                          const RequestContext& request) {
  auto defects = validate_repository(repository);
  if (!defects.empty()) {
    std::string message =
        "repository is not evaluable: " + to_string(defects.front());
    if (defects.size() > 1) {
      message += " (and " + std::to_string(defects.size() - 1) + " more)";
    }
    throw RepositoryInvalidError(message);
  }
  return Evaluator(repository, request).run();
}

namespace detail {

Decision evaluate_without_validation(const PolicyRepository& repository,
                                     const RequestContext& request) {
  return Evaluator(repository, request).run();
}

}  // namespace detail

namespace {

constexpr char kSectionNamesByCategory[3][9] = {"Subject", "Resource",
                                                "Action"};

std::string strip_uri_whitespace(std::string_view raw) {
  std::string out;
  for (char c : raw) {
    if (c != ' ' && c != '\t' && c != '\r' && c != '\n') out += c;
  }
  return out;
}

[[noreturn]] void unsupported_request(const xml::Element& element,
                                      const std::string& message) {
  throw UnsupportedElementError(element.name + ": " + message, element.line,
                                element.column);
}

void bind_request_section(const xml::Element& element, AttributeBag& bag) {
  if (!element.attributes.empty()) {
    unsupported_request(element, "unsupported attribute '" +
                                     element.attributes.front().name + "'");
  }
  if (!element.text.empty()) {
    unsupported_request(element, "unexpected text content");
  }
  for (const auto& child : element.children) {
    if (child.name != "Attribute") {
      unsupported_request(child, "unexpected element inside " + element.name);
    }
    for (const auto& attribute : child.attributes) {
      if (attribute.name != "AttributeId" && attribute.name != "DataType") {
        unsupported_request(child,
                            "unsupported attribute '" + attribute.name + "'");
      }
    }
    const std::string* id = child.find_attribute("AttributeId");
    const std::string* data_type = child.find_attribute("DataType");
    if (id == nullptr || id->empty() || data_type == nullptr ||
        data_type->empty()) {
      unsupported_request(child, "AttributeId and DataType are required");
    }
    if (child.children.empty()) {
      unsupported_request(child, "must contain at least one AttributeValue");
    }
    for (const auto& value : child.children) {
      if (value.name != "AttributeValue" || !value.attributes.empty() ||
          !value.children.empty()) {
        unsupported_request(value, "expected a plain AttributeValue");
      }
      std::string text = *data_type == kAnyUriType
                             ? strip_uri_whitespace(value.text)
                             : value.text;
      bag.add(*id, TypedValue{*data_type, std::move(text)});
    }
  }
}

void require_single_value(const AttributeBag& bag, const char* attribute_id,
                          const char* what, const xml::Element& root) {
  if (bag.values(attribute_id).size() != 1) {
    throw RequestInvalidError(
        std::string("Request: expected exactly one ") + what + " value (" +
            attribute_id + ")",
        root.line, root.column);
  }
}

}  // namespace

RequestContext parse_request_document(std::string_view text) {
  xml::Element root = xml::parse(text);
  if (root.name != "Request") {
    unsupported_request(root, "expected a Request element");
  }
  for (const auto& attribute : root.attributes) {
    if (attribute.name != "xmlns") {
      unsupported_request(root,
                          "unsupported attribute '" + attribute.name + "'");
    }
  }
  const std::string* ns = root.find_attribute("xmlns");
  if (ns == nullptr || *ns != kContextNamespace) {
    unsupported_request(root, "missing or unsupported namespace");
  }
  if (!root.text.empty()) {
    unsupported_request(root, "unexpected text content");
  }

  RequestContext request;
  size_t next_section = 0;
  AttributeBag* bags[3] = {&request.subject, &request.resource,
                           &request.action};
  for (const auto& child : root.children) {
    size_t index = next_section;
    while (index < 3 && child.name != kSectionNamesByCategory[index]) {
      ++index;
    }
    if (index == 3) {
      unsupported_request(child, "unexpected element inside Request");
    }
    bind_request_section(child, *bags[index]);
    next_section = index + 1;
  }
  require_single_value(request.resource, kResourceIdAttribute, "resource-id",
                       root);
  require_single_value(request.action, kActionIdAttribute, "action-id", root);
  return request;
}

std::string serialize(const RequestContext& request) {
  xml::Element root;
  root.name = "Request";
  root.attributes.push_back({"xmlns", kContextNamespace});
  const AttributeBag* bags[3] = {&request.subject, &request.resource,
                                 &request.action};
  for (size_t i = 0; i < 3; ++i) {
    if (bags[i]->entries().empty()) continue;
    xml::Element section;
    section.name = kSectionNamesByCategory[i];
    for (const auto& [attribute_id, values] : bags[i]->entries()) {
      // One Attribute element per run of equally typed values.
      size_t start = 0;
      while (start < values.size()) {
        size_t end = start;
        while (end < values.size() &&
               values[end].data_type == values[start].data_type) {
          ++end;
        }
        xml::Element attribute;
        attribute.name = "Attribute";
        attribute.attributes.push_back({"AttributeId", attribute_id});
        attribute.attributes.push_back({"DataType", values[start].data_type});
        for (size_t v = start; v < end; ++v) {
          xml::Element value;
          value.name = "AttributeValue";
          value.text = values[v].value;
          attribute.children.push_back(std::move(value));
        }
        section.children.push_back(std::move(attribute));
        start = end;
      }
    }
    root.children.push_back(std::move(section));
  }
  return xml::serialize(root);
}

std::string render_decision(const Decision& decision, bool include_trace) {
  std::ostringstream out;
  out << "decision: " << to_string(decision.outcome) << "\n";
  for (const auto& obligation : decision.obligations) {
    out << "obligation: " << obligation.id
        << " fulfill-on=" << to_string(obligation.fulfill_on) << "\n";
    for (const auto& assignment : obligation.assignments) {
      out << "  " << assignment.attribute_id << " = " << assignment.value
          << "\n";
    }
  }
  if (include_trace) {
    out << "trace:\n";
    for (const auto& entry : decision.trace) {
      out << "  " << entry.node_id << " -> " << to_string(entry.outcome)
          << "\n";
    }
  }
  return out.str();
}

int exit_code_for(Outcome outcome) {
  switch (outcome) {
    case Outcome::kPermit:
      return 0;
    case Outcome::kDeny:
      return 1;
    case Outcome::kNotApplicable:
      return 2;
    case Outcome::kIndeterminate:
      return 3;
  }
  return 3;
}

}  // namespace mtrbac
