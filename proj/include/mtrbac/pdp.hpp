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

#ifndef MTRBAC_PDP_HPP_
#define MTRBAC_PDP_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mtrbac/model.hpp"
#include "mtrbac/policy.hpp"

namespace mtrbac {

struct TypedValue {
  std::string data_type;
  std::string value;

  auto operator<=>(const TypedValue&) const = default;
};

// Multi-valued attribute store for one request category.
class AttributeBag {
 public:
  void add(const std::string& attribute_id, TypedValue value);

  // Every value of the attribute, in insertion order; empty when absent.
  const std::vector<TypedValue>& values(const std::string& attribute_id) const;

  bool has(const std::string& attribute_id) const;
  const std::map<std::string, std::vector<TypedValue>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<TypedValue>> entries_;
};

struct RequestContext {
  AttributeBag subject;
  AttributeBag resource;
  AttributeBag action;

  const AttributeBag& bag(AttributeCategory category) const;

  // Builds the common request shape: role attribute values on the subject
  // (anyURI typed), a string resource-id and a string action-id.
  static RequestContext simple(const std::vector<std::string>& role_values,
                               const std::string& resource_id,
                               const std::string& action_id);
};

struct NamingScheme;

// Stamps one role attribute value per directly held role of `subject` into
// the request's subject bag, spelled exactly as the compiled policies
// expect. Throws UnknownSubjectError for a subject never added.
void enable_roles(RequestContext& request, const SubjectId& subject,
                  const SubjectRoleAssignment& assignments,
                  const NamingScheme& naming);

struct TraceEntry {
  std::string node_id;
  Outcome outcome = Outcome::kNotApplicable;

  bool operator==(const TraceEntry&) const = default;
};

struct Decision {
  Outcome outcome = Outcome::kNotApplicable;
  std::vector<Obligation> obligations;
  std::vector<TraceEntry> trace;  // pre-order, one entry per visited node

  bool operator==(const Decision&) const = default;
};

// True when every section present in `target` matches the request. A match
// node whose designated attribute is absent (or carries no value of the
// designated data type) does not match; absence never yields Indeterminate.
bool match_target(const TargetNode& target, const RequestContext& request);

// NotApplicable when the rule's target does not match, else the outcome of
// its effect.
Outcome evaluate_rule(const RuleNode& rule, const RequestContext& request);

// Combines child outcomes. The empty sequence is NotApplicable under every
// algorithm.
//   permit-overrides: Permit if any Permit, else Indeterminate if any,
//     else Deny if any, else NotApplicable.
//   deny-overrides:   the same with Permit and Deny swapped.
//   first-applicable: the first outcome that is not NotApplicable.
Outcome apply_combining(CombiningAlg alg, const std::vector<Outcome>& outcomes);

// Full evaluation: validates the repository (RepositoryInvalidError on any
// defect), evaluates every root in sorted id order and combines the root
// outcomes with permit-overrides. Obligations are taken from policies whose
// own outcome equals the final outcome and whose FulfillOn matches it, one
// copy per policy in first-visit order.
Decision evaluate_request(const PolicyRepository& repository,
                          const RequestContext& request);

namespace detail {

// Evaluation without the validity gate. Unresolvable references evaluate to
// Indeterminate; re-entering a node already on the reference stack counts
// as unresolvable.
Decision evaluate_without_validation(const PolicyRepository& repository,
                                     const RequestContext& request);

}  // namespace detail

// Parses one request document (Request element in the verbatim XACML 1.0
// context namespace with Subject/Resource/Action children). Every listed
// attribute lands in the category's bag; resource-id and action-id must be
// present exactly once with a single value. Throws WellFormednessError,
// UnsupportedElementError or RequestInvalidError.
RequestContext parse_request_document(std::string_view text);

std::string serialize(const RequestContext& request);

// Text rendering used by the CLI:
//   decision: <outcome>
//   obligation: <id> fulfill-on=<effect>     (per obligation)
//     <attribute-id> = <value>               (per assignment, indented)
//   trace:                                   (with include_trace)
//     <node-id> -> <outcome>
std::string render_decision(const Decision& decision, bool include_trace);

// Process exit code: Permit 0, Deny 1, NotApplicable 2, Indeterminate 3.
int exit_code_for(Outcome outcome);

}  // namespace mtrbac

#endif  // MTRBAC_PDP_HPP_
