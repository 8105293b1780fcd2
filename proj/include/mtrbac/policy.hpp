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

#ifndef MTRBAC_POLICY_HPP_
#define MTRBAC_POLICY_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mtrbac/errors.hpp"

namespace mtrbac {

// The XACML 1.x namespace and identifier URIs this engine understands.
// They are required verbatim; no prefix remapping.
inline constexpr char kPolicyNamespace[] = "urn:oasis:names:tc:xacml:1.0:policy";
inline constexpr char kContextNamespace[] =
    "urn:oasis:names:tc:xacml:1.0:context";
inline constexpr char kStringType[] = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr char kAnyUriType[] = "http://www.w3.org/2001/XMLSchema#anyURI";
inline constexpr char kSubjectRoleAttribute[] =
    "urn:oasis:names:tc:xacml:1.0:subject:role";
inline constexpr char kResourceIdAttribute[] =
    "urn:oasis:names:tc:xacml:1.0:resource:resource-id";
inline constexpr char kActionIdAttribute[] =
    "urn:oasis:names:tc:xacml:1.0:action:action-id";

enum class Effect { kPermit, kDeny };

enum class Outcome { kPermit, kDeny, kNotApplicable, kIndeterminate };

// Closed set; any other combining-algorithm URI is a parse error.
enum class CombiningAlg { kPermitOverrides, kDenyOverrides, kFirstApplicable };

enum class MatchFunction { kStringEqual, kAnyUriEqual };

enum class AttributeCategory { kSubject, kResource, kAction };

const char* to_string(Effect effect);
const char* to_string(Outcome outcome);
const char* to_string(AttributeCategory category);

struct AttributeDesignator {
  AttributeCategory category = AttributeCategory::kSubject;
  std::string attribute_id;
  std::string data_type;

  bool operator==(const AttributeDesignator&) const = default;
};

// One <SubjectMatch>/<ResourceMatch>/<ActionMatch>: compares some value of
// the designated request attribute against a literal.
struct MatchNode {
  MatchFunction function = MatchFunction::kStringEqual;
  std::string literal;
  std::string literal_type;
  AttributeDesignator designator;

  bool operator==(const MatchNode&) const = default;
};

// Each present section is a disjunction of conjunctions of matches; an
// absent section matches everything.
struct TargetNode {
  using Conjunction = std::vector<MatchNode>;
  using Disjunction = std::vector<Conjunction>;

  std::optional<Disjunction> subjects;
  std::optional<Disjunction> resources;
  std::optional<Disjunction> actions;

  bool matches_everything() const {
    return !subjects && !resources && !actions;
  }

  bool operator==(const TargetNode&) const = default;
};

struct RuleNode {
  std::string id;
  Effect effect = Effect::kDeny;
  std::optional<TargetNode> target;  // absent = matches everything

  bool operator==(const RuleNode&) const = default;
};

struct AttributeAssignment {
  std::string attribute_id;
  std::string data_type;
  std::string value;

  bool operator==(const AttributeAssignment&) const = default;
};

struct Obligation {
  std::string id;
  Effect fulfill_on = Effect::kPermit;
  std::vector<AttributeAssignment> assignments;

  bool operator==(const Obligation&) const = default;
};

struct PolicyNode {
  std::string id;
  CombiningAlg rule_combining = CombiningAlg::kPermitOverrides;
  TargetNode target;
  std::vector<RuleNode> rules;
  std::vector<Obligation> obligations;

  bool operator==(const PolicyNode&) const = default;
};

// <PolicySetIdReference>; resolved against top-level repository entries.
struct Reference {
  std::string target_id;

  bool operator==(const Reference&) const = default;
};

struct PolicySetChild;

struct PolicySetNode {
  std::string id;
  CombiningAlg combining = CombiningAlg::kPermitOverrides;
  TargetNode target;
  std::vector<PolicySetChild> children;

  bool operator==(const PolicySetNode&) const = default;
};

struct PolicySetChild {
  std::variant<PolicySetNode, PolicyNode, Reference> node;

  bool operator==(const PolicySetChild&) const = default;
};

// Helpers for building trees in code.
PolicySetChild make_child(PolicySetNode node);
PolicySetChild make_child(PolicyNode node);
PolicySetChild make_child(Reference reference);

// A set of top-level policy sets / policies addressed by id. Entries keep
// insertion order, but semantics are id-bound: evaluation roots are the
// entries no reference points at, independent of load order.
class PolicyRepository {
 public:
  using TopLevel = std::variant<PolicySetNode, PolicyNode>;

  void add(PolicySetNode node);
  void add(PolicyNode node);

  const std::vector<std::pair<std::string, TopLevel>>& entries() const {
    return entries_;
  }
  size_t size() const { return entries_.size(); }

  // First entry with this id, or nullptr.
  const TopLevel* find(const std::string& id) const;

  // Ids of entries that no reference in the repository targets, sorted.
  std::vector<std::string> roots() const;

  bool operator==(const PolicyRepository& other) const {
    return entries_ == other.entries_;
  }

 private:
  std::vector<std::pair<std::string, TopLevel>> entries_;
};

enum class DefectKind { kDuplicateId, kDanglingReference, kReferenceCycle };

const char* to_string(DefectKind kind);

struct Diagnostic {
  DefectKind kind = DefectKind::kDuplicateId;
  std::string node_id;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

std::string to_string(const Diagnostic& diagnostic);

// Static repository checks: ids unique across every policy set and policy
// (nested ones included), references resolve to top-level entries, and the
// reference graph is acyclic. Returns one diagnostic per defect; an empty
// result means the repository is evaluable.
std::vector<Diagnostic> validate_repository(const PolicyRepository& repository);

// Parses one policy document. The document element must be a PolicySet in
// the verbatim XACML 1.0 policy namespace; everything outside the supported
// subset is rejected. Throws WellFormednessError, UnsupportedElementError,
// UnknownCombiningAlgError or TypeMismatchError.
PolicySetNode parse_policy_document(std::string_view text);

// Deterministic serialization; output re-parses to an equal tree.
std::string serialize(const PolicySetNode& node);

}  // namespace mtrbac

#endif  // MTRBAC_POLICY_HPP_
