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

#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "mtrbac/compiler.hpp"
#include "mtrbac/errors.hpp"
#include "mtrbac/oracle.hpp"
#include "testutil.hpp"

namespace mtrbac {
namespace {

std::string fixture(const char* dir, const char* name) {
  return testutil::read_file(testutil::fixture_dir() / dir / name);
}

PolicyRepository fixture_repository() {
  PolicyRepository repo;
  repo.add(parse_policy_document(
      fixture("policies", "RPS_physician_role.xml")));
  repo.add(parse_policy_document(
      fixture("policies", "PPS_physician_role.xml")));
  return repo;
}

MatchNode role_match(const std::string& value) {
  MatchNode match;
  match.function = MatchFunction::kAnyUriEqual;
  match.literal = value;
  match.literal_type = kAnyUriType;
  match.designator = {AttributeCategory::kSubject, kSubjectRoleAttribute,
                      kAnyUriType};
  return match;
}

TEST(MatchTargetTest, EmptyTargetMatchesAnyRequest) {
  EXPECT_TRUE(match_target(TargetNode{}, RequestContext{}));
}

TEST(MatchTargetTest, AbsentAttributeFailsTheMatchWithoutIndeterminate) {
  TargetNode target;
  target.subjects = TargetNode::Disjunction{{role_match("urn:r:a")}};
  RequestContext empty;
  EXPECT_FALSE(match_target(target, empty));

  RequestContext with_role =
      RequestContext::simple({"urn:r:a"}, "doc", "read");
  EXPECT_TRUE(match_target(target, with_role));
}

TEST(MatchTargetTest, DataTypeFiltersCandidateValues) {
  TargetNode target;
  target.subjects = TargetNode::Disjunction{{role_match("urn:r:a")}};
  RequestContext request;
  // Right value, wrong type: not a match.
  request.subject.add(kSubjectRoleAttribute, TypedValue{kStringType, "urn:r:a"});
  EXPECT_FALSE(match_target(target, request));
  request.subject.add(kSubjectRoleAttribute, TypedValue{kAnyUriType, "urn:r:a"});
  EXPECT_TRUE(match_target(target, request));
}

TEST(MatchTargetTest, DisjunctionOfConjunctions) {
  TargetNode target;
  // (a and b) or (c)
  target.subjects = TargetNode::Disjunction{
      {role_match("urn:r:a"), role_match("urn:r:b")},
      {role_match("urn:r:c")}};
  EXPECT_FALSE(match_target(
      target, RequestContext::simple({"urn:r:a"}, "doc", "read")));
  EXPECT_TRUE(match_target(
      target, RequestContext::simple({"urn:r:a", "urn:r:b"}, "doc", "read")));
  EXPECT_TRUE(match_target(
      target, RequestContext::simple({"urn:r:c"}, "doc", "read")));
}

TEST(MatchTargetTest, AllPresentSectionsMustMatch) {
  RequestContext request = RequestContext::simple({"urn:r:a"}, "doc", "read");
  TargetNode target;
  target.subjects = TargetNode::Disjunction{{role_match("urn:r:a")}};
  MatchNode resource;
  resource.function = MatchFunction::kStringEqual;
  resource.literal = "doc";
  resource.literal_type = kStringType;
  resource.designator = {AttributeCategory::kResource, kResourceIdAttribute,
                         kStringType};
  target.resources = TargetNode::Disjunction{{resource}};
  EXPECT_TRUE(match_target(target, request));

  MatchNode other = resource;
  other.literal = "other";
  target.resources = TargetNode::Disjunction{{other}};
  EXPECT_FALSE(match_target(target, request));
}

TEST(EvaluateRuleTest, TargetGatesTheEffect) {
  RuleNode permit{"r", Effect::kPermit, std::nullopt};
  EXPECT_EQ(evaluate_rule(permit, RequestContext{}), Outcome::kPermit);

  RuleNode deny{"d", Effect::kDeny, std::nullopt};
  EXPECT_EQ(evaluate_rule(deny, RequestContext{}), Outcome::kDeny);

  TargetNode target;
  target.subjects = TargetNode::Disjunction{{role_match("urn:r:a")}};
  RuleNode gated{"g", Effect::kPermit, target};
  EXPECT_EQ(evaluate_rule(gated, RequestContext{}), Outcome::kNotApplicable);
  EXPECT_EQ(evaluate_rule(gated,
                          RequestContext::simple({"urn:r:a"}, "doc", "read")),
            Outcome::kPermit);
}

TEST(ApplyCombiningTest, EmptySequenceIsNotApplicableForEveryAlgorithm) {
  for (CombiningAlg alg :
       {CombiningAlg::kPermitOverrides, CombiningAlg::kDenyOverrides,
        CombiningAlg::kFirstApplicable}) {
    EXPECT_EQ(apply_combining(alg, {}), Outcome::kNotApplicable);
  }
}

TEST(ApplyCombiningTest, ExhaustiveSequencesUpToLengthThree) {
  const Outcome all[] = {Outcome::kPermit, Outcome::kDeny,
                         Outcome::kNotApplicable, Outcome::kIndeterminate};
  std::vector<std::vector<Outcome>> sequences{{}};
  for (int length = 1; length <= 3; ++length) {
    size_t before = sequences.size();
    for (size_t i = 0; i < before; ++i) {
      if (sequences[i].size() != static_cast<size_t>(length - 1)) continue;
      for (Outcome extra : all) {
        std::vector<Outcome> next = sequences[i];
        next.push_back(extra);
        sequences.push_back(std::move(next));
      }
    }
  }

  auto contains = [](const std::vector<Outcome>& outcomes, Outcome wanted) {
    return std::find(outcomes.begin(), outcomes.end(), wanted) !=
           outcomes.end();
  };
  auto swap_pd = [](Outcome outcome) {
    if (outcome == Outcome::kPermit) return Outcome::kDeny;
    if (outcome == Outcome::kDeny) return Outcome::kPermit;
    return outcome;
  };

  for (const auto& outcomes : sequences) {
    // Spelled-out expectation for permit-overrides.
    Outcome expected = Outcome::kNotApplicable;
    if (contains(outcomes, Outcome::kPermit)) {
      expected = Outcome::kPermit;
    } else if (contains(outcomes, Outcome::kIndeterminate)) {
      expected = Outcome::kIndeterminate;
    } else if (contains(outcomes, Outcome::kDeny)) {
      expected = Outcome::kDeny;
    }
    EXPECT_EQ(apply_combining(CombiningAlg::kPermitOverrides, outcomes),
              expected);

    // deny-overrides is the permit/deny mirror image.
    std::vector<Outcome> mirrored;
    for (Outcome outcome : outcomes) mirrored.push_back(swap_pd(outcome));
    EXPECT_EQ(apply_combining(CombiningAlg::kDenyOverrides, outcomes),
              swap_pd(apply_combining(CombiningAlg::kPermitOverrides,
                                      mirrored)));

    // first-applicable takes the first decisive entry.
    Outcome first = Outcome::kNotApplicable;
    for (Outcome outcome : outcomes) {
      if (outcome != Outcome::kNotApplicable) {
        first = outcome;
        break;
      }
    }
    EXPECT_EQ(apply_combining(CombiningAlg::kFirstApplicable, outcomes), first);

    // Order never matters for the overrides algorithms.
    std::vector<Outcome> sorted = outcomes;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(apply_combining(CombiningAlg::kPermitOverrides, sorted),
              apply_combining(CombiningAlg::kPermitOverrides, outcomes));
    EXPECT_EQ(apply_combining(CombiningAlg::kDenyOverrides, sorted),
              apply_combining(CombiningAlg::kDenyOverrides, outcomes));
  }
}

TEST(EvaluateRequestTest, PermitAcrossTheFixturePair) {
  PolicyRepository repo = fixture_repository();
  RequestContext request = parse_request_document(
      fixture("requests", "physician-create.xml"));
  Decision decision = evaluate_request(repo, request);

  EXPECT_EQ(decision.outcome, Outcome::kPermit);
  ASSERT_EQ(decision.obligations.size(), 1u);
  EXPECT_EQ(decision.obligations[0].id, "urn:obligation-physician");
  EXPECT_EQ(decision.obligations[0].fulfill_on, Effect::kPermit);
  ASSERT_EQ(decision.obligations[0].assignments.size(), 1u);
  EXPECT_EQ(decision.obligations[0].assignments[0].value,
            "only physicians can create prescriptions");

  std::vector<TraceEntry> expected{
      {"RPS:physician:role", Outcome::kPermit},
      {"PPS:physician:role", Outcome::kPermit},
      {"Permissions:specifically:for:the:physician", Outcome::kPermit},
      {"Permission:to:create:prescriptions", Outcome::kPermit},
      {"FinalRule", Outcome::kDeny},
  };
  EXPECT_EQ(decision.trace, expected);

  // Same repository, same request: byte-for-byte the same decision.
  EXPECT_EQ(evaluate_request(repo, request), decision);
}

TEST(EvaluateRequestTest, BackstopDeniesUnmatchedActionsForRoleHolders) {
  Decision decision = evaluate_request(
      fixture_repository(),
      parse_request_document(fixture("requests", "physician-delete.xml")));
  EXPECT_EQ(decision.outcome, Outcome::kDeny);
  EXPECT_TRUE(decision.obligations.empty());  // obligation fulfills on Permit
  std::vector<TraceEntry> expected{
      {"RPS:physician:role", Outcome::kDeny},
      {"PPS:physician:role", Outcome::kDeny},
      {"Permissions:specifically:for:the:physician", Outcome::kDeny},
      {"Permission:to:create:prescriptions", Outcome::kNotApplicable},
      {"FinalRule", Outcome::kDeny},
  };
  EXPECT_EQ(decision.trace, expected);
}

TEST(EvaluateRequestTest, SubjectsWithoutTheRoleFallOffTheRps) {
  Decision decision = evaluate_request(
      fixture_repository(),
      parse_request_document(fixture("requests", "no-role.xml")));
  EXPECT_EQ(decision.outcome, Outcome::kNotApplicable);
  EXPECT_TRUE(decision.obligations.empty());
  std::vector<TraceEntry> expected{
      {"RPS:physician:role", Outcome::kNotApplicable}};
  EXPECT_EQ(decision.trace, expected);
}

TEST(EvaluateRequestTest, InvalidRepositoriesAreRejectedUpFront) {
  PolicyRepository repo;
  PolicySetNode root;
  root.id = "root";
  root.children.push_back(make_child(Reference{"ghost"}));
  repo.add(root);
  EXPECT_THROW(evaluate_request(repo, RequestContext{}),
               RepositoryInvalidError);
}

TEST(EvaluateRequestTest, DanglingReferencesAreIndeterminateWithoutTheGate) {
  PolicyRepository repo;
  PolicySetNode root;
  root.id = "root";
  root.children.push_back(make_child(Reference{"ghost"}));
  repo.add(root);
  Decision decision =
      detail::evaluate_without_validation(repo, RequestContext{});
  EXPECT_EQ(decision.outcome, Outcome::kIndeterminate);
  std::vector<TraceEntry> expected{{"root", Outcome::kIndeterminate},
                                   {"ghost", Outcome::kIndeterminate}};
  EXPECT_EQ(decision.trace, expected);
}

TEST(EvaluateRequestTest, ReferenceCyclesAreIndeterminateWithoutTheGate) {
  // entry -> a -> b -> a: the re-entry into `a` is unresolvable.
  PolicyRepository repo;
  PolicySetNode entry;
  entry.id = "entry";
  entry.children.push_back(make_child(Reference{"a"}));
  PolicySetNode a;
  a.id = "a";
  a.children.push_back(make_child(Reference{"b"}));
  PolicySetNode b;
  b.id = "b";
  b.children.push_back(make_child(Reference{"a"}));
  repo.add(entry);
  repo.add(a);
  repo.add(b);
  Decision decision =
      detail::evaluate_without_validation(repo, RequestContext{});
  EXPECT_EQ(decision.outcome, Outcome::kIndeterminate);
  std::vector<TraceEntry> expected{{"entry", Outcome::kIndeterminate},
                                   {"a", Outcome::kIndeterminate},
                                   {"b", Outcome::kIndeterminate},
                                   {"a", Outcome::kIndeterminate}};
  EXPECT_EQ(decision.trace, expected);
}

PolicyNode permit_policy_with_obligation(const std::string& id,
                                         Effect fulfill_on) {
  PolicyNode policy;
  policy.id = id;
  policy.rules.push_back({"always", Effect::kPermit, std::nullopt});
  policy.obligations.push_back({"urn:ob:" + id, fulfill_on, {}});
  return policy;
}

TEST(EvaluateRequestTest, DiamondReferencesYieldOneObligationCopy) {
  PolicyRepository repo;
  PolicySetNode shared;
  shared.id = "shared";
  shared.children.push_back(
      make_child(permit_policy_with_obligation("inner", Effect::kPermit)));
  repo.add(shared);
  for (const char* id : {"left", "right"}) {
    PolicySetNode top;
    top.id = id;
    top.children.push_back(make_child(Reference{"shared"}));
    repo.add(top);
  }
  Decision decision = evaluate_request(repo, RequestContext{});
  EXPECT_EQ(decision.outcome, Outcome::kPermit);
  ASSERT_EQ(decision.obligations.size(), 1u);
  EXPECT_EQ(decision.obligations[0].id, "urn:ob:inner");
}

TEST(EvaluateRequestTest, ObligationsNeedMatchingOutcomeAndFulfillOn) {
  // Policy permits, obligation fulfills on Deny: nothing is returned.
  PolicyRepository mismatch;
  PolicySetNode root;
  root.id = "root";
  root.children.push_back(
      make_child(permit_policy_with_obligation("inner", Effect::kDeny)));
  mismatch.add(root);
  Decision decision = evaluate_request(mismatch, RequestContext{});
  EXPECT_EQ(decision.outcome, Outcome::kPermit);
  EXPECT_TRUE(decision.obligations.empty());

  // A denying policy loses against a permitting sibling root; its Deny
  // obligation must not leak into the Permit decision.
  PolicyRepository split;
  PolicyNode denier;
  denier.id = "denier";
  denier.rules.push_back({"no", Effect::kDeny, std::nullopt});
  denier.obligations.push_back({"urn:ob:deny", Effect::kDeny, {}});
  split.add(denier);
  PolicyNode permitter;
  permitter.id = "permitter";
  permitter.rules.push_back({"yes", Effect::kPermit, std::nullopt});
  split.add(permitter);
  decision = evaluate_request(split, RequestContext{});
  EXPECT_EQ(decision.outcome, Outcome::kPermit);
  EXPECT_TRUE(decision.obligations.empty());

  // With no permitting sibling the same obligation is delivered.
  PolicyRepository alone;
  alone.add(denier);
  decision = evaluate_request(alone, RequestContext{});
  EXPECT_EQ(decision.outcome, Outcome::kDeny);
  ASSERT_EQ(decision.obligations.size(), 1u);
  EXPECT_EQ(decision.obligations[0].id, "urn:ob:deny");
}

TEST(EvaluateRequestTest, PermitSurvivesAddingUnrelatedRoots) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    SCOPED_TRACE(seed);
    oracle::Instance instance = oracle::random_instance(seed, {});
    PolicyRepository repo = compile(instance.merged, instance.pa);
    NamingScheme naming;

    PolicyNode extra;
    extra.id = "urn:extra:denier";
    extra.rules.push_back({"no", Effect::kDeny, std::nullopt});

    for (const auto& subject : instance.subject_ids) {
      RequestContext request;
      enable_roles(request, subject, instance.subjects, naming);
      request.resource.add(
          kResourceIdAttribute,
          TypedValue{kStringType, instance.objects.front().value()});
      request.action.add(kActionIdAttribute,
                         TypedValue{kStringType,
                                    instance.modes.front().value()});
      Decision before = evaluate_request(repo, request);
      if (before.outcome != Outcome::kPermit) continue;
      PolicyRepository extended = repo;
      extended.add(extra);
      EXPECT_EQ(evaluate_request(extended, request).outcome, Outcome::kPermit);
    }
  }
}

TEST(RequestParseTest, BindsTheFixtureRequest) {
  RequestContext request = parse_request_document(
      fixture("requests", "physician-create.xml"));
  ASSERT_TRUE(request.subject.has(kSubjectRoleAttribute));
  EXPECT_EQ(request.subject.values(kSubjectRoleAttribute),
            (std::vector<TypedValue>{
                {kAnyUriType, "urn:example:rolevalues:physician"}}));
  EXPECT_EQ(request.resource.values(kResourceIdAttribute),
            (std::vector<TypedValue>{{kStringType, "prescription"}}));
  EXPECT_EQ(request.action.values(kActionIdAttribute),
            (std::vector<TypedValue>{{kStringType, "create"}}));
}

TEST(RequestParseTest, UriValuesAreWhitespaceStripped) {
  RequestContext request = parse_request_document(
      "<Request xmlns=\"urn:oasis:names:tc:xacml:1.0:context\">"
      "<Subject><Attribute AttributeId=\"urn:role\" DataType=\""
      "http://www.w3.org/2001/XMLSchema#anyURI\">"
      "<AttributeValue> urn:r:a </AttributeValue></Attribute></Subject>"
      "<Resource><Attribute AttributeId=\""
      "urn:oasis:names:tc:xacml:1.0:resource:resource-id\" DataType=\""
      "http://www.w3.org/2001/XMLSchema#string\">"
      "<AttributeValue>doc</AttributeValue></Attribute></Resource>"
      "<Action><Attribute AttributeId=\""
      "urn:oasis:names:tc:xacml:1.0:action:action-id\" DataType=\""
      "http://www.w3.org/2001/XMLSchema#string\">"
      "<AttributeValue>read</AttributeValue></Attribute></Action>"
      "</Request>");
  EXPECT_EQ(request.subject.values("urn:role"),
            (std::vector<TypedValue>{{kAnyUriType, "urn:r:a"}}));
}

TEST(RequestParseTest, RejectsShapeViolations) {
  const std::string ns = "urn:oasis:names:tc:xacml:1.0:context";
  auto with_sections = [&](const std::string& body) {
    return "<Request xmlns=\"" + ns + "\">" + body + "</Request>";
  };
  const std::string resource =
      "<Resource><Attribute AttributeId=\""
      "urn:oasis:names:tc:xacml:1.0:resource:resource-id\" DataType=\""
      "http://www.w3.org/2001/XMLSchema#string\">"
      "<AttributeValue>doc</AttributeValue></Attribute></Resource>";
  const std::string action =
      "<Action><Attribute AttributeId=\""
      "urn:oasis:names:tc:xacml:1.0:action:action-id\" DataType=\""
      "http://www.w3.org/2001/XMLSchema#string\">"
      "<AttributeValue>read</AttributeValue></Attribute></Action>";

  // Wrong root / namespace.
  EXPECT_THROW(parse_request_document("<NotARequest/>"),
               UnsupportedElementError);
  EXPECT_THROW(parse_request_document("<Request xmlns=\"urn:wrong\"/>"),
               UnsupportedElementError);

  // Section order and duplicates.
  EXPECT_THROW(parse_request_document(with_sections(action + resource)),
               UnsupportedElementError);
  EXPECT_THROW(
      parse_request_document(with_sections(resource + resource + action)),
      UnsupportedElementError);

  // resource-id / action-id arity.
  EXPECT_THROW(parse_request_document(with_sections(resource)),
               RequestInvalidError);
  const std::string doubled_resource =
      "<Resource><Attribute AttributeId=\""
      "urn:oasis:names:tc:xacml:1.0:resource:resource-id\" DataType=\""
      "http://www.w3.org/2001/XMLSchema#string\">"
      "<AttributeValue>doc</AttributeValue>"
      "<AttributeValue>doc2</AttributeValue></Attribute></Resource>";
  EXPECT_THROW(parse_request_document(with_sections(doubled_resource + action)),
               RequestInvalidError);

  // Malformed Attribute elements.
  EXPECT_THROW(parse_request_document(with_sections(
                   "<Resource><Attribute AttributeId=\"x\" DataType=\"y\"/>"
                   "</Resource>" +
                   action)),
               UnsupportedElementError);
  EXPECT_THROW(parse_request_document(with_sections(
                   "<Resource><Attribute DataType=\"y\">"
                   "<AttributeValue>v</AttributeValue></Attribute>"
                   "</Resource>" +
                   action)),
               UnsupportedElementError);
  EXPECT_THROW(
      parse_request_document(with_sections(
          "<Resource><Attribute AttributeId=\"x\" DataType=\"y\">"
          "<AttributeValue Extra=\"no\">v</AttributeValue></Attribute>"
          "</Resource>" +
          action)),
      UnsupportedElementError);
}

TEST(RequestParseTest, SerializedRequestsRoundTrip) {
  RequestContext original = parse_request_document(
      fixture("requests", "physician-create.xml"));
  RequestContext reparsed = parse_request_document(serialize(original));
  EXPECT_EQ(reparsed.subject.entries(), original.subject.entries());
  EXPECT_EQ(reparsed.resource.entries(), original.resource.entries());
  EXPECT_EQ(reparsed.action.entries(), original.action.entries());

  // Multi-valued attributes survive as well.
  RequestContext multi = RequestContext::simple({"urn:r:a", "urn:r:b"},
                                                "doc", "read");
  RequestContext multi_reparsed = parse_request_document(serialize(multi));
  EXPECT_EQ(multi_reparsed.subject.entries(), multi.subject.entries());
}

TEST(EnableRolesTest, StampsOneValuePerDirectlyHeldRole) {
  SubjectRoleAssignment assignments;
  SubjectId alice("alice");
  assignments.assign(alice,
                     ParameterizedRole(RoleName("doctor"), TenantId("hosp")));
  assignments.assign(alice,
                     ParameterizedRole(RoleName("clerk"), TenantId("lab")));
  NamingScheme naming;
  RequestContext request;
  enable_roles(request, alice, assignments, naming);
  std::vector<TypedValue> values =
      request.subject.values(kSubjectRoleAttribute);
  ASSERT_EQ(values.size(), 2u);
  std::vector<std::string> spelled{values[0].value, values[1].value};
  std::sort(spelled.begin(), spelled.end());
  EXPECT_EQ(spelled,
            (std::vector<std::string>{"urn:example:rolevalues:hosp:doctor",
                                      "urn:example:rolevalues:lab:clerk"}));

  EXPECT_THROW(
      enable_roles(request, SubjectId("nobody"), assignments, naming),
      UnknownSubjectError);
}

TEST(RenderDecisionTest, ExactTextShape) {
  Decision decision;
  decision.outcome = Outcome::kPermit;
  decision.obligations.push_back(
      {"urn:ob:1",
       Effect::kPermit,
       {{"urn:explanation", kStringType, "granted"}}});
  decision.trace = {{"root", Outcome::kPermit}, {"rule", Outcome::kPermit}};

  EXPECT_EQ(render_decision(decision, /*include_trace=*/false),
            "decision: Permit\n"
            "obligation: urn:ob:1 fulfill-on=Permit\n"
            "  urn:explanation = granted\n");
  EXPECT_EQ(render_decision(decision, /*include_trace=*/true),
            "decision: Permit\n"
            "obligation: urn:ob:1 fulfill-on=Permit\n"
            "  urn:explanation = granted\n"
            "trace:\n"
            "  root -> Permit\n"
            "  rule -> Permit\n");
}

TEST(ExitCodeTest, MapsOutcomesToProcessCodes) {
  EXPECT_EQ(exit_code_for(Outcome::kPermit), 0);
  EXPECT_EQ(exit_code_for(Outcome::kDeny), 1);
  EXPECT_EQ(exit_code_for(Outcome::kNotApplicable), 2);
  EXPECT_EQ(exit_code_for(Outcome::kIndeterminate), 3);
}

}  // namespace
}  // namespace mtrbac
