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

#include "mtrbac/textio.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <string>

#include "mtrbac/errors.hpp"
#include "mtrbac/oracle.hpp"
#include "testutil.hpp"

namespace mtrbac {
namespace {

std::string fixture(const char* dir, const char* name) {
  return testutil::read_file(testutil::fixture_dir() / dir / name);
}

void expect_failure(const std::function<void()>& action,
                    const std::string& message_prefix) {
  try {
    action();
    FAIL() << "expected ValidationError (" << message_prefix << ")";
  } catch (const ValidationError& e) {
    EXPECT_EQ(std::string(e.what()).rfind(message_prefix, 0), 0u)
        << "got: " << e.what();
  }
}

TEST(TenantFileTest, ParsesTheFixture) {
  RoleHierarchy hierarchy = parse_tenant_file(
      fixture("tenants", "fig-hierarchy.txt"), "fig-hierarchy.txt");
  EXPECT_EQ(hierarchy.tenant(), TenantId("hospital"));
  EXPECT_EQ(hierarchy.roles().size(), 4u);
  EXPECT_EQ(hierarchy.edges().size(), 3u);
  EXPECT_EQ(hierarchy.maximal_roles(),
            std::set<RoleName>{RoleName("SystemAdministrator")});
  EXPECT_EQ(hierarchy.juniors_of(RoleName("SystemAdministrator")),
            (std::set<RoleName>{RoleName("RoleA"), RoleName("RoleB"),
                                RoleName("RoleC")}));
}

TEST(TenantFileTest, CommentsAndBlankLinesAreIgnored) {
  RoleHierarchy hierarchy = parse_tenant_file(
      "# leading comment\n"
      "\n"
      "tenant: t   # trailing comment\n"
      "roles:\n"
      "  solo\n",
      "inline");
  EXPECT_EQ(hierarchy.tenant(), TenantId("t"));
  EXPECT_EQ(hierarchy.roles(), std::set<RoleName>{RoleName("solo")});
}

TEST(TenantFileTest, DiagnosticsNameSourceAndLine) {
  expect_failure(
      [] { parse_tenant_file("roles:\nr\n", "h.txt"); },
      "h.txt:1: missing 'tenant:' declaration");
  expect_failure(
      [] { parse_tenant_file("tenant: a\ntenant: b\n", "h.txt"); },
      "h.txt:2: tenant declared twice");
  expect_failure(
      [] { parse_tenant_file("bogus\n", "h.txt"); },
      "h.txt:1: unexpected line 'bogus'");
  expect_failure(
      [] {
        parse_tenant_file("tenant: t\nedges:\n  one two three four\n",
                          "h.txt");
      },
      "h.txt:3: expected '<senior> -> <junior>'");
  // Model-level failures point at the tenant declaration.
  expect_failure(
      [] {
        parse_tenant_file(
            "tenant: t\nroles:\n  a\n  b\nedges:\n  a -> b\n  b -> a\n",
            "h.txt");
      },
      "h.txt:1: ");
  expect_failure(
      [] {
        parse_tenant_file("tenant: t\nroles:\n  a\nedges:\n  a -> ghost\n",
                          "h.txt");
      },
      "h.txt:1: ");
  // Invalid identifier (reserved colon) reported on its own line.
  expect_failure(
      [] { parse_tenant_file("tenant: t\nroles:\n  ro:le\n", "h.txt"); },
      "h.txt:3: ");
}

MergedRoleSet hospital_clinic() {
  return merge_hierarchies(
      {parse_tenant_file(fixture("tenants", "hospital.txt"), "hospital.txt"),
       parse_tenant_file(fixture("tenants", "clinic.txt"), "clinic.txt")});
}

TEST(MergedDocumentTest, WritesDeterministicBlocks) {
  EXPECT_EQ(write_merged_document(hospital_clinic()),
            "tenant: clinic\n"
            "role: clerk hierarchy=clinic\n"
            "role: physician hierarchy=clinic\n"
            "edge: physician -> clerk\n"
            "tenant: hospital\n"
            "role: nurse hierarchy=hospital\n"
            "role: physician hierarchy=hospital\n"
            "edge: physician -> nurse\n");
}

TEST(MergedDocumentTest, RoundTripsThroughParse) {
  MergedRoleSet merged = hospital_clinic();
  std::string text = write_merged_document(merged);
  MergedRoleSet reparsed = parse_merged_document(text, "merged.txt");
  EXPECT_EQ(reparsed.roles(), merged.roles());
  EXPECT_EQ(reparsed.hierarchies(), merged.hierarchies());
  EXPECT_EQ(write_merged_document(reparsed), text);
}

TEST(MergedDocumentTest, RoundTripsRandomInstances) {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    SCOPED_TRACE(seed);
    oracle::Instance instance = oracle::random_instance(seed, {});
    std::string text = write_merged_document(instance.merged);
    MergedRoleSet reparsed = parse_merged_document(text, "merged.txt");
    EXPECT_EQ(reparsed.hierarchies(), instance.merged.hierarchies());
    EXPECT_EQ(write_merged_document(reparsed), text);
  }
}

TEST(MergedDocumentTest, RejectsMislabeledRoles) {
  expect_failure(
      [] {
        parse_merged_document("tenant: a\nrole: r hierarchy=b\n", "m.txt");
      },
      "m.txt:2: hierarchy tag 'b' does not match tenant 'a'");
  expect_failure(
      [] { parse_merged_document("role: r hierarchy=a\n", "m.txt"); },
      "m.txt:1: 'role:' before any 'tenant:'");
  expect_failure(
      [] { parse_merged_document("tenant: a\nrole: r\n", "m.txt"); },
      "m.txt:2: expected 'role: <name> hierarchy=<tenant>'");
  expect_failure(
      [] {
        parse_merged_document(
            "tenant: a\nrole: r hierarchy=a\n"
            "tenant: a\nrole: r hierarchy=a\n",
            "m.txt");
      },
      "m.txt:1: ");  // duplicate tenant surfaces at merge time
}

TEST(PrivilegeFileTest, ParsesTheFixtureAgainstTheMergedSet) {
  MergedRoleSet merged = hospital_clinic();
  PrivilegeAssignment pa = parse_privilege_assignments(
      fixture("pa", "hospital-clinic.txt"), "hospital-clinic.txt", merged);

  ParameterizedRole hospital_physician(RoleName("physician"),
                                       TenantId("hospital"));
  const std::set<Privilege>& granted = pa.privileges_of(hospital_physician);
  EXPECT_EQ(granted.size(), 2u);
  EXPECT_TRUE(granted.count(
      Privilege{ObjectId("prescription"), AccessMode("create")}));
  Privilege owned{ObjectId("record-hospital", TenantId("hospital")),
                  AccessMode("read")};
  ASSERT_TRUE(granted.count(owned));
  EXPECT_EQ(granted.find(owned)->object.owning_tenant(),
            TenantId("hospital"));

  ParameterizedRole clerk(RoleName("clerk"), TenantId("clinic"));
  EXPECT_EQ(pa.privileges_of(clerk).size(), 1u);
  EXPECT_EQ(pa.entries().size(), 4u);
}

TEST(PrivilegeFileTest, RejectsUnknownRolesAndOwners) {
  MergedRoleSet merged = hospital_clinic();
  expect_failure(
      [&] {
        parse_privilege_assignments("role: ghost @ hospital\n", "pa.txt",
                                    merged);
      },
      "pa.txt:1: unknown role 'ghost' in tenant 'hospital'");
  expect_failure(
      [&] {
        parse_privilege_assignments("role: physician @ lab\n", "pa.txt",
                                    merged);
      },
      "pa.txt:1: unknown role 'physician' in tenant 'lab'");
  expect_failure(
      [&] {
        parse_privilege_assignments(
            "role: physician @ hospital\nallow: o read owner=lab\n", "pa.txt",
            merged);
      },
      "pa.txt:2: unknown owner tenant 'lab'");
  expect_failure(
      [&] { parse_privilege_assignments("allow: o read\n", "pa.txt", merged); },
      "pa.txt:1: 'allow:' before any 'role:'");
  expect_failure(
      [&] {
        parse_privilege_assignments("role: physician @ hospital\nallow: o\n",
                                    "pa.txt", merged);
      },
      "pa.txt:2: expected 'allow: <object> <mode> [owner=<tenant>]'");
}

TEST(DotGraphTest, RendersClustersNodesAndEdges) {
  MergedRoleSet merged = merge_hierarchies({parse_tenant_file(
      fixture("tenants", "fig-hierarchy.txt"), "fig-hierarchy.txt")});
  EXPECT_EQ(write_dot_graph(merged),
            "digraph merged_roles {\n"
            "  subgraph \"cluster_hospital\" {\n"
            "    label=\"hospital\";\n"
            "    \"hospital:RoleA\" [label=\"RoleA\"];\n"
            "    \"hospital:RoleB\" [label=\"RoleB\"];\n"
            "    \"hospital:RoleC\" [label=\"RoleC\"];\n"
            "    \"hospital:SystemAdministrator\" "
            "[label=\"SystemAdministrator\"];\n"
            "    \"hospital:SystemAdministrator\" -> \"hospital:RoleA\";\n"
            "    \"hospital:SystemAdministrator\" -> \"hospital:RoleB\";\n"
            "    \"hospital:SystemAdministrator\" -> \"hospital:RoleC\";\n"
            "  }\n"
            "}\n");
}

TEST(DotGraphTest, OneClusterPerTenant) {
  std::string dot = write_dot_graph(hospital_clinic());
  EXPECT_NE(dot.find("subgraph \"cluster_clinic\""), std::string::npos);
  EXPECT_NE(dot.find("subgraph \"cluster_hospital\""), std::string::npos);
  EXPECT_NE(dot.find("\"clinic:physician\" -> \"clinic:clerk\";"),
            std::string::npos);
  EXPECT_NE(dot.find("\"hospital:physician\" -> \"hospital:nurse\";"),
            std::string::npos);
}

}  // namespace
}  // namespace mtrbac
