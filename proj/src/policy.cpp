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

#include "mtrbac/policy.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mtrbac {

const char* to_string(Effect effect) {
  return effect == Effect::kPermit ? "Permit" : "Deny";
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kPermit:
      return "Permit";
    case Outcome::kDeny:
      return "Deny";
    case Outcome::kNotApplicable:
      return "NotApplicable";
    case Outcome::kIndeterminate:
      return "Indeterminate";
  }
  return "Indeterminate";
}

const char* to_string(AttributeCategory category) {
  switch (category) {
    case AttributeCategory::kSubject:
      return "subject";
    case AttributeCategory::kResource:
      return "resource";
    case AttributeCategory::kAction:
      return "action";
  }
  return "subject";
}

const char* to_string(DefectKind kind) {
  switch (kind) {
    case DefectKind::kDuplicateId:
      return "DuplicateId";
    case DefectKind::kDanglingReference:
      return "DanglingReference";
    case DefectKind::kReferenceCycle:
      return "ReferenceCycle";
  }
  return "DuplicateId";
}

std::string to_string(const Diagnostic& diagnostic) {
  return diagnostic.node_id + ": " + to_string(diagnostic.kind) + ": " +
         diagnostic.message;
}

PolicySetChild make_child(PolicySetNode node) {
  return PolicySetChild{std::move(node)};
}

PolicySetChild make_child(PolicyNode node) {
  return PolicySetChild{std::move(node)};
}

PolicySetChild make_child(Reference reference) {
  return PolicySetChild{std::move(reference)};
}

void PolicyRepository::add(PolicySetNode node) {
  std::string id = node.id;
  entries_.emplace_back(std::move(id), TopLevel(std::move(node)));
}

void PolicyRepository::add(PolicyNode node) {
  std::string id = node.id;
  entries_.emplace_back(std::move(id), TopLevel(std::move(node)));
}

const PolicyRepository::TopLevel* PolicyRepository::find(
    const std::string& id) const {
  for (const auto& [entry_id, node] : entries_) {
    if (entry_id == id) return &node;
  }
  return nullptr;
}

namespace {

void collect_references(const PolicySetNode& node,
                        std::vector<std::string>& out) {
  for (const auto& child : node.children) {
    if (const auto* reference = std::get_if<Reference>(&child.node)) {
      out.push_back(reference->target_id);
    } else if (const auto* nested = std::get_if<PolicySetNode>(&child.node)) {
      collect_references(*nested, out);
    }
  }
}

std::vector<std::string> references_of(const PolicyRepository::TopLevel& node) {
  std::vector<std::string> out;
  if (const auto* set = std::get_if<PolicySetNode>(&node)) {
    collect_references(*set, out);
  }
  return out;
}

void collect_node_ids(const PolicySetNode& node,
                      std::vector<std::string>& out) {
  out.push_back(node.id);
  for (const auto& child : node.children) {
    if (const auto* nested = std::get_if<PolicySetNode>(&child.node)) {
      collect_node_ids(*nested, out);
    } else if (const auto* policy = std::get_if<PolicyNode>(&child.node)) {
      out.push_back(policy->id);
    }
  }
}

// Strongly connected components of the top-level reference graph
// (Kosaraju). Components are reported in a deterministic order.
std::vector<std::vector<std::string>> reference_sccs(
    const std::map<std::string, std::set<std::string>>& graph) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  for (const auto& [start, unused] : graph) {
    if (seen.count(start)) continue;
    // Iterative post-order.
    std::vector<std::pair<std::string, bool>> stack{{start, false}};
    while (!stack.empty()) {
      auto [id, expanded] = stack.back();
      stack.pop_back();
      if (expanded) {
        order.push_back(id);
        continue;
      }
      if (!seen.insert(id).second) continue;
      stack.emplace_back(id, true);
      auto it = graph.find(id);
      if (it != graph.end()) {
        for (const auto& next : it->second) {
          if (!seen.count(next)) stack.emplace_back(next, false);
        }
      }
    }
  }

  std::map<std::string, std::set<std::string>> reversed;
  for (const auto& [from, targets] : graph) {
    reversed[from];
    for (const auto& to : targets) reversed[to].insert(from);
  }

  std::vector<std::vector<std::string>> components;
  std::set<std::string> assigned;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (assigned.count(*it)) continue;
    std::vector<std::string> component;
    std::vector<std::string> stack{*it};
    while (!stack.empty()) {
      std::string id = stack.back();
      stack.pop_back();
      if (!assigned.insert(id).second) continue;
      component.push_back(id);
      auto rit = reversed.find(id);
      if (rit != reversed.end()) {
        for (const auto& prev : rit->second) {
          if (!assigned.count(prev)) stack.push_back(prev);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  std::sort(components.begin(), components.end());
  return components;
}

}  // namespace

std::vector<std::string> PolicyRepository::roots() const {
  std::set<std::string> referenced;
  for (const auto& [id, node] : entries_) {
    for (auto& target : references_of(node)) referenced.insert(std::move(target));
  }
  std::set<std::string> roots;
  for (const auto& [id, node] : entries_) {
    if (!referenced.count(id)) roots.insert(id);
  }
  return {roots.begin(), roots.end()};
}

std::vector<Diagnostic> validate_repository(const PolicyRepository& repository) {
  std::vector<Diagnostic> diagnostics;

  std::set<std::string> all_ids;
  std::set<std::string> reported_duplicates;
  for (const auto& [id, node] : repository.entries()) {
    std::vector<std::string> ids;
    if (const auto* set = std::get_if<PolicySetNode>(&node)) {
      collect_node_ids(*set, ids);
    } else {
      ids.push_back(std::get<PolicyNode>(node).id);
    }
    for (const auto& node_id : ids) {
      if (!all_ids.insert(node_id).second &&
          reported_duplicates.insert(node_id).second) {
        diagnostics.push_back(
            {DefectKind::kDuplicateId, node_id,
             "id '" + node_id + "' is used by more than one node"});
      }
    }
  }

  std::set<std::string> top_ids;
  for (const auto& [id, node] : repository.entries()) top_ids.insert(id);

  std::map<std::string, std::set<std::string>> graph;
  std::set<std::pair<std::string, std::string>> reported_dangling;
  for (const auto& [id, node] : repository.entries()) {
    graph[id];
    for (const auto& target : references_of(node)) {
      if (!top_ids.count(target)) {
        if (reported_dangling.insert({id, target}).second) {
          diagnostics.push_back({DefectKind::kDanglingReference, id,
                                 "reference to unknown id '" + target + "'"});
        }
      } else {
        graph[id].insert(target);
      }
    }
  }

  for (const auto& component : reference_sccs(graph)) {
    bool cyclic = component.size() > 1 ||
                  graph.at(component.front()).count(component.front()) > 0;
    if (!cyclic) continue;
    std::string cycle;
    for (const auto& id : component) {
      if (!cycle.empty()) cycle += " -> ";
      cycle += id;
    }
    diagnostics.push_back({DefectKind::kReferenceCycle, component.front(),
                           "reference cycle through: " + cycle});
  }

  return diagnostics;
}

}  // namespace mtrbac
