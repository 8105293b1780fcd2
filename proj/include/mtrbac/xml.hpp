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

#ifndef MTRBAC_XML_HPP_
#define MTRBAC_XML_HPP_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mtrbac/errors.hpp"

// A deliberately small XML reader/writer for the policy and request
// documents. It accepts exactly what those documents need and rejects the
// rest with a positioned diagnostic:
//
//   - optional <?xml ...?> declaration (UTF-8 only), comments, elements,
//     attributes in single or double quotes, character data, the five
//     predefined entities;
//   - no DOCTYPE, no processing instructions, no CDATA, no namespace
//     prefixes, no mixed content (an element holds children or text, not
//     both), nesting depth capped.
//
// Parsing is total: any byte sequence either yields a tree or throws
// WellFormednessError. It never reads out of bounds and never recurses
// deeper than the depth cap.
namespace mtrbac::xml {

inline constexpr int kMaxDepth = 128;

struct Attribute {
  std::string name;
  std::string value;

  bool operator==(const Attribute&) const = default;
};

struct Element {
  std::string name;
  std::vector<Attribute> attributes;
  std::vector<Element> children;
  std::string text;  // character data; only meaningful for leaf elements
  int line = 0;
  int column = 0;

  // Returns nullptr when the attribute is absent.
  const std::string* find_attribute(std::string_view attribute_name) const;

  bool structurally_equal(const Element& other) const;
};

Element parse(std::string_view input);

std::string serialize(const Element& root);
void write(std::ostream& out, const Element& element, int indent);

std::string escape_text(std::string_view raw);
std::string escape_attribute(std::string_view raw);

}  // namespace mtrbac::xml

#endif  // MTRBAC_XML_HPP_
