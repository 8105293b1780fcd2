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

#include "mtrbac/xml.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mtrbac::xml {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

bool is_name_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '.' || c == '-';
}

bool all_whitespace(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return is_space(c); });
}

class Cursor {
 public:
  explicit Cursor(std::string_view input) : input_(input) {}

  bool eof() const { return pos_ >= input_.size(); }
  char peek() const { return input_[pos_]; }
  bool starts_with(std::string_view prefix) const {
    return input_.compare(pos_, prefix.size(), prefix) == 0;
  }

  char take() {
    char c = input_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void take(size_t n) {
    for (size_t i = 0; i < n && !eof(); ++i) take();
  }

  int line() const { return line_; }
  int column() const { return column_; }

  [[noreturn]] void fail(const std::string& message) const {
    throw WellFormednessError(message, line_, column_);
  }

 private:
  std::string_view input_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view input) : cur_(input) {}

  Element run() {
    if (cur_.starts_with("\xef\xbb\xbf")) cur_.take(3);
    skip_misc(/*declaration_allowed=*/true);
    if (cur_.eof()) cur_.fail("document contains no element");
    Element root = parse_element(0);
    skip_misc(/*declaration_allowed=*/false);
    if (!cur_.eof()) cur_.fail("content after the document element");
    return root;
  }

 private:
  void skip_whitespace() {
    while (!cur_.eof() && is_space(cur_.peek())) cur_.take();
  }

  // Whitespace, comments and (optionally, once, first) the XML declaration.
  void skip_misc(bool declaration_allowed) {
    skip_whitespace();
    if (declaration_allowed && cur_.starts_with("<?xml")) {
      parse_declaration();
      skip_whitespace();
    }
    while (!cur_.eof()) {
      if (cur_.starts_with("<!--")) {
        skip_comment();
        skip_whitespace();
      } else {
        break;
      }
    }
  }

  void parse_declaration() {
    cur_.take(5);  // <?xml
    bool saw_version = false;
    while (true) {
      skip_whitespace();
      if (cur_.eof()) cur_.fail("unterminated XML declaration");
      if (cur_.starts_with("?>")) {
        cur_.take(2);
        break;
      }
      std::string name = parse_name("declaration attribute");
      skip_whitespace();
      expect('=');
      skip_whitespace();
      std::string value = parse_quoted_value();
      if (name == "version") {
        if (value != "1.0") cur_.fail("unsupported XML version '" + value + "'");
        saw_version = true;
      } else if (name == "encoding") {
        std::string lower = value;
        std::transform(lower.begin(), lower.end(), lower.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (lower != "utf-8") {
          cur_.fail("unsupported encoding '" + value + "'");
        }
      } else if (name != "standalone") {
        cur_.fail("unexpected declaration attribute '" + name + "'");
      }
    }
    if (!saw_version) cur_.fail("XML declaration without a version");
  }

  void skip_comment() {
    cur_.take(4);  // <!--
    while (!cur_.starts_with("-->")) {
      if (cur_.eof()) cur_.fail("unterminated comment");
      cur_.take();
    }
    cur_.take(3);
  }

  void expect(char c) {
    if (cur_.eof() || cur_.peek() != c) {
      cur_.fail(std::string("expected '") + c + "'");
    }
    cur_.take();
  }

  std::string parse_name(const char* what) {
    if (cur_.eof() || !is_name_start(cur_.peek())) {
      cur_.fail(std::string("expected a ") + what + " name");
    }
    std::string name;
    while (!cur_.eof() && (is_name_char(cur_.peek()) || cur_.peek() == ':')) {
      if (cur_.peek() == ':') {
        cur_.fail("namespace prefixes are not supported");
      }
      name += cur_.take();
    }
    return name;
  }

  void append_entity(std::string& out) {
    int line = cur_.line();
    int column = cur_.column();
    cur_.take();  // &
    std::string entity;
    while (!cur_.eof() && cur_.peek() != ';' && entity.size() <= 8) {
      entity += cur_.take();
    }
    if (cur_.eof() || cur_.peek() != ';') {
      throw WellFormednessError("unterminated entity reference", line, column);
    }
    cur_.take();
    if (entity == "lt") {
      out += '<';
    } else if (entity == "gt") {
      out += '>';
    } else if (entity == "amp") {
      out += '&';
    } else if (entity == "quot") {
      out += '"';
    } else if (entity == "apos") {
      out += '\'';
    } else {
      throw WellFormednessError("unknown entity '&" + entity + ";'", line,
                                column);
    }
  }

  void check_data_byte(char c) {
    unsigned char b = static_cast<unsigned char>(c);
    if (b < 0x20 && c != '\t' && c != '\n' && c != '\r') {
      cur_.fail("control character in document");
    }
  }

  std::string parse_quoted_value() {
    if (cur_.eof() || (cur_.peek() != '"' && cur_.peek() != '\'')) {
      cur_.fail("expected a quoted attribute value");
    }
    char quote = cur_.take();
    std::string value;
    while (true) {
      if (cur_.eof()) cur_.fail("unterminated attribute value");
      char c = cur_.peek();
      if (c == quote) {
        cur_.take();
        return value;
      }
      if (c == '<') cur_.fail("'<' in attribute value");
      if (c == '&') {
        append_entity(value);
        continue;
      }
      check_data_byte(c);
      cur_.take();
      // Standard attribute-value normalization: line ends and tabs become
      // spaces.
      if (c == '\r') {
        if (!cur_.eof() && cur_.peek() == '\n') cur_.take();
        value += ' ';
      } else if (c == '\n' || c == '\t') {
        value += ' ';
      } else {
        value += c;
      }
    }
  }

  Element parse_element(int depth) {
    if (depth >= kMaxDepth) cur_.fail("element nesting too deep");
    Element element;
    element.line = cur_.line();
    element.column = cur_.column();
    expect('<');
    element.name = parse_name("element");
    while (true) {
      bool had_space = !cur_.eof() && is_space(cur_.peek());
      skip_whitespace();
      if (cur_.eof()) cur_.fail("unterminated start tag");
      if (cur_.starts_with("/>")) {
        cur_.take(2);
        return element;
      }
      if (cur_.peek() == '>') {
        cur_.take();
        parse_content(element, depth);
        return element;
      }
      if (!had_space) cur_.fail("expected whitespace before attribute");
      Attribute attribute;
      attribute.name = parse_name("attribute");
      for (const auto& existing : element.attributes) {
        if (existing.name == attribute.name) {
          cur_.fail("duplicate attribute '" + attribute.name + "'");
        }
      }
      skip_whitespace();
      expect('=');
      skip_whitespace();
      attribute.value = parse_quoted_value();
      element.attributes.push_back(std::move(attribute));
    }
  }

  void parse_content(Element& element, int depth) {
    std::string text;
    while (true) {
      if (cur_.eof()) cur_.fail("unterminated element '" + element.name + "'");
      if (cur_.starts_with("</")) {
        cur_.take(2);
        std::string name = parse_name("element");
        if (name != element.name) {
          cur_.fail("mismatched end tag '" + name + "', expected '" +
                    element.name + "'");
        }
        skip_whitespace();
        expect('>');
        break;
      }
      if (cur_.starts_with("<!--")) {
        skip_comment();
        continue;
      }
      if (cur_.starts_with("<![CDATA[")) cur_.fail("CDATA is not supported");
      if (cur_.starts_with("<!")) cur_.fail("DOCTYPE is not supported");
      if (cur_.starts_with("<?")) {
        cur_.fail("processing instructions are not supported");
      }
      if (cur_.peek() == '<') {
        element.children.push_back(parse_element(depth + 1));
        continue;
      }
      if (cur_.peek() == '&') {
        append_entity(text);
        continue;
      }
      char c = cur_.peek();
      check_data_byte(c);
      cur_.take();
      if (c == '\r') {
        // Line-end normalization.
        if (!cur_.eof() && cur_.peek() == '\n') cur_.take();
        text += '\n';
      } else {
        text += c;
      }
    }
    if (all_whitespace(text)) {
      // Formatting only.
      return;
    }
    if (!element.children.empty()) {
      throw WellFormednessError(
          "mixed content in element '" + element.name + "'", element.line,
          element.column);
    }
    element.text = std::move(text);
  }

  Cursor cur_;
};

void escape_into(std::string& out, std::string_view raw, bool attribute) {
  for (char c : raw) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        if (attribute) {
          out += "&quot;";
        } else {
          out += c;
        }
        break;
      default:
        out += c;
    }
  }
}

}  // namespace

const std::string* Element::find_attribute(
    std::string_view attribute_name) const {
  for (const auto& attribute : attributes) {
    if (attribute.name == attribute_name) return &attribute.value;
  }
  return nullptr;
}

bool Element::structurally_equal(const Element& other) const {
  if (name != other.name || attributes != other.attributes ||
      text != other.text || children.size() != other.children.size()) {
    return false;
  }
  for (size_t i = 0; i < children.size(); ++i) {
    if (!children[i].structurally_equal(other.children[i])) return false;
  }
  return true;
}

Element parse(std::string_view input) { return Parser(input).run(); }

std::string escape_text(std::string_view raw) {
  std::string out;
  escape_into(out, raw, /*attribute=*/false);
  return out;
}

std::string escape_attribute(std::string_view raw) {
  std::string out;
  escape_into(out, raw, /*attribute=*/true);
  return out;
}

void write(std::ostream& out, const Element& element, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  out << pad << '<' << element.name;
  for (const auto& attribute : element.attributes) {
    out << ' ' << attribute.name << "=\"" << escape_attribute(attribute.value)
        << '"';
  }
  if (element.children.empty() && element.text.empty()) {
    out << "/>\n";
    return;
  }
  if (element.children.empty()) {
    out << '>' << escape_text(element.text) << "</" << element.name << ">\n";
    return;
  }
  out << ">\n";
  for (const auto& child : element.children) {
    write(out, child, indent + 1);
  }
  out << pad << "</" << element.name << ">\n";
}

std::string serialize(const Element& root) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  write(out, root, 0);
  return out.str();
}

}  // namespace mtrbac::xml
