#include "hfgt/io/xml.hpp"

#include "hfgt/io/file.hpp"
#include "hfgt/io/format.hpp"

#include <boost/property_tree/detail/rapidxml.hpp>

#include <algorithm>
#include <charconv>
#include <cstring>
#include <initializer_list>
#include <set>
#include <sstream>
#include <vector>

namespace hfgt {

namespace rx = boost::property_tree::detail::rapidxml;

XmlError::XmlError(int line, int column, const std::string& message)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

using Node = rx::xml_node<char>;
using Attr = rx::xml_attribute<char>;

class Reader {
 public:
  explicit Reader(std::string_view text) : original_(text), buffer_(text.begin(), text.end()) { buffer_.push_back('\0'); }

  SystemModel run() {
    rx::xml_document<char> doc;
    try {
      doc.parse<rx::parse_validate_closing_tags>(buffer_.data());
    } catch (const rx::parse_error& e) {
      fail(e.where<char>(), std::string("malformed XML: ") + e.what());
    }
    Node* root = nullptr;
    for (Node* n = doc.first_node(); n; n = n->next_sibling()) {
      if (n->type() != rx::node_element) continue;
      if (root) fail(n->name(), "more than one root element");
      root = n;
    }
    if (!root) fail(buffer_.data(), "document has no root element");
    return system(root);
  }

 private:
  // Positions are counted in the untouched input text.
  std::string_view original_;
  std::vector<char> buffer_;

  [[noreturn]] void fail(const char* where, const std::string& message) const {
    int line = 1, column = 1;
    std::size_t offset = 0;
    if (where && where >= buffer_.data() && where < buffer_.data() + buffer_.size()) {
      offset = std::min(static_cast<std::size_t>(where - buffer_.data()), original_.size());
    }
    for (std::size_t i = 0; i < offset; ++i) {
      if (original_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw XmlError(line, column, message);
  }

  static std::string name_of(const Node* n) { return std::string(n->name(), n->name_size()); }

  void check_attributes(const Node* n, std::initializer_list<const char*> allowed) const {
    std::set<std::string> seen;
    for (Attr* a = n->first_attribute(); a; a = a->next_attribute()) {
      const std::string key(a->name(), a->name_size());
      bool ok = false;
      for (const char* k : allowed) ok = ok || key == k;
      if (!ok) fail(a->name(), "unknown attribute '" + key + "' on <" + name_of(n) + ">");
      if (!seen.insert(key).second) fail(a->name(), "repeated attribute '" + key + "'");
    }
  }

  static const Attr* attr(const Node* n, const char* key) { return n->first_attribute(key, std::strlen(key)); }

  static std::string text(const Node* n, const char* key, const std::string& fallback = {}) {
    const Attr* a = attr(n, key);
    return a ? std::string(a->value(), a->value_size()) : fallback;
  }

  std::string required(const Node* n, const char* key) const {
    const Attr* a = attr(n, key);
    if (!a) fail(n->name(), "<" + name_of(n) + "> requires attribute '" + key + "'");
    return std::string(a->value(), a->value_size());
  }

  double number(const Node* n, const char* key, double fallback) const {
    const Attr* a = attr(n, key);
    if (!a) return fallback;
    const auto v = parse_number(std::string_view(a->value(), a->value_size()));
    if (!v) fail(a->value(), "attribute '" + std::string(key) + "' is not a number");
    return *v;
  }

  int integer(const Node* n, const char* key, int fallback) const {
    const Attr* a = attr(n, key);
    if (!a) return fallback;
    int v = 0;
    const char* first = a->value();
    const char* last = first + a->value_size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail(a->value(), "attribute '" + std::string(key) + "' is not an integer");
    return v;
  }

  std::vector<Node*> children(const Node* n, std::initializer_list<const char*> allowed) const {
    std::vector<Node*> out;
    for (Node* c = n->first_node(); c; c = c->next_sibling()) {
      if (c->type() == rx::node_data || c->type() == rx::node_cdata) {
        const std::string_view v(c->value(), c->value_size());
        if (v.find_first_not_of(" \t\r\n") != std::string_view::npos) fail(c->value(), "unexpected text content");
        continue;
      }
      if (c->type() != rx::node_element) continue;
      const std::string key = name_of(c);
      bool ok = false;
      for (const char* k : allowed) ok = ok || key == k;
      if (!ok) fail(c->name(), "unknown element <" + key + "> inside <" + name_of(n) + ">");
      out.push_back(c);
    }
    return out;
  }

  void unique(std::set<std::string>& ids, const Node* n, const std::string& kind, const std::string& id) const {
    if (!ids.insert(id).second) fail(n->name(), "duplicate " + kind + " id '" + id + "'");
  }

  SystemModel system(const Node* root) const {
    if (name_of(root) != "system") fail(root->name(), "root element must be <system>, found <" + name_of(root) + ">");
    check_attributes(root, {"name"});
    SystemModel model;
    model.name = text(root, "name");
    std::set<std::string> operand_ids, resource_ids, process_ids, capability_ids;

    for (Node* n : children(root, {"operand", "resource", "process", "capability"})) {
      const std::string kind = name_of(n);
      if (kind == "operand") {
        check_attributes(n, {"id", "name", "unit"});
        Operand o{required(n, "id"), "", text(n, "unit")};
        o.name = text(n, "name", o.id);
        unique(operand_ids, n, "operand", o.id);
        model.operands.push_back(std::move(o));
      } else if (kind == "resource") {
        check_attributes(n, {"id", "name", "kind"});
        Resource r{required(n, "id"), "", ResourceKind::Transformation};
        r.name = text(n, "name", r.id);
        const auto k = parse_resource_kind(required(n, "kind"));
        if (!k) fail(attr(n, "kind")->value(), "unknown resource kind '" + text(n, "kind") + "'");
        r.kind = *k;
        unique(resource_ids, n, "resource", r.id);
        model.resources.push_back(std::move(r));
      } else if (kind == "process") {
        check_attributes(n, {"id", "name", "kind"});
        Process p;
        p.id = required(n, "id");
        p.name = text(n, "name", p.id);
        if (attr(n, "kind")) {
          const auto k = parse_process_kind(text(n, "kind"));
          if (!k) fail(attr(n, "kind")->value(), "unknown process kind '" + text(n, "kind") + "'");
          p.kind = *k;
        }
        unique(process_ids, n, "process", p.id);
        for (Node* f : children(n, {"input", "output"})) {
          check_attributes(f, {"operand", "coeff"});
          Flow flow{required(f, "operand"), number(f, "coeff", 1.0)};
          (name_of(f) == "input" ? p.inputs : p.outputs).push_back(std::move(flow));
        }
        model.processes.push_back(std::move(p));
      } else {
        check_attributes(n, {"id", "name", "resource", "process", "duration"});
        Capability c;
        c.id = required(n, "id");
        c.name = text(n, "name", c.id);
        c.resource = required(n, "resource");
        c.process = required(n, "process");
        c.duration = integer(n, "duration", 0);
        unique(capability_ids, n, "capability", c.id);
        for (Node* a : children(n, {"pull", "push"})) {
          check_attributes(a, {"operand", "buffer"});
          BufferAssignment b{required(a, "operand"), text(a, "buffer", c.resource)};
          (name_of(a) == "pull" ? c.pull : c.push).push_back(std::move(b));
        }
        model.capabilities.push_back(std::move(c));
      }
    }

    // Fill omitted assignments once every resource and process is known.
    for (auto& c : model.capabilities) {
      const Resource* r = model.find_resource(c.resource);
      const Process* p = model.find_process(c.process);
      if (!r || !p || !r->is_buffer()) continue;
      auto fill = [&](std::vector<BufferAssignment>& list, const std::vector<Flow>& flows) {
        for (const auto& f : flows) {
          bool present = false;
          for (const auto& a : list) present = present || a.operand == f.operand;
          if (!present) list.push_back({f.operand, r->id});
        }
      };
      fill(c.pull, p->inputs);
      fill(c.push, p->outputs);
    }
    return model;
  }
};

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string attr_text(const char* key, const std::string& value) {
  return std::string(" ") + key + "=\"" + escape(value) + "\"";
}

}  // namespace

SystemModel parse_system_xml(std::string_view text) { return Reader(text).run(); }

SystemModel load_system_xml(const std::string& path) {
  SystemModel model;
  try {
    model = parse_system_xml(read_text_file(path));
  } catch (const XmlError& e) {
    throw XmlError(e.line(), e.column(), path + ": " + e.what());
  }
  require_valid(model);
  return model;
}

std::string write_system_xml(const SystemModel& model) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<system" << attr_text("name", model.name) << ">\n";
  for (const auto& o : model.operands) {
    out << "  <operand" << attr_text("id", o.id) << attr_text("name", o.name) << attr_text("unit", o.unit) << "/>\n";
  }
  for (const auto& r : model.resources) {
    out << "  <resource" << attr_text("id", r.id) << attr_text("name", r.name) << attr_text("kind", to_string(r.kind))
        << "/>\n";
  }
  for (const auto& p : model.processes) {
    out << "  <process" << attr_text("id", p.id) << attr_text("name", p.name) << attr_text("kind", to_string(p.kind))
        << ">\n";
    for (const auto& f : p.inputs) {
      out << "    <input" << attr_text("operand", f.operand) << attr_text("coeff", format_number(f.coefficient)) << "/>\n";
    }
    for (const auto& f : p.outputs) {
      out << "    <output" << attr_text("operand", f.operand) << attr_text("coeff", format_number(f.coefficient)) << "/>\n";
    }
    out << "  </process>\n";
  }
  for (const auto& c : model.capabilities) {
    out << "  <capability" << attr_text("id", c.id) << attr_text("name", c.name) << attr_text("resource", c.resource)
        << attr_text("process", c.process) << attr_text("duration", std::to_string(c.duration)) << ">\n";
    for (const auto& a : c.pull) out << "    <pull" << attr_text("operand", a.operand) << attr_text("buffer", a.buffer) << "/>\n";
    for (const auto& a : c.push) out << "    <push" << attr_text("operand", a.operand) << attr_text("buffer", a.buffer) << "/>\n";
    out << "  </capability>\n";
  }
  out << "</system>\n";
  return out.str();
}

}  // namespace hfgt
