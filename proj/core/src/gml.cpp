//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dpoc/io.h"

namespace dpoc {

ParseError::ParseError(const std::string &what, int line, int column)
    : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(column)
                                        + ": " + what
                                  : what),
      line_(line), column_(column) { }

namespace {

struct Pos {
  int line = 1;
  int column = 1;
};

struct Node;
using List = std::vector<Node>;

struct Node {
  std::string key;
  Pos pos;
  std::variant<long long, std::string, List> value;

  bool is_int() const { return std::holds_alternative<long long>(value); }
  bool is_string() const { return std::holds_alternative<std::string>(value); }
  bool is_list() const { return std::holds_alternative<List>(value); }
};

[[noreturn]] void fail(const std::string &what, Pos p) {
  throw ParseError(what, p.line, p.column);
}

class Reader {
public:
  explicit Reader(std::string_view text): text_(text) { }

  List document() {
    List out = entries();
    skip();
    if (i_ < text_.size())
      fail("unexpected ']'", pos_);
    return out;
  }

private:
  List entries() {
    List out;
    while (true) {
      skip();
      if (i_ >= text_.size() || text_[i_] == ']')
        return out;
      out.push_back(entry());
    }
  }

  Node entry() {
    Node n;
    n.pos = pos_;
    if (!(std::isalpha(peek()) || peek() == '_'))
      fail(std::string("expected a key, found '") + static_cast<char>(peek()) + "'", pos_);
    while (i_ < text_.size() && (std::isalnum(peek()) || peek() == '_'))
      n.key.push_back(get());
    skip();
    if (i_ >= text_.size())
      fail("missing value for '" + n.key + "'", pos_);

    const Pos at = pos_;
    const char c = peek();
    if (c == '[') {
      get();
      n.value = entries();
      skip();
      if (i_ >= text_.size())
        fail("unterminated list opened here", at);
      get();
    } else if (c == '"') {
      n.value = quoted();
    } else if (c == '-' || c == '+' || std::isdigit(c)) {
      std::string digits;
      digits.push_back(get());
      while (i_ < text_.size() && std::isdigit(peek()))
        digits.push_back(get());
      if (digits == "-" || digits == "+")
        fail("malformed integer", at);
      try {
        n.value = std::stoll(digits);
      } catch (const std::out_of_range &) {
        fail("integer out of range", at);
      }
    } else {
      fail(std::string("unexpected character '") + c + "'", at);
    }
    return n;
  }

  std::string quoted() {
    const Pos at = pos_;
    get();
    std::string out;
    while (true) {
      if (i_ >= text_.size())
        fail("unterminated string", at);
      const char c = get();
      if (c == '"')
        return out;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (i_ >= text_.size())
        fail("unterminated string", at);
      const Pos esc = pos_;
      const char e = get();
      switch (e) {
      case '"':
      case '\\':
        out.push_back(e);
        break;
      case 'n':
        out.push_back('\n');
        break;
      case 't':
        out.push_back('\t');
        break;
      case 'x': {
        if (i_ + 2 > text_.size() || !std::isxdigit(peek())
            || !std::isxdigit(text_[i_ + 1]))
          fail("bad \\x escape", esc);
        std::string hex{ get() };
        hex.push_back(get());
        out.push_back(static_cast<char>(std::stoi(hex, nullptr, 16)));
        break;
      }
      default:
        fail(std::string("unknown escape '\\") + e + "'", esc);
      }
    }
  }

  void skip() {
    while (i_ < text_.size()) {
      const char c = peek();
      if (c == '#') {
        while (i_ < text_.size() && peek() != '\n')
          get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        return;
      }
    }
  }

  int peek() const {
    return i_ < text_.size() ? static_cast<unsigned char>(text_[i_]) : 0;
  }

  char get() {
    const char c = text_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }

  std::string_view text_;
  std::size_t i_ = 0;
  Pos pos_;
};

const List &as_list(const Node &n) {
  if (!n.is_list())
    fail("'" + n.key + "' must be a list", n.pos);
  return std::get<List>(n.value);
}

long long as_int(const Node &n) {
  if (!n.is_int())
    fail("'" + n.key + "' must be an integer", n.pos);
  return std::get<long long>(n.value);
}

const std::string &as_string(const Node &n) {
  if (!n.is_string())
    fail("'" + n.key + "' must be a quoted string", n.pos);
  return std::get<std::string>(n.value);
}

const Node &single_top(const List &doc, std::string_view key) {
  if (doc.empty())
    fail("empty document", Pos{ 0, 0 });
  if (doc.size() > 1)
    fail("more than one top-level entry", doc[1].pos);
  if (doc[0].key != key)
    fail("expected '" + std::string(key) + "', found '" + doc[0].key + "'", doc[0].pos);
  return doc[0];
}

struct NodeEntry {
  long long id;
  std::string label;
  Pos pos;
};

struct EdgeEntry {
  long long source;
  long long target;
  std::string label;
  Pos pos;
};

struct Section {
  std::vector<NodeEntry> nodes;
  std::vector<EdgeEntry> edges;
};

std::string label_of(const Node &n, const List &fields) {
  const Node *found = nullptr;
  for (const Node &f: fields) {
    if (f.key == "label") {
      if (found)
        fail("duplicate 'label'", f.pos);
      found = &f;
    }
  }
  if (!found)
    fail("'" + n.key + "' without a label", n.pos);
  const std::string &l = as_string(*found);
  if (l.empty())
    fail("empty label", found->pos);
  return l;
}

long long int_field(const Node &n, const List &fields, std::string_view key) {
  const Node *found = nullptr;
  for (const Node &f: fields) {
    if (f.key == key) {
      if (found)
        fail("duplicate '" + std::string(key) + "'", f.pos);
      found = &f;
    }
  }
  if (!found)
    fail("'" + n.key + "' without '" + std::string(key) + "'", n.pos);
  return as_int(*found);
}

void check_keys(const List &fields, std::initializer_list<std::string_view> allowed) {
  for (const Node &f: fields) {
    if (std::find(allowed.begin(), allowed.end(), f.key) == allowed.end())
      fail("unknown key '" + f.key + "'", f.pos);
  }
}

Section read_section(const List &items) {
  Section s;
  std::map<long long, Pos> ids;
  std::map<std::pair<long long, long long>, Pos> pairs;
  for (const Node &item: items) {
    if (item.key == "node") {
      const List &fields = as_list(item);
      check_keys(fields, { "id", "label" });
      NodeEntry e{ int_field(item, fields, "id"), label_of(item, fields), item.pos };
      if (!ids.emplace(e.id, item.pos).second)
        fail("duplicate node id " + std::to_string(e.id), item.pos);
      s.nodes.push_back(std::move(e));
    } else if (item.key == "edge") {
      const List &fields = as_list(item);
      check_keys(fields, { "source", "target", "label" });
      EdgeEntry e{ int_field(item, fields, "source"), int_field(item, fields, "target"),
                   label_of(item, fields), item.pos };
      if (e.source == e.target)
        fail("self-loop on node " + std::to_string(e.source), item.pos);
      const auto key = std::minmax(e.source, e.target);
      if (!pairs.emplace(key, item.pos).second) {
        fail("parallel edge between " + std::to_string(key.first) + " and "
                 + std::to_string(key.second),
             item.pos);
      }
      s.edges.push_back(std::move(e));
    } else {
      fail("unknown key '" + item.key + "'", item.pos);
    }
  }
  return s;
}

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (const char c: s) {
    const auto u = static_cast<unsigned char>(c);
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(c);
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\t') {
      out += "\\t";
    } else if (u < 0x20 || u == 0x7f) {
      static const char *hex = "0123456789abcdef";
      out += "\\x";
      out.push_back(hex[u >> 4]);
      out.push_back(hex[u & 15]);
    } else {
      out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

void write_node(std::ostringstream &os, const char *indent, int id, const Label &l) {
  os << indent << "node [ id " << id << " label " << quote(l) << " ]\n";
}

void write_edge(std::ostringstream &os, const char *indent, int s, int t, const Label &l) {
  os << indent << "edge [ source " << s << " target " << t << " label " << quote(l)
     << " ]\n";
}

}  // namespace

MolGraph parse_graph(std::string_view doc) {
  const List top = Reader(doc).document();
  const Node &root = single_top(top, "graph");
  const Section s = read_section(as_list(root));

  std::vector<long long> ids;
  for (const NodeEntry &n: s.nodes)
    ids.push_back(n.id);
  std::sort(ids.begin(), ids.end());
  auto index = [&](long long id) {
    return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  std::vector<const NodeEntry *> by_index(ids.size());
  for (const NodeEntry &n: s.nodes)
    by_index[index(n.id)] = &n;

  MolGraph g;
  for (const NodeEntry *n: by_index)
    g.add_vertex(n->label);
  for (const EdgeEntry &e: s.edges) {
    for (const long long end: { e.source, e.target }) {
      if (!std::binary_search(ids.begin(), ids.end(), end))
        fail("dangling edge: node " + std::to_string(end) + " is not declared", e.pos);
    }
    g.add_edge(index(e.source), index(e.target), e.label);
  }
  return g;
}

std::string serialize_graph(const MolGraph &g) {
  std::ostringstream os;
  os << "graph [\n";
  for (int v = 0; v < g.num_vertices(); ++v)
    write_node(os, "  ", v, g.label(v));
  for (const Edge &e: g.edges())
    write_edge(os, "  ", e.source, e.target, e.label);
  os << "]\n";
  return os.str();
}

Rule parse_rule(std::string_view doc) {
  const List top = Reader(doc).document();
  const Node &root = single_top(top, "rule");

  std::optional<std::string> name;
  std::optional<Section> sections[3];  // left, context, right
  static constexpr std::string_view kNames[3] = { "left", "context", "right" };
  for (const Node &item: as_list(root)) {
    if (item.key == "ruleID") {
      if (name)
        fail("duplicate 'ruleID'", item.pos);
      name = as_string(item);
      continue;
    }
    const auto it = std::find(std::begin(kNames), std::end(kNames), item.key);
    if (it == std::end(kNames))
      fail("unknown key '" + item.key + "'", item.pos);
    const auto k = it - std::begin(kNames);
    if (sections[k])
      fail("duplicate section '" + item.key + "'", item.pos);
    sections[k] = read_section(as_list(item));
  }
  for (auto &s: sections) {
    if (!s)
      s.emplace();
  }
  const Section &left = *sections[0];
  const Section &context = *sections[1];
  const Section &right = *sections[2];

  struct Sides {
    std::optional<Label> left, right;
    Pos pos;
  };
  std::map<long long, Sides> vertices;
  for (const NodeEntry &n: context.nodes)
    vertices[n.id] = Sides{ n.label, n.label, n.pos };
  for (const NodeEntry &n: left.nodes) {
    Sides &s = vertices[n.id];
    if (!s.left && !s.right)
      s.pos = n.pos;
    s.left = n.label;
  }
  for (const NodeEntry &n: right.nodes) {
    Sides &s = vertices[n.id];
    if (!s.left && !s.right)
      s.pos = n.pos;
    s.right = n.label;
  }

  Rule r;
  r.name = name.value_or("");
  std::map<long long, int> index;
  for (const auto &[id, s]: vertices)
    index[id] = r.add_vertex(s.left, s.right);

  std::map<std::pair<long long, long long>, Sides> edges;
  std::vector<std::pair<long long, long long>> order;
  auto add = [&](const EdgeEntry &e, bool l, bool rt, const char *section) {
    for (const long long end: { e.source, e.target }) {
      const auto v = vertices.find(end);
      if (v == vertices.end()) {
        fail("dangling edge: node " + std::to_string(end) + " is not declared",
             e.pos);
      }
      if ((l && !v->second.left) || (rt && !v->second.right)) {
        fail(std::string("dangling edge: node ") + std::to_string(end)
                 + " is missing from the side of this " + section + " edge",
             e.pos);
      }
    }
    const auto key = std::minmax(e.source, e.target);
    auto [it, inserted] = edges.try_emplace(key, Sides{ {}, {}, e.pos });
    if (inserted)
      order.push_back(key);
    if (l)
      it->second.left = e.label;
    if (rt)
      it->second.right = e.label;
  };
  for (const EdgeEntry &e: context.edges)
    add(e, true, true, "context");
  // a pair listed in both left and right becomes one relabelled edge
  for (const EdgeEntry &e: left.edges)
    add(e, true, false, "left");
  for (const EdgeEntry &e: right.edges)
    add(e, false, true, "right");

  std::sort(order.begin(), order.end());
  for (const auto &key: order) {
    const Sides &s = edges.at(key);
    r.add_edge(index.at(key.first), index.at(key.second), s.left, s.right);
  }

  const std::vector<RuleViolation> bad = validate_rule(r);
  if (!bad.empty())
    fail(bad.front().message, Pos{ 0, 0 });
  return r;
}

std::string serialize_rule(const Rule &r) {
  std::ostringstream lo, co, ro;
  for (int v = 0; v < r.num_vertices(); ++v) {
    const RuleVertex &x = r.vertices[v];
    if (x.left && x.right && *x.left == *x.right) {
      write_node(co, "    ", v, *x.left);
      continue;
    }
    if (x.left)
      write_node(lo, "    ", v, *x.left);
    if (x.right)
      write_node(ro, "    ", v, *x.right);
  }
  std::vector<int> edge_order(r.num_edges());
  for (int e = 0; e < r.num_edges(); ++e)
    edge_order[e] = e;
  std::sort(edge_order.begin(), edge_order.end(), [&](int a, int b) {
    const RuleEdge &x = r.edges[a];
    const RuleEdge &y = r.edges[b];
    return std::minmax(x.source, x.target) < std::minmax(y.source, y.target);
  });
  for (const int e: edge_order) {
    const RuleEdge &x = r.edges[e];
    const int s = std::min(x.source, x.target);
    const int t = std::max(x.source, x.target);
    if (x.left && x.right && *x.left == *x.right) {
      write_edge(co, "    ", s, t, *x.left);
      continue;
    }
    if (x.left)
      write_edge(lo, "    ", s, t, *x.left);
    if (x.right)
      write_edge(ro, "    ", s, t, *x.right);
  }

  std::ostringstream os;
  os << "rule [\n  ruleID " << quote(r.name) << "\n";
  os << "  left [\n" << lo.str() << "  ]\n";
  os << "  context [\n" << co.str() << "  ]\n";
  os << "  right [\n" << ro.str() << "  ]\n";
  os << "]\n";
  return os.str();
}

bool is_rule_document(std::string_view doc) {
  std::size_t i = 0;
  while (i < doc.size()) {
    if (doc[i] == '#') {
      while (i < doc.size() && doc[i] != '\n')
        ++i;
    } else if (std::isspace(static_cast<unsigned char>(doc[i]))) {
      ++i;
    } else {
      break;
    }
  }
  return doc.substr(i, 4) == "rule"
         && (i + 4 == doc.size() || !std::isalnum(static_cast<unsigned char>(doc[i + 4])));
}

}  // namespace dpoc
