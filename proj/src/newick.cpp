#include "nni/newick.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace nni {

namespace {

struct RawNode {
  std::string label;
  std::string length;
  std::size_t offset = 0;
  std::size_t length_offset = 0;  // where the length is or should be
  std::vector<int> children;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Phylogeny run() {
    skip_ws();
    if (pos_ >= s_.size()) fail("empty input");
    int root = node();
    skip_ws();
    if (!eat(';')) fail("expected ';'");
    skip_ws();
    if (pos_ != s_.size()) fail("trailing text after ';'");
    return build(root);
  }

 private:
  [[noreturn]] void fail(const std::string& why) const { throw ParseError(why, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static bool delimiter(char c) {
    return c == '(' || c == ')' || c == ',' || c == ':' || c == ';' || c == '[' || c == ']' ||
           c == '\'' || std::isspace(static_cast<unsigned char>(c));
  }

  std::string label() {
    skip_ws();
    std::string out;
    if (eat('\'')) {
      while (true) {
        if (pos_ >= s_.size()) fail("unterminated quoted label");
        char c = s_[pos_++];
        if (c == '\'') {
          if (eat('\'')) {
            out.push_back('\'');
            continue;
          }
          break;
        }
        out.push_back(c);
      }
      if (out.empty()) fail("empty quoted label");
      return out;
    }
    while (pos_ < s_.size() && !delimiter(s_[pos_])) out.push_back(s_[pos_++]);
    return out;
  }

  int node() {
    skip_ws();
    int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[id].offset = pos_;
    if (eat('(')) {
      while (true) {
        int c = node();
        nodes_[id].children.push_back(c);
        skip_ws();
        if (eat(',')) continue;
        if (eat(')')) break;
        fail("expected ',' or ')'");
      }
    }
    nodes_[id].label = label();
    nodes_[id].length_offset = pos_;
    skip_ws();
    if (eat(':')) {
      skip_ws();
      std::size_t start = pos_;
      nodes_[id].length_offset = start;
      while (pos_ < s_.size() && !delimiter(s_[pos_])) ++pos_;
      nodes_[id].length = std::string(s_.substr(start, pos_ - start));
      if (nodes_[id].length.empty()) fail("empty branch length");
    }
    if (nodes_[id].children.empty() && nodes_[id].label.empty()) fail("leaf without a label");
    return id;
  }

  Weight length_of(int id) const {
    const RawNode& r = nodes_[id];
    if (r.length.empty()) throw ParseError("missing branch length", r.length_offset);
    try {
      return Weight::parse(r.length);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), r.length_offset);
    }
  }

  Phylogeny build(int root) {
    const RawNode& r = nodes_[root];
    std::size_t k = r.children.size();
    if (k != 2 && k != 3) throw ParseError("root must have 2 or 3 children", r.offset);
    Phylogeny t;
    if (k == 3) {
      NodeId v = t.add_node();
      for (int c : r.children) attach(t, v, c);
    } else {
      // Degree-2 root: join the two children with one edge of summed weight.
      int c0 = r.children[0], c1 = r.children[1];
      Weight w = length_of(c0) + length_of(c1);
      NodeId a = make(t, c0);
      NodeId b = make(t, c1);
      t.add_edge(a, b, w);
      finish(t, a, c0);
      finish(t, b, c1);
    }
    auto seen = t.taxa();
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      auto it = std::adjacent_find(seen.begin(), seen.end());
      throw ParseError("duplicate taxon '" + *it + "'", dup_offset(*it));
    }
    require_valid(t);
    return t;
  }

  NodeId make(Phylogeny& t, int id) {
    const RawNode& r = nodes_[id];
    if (!r.children.empty() && r.children.size() != 2)
      throw ParseError("internal node must have exactly 2 children", r.offset);
    return t.add_node(r.children.empty() ? r.label : std::string{});
  }

  void finish(Phylogeny& t, NodeId v, int id) {
    for (int c : nodes_[id].children) attach(t, v, c);
  }

  void attach(Phylogeny& t, NodeId parent, int id) {
    Weight w = length_of(id);
    NodeId v = make(t, id);
    t.add_edge(parent, v, w);
    finish(t, v, id);
  }

  std::size_t dup_offset(const std::string& name) const {
    int count = 0;
    for (const auto& r : nodes_)
      if (r.children.empty() && r.label == name && ++count == 2) return r.offset;
    return 0;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<RawNode> nodes_;
};

std::string quote(const std::string& label) {
  bool plain = !label.empty();
  for (char c : label)
    if (c == '(' || c == ')' || c == ',' || c == ':' || c == ';' || c == '[' || c == ']' || c == '\'' ||
        std::isspace(static_cast<unsigned char>(c)))
      plain = false;
  if (plain) return label;
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

}  // namespace

Phylogeny parse_newick(std::string_view text) { return Parser(text).run(); }

Phylogeny read_newick_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TreeError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_newick(ss.str());
}

std::string serialize_newick(const Phylogeny& t) {
  NodeId root = t.root_handle();
  RootedView r = orient(t, root);
  // Smallest taxon below each node, by pointer to its label.
  std::vector<const std::string*> least(t.node_count(), nullptr);
  for (auto it = r.bfs.rbegin(); it != r.bfs.rend(); ++it) {
    NodeId v = *it;
    if (t.is_leaf(v)) least[v] = &t.label(v);
    NodeId p = r.parent[v];
    if (p != kNone && (!least[p] || *least[v] < *least[p])) least[p] = least[v];
  }
  std::string out;
  auto emit = [&](auto&& self, NodeId v) -> void {
    if (t.is_leaf(v)) {
      out += quote(t.label(v));
    } else {
      std::vector<NodeId> kids;
      for (EdgeId e : t.incident(v))
        if (e != r.parent_edge[v]) kids.push_back(t.edge(e).other(v));
      std::sort(kids.begin(), kids.end(), [&](NodeId x, NodeId y) { return *least[x] < *least[y]; });
      out.push_back('(');
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out.push_back(',');
        self(self, kids[i]);
      }
      out.push_back(')');
    }
    if (v != root) {
      out.push_back(':');
      out += t.weight(r.parent_edge[v]).to_string();
    }
  };
  emit(emit, root);
  out.push_back(';');
  return out;
}

}  // namespace nni
