#include "mastkit/newick.hpp"

#include <cctype>
#include <utility>
#include <vector>

#include "mastkit/tree_ops.hpp"

namespace mastkit {

namespace {

constexpr std::string_view kMeta = "(),:;[]'";

struct ParsedNode {
  std::vector<int> children;
  Taxon label;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  // Returns the node array; node 0 is the top-level node.
  std::vector<ParsedNode> run() {
    std::vector<int> open;
    skip_blank();
    while (true) {
      // Expect a subtree.
      if (peek() == '(') {
        const int v = add_node(open);
        open.push_back(v);
        ++pos_;
        skip_blank();
        continue;
      }
      const std::size_t at = pos_;
      Taxon label = read_label();
      if (label.empty()) fail("expected a taxon label or '('", at);
      const int v = add_node(open);
      nodes_[v].label = std::move(label);
      read_length();

      // After a subtree: ',' continues, ')' closes, ';' ends.
      while (true) {
        skip_blank();
        const char c = peek();
        if (c == ',') {
          if (open.empty()) fail("',' outside parentheses", pos_);
          ++pos_;
          skip_blank();
          break;
        }
        if (c == ')') {
          if (open.empty()) fail("unbalanced ')'", pos_);
          ++pos_;
          open.pop_back();
          read_label();  // internal labels are discarded
          read_length();
          continue;
        }
        if (c == ';') {
          if (!open.empty()) fail("unbalanced parenthesis: missing ')'", pos_);
          ++pos_;
          skip_blank();
          if (pos_ != text_.size()) fail("trailing characters after ';'", pos_);
          return std::move(nodes_);
        }
        if (c == '\0') {
          fail(open.empty() ? "missing terminating ';'" : "unbalanced parenthesis: missing ')'",
               pos_);
        }
        fail(std::string("unexpected character '") + c + "'", pos_);
      }
    }
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t at) { throw NewickError(what, at); }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  int add_node(const std::vector<int>& open) {
    if (open.empty() && !nodes_.empty()) fail("more than one top-level subtree", pos_);
    nodes_.emplace_back();
    const int v = static_cast<int>(nodes_.size() - 1);
    if (!open.empty()) nodes_[open.back()].children.push_back(v);
    return v;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '[') {
        const auto close = text_.find(']', pos_);
        if (close == std::string_view::npos) fail("unterminated comment", pos_);
        pos_ = close + 1;
      } else {
        break;
      }
    }
  }

  Taxon read_label() {
    skip_blank();
    Taxon out;
    if (peek() == '\'') {
      const std::size_t at = pos_++;
      while (true) {
        if (pos_ >= text_.size()) fail("unterminated quoted label", at);
        const char c = text_[pos_++];
        if (c == '\'') {
          if (peek() == '\'') {
            out += '\'';
            ++pos_;
            continue;
          }
          break;
        }
        out += c;
      }
      if (out.empty()) fail("empty quoted label", at);
      return out;
    }
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || kMeta.find(c) != std::string_view::npos) {
        break;
      }
      out += c;
      ++pos_;
    }
    return out;
  }

  void read_length() {
    skip_blank();
    if (peek() != ':') return;
    ++pos_;
    skip_blank();
    const std::size_t at = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+' ||
            c == 'e' || c == 'E')) {
        break;
      }
      ++pos_;
    }
    if (pos_ == at) fail("expected a branch length after ':'", at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<ParsedNode> nodes_;
};

std::size_t count_leaves(const std::vector<ParsedNode>& nodes) {
  std::size_t n = 0;
  for (const auto& node : nodes) n += node.children.empty() ? 1 : 0;
  return n;
}

RootedTree to_rooted(const std::vector<ParsedNode>& parsed) {
  std::vector<RootedTree::Node> nodes(parsed.size());
  for (std::size_t v = 0; v < parsed.size(); ++v) {
    const auto& kids = parsed[v].children;
    if (kids.empty()) {
      nodes[v].label = parsed[v].label;
    } else if (kids.size() == 2) {
      nodes[v].left = kids[0];
      nodes[v].right = kids[1];
    } else {
      throw TreeError("rooted Newick node has " + std::to_string(kids.size()) +
                      " children, expected 2");
    }
  }
  return RootedTree::from_nodes(std::move(nodes), 0);
}

}  // namespace

RootedTree parse_rooted_newick(std::string_view text) { return to_rooted(Parser(text).run()); }

UnrootedTree parse_unrooted_newick(std::string_view text) {
  const auto parsed = Parser(text).run();
  const std::size_t leaves = count_leaves(parsed);
  const std::size_t top_degree = parsed[0].children.size();
  if (top_degree == 2 && leaves <= 3) return deroot(to_rooted(parsed));
  if (top_degree != 0 && top_degree != 3) {
    throw TreeError("unrooted Newick top-level node has " + std::to_string(top_degree) +
                    " children, expected 3");
  }

  std::vector<std::vector<NodeId>> adj(parsed.size());
  std::vector<Taxon> labels(parsed.size());
  for (std::size_t v = 0; v < parsed.size(); ++v) {
    const auto& kids = parsed[v].children;
    if (kids.empty()) {
      labels[v] = parsed[v].label;
    } else if (v != 0 && kids.size() != 2) {
      throw TreeError("unrooted Newick inner node has " + std::to_string(kids.size()) +
                      " children, expected 2");
    }
    for (int c : kids) {
      adj[v].push_back(c);
      adj[c].push_back(static_cast<NodeId>(v));
    }
  }
  return UnrootedTree::from_adjacency(std::move(adj), std::move(labels));
}

AnyTree parse_newick(std::string_view text, bool rooted) {
  if (rooted) return parse_rooted_newick(text);
  return parse_unrooted_newick(text);
}

std::string newick_label(const Taxon& label) {
  if (label.find_first_of("(),:;[]' \t\r\n") == Taxon::npos) return label;
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
  return out;
}

std::string write_newick(const RootedTree& tree) {
  std::string out;
  std::vector<std::pair<NodeId, int>> frames{{tree.root(), 0}};
  while (!frames.empty()) {
    auto& [v, stage] = frames.back();
    if (tree.is_leaf(v)) {
      out += newick_label(tree.label(v));
      frames.pop_back();
      continue;
    }
    if (stage == 0) {
      out += '(';
      stage = 1;
      frames.emplace_back(tree.left(v), 0);
    } else if (stage == 1) {
      out += ',';
      stage = 2;
      frames.emplace_back(tree.right(v), 0);
    } else {
      out += ')';
      frames.pop_back();
    }
  }
  out += ';';
  return out;
}

std::string write_newick(const UnrootedTree& tree) { return canonical_form(tree) + ";"; }

}  // namespace mastkit
