#include "bphz/tree.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "bphz/errors.hpp"

namespace bphz {

EdgeType EdgeType::noise_of(int index) {
  if (index < 1) throw std::invalid_argument("noise index must be >= 1");
  return {Kind::Noise, index};
}

namespace {

std::string edge_code(EdgeType t) {
  return t.is_noise() ? "n" + std::to_string(t.noise) + ":" : std::string("p");
}


}  // namespace

TypedTree::TypedTree() : parent_{-1}, type_{EdgeType{}}, children_(1), key_("()") {}

TypedTree TypedTree::from_parent_map(std::vector<int> parent, std::vector<EdgeType> edge_type) {
  const std::size_t n = parent.size();
  if (n == 0 || edge_type.size() != n)
    throw std::invalid_argument("tree needs matching, non-empty parent and type maps");
  int root = -1;
  for (std::size_t v = 0; v < n; ++v) {
    if (parent[v] == -1) {
      if (root != -1) throw std::invalid_argument("tree has more than one root");
      root = static_cast<int>(v);
    } else if (parent[v] < 0 || static_cast<std::size_t>(parent[v]) >= n ||
               parent[v] == static_cast<int>(v)) {
      throw std::invalid_argument("parent index out of range");
    }
  }
  if (root == -1) throw std::invalid_argument("tree has no root");
  for (std::size_t v = 0; v < n; ++v) {
    int u = static_cast<int>(v);
    std::size_t steps = 0;
    while (u != root) {
      u = parent[static_cast<std::size_t>(u)];
      if (++steps > n) throw std::invalid_argument("parent map has a cycle");
    }
  }
  TypedTree t;
  t.parent_ = std::move(parent);
  t.type_ = std::move(edge_type);
  t.canonicalize();
  return t;
}

void TypedTree::canonicalize() {
  const std::size_t n = parent_.size();
  int root = 0;
  std::vector<std::vector<int>> kids(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (parent_[v] == -1)
      root = static_cast<int>(v);
    else
      kids[static_cast<std::size_t>(parent_[v])].push_back(static_cast<int>(v));
  }
  // Post-order over an explicit stack: codes of children before parents.
  std::vector<std::string> code(n);
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int c : kids[static_cast<std::size_t>(v)]) stack.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto& ch = kids[static_cast<std::size_t>(*it)];
    std::vector<std::pair<std::string, int>> branches;
    branches.reserve(ch.size());
    for (int c : ch)
      branches.emplace_back(edge_code(type_[static_cast<std::size_t>(c)]) + code[static_cast<std::size_t>(c)], c);
    std::sort(branches.begin(), branches.end());
    std::string s = "(";
    for (std::size_t i = 0; i < branches.size(); ++i) {
      s += branches[i].first;
      ch[i] = branches[i].second;
    }
    s += ")";
    code[static_cast<std::size_t>(*it)] = std::move(s);
  }

  std::vector<int> new_index(n, -1);
  std::vector<int> preorder;
  preorder.reserve(n);
  stack.assign(1, root);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    new_index[static_cast<std::size_t>(v)] = static_cast<int>(preorder.size());
    preorder.push_back(v);
    const auto& ch = kids[static_cast<std::size_t>(v)];
    for (auto c = ch.rbegin(); c != ch.rend(); ++c) stack.push_back(*c);
  }
  std::vector<int> parent(n);
  std::vector<EdgeType> type(n);
  std::vector<std::vector<int>> children(n);
  for (std::size_t i = 0; i < n; ++i) {
    int old = preorder[i];
    int p = parent_[static_cast<std::size_t>(old)];
    parent[i] = p == -1 ? -1 : new_index[static_cast<std::size_t>(p)];
    type[i] = p == -1 ? EdgeType{} : type_[static_cast<std::size_t>(old)];
    for (int c : kids[static_cast<std::size_t>(old)]) children[i].push_back(new_index[static_cast<std::size_t>(c)]);
  }
  parent_ = std::move(parent);
  type_ = std::move(type);
  children_ = std::move(children);
  key_ = std::move(code[static_cast<std::size_t>(root)]);
}

TypedTree TypedTree::planted(EdgeType type, const TypedTree& child) {
  std::vector<int> parent{-1};
  std::vector<EdgeType> types{EdgeType{}};
  for (std::size_t v = 0; v < child.node_count(); ++v) {
    parent.push_back(v == 0 ? 0 : child.parent_[v] + 1);
    types.push_back(v == 0 ? type : child.type_[v]);
  }
  return from_parent_map(std::move(parent), std::move(types));
}

TypedTree TypedTree::subtree(int node) const {
  std::vector<int> nodes{node};
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (int c : children(nodes[i])) nodes.push_back(c);
  std::map<int, int> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<int>(i);
  std::vector<int> parent(nodes.size());
  std::vector<EdgeType> types(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    parent[i] = i == 0 ? -1 : index.at(parent_[static_cast<std::size_t>(nodes[i])]);
    types[i] = i == 0 ? EdgeType{} : type_[static_cast<std::size_t>(nodes[i])];
  }
  return from_parent_map(std::move(parent), std::move(types));
}

std::vector<TypedTree> TypedTree::root_branches() const {
  std::vector<TypedTree> out;
  for (int c : children(0)) out.push_back(planted(edge_type(c), subtree(c)));
  return out;
}

TypedTree tree_product(const TypedTree& a, const TypedTree& b) {
  std::vector<int> parent{-1};
  std::vector<EdgeType> types{EdgeType{}};
  auto append = [&](const TypedTree& t) {
    const int offset = static_cast<int>(parent.size()) - 1;
    for (std::size_t v = 1; v < t.node_count(); ++v) {
      int p = t.parent(static_cast<int>(v));
      parent.push_back(p == 0 ? 0 : p + offset);
      types.push_back(t.edge_type(static_cast<int>(v)));
    }
  };
  append(a);
  append(b);
  return TypedTree::from_parent_map(std::move(parent), std::move(types));
}

TypedTree tree_power(const TypedTree& t, int n) {
  if (n < 0) throw std::invalid_argument("negative tree power");
  TypedTree out;
  for (int i = 0; i < n; ++i) out = tree_product(out, t);
  return out;
}

Forest::Forest(TypedTree tree) : trees_{std::move(tree)} { normalize(); }

Forest::Forest(std::vector<TypedTree> trees) : trees_(std::move(trees)) { normalize(); }

void Forest::normalize() {
  std::erase_if(trees_, [](const TypedTree& t) { return t.is_unit(); });
  std::sort(trees_.begin(), trees_.end());
  key_.clear();
  for (std::size_t i = 0; i < trees_.size(); ++i) {
    if (i) key_ += '.';
    key_ += trees_[i].key();
  }
}

std::size_t Forest::edge_count() const {
  std::size_t e = 0;
  for (const auto& t : trees_) e += t.edge_count();
  return e;
}

TypedTree Forest::as_tree() const {
  if (trees_.size() > 1) throw DomainError("forest with several trees used as a tree");
  return trees_.empty() ? TypedTree{} : trees_.front();
}

Forest forest_product(const Forest& a, const Forest& b) {
  std::vector<TypedTree> trees = a.trees();
  trees.insert(trees.end(), b.trees().begin(), b.trees().end());
  return Forest(std::move(trees));
}

TypedTree component_tree(const TypedTree& tree, std::span<const int> edges) {
  std::vector<int> nodes;
  for (int e : edges) {
    nodes.push_back(e);
    nodes.push_back(tree.parent(e));
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::vector<bool> in_edges(tree.node_count(), false);
  for (int e : edges) in_edges[static_cast<std::size_t>(e)] = true;
  std::map<int, int> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<int>(i);
  std::vector<int> parent(nodes.size(), -1);
  std::vector<EdgeType> types(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    int v = nodes[i];
    if (v != 0 && in_edges[static_cast<std::size_t>(v)]) {
      parent[i] = index.at(tree.parent(v));
      types[i] = tree.edge_type(v);
    }
  }
  return TypedTree::from_parent_map(std::move(parent), std::move(types));
}

std::vector<Extraction> subforest_extractions(const TypedTree& tree, const ComponentFilter& keep_component) {
  const std::size_t n = tree.node_count();
  const std::size_t edges = n - 1;
  if (edges > 30) throw DomainError("tree too large for exhaustive subforest enumeration");

  // Nodes are in preorder, so a parent is always visited before its child
  // and each chosen edge inherits the component top of a chosen parent edge.
  std::vector<int> top(n, -1), count(n, 0), offset(n, 0), bucket(edges), tops, cls_index(n);
  tops.reserve(edges);
  std::map<std::pair<std::string, std::string>, Extraction> merged;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges); ++mask) {
    auto chosen = [mask](std::size_t v) { return v != 0 && ((mask >> (v - 1)) & 1u); };
    tops.clear();
    for (std::size_t e = 1; e < n; ++e) {
      if (!chosen(e)) continue;
      const int p = tree.parent(static_cast<int>(e));
      const int t = chosen(static_cast<std::size_t>(p)) ? top[static_cast<std::size_t>(p)] : p;
      top[e] = t;
      if (count[static_cast<std::size_t>(t)]++ == 0) tops.push_back(t);
    }
    int used = 0;
    for (int t : tops) {
      offset[static_cast<std::size_t>(t)] = used;
      used += count[static_cast<std::size_t>(t)];
      count[static_cast<std::size_t>(t)] = 0;
    }
    for (std::size_t e = 1; e < n; ++e)
      if (chosen(e)) {
        const auto t = static_cast<std::size_t>(top[e]);
        bucket[static_cast<std::size_t>(offset[t] + count[t]++)] = static_cast<int>(e);
      }
    auto component = [&](int t) {
      const auto i = static_cast<std::size_t>(t);
      return std::span<const int>(bucket.data() + offset[i], static_cast<std::size_t>(count[i]));
    };

    bool rejected = false;
    if (keep_component)
      for (int t : tops)
        if (!keep_component(tree, component(t))) {
          rejected = true;
          break;
        }
    if (rejected) {
      for (int t : tops) count[static_cast<std::size_t>(t)] = 0;
      continue;
    }

    std::vector<TypedTree> parts;
    parts.reserve(tops.size());
    for (int t : tops) parts.push_back(component_tree(tree, component(t)));
    for (int t : tops) count[static_cast<std::size_t>(t)] = 0;
    Forest extracted(std::move(parts));

    // Contraction: chosen edges collapse onto their component top.
    int classes = 0;
    for (std::size_t v = 0; v < n; ++v) cls_index[v] = chosen(v) ? -1 : classes++;
    std::vector<int> parent(static_cast<std::size_t>(classes), -1);
    std::vector<EdgeType> types(static_cast<std::size_t>(classes));
    auto cls = [&](int v) {
      return cls_index[static_cast<std::size_t>(chosen(static_cast<std::size_t>(v)) ? top[static_cast<std::size_t>(v)] : v)];
    };
    for (std::size_t e = 1; e < n; ++e) {
      if (chosen(e)) continue;
      const auto c = static_cast<std::size_t>(cls(static_cast<int>(e)));
      parent[c] = cls(tree.parent(static_cast<int>(e)));
      types[c] = tree.edge_type(static_cast<int>(e));
    }
    TypedTree contracted = TypedTree::from_parent_map(std::move(parent), std::move(types));

    auto key = std::make_pair(extracted.key(), contracted.key());
    auto it = merged.find(key);
    if (it == merged.end())
      merged.emplace(std::move(key), Extraction{std::move(extracted), std::move(contracted), 1});
    else
      ++it->second.multiplicity;
  }

  std::vector<Extraction> out;
  out.reserve(merged.size());
  for (auto& [k, x] : merged) out.push_back(std::move(x));
  return out;
}

}  // namespace bphz
