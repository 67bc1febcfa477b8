#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bphz {

/// Edge label from {I, Xi_1, ..., Xi_d}.
struct EdgeType {
  enum class Kind : std::uint8_t { Integration, Noise };

  Kind kind = Kind::Integration;
  int noise = 0;  // 1-based noise index when kind == Noise

  static constexpr EdgeType integration() { return {Kind::Integration, 0}; }
  static EdgeType noise_of(int index);

  bool is_noise() const { return kind == Kind::Noise; }
  auto operator<=>(const EdgeType&) const = default;
};

/// Rooted tree whose edges carry an EdgeType. Node 0 is the root and every
/// other node v owns exactly one incoming edge, identified with v itself.
/// Trees are stored in canonical form (children ordered by subtree code), so
/// two trees are isomorphic iff their keys are equal.
class TypedTree {
 public:
  /// The single-node tree, i.e. the unit symbol 1.
  TypedTree();

  /// `parent[v] == -1` marks the root; `edge_type[v]` labels the edge into v
  /// (ignored for the root). Throws std::invalid_argument unless the map
  /// describes a single rooted tree.
  static TypedTree from_parent_map(std::vector<int> parent, std::vector<EdgeType> edge_type);

  /// New root joined to the root of `child` by one edge of the given type.
  static TypedTree planted(EdgeType type, const TypedTree& child);

  std::size_t node_count() const { return parent_.size(); }
  std::size_t edge_count() const { return parent_.size() - 1; }
  bool is_unit() const { return parent_.size() == 1; }

  int parent(int node) const { return parent_[static_cast<std::size_t>(node)]; }
  EdgeType edge_type(int node) const { return type_[static_cast<std::size_t>(node)]; }
  const std::vector<int>& children(int node) const { return children_[static_cast<std::size_t>(node)]; }

  /// Canonical, run-independent code of the isomorphism class.
  const std::string& key() const { return key_; }

  /// The planted subtrees hanging off the root, in canonical order. Their tree
  /// product is the tree itself.
  std::vector<TypedTree> root_branches() const;

  /// The subtree rooted at `node` (node becomes the root).
  TypedTree subtree(int node) const;

  friend bool operator==(const TypedTree& a, const TypedTree& b) { return a.key_ == b.key_; }
  friend auto operator<=>(const TypedTree& a, const TypedTree& b) { return a.key_ <=> b.key_; }

 private:
  void canonicalize();

  std::vector<int> parent_;
  std::vector<EdgeType> type_;
  std::vector<std::vector<int>> children_;
  std::string key_;
};

/// Roots merged; children of both roots become children of the merged root.
TypedTree tree_product(const TypedTree& a, const TypedTree& b);
TypedTree tree_power(const TypedTree& t, int n);

/// Multiset of trees under the disjoint-union product. Unit trees are
/// dropped, so the empty forest and the single-node tree both denote 1.
class Forest {
 public:
  Forest() = default;
  explicit Forest(TypedTree tree);
  explicit Forest(std::vector<TypedTree> trees);

  const std::vector<TypedTree>& trees() const { return trees_; }
  bool is_unit() const { return trees_.empty(); }
  std::size_t edge_count() const;
  const std::string& key() const { return key_; }

  /// True when the forest has at most one tree.
  bool is_tree() const { return trees_.size() <= 1; }
  /// The single tree (unit tree for the empty forest); throws otherwise.
  TypedTree as_tree() const;

  friend bool operator==(const Forest& a, const Forest& b) { return a.key_ == b.key_; }

 private:
  void normalize();

  std::vector<TypedTree> trees_;
  std::string key_;
};

Forest forest_product(const Forest& a, const Forest& b);

/// One term of the extraction/contraction expansion of a tree.
struct Extraction {
  Forest extracted;          // A: components induced by the chosen edges
  TypedTree contracted;      // R_A tau: chosen edges collapsed
  long long multiplicity = 0;
};

/// Predicate on a connected component, given as the edge (node) ids of the
/// parent tree that form it.
using ComponentFilter = std::function<bool(const TypedTree& tree, std::span<const int> edges)>;

/// All 2^#edges edge subsets, merged into distinct (A, R) pairs. When a
/// filter is given, subsets with a rejected component are skipped before any
/// tree is materialized. Sorted by (A key, R key).
std::vector<Extraction> subforest_extractions(const TypedTree& tree,
                                              const ComponentFilter& keep_component = {});

/// The connected edge set `edges` of `tree`, materialized
/// as a tree rooted at its topmost node.
TypedTree component_tree(const TypedTree& tree, std::span<const int> edges);

}  // namespace bphz
