#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gwve {

// Ulam-Harris label: sequence of 1-based child numbers; empty = root.
using Label = std::vector<int>;

// A realized tree stored as per-generation parent arrays:
// parents(m)[i] = index of the parent of individual i of generation m in
// generation m-1.  Children of one parent occupy a contiguous block and
// parents appear in increasing order (canonical Ulam-Harris order), so the
// descendants of any node form contiguous index intervals at every depth.
class Genealogy {
 public:
  Genealogy() = default;  // root-only tree

  // Number of generations below the root actually present (|t|).
  int height() const { return static_cast<int>(parents_.size()); }

  // X_m(t); zero above the height.
  int census(int m) const;

  // Parent indices of generation m (1 <= m <= height).
  const std::vector<std::uint32_t>& parents(int m) const { return parents_[m - 1]; }

  // Appends one generation; indices must be sorted and in range.
  void push_generation(std::vector<std::uint32_t> parent_indices);

  int parent_of(int gen, int idx) const;
  // Index of the ancestor of (gen, idx) at generation anc_gen <= gen.
  int ancestor_of(int gen, int idx, int anc_gen) const;
  // Children of (gen, idx) live at [first, last) in generation gen+1.
  std::pair<int, int> children_range(int gen, int idx) const;
  int children_count(int gen, int idx) const;
  // Descendants of (gen, idx) at generation desc_gen form [first, last).
  std::pair<int, int> descendants_range(int gen, int idx, int desc_gen) const;

  // Label addressing.  node_index returns -1 when u is not in the tree.
  int node_index(const Label& u) const;
  bool contains(const Label& u) const { return node_index(u) >= 0; }
  Label label_of(int gen, int idx) const;

  // R_m(t).  Throws std::domain_error when m > height.
  Genealogy restricted(int m) const;

  // S_u(t), relabeled to root; nullopt when u is not in the tree.
  std::optional<Genealogy> subtree(const Label& u) const;

  std::vector<Label> labels() const;
  static Genealogy from_labels(std::vector<Label> labels);

  // Deterministic serialization: height line, then one space-separated
  // parent-index line per generation.
  std::string serialize() const;

  bool operator==(const Genealogy& other) const = default;

 private:
  std::vector<std::vector<std::uint32_t>> parents_;
};

// t |_u s: concatenation at position u.  When u is absent the tree is
// returned unchanged; when u is an internal node the attached first-level
// subtrees are renumbered after u's existing children.
Genealogy concat(const Genealogy& t, const Label& u, const Genealogy& s);

// One distinguished leaf-to-root line.  end_gen == tree height means the
// spine is alive at the top; an earlier end_gen marks a line whose carrier
// died there (the graveyard state of the P-measure construction).
struct Spine {
  int end_gen = 0;
  int end_index = 0;

  bool operator==(const Spine& other) const = default;
};

// A genealogy plus k spines with per-node mark counts.
class SpinedTree {
 public:
  SpinedTree() = default;
  SpinedTree(Genealogy tree, std::vector<Spine> spines);

  const Genealogy& tree() const { return tree_; }
  const std::vector<Spine>& spines() const { return spines_; }
  int k() const { return static_cast<int>(spines_.size()); }

  // |M_u|: number of spines whose line passes through u.
  int marks(const Label& u) const;
  int marks_at(int gen, int idx) const;

  // Number of distinct marked particles per generation 0..height.
  std::vector<int> marked_count_by_generation() const;

  // Membership in the set of trees whose k spines are distinct leaves at
  // height n.
  bool all_spines_distinct_at(int n) const;

  SpinedTree restricted(int m) const;
  std::optional<SpinedTree> subtree(const Label& u) const;

  std::string serialize() const;

  bool operator==(const SpinedTree& other) const = default;

 private:
  Genealogy tree_;
  std::vector<Spine> spines_;
};

// Concatenation of spined trees at a leaf u carrying exactly s.k() marks;
// the j-th mark at u continues along the j-th spine of s.  Attaching at an
// unmarked internal node concatenates the plain trees and leaves spines
// untouched; attaching at a marked internal node throws
// InvalidConcatenationError, as does a mark-count mismatch at a leaf.
SpinedTree concat(const SpinedTree& t, const Label& u, const SpinedTree& s);

}  // namespace gwve
