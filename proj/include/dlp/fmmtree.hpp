#pragma once

#include "dlp/geometry.hpp"
#include "dlp/nystrom.hpp"
#include "dlp/types.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace dlp {

/// A box of the adaptive quadtree. Boxes at level l tile the root square in a
/// 2^l x 2^l grid addressed by integer coordinates (ix, iy).
struct Box {
  int level = 0;
  std::int64_t ix = 0;
  std::int64_t iy = 0;
  int parent = -1;
  std::array<int, 4> children{-1, -1, -1, -1};
  bool leaf = true;
  Point center;
  double half_width = 0.0;
  std::vector<int> points;  // every point in the subtree

  // Interaction lists (filled by build_lists).
  std::vector<int> colleagues;  // same-level adjacent boxes, self included
  std::vector<int> ulist;       // leaves only: adjacent leaves, self included
  std::vector<int> vlist;       // children of the parent's colleagues not adjacent to this box
  std::vector<int> wlist;       // leaves only: non-adjacent descendants of colleagues with adjacent parents
  std::vector<int> xlist;       // dual of wlist
};

class QuadTree {
 public:
  std::vector<Box> boxes;  // boxes[0] is the root; parents precede children
  std::vector<Point> points;
  std::vector<int> leaf_of_point;
  int leaf_capacity = 0;
  bool lists_built = false;

  int size() const { return static_cast<int>(boxes.size()); }
  int num_points() const { return static_cast<int>(points.size()); }
  int depth() const;  // number of levels, root counted
  std::vector<int> leaves() const;
  /// Closed boxes touch or overlap.
  bool adjacent(int a, int b) const;
  /// Ancestor of `box` that is `generations` levels up.
  int ancestor(int box, int generations) const;
};

/// Adaptive quadtree with at most `s` points per leaf. Empty children are not created.
QuadTree build_tree(const std::vector<Point>& points, int s);
void build_lists(QuadTree& tree);
/// build_tree followed by build_lists on the grid's points.
QuadTree build_fmm_tree(const BoundaryGrid& grid, int s);

std::vector<Point> grid_points(const BoundaryGrid& grid);

enum class ListKind { U, V, W, X };

/// Interaction class of a (target leaf, source box) pair: 0 for the U-list,
/// 1 for the leaf's own V, W and X lists, and d + 1 for the V and X lists of
/// the ancestor d generations above the leaf.
struct Interaction {
  int target_leaf;
  int source_box;
  int interaction_class;
  ListKind kind;
};

/// Visit every interaction. For each target point, the sources of all visited
/// pairs partition the point set.
void for_each_interaction(const QuadTree& tree, const std::function<void(const Interaction&)>& visit);

/// Largest interaction class present in the tree.
int max_interaction_class(const QuadTree& tree);

/// D_0: entries of D_N with target in leaf b and source in T(U(b)).
SparseMatrix near_matrix(const QuadTree& tree, const DenseOperator& op);

/// Leaf self-interactions only (block diagonal after permutation).
SparseMatrix leaf_block_matrix(const QuadTree& tree, const DenseOperator& op);

/// Exact entries of D_N for one interaction class, restricted to the given list kinds.
SparseMatrix class_matrix(const QuadTree& tree, const DenseOperator& op, int interaction_class,
                          std::initializer_list<ListKind> kinds = {ListKind::V, ListKind::W, ListKind::X});

/// Low-rank factor of one interaction class: D_l ~ left * right^T + exact, where
/// right^T maps a density to p complex multipole moments per source box (real and
/// imaginary parts unpacked) and left evaluates those expansions at the targets.
/// W- and X-list blocks of the class are kept exact in `exact`.
struct LevelFactor {
  int interaction_class = 1;
  int moments = 4;
  Matrix left;   // N x m
  Matrix right;  // N x m
  SparseMatrix exact;
  std::vector<int> source_boxes;  // one 2p-column group per box
  std::vector<int> column_of_box;  // first column of each box's group, -1 if none
  std::vector<std::pair<int, int>> blocks;  // compressed (target leaf, source box) pairs

  int columns() const { return static_cast<int>(left.cols()); }
  Vector apply(const Vector& v) const;
  /// Dense N x N matrix left * right^T + exact.
  Matrix dense() const;
  /// out += left * right^T + exact, touching only the interacting blocks.
  void add_to(const QuadTree& tree, Matrix& out) const;
};

LevelFactor compress_level(const QuadTree& tree, const BoundaryGrid& grid, int interaction_class, int p);

/// One box per line: `level,cx,cy,halfwidth,npoints,is_leaf`.
void write_tree(std::ostream& os, const QuadTree& tree);

}  // namespace dlp
