#include "dlp/fmmtree.hpp"

#include <algorithm>
#include <complex>
#include <deque>
#include <limits>
#include <ostream>

namespace dlp {

namespace {

constexpr int kMaxLevel = 52;

struct Interval {
  std::int64_t lo, hi;
};

// Closed integer extent of a box on the finer of two levels.
Interval extent(std::int64_t i, int level, int target_level) {
  const std::int64_t scale = std::int64_t{1} << (target_level - level);
  return {i * scale, (i + 1) * scale};
}

}  // namespace

int QuadTree::depth() const {
  int d = 0;
  for (const auto& b : boxes) d = std::max(d, b.level + 1);
  return d;
}

std::vector<int> QuadTree::leaves() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (boxes[i].leaf) out.push_back(i);
  return out;
}

bool QuadTree::adjacent(int a, int b) const {
  const Box& A = boxes[a];
  const Box& B = boxes[b];
  const int level = std::max(A.level, B.level);
  const Interval ax = extent(A.ix, A.level, level), bx = extent(B.ix, B.level, level);
  const Interval ay = extent(A.iy, A.level, level), by = extent(B.iy, B.level, level);
  return ax.lo <= bx.hi && bx.lo <= ax.hi && ay.lo <= by.hi && by.lo <= ay.hi;
}

int QuadTree::ancestor(int box, int generations) const {
  for (int g = 0; g < generations && box >= 0; ++g) box = boxes[box].parent;
  return box;
}

QuadTree build_tree(const std::vector<Point>& points, int s) {
  if (points.empty()) throw ConfigError("build_tree: no points");
  if (s < 1) throw ConfigError("build_tree: leaf capacity must be >= 1");

  QuadTree tree;
  tree.points = points;
  tree.leaf_capacity = s;
  tree.leaf_of_point.assign(points.size(), -1);

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& p : points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double side = std::max(xmax - xmin, ymax - ymin);
  double half = 0.5 * side * (1.0 + 1e-6);
  if (half == 0.0) half = 1.0;
  const Point origin{0.5 * (xmin + xmax) - half, 0.5 * (ymin + ymax) - half};

  Box root;
  root.center = {origin.x + half, origin.y + half};
  root.half_width = half;
  root.points.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) root.points[i] = static_cast<int>(i);
  tree.boxes.push_back(std::move(root));

  // Breadth-first so that parents precede children and levels are sorted.
  for (int b = 0; b < tree.size(); ++b) {
    if (static_cast<int>(tree.boxes[b].points.size()) <= s) continue;
    if (tree.boxes[b].level >= kMaxLevel)
      throw ConfigError("build_tree: box with " + std::to_string(tree.boxes[b].points.size()) +
                        " coincident points cannot be split below capacity " + std::to_string(s));
    const Box parent = tree.boxes[b];
    std::array<std::vector<int>, 4> quads;
    for (int idx : parent.points) {
      const Point& p = points[idx];
      const int qx = p.x > parent.center.x ? 1 : 0;
      const int qy = p.y > parent.center.y ? 1 : 0;
      quads[qx + 2 * qy].push_back(idx);
    }
    tree.boxes[b].leaf = false;
    for (int q = 0; q < 4; ++q) {
      if (quads[q].empty()) continue;
      Box child;
      child.level = parent.level + 1;
      child.ix = 2 * parent.ix + (q & 1);
      child.iy = 2 * parent.iy + (q >> 1);
      child.parent = b;
      child.half_width = 0.5 * parent.half_width;
      child.center = {parent.center.x + ((q & 1) ? 0.5 : -0.5) * parent.half_width,
                      parent.center.y + ((q >> 1) ? 0.5 : -0.5) * parent.half_width};
      child.points = std::move(quads[q]);
      tree.boxes[b].children[q] = tree.size();
      tree.boxes.push_back(std::move(child));
    }
  }
  for (int b = 0; b < tree.size(); ++b)
    if (tree.boxes[b].leaf)
      for (int idx : tree.boxes[b].points) tree.leaf_of_point[idx] = b;
  return tree;
}

void build_lists(QuadTree& tree) {
  auto& boxes = tree.boxes;
  for (auto& b : boxes) {
    b.colleagues.clear();
    b.ulist.clear();
    b.vlist.clear();
    b.wlist.clear();
    b.xlist.clear();
  }
  boxes[0].colleagues = {0};
  for (int b = 1; b < tree.size(); ++b) {
    for (int c : boxes[boxes[b].parent].colleagues)
      for (int d : boxes[c].children)
        if (d >= 0 && tree.adjacent(b, d)) boxes[b].colleagues.push_back(d);
  }

  for (int b = 1; b < tree.size(); ++b) {
    for (int c : boxes[boxes[b].parent].colleagues)
      for (int d : boxes[c].children)
        if (d >= 0 && !tree.adjacent(b, d)) boxes[b].vlist.push_back(d);
  }

  for (int b : tree.leaves()) {
    // U: every leaf touching b, found by descending through adjacent boxes.
    std::vector<int> stack{0};
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      if (!tree.adjacent(b, c)) continue;
      if (boxes[c].leaf) {
        boxes[b].ulist.push_back(c);
      } else {
        for (int d : boxes[c].children)
          if (d >= 0) stack.push_back(d);
      }
    }
    std::sort(boxes[b].ulist.begin(), boxes[b].ulist.end());

    // W: maximal descendants of colleagues that do not touch b.
    for (int c : boxes[b].colleagues) {
      if (c == b || boxes[c].leaf) continue;
      std::vector<int> pending{c};
      while (!pending.empty()) {
        const int e = pending.back();
        pending.pop_back();
        for (int d : boxes[e].children) {
          if (d < 0) continue;
          if (!tree.adjacent(b, d))
            boxes[b].wlist.push_back(d);
          else if (!boxes[d].leaf)
            pending.push_back(d);
        }
      }
    }
    std::sort(boxes[b].wlist.begin(), boxes[b].wlist.end());
  }
  for (int b : tree.leaves())
    for (int w : boxes[b].wlist) boxes[w].xlist.push_back(b);
  for (auto& b : boxes) std::sort(b.xlist.begin(), b.xlist.end());
  tree.lists_built = true;
}

std::vector<Point> grid_points(const BoundaryGrid& grid) {
  std::vector<Point> pts(grid.size());
  for (int j = 0; j < grid.size(); ++j) pts[j] = grid.point(j);
  return pts;
}

QuadTree build_fmm_tree(const BoundaryGrid& grid, int s) {
  QuadTree tree = build_tree(grid_points(grid), s);
  build_lists(tree);
  return tree;
}

void for_each_interaction(const QuadTree& tree, const std::function<void(const Interaction&)>& visit) {
  if (!tree.lists_built) throw ConfigError("interaction lists not built");
  for (int b : tree.leaves()) {
    const Box& leaf = tree.boxes[b];
    for (int u : leaf.ulist) visit({b, u, 0, ListKind::U});
    for (int w : leaf.wlist) visit({b, w, 1, ListKind::W});
    int a = b;
    for (int d = 0; a > 0; ++d, a = tree.boxes[a].parent) {
      for (int v : tree.boxes[a].vlist) visit({b, v, d + 1, ListKind::V});
      for (int x : tree.boxes[a].xlist) visit({b, x, d + 1, ListKind::X});
    }
  }
}

int max_interaction_class(const QuadTree& tree) {
  int m = 0;
  for_each_interaction(tree, [&](const Interaction& it) { m = std::max(m, it.interaction_class); });
  return m;
}

namespace {

SparseMatrix gather(const QuadTree& tree, const DenseOperator& op,
                    const std::function<bool(const Interaction&)>& keep) {
  const int n = tree.num_points();
  if (op.size() != n) throw ConfigError("operator and tree sizes differ");
  std::vector<Triplet> trip;
  for_each_interaction(tree, [&](const Interaction& it) {
    if (!keep(it)) return;
    for (int t : tree.boxes[it.target_leaf].points)
      for (int k : tree.boxes[it.source_box].points) trip.emplace_back(t, k, op.matrix(t, k));
  });
  SparseMatrix m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

}  // namespace

SparseMatrix near_matrix(const QuadTree& tree, const DenseOperator& op) {
  return gather(tree, op, [](const Interaction& it) { return it.kind == ListKind::U; });
}

SparseMatrix leaf_block_matrix(const QuadTree& tree, const DenseOperator& op) {
  return gather(tree, op, [](const Interaction& it) {
    return it.kind == ListKind::U && it.source_box == it.target_leaf;
  });
}

SparseMatrix class_matrix(const QuadTree& tree, const DenseOperator& op, int interaction_class,
                          std::initializer_list<ListKind> kinds) {
  const std::vector<ListKind> ks(kinds);
  return gather(tree, op, [&](const Interaction& it) {
    return it.interaction_class == interaction_class && std::find(ks.begin(), ks.end(), it.kind) != ks.end();
  });
}

Vector LevelFactor::apply(const Vector& v) const {
  Vector out = exact * v;
  if (left.cols() > 0) out.noalias() += left * (right.transpose() * v);
  return out;
}

Matrix LevelFactor::dense() const {
  Matrix out = Matrix(exact);
  if (left.cols() > 0) out.noalias() += left * right.transpose();
  return out;
}

void LevelFactor::add_to(const QuadTree& tree, Matrix& out) const {
  for (int k = 0; k < exact.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(exact, k); it; ++it) out(it.row(), it.col()) += it.value();
  const int w = 2 * moments;
  for (const auto& [leaf, box] : blocks) {
    const int col = column_of_box[box];
    for (int t : tree.boxes[leaf].points)
      for (int k : tree.boxes[box].points) out(t, k) += left.row(t).segment(col, w).dot(right.row(k).segment(col, w));
  }
}

LevelFactor compress_level(const QuadTree& tree, const BoundaryGrid& grid, int interaction_class, int p) {
  if (p < 1) throw ConfigError("compress_level: need at least one moment");
  if (interaction_class < 1) throw ConfigError("compress_level: class 0 is the near field");
  const int n = grid.size();
  if (tree.num_points() != n) throw ConfigError("grid and tree sizes differ");

  LevelFactor f;
  f.interaction_class = interaction_class;
  f.moments = p;

  std::vector<Interaction> compressed;
  std::vector<Triplet> trip;
  std::vector<int> column_of(tree.size(), -1);
  for_each_interaction(tree, [&](const Interaction& it) {
    if (it.interaction_class != interaction_class) return;
    if (it.kind == ListKind::V) {
      if (column_of[it.source_box] < 0) {
        column_of[it.source_box] = static_cast<int>(f.source_boxes.size()) * 2 * p;
        f.source_boxes.push_back(it.source_box);
      }
      compressed.push_back(it);
      return;
    }
    for (int t : tree.boxes[it.target_leaf].points)
      for (int k : tree.boxes[it.source_box].points)
        trip.emplace_back(t, k, 2.0 * kernel(grid.point(t), grid.point(k), {grid.nx[k], grid.ny[k]}) * grid.weight(k));
  });
  f.exact.resize(n, n);
  f.exact.setFromTriplets(trip.begin(), trip.end());
  f.column_of_box = column_of;
  for (const auto& it : compressed) f.blocks.emplace_back(it.target_leaf, it.source_box);

  const int m = static_cast<int>(f.source_boxes.size()) * 2 * p;
  f.left = Matrix::Zero(n, m);
  f.right = Matrix::Zero(n, m);

  using cd = std::complex<double>;
  // Moments a_q = sum_k w_k n_k ((y_k - c)/rho)^q, q = 0..p-1.
  for (int box : f.source_boxes) {
    const Box& B = tree.boxes[box];
    const cd c(B.center.x, B.center.y);
    const double rho = B.half_width * std::sqrt(2.0);
    const int col = column_of[box];
    for (int k : B.points) {
      const cd z = (cd(grid.x[k], grid.y[k]) - c) / rho;
      cd term = grid.weight(k) * cd(grid.nx[k], grid.ny[k]);
      for (int q = 0; q < p; ++q) {
        f.right(k, col + 2 * q) = term.real();
        f.right(k, col + 2 * q + 1) = term.imag();
        term *= z;
      }
    }
  }
  // Entry 2 K w = -(1/pi) Re[w n / (x - y)] and 1/(x - y) = sum_q rho^q (y-c)^q/rho^q / (x-c)^(q+1).
  for (const auto& it : compressed) {
    const Box& B = tree.boxes[it.source_box];
    const cd c(B.center.x, B.center.y);
    const double rho = B.half_width * std::sqrt(2.0);
    const int col = column_of[it.source_box];
    for (int t : tree.boxes[it.target_leaf].points) {
      const cd r = rho / (cd(grid.x[t], grid.y[t]) - c);
      cd b = r / rho;
      for (int q = 0; q < p; ++q) {
        f.left(t, col + 2 * q) += -b.real() / kPi;
        f.left(t, col + 2 * q + 1) += b.imag() / kPi;
        b *= r;
      }
    }
  }
  return f;
}

void write_tree(std::ostream& os, const QuadTree& tree) {
  os << "level,cx,cy,halfwidth,npoints,is_leaf\n";
  os.precision(17);
  for (const auto& b : tree.boxes)
    os << b.level << ',' << b.center.x << ',' << b.center.y << ',' << b.half_width << ',' << b.points.size() << ','
       << (b.leaf ? 1 : 0) << '\n';
}

}  // namespace dlp
