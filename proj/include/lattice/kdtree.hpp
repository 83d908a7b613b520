// Small k-d tree for k-nearest-neighbor queries in low dimension. Leaves keep
// their points transposed (dim rows of block width) so the squared-distance
// scan runs through the batch kernel.
#pragma once

#include <cstddef>
#include <vector>

namespace lattice {

class KdTree {
 public:
  // points: n x dim row-major; copied internally.
  KdTree(const std::vector<double>& points, std::size_t n, std::size_t dim,
         std::size_t leaf_size = 32);

  // Squared distances of the k nearest neighbors of `query`, ascending.
  // exclude: index of a point to skip (use the query's own index, or npos).
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  void knn(const double* query, int k, std::size_t exclude,
           std::vector<double>& out_d2) const;

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }

 private:
  struct Node {
    int axis = -1;           // -1 for leaves
    double split = 0.0;
    std::size_t left = 0, right = 0;    // children (internal)
    std::size_t begin = 0, end = 0;     // leaf range into order_
    std::size_t block = 0;              // leaf SoA offset
  };

  std::size_t build(std::size_t begin, std::size_t end, int depth);
  void search(std::size_t node, const double* query, int k, std::size_t exclude,
              std::vector<double>& heap, double& worst) const;

  std::size_t n_, dim_, leaf_size_;
  std::vector<double> pts_;             // original row-major copy
  std::vector<std::size_t> order_;      // permutation into pts_
  std::vector<Node> nodes_;
  std::vector<double> leaf_soa_;        // transposed leaf blocks
  std::size_t root_ = 0;
};

}  // namespace lattice
