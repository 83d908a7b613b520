#include "lattice/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lattice/kernels.hpp"

namespace lattice {

KdTree::KdTree(const std::vector<double>& points, std::size_t n, std::size_t dim,
               std::size_t leaf_size)
    : n_(n), dim_(dim), leaf_size_(std::max<std::size_t>(4, leaf_size)), pts_(points) {
  if (points.size() != n * dim) throw std::invalid_argument("KdTree: size mismatch");
  if (n == 0) throw std::invalid_argument("KdTree: empty point set");
  order_.resize(n);
  for (std::size_t i = 0; i < n; ++i) order_[i] = i;
  nodes_.reserve(2 * n / leaf_size_ + 2);
  root_ = build(0, n, 0);
}

std::size_t KdTree::build(std::size_t begin, std::size_t end, int depth) {
  const std::size_t idx = nodes_.size();
  nodes_.emplace_back();
  if (end - begin <= leaf_size_) {
    Node& nd = nodes_[idx];
    nd.begin = begin;
    nd.end = end;
    nd.block = leaf_soa_.size();
    const std::size_t m = end - begin;
    leaf_soa_.resize(nd.block + dim_ * m);
    for (std::size_t d = 0; d < dim_; ++d)
      for (std::size_t i = 0; i < m; ++i)
        leaf_soa_[nd.block + d * m + i] = pts_[order_[begin + i] * dim_ + d];
    return idx;
  }
  // split along the widest axis at the median
  std::size_t axis = 0;
  double best_spread = -1.0;
  for (std::size_t d = 0; d < dim_; ++d) {
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = begin; i < end; ++i) {
      const double v = pts_[order_[i] * dim_ + d];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > best_spread) {
      best_spread = hi - lo;
      axis = d;
    }
  }
  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&](std::size_t a, std::size_t b) {
                     return pts_[a * dim_ + axis] < pts_[b * dim_ + axis];
                   });
  const double split = pts_[order_[mid] * dim_ + axis];
  const std::size_t left = build(begin, mid, depth + 1);
  const std::size_t right = build(mid, end, depth + 1);
  Node& nd = nodes_[idx];
  nd.axis = static_cast<int>(axis);
  nd.split = split;
  nd.left = left;
  nd.right = right;
  return idx;
}

namespace {

// fixed-size max-heap over squared distances
inline void heap_push(std::vector<double>& heap, double v, int k, double& worst) {
  if (static_cast<int>(heap.size()) < k) {
    heap.push_back(v);
    std::push_heap(heap.begin(), heap.end());
  } else if (v < heap.front()) {
    std::pop_heap(heap.begin(), heap.end());
    heap.back() = v;
    std::push_heap(heap.begin(), heap.end());
  }
  worst = static_cast<int>(heap.size()) < k ? 1e300 : heap.front();
}

}  // namespace

void KdTree::search(std::size_t node, const double* query, int k,
                    std::size_t exclude, std::vector<double>& heap,
                    double& worst) const {
  const Node& nd = nodes_[node];
  if (nd.axis < 0) {
    const std::size_t m = nd.end - nd.begin;
    thread_local std::vector<double> d2;
    d2.resize(m);
    kernels().sqdist_block(d2.data(), query, leaf_soa_.data() + nd.block, dim_, m);
    for (std::size_t i = 0; i < m; ++i) {
      if (order_[nd.begin + i] == exclude) continue;
      if (d2[i] < worst) heap_push(heap, d2[i], k, worst);
    }
    return;
  }
  const double delta = query[nd.axis] - nd.split;
  const std::size_t near = delta <= 0 ? nd.left : nd.right;
  const std::size_t far = delta <= 0 ? nd.right : nd.left;
  search(near, query, k, exclude, heap, worst);
  if (delta * delta < worst) search(far, query, k, exclude, heap, worst);
}

void KdTree::knn(const double* query, int k, std::size_t exclude,
                 std::vector<double>& out_d2) const {
  if (k < 1) throw std::invalid_argument("KdTree::knn: k must be >= 1");
  std::vector<double> heap;
  heap.reserve(k);
  double worst = 1e300;
  search(root_, query, k, exclude, heap, worst);
  std::sort_heap(heap.begin(), heap.end());
  out_d2 = std::move(heap);
}

}  // namespace lattice
