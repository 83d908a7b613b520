// Boxes Lambda(a) = (-a, a]^nu and site indexing.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace lattice {

using Site = std::vector<int>;  // nu integer coordinates

class BoxGeometry {
 public:
  BoxGeometry(int nu, int a);

  int nu() const { return nu_; }
  int scale() const { return a_; }
  std::size_t n_sites() const { return sites_.size(); }

  const std::vector<Site>& sites() const { return sites_; }  // lexicographic
  const Site& site(std::size_t flat) const { return sites_[flat]; }

  bool contains(const Site& s) const;
  // flat index, or nullopt when outside the box
  std::optional<std::size_t> index_of(const Site& s) const;

  // sup-norm distance from a site to the geometric box edge (0 on the edge)
  int linf_to_edge(const Site& s) const;

 private:
  int nu_;
  int a_;
  std::vector<Site> sites_;
};

int linf_norm(const Site& s);
int l1_norm(const Site& s);
Site sub(const Site& a, const Site& b);
Site add(const Site& a, const Site& b);

}  // namespace lattice
