#include "lattice/geometry.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace lattice {

BoxGeometry::BoxGeometry(int nu, int a) : nu_(nu), a_(a) {
  if (nu < 1 || nu > 4) throw std::invalid_argument("BoxGeometry: nu out of range");
  if (a < 1) throw std::invalid_argument("BoxGeometry: scale a must be >= 1");
  const std::size_t side = 2 * static_cast<std::size_t>(a);
  std::size_t total = 1;
  for (int d = 0; d < nu; ++d) total *= side;
  sites_.reserve(total);
  Site s(nu, -a + 1);
  for (std::size_t k = 0; k < total; ++k) {
    sites_.push_back(s);
    for (int d = nu - 1; d >= 0; --d) {
      if (s[d] < a) {
        ++s[d];
        break;
      }
      s[d] = -a + 1;
    }
  }
}

bool BoxGeometry::contains(const Site& s) const {
  if (static_cast<int>(s.size()) != nu_) return false;
  for (int d = 0; d < nu_; ++d)
    if (s[d] <= -a_ || s[d] > a_) return false;
  return true;
}

std::optional<std::size_t> BoxGeometry::index_of(const Site& s) const {
  if (!contains(s)) return std::nullopt;
  std::size_t idx = 0;
  const std::size_t side = 2 * static_cast<std::size_t>(a_);
  for (int d = 0; d < nu_; ++d) idx = idx * side + static_cast<std::size_t>(s[d] + a_ - 1);
  return idx;
}

int BoxGeometry::linf_to_edge(const Site& s) const {
  int m = 1 << 30;
  for (int d = 0; d < nu_; ++d) {
    m = std::min(m, s[d] - (-a_ + 1));
    m = std::min(m, a_ - s[d]);
  }
  return m;
}

int linf_norm(const Site& s) {
  int m = 0;
  for (int v : s) m = std::max(m, std::abs(v));
  return m;
}

int l1_norm(const Site& s) {
  int m = 0;
  for (int v : s) m += std::abs(v);
  return m;
}

Site sub(const Site& a, const Site& b) {
  Site r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Site add(const Site& a, const Site& b) {
  Site r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

}  // namespace lattice
