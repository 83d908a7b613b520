#include "lattice/observable.hpp"

#include <cmath>
#include <stdexcept>

namespace lattice {

double LocalWindow::q(const Site& offset, int c) const {
  const auto idx = ens_->geom().index_of(add(ens_->geom().site(center_), offset));
  if (!idx) throw std::out_of_range("LocalWindow: offset leaves the box");
  return ens_->q_row(*idx * ens_->site_dim() + c)[sample_];
}

double LocalWindow::p(const Site& offset, int c) const {
  const auto idx = ens_->geom().index_of(add(ens_->geom().site(center_), offset));
  if (!idx) throw std::out_of_range("LocalWindow: offset leaves the box");
  return ens_->p_row(*idx * ens_->site_dim() + c)[sample_];
}

std::vector<Observable> default_observable_panel(int nu) {
  Site e1(nu, 0);
  e1[0] = 1;
  std::vector<Observable> panel;
  auto push = [&](std::string name, int radius,
                  std::function<double(const LocalWindow&)> f) {
    panel.push_back({std::move(name), radius, 1.0, std::move(f)});
  };
  push("tanh_q0", 0, [](const LocalWindow& w) { return std::tanh(w.q0()); });
  push("tanh_p0", 0, [](const LocalWindow& w) { return std::tanh(w.p0()); });
  push("cos_q0", 0, [](const LocalWindow& w) { return std::cos(w.q0()); });
  push("sin_p0", 0, [](const LocalWindow& w) { return std::sin(w.p0()); });
  push("tanh_q0q0", 0, [](const LocalWindow& w) { return std::tanh(w.q0() * w.q0()); });
  push("tanh_p0p0", 0, [](const LocalWindow& w) { return std::tanh(w.p0() * w.p0()); });
  push("tanh_q0p0", 0, [](const LocalWindow& w) { return std::tanh(w.q0() * w.p0()); });
  push("tanh_q0q1", 1, [e1](const LocalWindow& w) { return std::tanh(w.q0() * w.q(e1)); });
  push("tanh_p0p1", 1, [e1](const LocalWindow& w) { return std::tanh(w.p0() * w.p(e1)); });
  push("tanh_dq", 1, [e1](const LocalWindow& w) { return std::tanh(w.q0() - w.q(e1)); });
  return panel;
}

}  // namespace lattice
