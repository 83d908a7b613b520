// Lattice model: geometry-free description of the interaction family, plus
// the interaction-graph distance gamma and box boundary machinery.
#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "lattice/geometry.hpp"
#include "lattice/potential.hpp"

namespace lattice {

struct SpaceSpec {
  enum class Kind { Euclidean, Torus };
  Kind kind = Kind::Euclidean;
  double period = 6.283185307179586476925286766559;  // per coordinate (torus)
};

// Canonical form: offsets sorted lexicographically with the minimum at 0.
struct InteractionTerm {
  std::vector<Site> offsets;
  BodySpec body;
  int arity() const { return static_cast<int>(offsets.size()); }
};

constexpr int kGammaInfinite = std::numeric_limits<int>::max();

class LatticeModel {
 public:
  LatticeModel(int nu, int site_dim, SpaceSpec space, PotentialSpec onsite,
               std::vector<InteractionTerm> terms, int range,
               std::string name = "model");

  int nu() const { return nu_; }
  int site_dim() const { return site_dim_; }
  const SpaceSpec& space() const { return space_; }
  const PotentialSpec& onsite() const { return onsite_; }
  const std::vector<InteractionTerm>& terms() const { return terms_; }
  int range() const { return range_; }
  const std::string& name() const { return name_; }
  const std::string& hash() const { return hash_; }

  // Offsets delta != 0 with gamma(i, i + delta) <= 1.
  const std::vector<Site>& neighbor_offsets() const { return neighbor_offsets_; }

  // Interaction-graph distance; kGammaInfinite when not connected within the
  // exploration cap (the graph is infinite, so "disconnected" is certified
  // only up to the cap).
  int gamma(const Site& i, const Site& j, int cap = 64) const;
  // gamma(i, complement of the box), for every box site. 0 never occurs;
  // kGammaInfinite for models with no interaction terms.
  std::vector<int> gamma_to_complement(const BoxGeometry& geom) const;
  // Sites of the box at gamma distance exactly 1 from the complement.
  std::vector<std::size_t> interior_boundary(const BoxGeometry& geom) const;

  std::string canonical_description() const;

 private:
  int nu_;
  int site_dim_;
  SpaceSpec space_;
  PotentialSpec onsite_;
  std::vector<InteractionTerm> terms_;
  int range_;
  std::string name_;
  std::string hash_;
  std::vector<Site> neighbor_offsets_;
};

// A term instantiated on box sites (all member sites inside the box).
struct BoundTerm {
  const InteractionTerm* term;
  std::vector<std::size_t> sites;  // flat ids, ordered like term->offsets
};

// All translates of all terms fully contained in the box (the severed family).
std::vector<BoundTerm> bind_terms(const LatticeModel& model, const BoxGeometry& geom);

// For each box site, indices into the bound-term list of terms containing it.
std::vector<std::vector<std::size_t>> terms_by_site(
    const std::vector<BoundTerm>& bound, std::size_t n_sites);

// Model file IO (JSON). The loader canonicalizes terms and validates ranges.
LatticeModel load_model_json(const std::string& text);
LatticeModel load_model_file(const std::string& path);
std::string model_to_json(const LatticeModel& model);

// Reference models used across experiments and tests.
LatticeModel make_harmonic_chain();
LatticeModel make_fpu_chain();
LatticeModel make_quartic_2d();
LatticeModel make_rotator_chain();

std::uint64_t fnv1a64(const std::string& s);

}  // namespace lattice
