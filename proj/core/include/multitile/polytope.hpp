#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "multitile/scalar.hpp"

namespace multitile {

// The closed half-space <normal, x> <= offset.
struct Facet {
  Vec normal;
  Scalar offset;

  friend bool operator==(const Facet&, const Facet&) = default;
};

/**
 * A bounded, full-dimensional convex polytope in H-representation.
 *
 * Construction normalises every facet (first nonzero normal entry scaled to
 * +-1 by a positive factor), drops duplicates, and rejects unbounded or
 * lower-dimensional inputs. The bounding box and an interior point are
 * computed once by exact linear programming.
 */
class Polytope {
 public:
  static Polytope from_facets(std::vector<Facet> facets);

  // Convex hull of the given points. Supported for d <= 2, and for
  // axis-aligned boxes in any dimension; otherwise DimensionUnsupported.
  static Polytope from_vertices(const std::vector<Vec>& vertices);

  // Axis-aligned box [lo, hi].
  static Polytope box(const Vec& lo, const Vec& hi);

  std::size_t dimension() const { return data_->dimension; }
  const std::vector<Facet>& facets() const { return data_->facets; }
  const std::optional<std::vector<Vec>>& vertices() const { return data_->vertices; }
  const Vec& box_lo() const { return data_->lo; }
  const Vec& box_hi() const { return data_->hi; }
  const Vec& interior_point() const { return data_->interior; }

  bool contains_closed(const Vec& v) const;
  bool contains_interior(const Vec& v) const;

  // P + t
  Polytope translated(const Vec& t) const;

  // Same facet set, in any order.
  friend bool operator==(const Polytope& a, const Polytope& b) {
    if (a.data_ == b.data_) return true;
    if (a.facets().size() != b.facets().size()) return false;
    for (const Facet& f : a.facets()) {
      if (std::find(b.facets().begin(), b.facets().end(), f) == b.facets().end()) return false;
    }
    return true;
  }

 private:
  struct Data {
    std::size_t dimension = 0;
    std::vector<Facet> facets;
    std::optional<std::vector<Vec>> vertices;
    Vec lo, hi, interior;
  };
  explicit Polytope(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static Polytope build(std::vector<Facet> facets, std::optional<std::vector<Vec>> vertices);

  std::shared_ptr<const Data> data_;
};

// An integer direction h with <n_i, h> != 0 for every facet normal n_i.
struct ProbeDirection {
  std::vector<std::int64_t> h;

  Vec as_vec() const;
  friend bool operator==(const ProbeDirection&, const ProbeDirection&) = default;
};

bool is_valid_probe(const Polytope& p, const ProbeDirection& probe);

// First integer vector, ordered by max-norm and then lexicographically
// descending, that is not orthogonal to any facet normal.
ProbeDirection find_probe_direction(const Polytope& p);

/**
 * The half-open counterpart of a polytope: interior points plus the boundary
 * points from which a short step along the probe enters the interior.
 */
class HalfOpenPolytope {
 public:
  HalfOpenPolytope(Polytope base, ProbeDirection probe);
  explicit HalfOpenPolytope(Polytope base);

  const Polytope& base() const { return base_; }
  const ProbeDirection& probe() const { return probe_; }
  // sign(<n_i, h>) for every facet, never zero.
  const std::vector<int>& probe_signs() const { return probe_signs_; }

  bool contains(const Vec& v) const;

 private:
  Polytope base_;
  ProbeDirection probe_;
  std::vector<int> probe_signs_;
};

}  // namespace multitile
