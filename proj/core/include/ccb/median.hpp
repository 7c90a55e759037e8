#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccb/words.hpp"

namespace ccb {

struct FragmentLimits {
  int max_radius = 6;
  std::size_t max_vertices = 200000;
  std::size_t distance_cache_max = 3000;
};

/// One hyperplane of a fragment: a class of edges under the square relation
/// (opposite edges of a 4-cycle identified, transitively). Removing the
/// class disconnects the fragment into the two stored halfspaces.
struct Hyperplane {
  int id = 0;
  std::vector<std::pair<int, int>> dual_edges;
  std::vector<int> halfspace_minus;  // side 0
  std::vector<int> halfspace_plus;   // side 1
};

struct MedianCheckReport {
  std::size_t vertices = 0;
  std::uint64_t triples_checked = 0;
  std::uint64_t failures = 0;
  bool sampled = false;
  std::string method;

  bool passed() const { return failures == 0; }
};

struct HellyResult {
  bool pairwise_intersecting = false;
  std::optional<int> witness;  // common vertex when pairwise intersecting
};

/// A finite convex piece of the Cayley graph of A_Gamma: the convex hull of
/// the ball of normal forms of length <= radius about the identity. Vertices
/// are group elements, edges are right multiplications by a generator, the
/// graph metric agrees with the group metric, and every triple has a unique
/// median.
class MedianFragment {
public:
  /// Hull of the d1-ball of the given radius. The hull is carved out of the
  /// cube-move ball of the same radius (a convex superset) by intersecting
  /// all of its halfspaces containing the d1-ball. Build-time verification:
  /// hyperplanes two-sided, sampled distances match normal-form lengths.
  static MedianFragment build(const DefiningGraph& g, int radius,
                              const FragmentLimits& limits = {});

  /// Induced fragment on an arbitrary element set; no closure, no
  /// verification. Diagnostic substrate for verify_median_axioms.
  static MedianFragment induced(const DefiningGraph& g,
                                std::vector<NormalForm> elements);

  std::size_t size() const { return elements_.size(); }
  int radius() const { return radius_; }
  const DefiningGraph& graph() const { return graph_; }
  const std::vector<NormalForm>& elements() const { return elements_; }
  const NormalForm& element(int v) const { return elements_.at(v); }

  /// Index of a group element, or -1 when outside the fragment.
  int find(const NormalForm& nf) const;
  /// Index of a group element; throws DomainError when outside.
  int index_of(const NormalForm& nf) const;

  int degree(int v) const { return static_cast<int>(edges_[v].size()); }
  /// Sorted (letter, neighbour) pairs: v . letter = neighbour.
  const std::vector<std::pair<Letter, int>>& neighbors(int v) const {
    return edges_[v];
  }
  std::size_t edge_count() const { return edge_count_; }

  /// Graph distance; equals the distance in the full Cayley graph.
  int distance(int a, int b) const;
  /// BFS distances from a single source.
  std::vector<int> distances_from(int a) const;

  /// The unique point of I(a,b) & I(b,c) & I(a,c), by interval intersection.
  /// Throws InternalError if the intersection is not a single point.
  int median(int a, int b, int c) const;

  const std::vector<Hyperplane>& hyperplanes() const;
  bool hyperplanes_valid() const;
  /// Which side of hyperplane h vertex v lies on (0 or 1).
  int side(int h, int v) const;
  /// Number of hyperplanes separating a from b.
  int separation(int a, int b) const;

  /// True iff all four halfspace intersections are nonempty.
  bool crossing(int h1, int h2) const;

  /// Smallest median-closed superset of seeds, grown by interval joins;
  /// cross-checked against the intersection of all halfspaces containing
  /// the seeds. Throws InternalError on mismatch.
  std::vector<int> hull(const std::vector<int>& seeds) const;
  /// Halfspace-intersection route only (no cross-check).
  std::vector<int> hull_by_halfspaces(const std::vector<int>& seeds) const;
  /// Iterated-interval route only (no cross-check).
  std::vector<int> hull_by_medians(const std::vector<int>& seeds) const;

  bool is_geodesic(const std::vector<int>& path) const;
  /// True iff the hyperplanes dual to consecutive edges of the path are
  /// pairwise non-crossing. Throws DomainError if the path is not a
  /// geodesic of the fragment.
  bool is_singular_path(const std::vector<int>& path) const;

  /// Largest k such that some vertex is the corner of a combinatorial
  /// k-cube inside the fragment. Requires build radius >= 2.
  int max_cube_dim() const;

  /// For pairwise-intersecting convex sets reports a common vertex (Helly).
  /// Throws DomainError if some set is not convex, InternalError if a
  /// pairwise-intersecting family has empty total intersection.
  HellyResult helly_check(const std::vector<std::vector<int>>& family) const;

  /// Unique-median existence over all triples (all of them while the count
  /// stays within triple_budget, deterministic sampling beyond).
  MedianCheckReport verify_median_axioms(
      std::uint64_t triple_budget = 6'000'000'000ULL) const;

  nlohmann::ordered_json export_json() const;

private:
  MedianFragment(const DefiningGraph& g, int radius);
  void index_elements();
  void build_edges();
  void compute_hyperplanes(bool strict);
  void cache_distances(std::size_t cache_max);
  void compute_signatures();
  int median_by_distances(int a, int b, int c, bool* unique) const;
  bool between(int a, int m, int b) const;

  DefiningGraph graph_;
  int radius_ = -1;
  std::vector<NormalForm> elements_;  // sorted shortlex
  std::vector<std::vector<std::pair<Letter, int>>> edges_;
  std::size_t edge_count_ = 0;
  std::vector<Hyperplane> hyperplanes_;
  bool hyperplanes_valid_ = false;
  std::vector<std::vector<int>> sides_;       // per vertex, per hyperplane
  std::vector<std::vector<std::uint64_t>> signatures_;
  std::size_t signature_words_ = 0;
  std::vector<std::uint16_t> dist_cache_;     // row-major when enabled
  bool dist_cached_ = false;
};

} // namespace ccb
