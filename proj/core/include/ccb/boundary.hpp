#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccb/branching.hpp"
#include "ccb/words.hpp"

namespace ccb {

struct BoundaryLimits {
  WordLimits words;
  std::size_t max_fragment_vertices = 100000;
  std::size_t clique_audit_max = 100;  // fragment size up to which the
                                       // clique-number bound is re-checked
};

/// Computed lower-bound fragment of the strongly branch-complemented
/// boundary graph of A_Gamma. Vertices are conjugates v^g of strongly
/// branch-complemented generators with canonical conjugator length at most
/// the radius (boundary points come in +-ray pairs; the sign is collapsed).
/// Edges join commuting conjugates whose bases are adjacent in Gamma.
/// Completeness is not claimed; every vertex and edge genuinely belongs.
class BoundaryFragment {
public:
  static BoundaryFragment build(const DefiningGraph& g, int radius,
                                const BoundaryLimits& limits = {});

  const DefiningGraph& graph() const { return graph_; }
  int radius() const { return radius_; }
  std::size_t size() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<ConjugateGenerator>& boundary_vertices() const {
    return vertices_;
  }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// "base@conjugator" with an epsilon sign for the empty conjugator.
  std::string label(int v) const;

  /// The fragment as a plain graph, suitable for every graph-core
  /// operation (odd cycles, chromatic number, embeddings).
  DefiningGraph to_defining_graph() const;

  nlohmann::ordered_json to_json() const;

private:
  DefiningGraph graph_;
  int radius_ = 0;
  std::vector<ConjugateGenerator> vertices_;  // sorted
  std::vector<std::pair<int, int>> edges_;    // sorted index pairs
};

/// Vertices of Gamma whose standard geodesics are strongly
/// branch-complemented, as sorted indices.
std::vector<int> sbc_vertex_bases(const DefiningGraph& g);

/// A symbolic embedding target: either the complete n-partite graph with
/// unbounded parts (the singular boundary of a product of n rank-one
/// factors) or an explicit finite graph.
struct TargetDescriptor {
  enum class Kind { complete_multipartite, finite_graph };
  Kind kind = Kind::complete_multipartite;
  int parts = 1;
  std::optional<DefiningGraph> graph;

  static TargetDescriptor multipartite(int n);
  static TargetDescriptor finite(DefiningGraph g);
  /// "multipartite:N" or a graph file's contents.
  static TargetDescriptor parse_spec(const std::string& spec);

  std::string describe() const;
};

} // namespace ccb
