#pragma once

#include <json.hpp>

#include "ccb/graph.hpp"

namespace ccb {

// Branching taxonomy for standard geodesics and standard flats of A_Gamma,
// read off the defining graph. "Top-dimensional" always means maximum size
// (= clique number), which realizes the asymptotic rank.
//
// For a vertex v (a standard geodesic direction):
//   branching              v lies in a top clique and the intersection of
//                          all top cliques containing v is exactly {v}
//   branch-complemented    branching, plus some top clique K containing v
//                          whose face K\{v} is itself an intersection of
//                          top cliques
//   strongly bc            the intersection of all directionally-bc top
//                          cliques containing v is exactly {v}
// For a clique (a standard flat): directionally (strongly) bc means every
// member vertex is (strongly) branch-complemented.

struct VertexFlags {
  bool branching = false;
  bool branch_complemented = false;
  bool strongly_branch_complemented = false;
  bool in_some_top_clique = false;
};

struct CliqueFlags {
  Clique clique;
  bool top_dimensional = false;
  bool directionally_bc = false;
  bool directionally_strongly_bc = false;
};

struct BranchReport {
  int rank = 0;
  std::vector<VertexFlags> per_vertex;   // indexed like g.vertices()
  std::vector<CliqueFlags> per_clique;   // one entry per maximal clique

  nlohmann::ordered_json to_json(const DefiningGraph& g) const;
  std::string to_text(const DefiningGraph& g) const;
};

bool is_branching(const DefiningGraph& g, int v);
bool is_branch_complemented(const DefiningGraph& g, int v);
bool is_strongly_bc(const DefiningGraph& g, int v);

/// Throws DomainError if c is not a clique of g (any size >= 1).
bool is_directionally_bc(const DefiningGraph& g, const Clique& c);
bool is_directionally_strongly_bc(const DefiningGraph& g, const Clique& c);

/// Total report over all vertices and all maximal cliques.
/// Throws DomainError on the empty graph.
BranchReport classify_all(const DefiningGraph& g);

/// Independent degree-based criterion, valid only on triangle-free graphs:
/// branching iff deg(v) >= 2, branch-complemented iff additionally some
/// neighbour has degree >= 2. Throws DomainError if g has a triangle.
struct TriangleFreeFlags {
  bool branching = false;
  bool branch_complemented = false;
};
TriangleFreeFlags triangle_free_oracle(const DefiningGraph& g, int v);

} // namespace ccb
