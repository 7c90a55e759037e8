#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ccb/errors.hpp"

namespace ccb {

/// A finite simple graph with named vertices. Vertices are stored in sorted
/// name order, and every operation on it is deterministic in that order.
/// This is the defining graph Gamma of the right-angled Artin group A_Gamma:
/// one generator per vertex, commutation relations exactly on the edges.
class DefiningGraph {
public:
  DefiningGraph() = default;

  /// Builds a graph from explicit vertex and edge name lists.
  /// Throws ParseError on duplicate vertex names, self-loops, or edges with
  /// undeclared endpoints. Duplicate edges are collapsed.
  static DefiningGraph from_vertices_edges(
      std::vector<std::string> vertices,
      const std::vector<std::pair<std::string, std::string>>& edges);

  /// Parses either format, sniffing for a leading '{' to pick JSON.
  static DefiningGraph parse(std::string_view source);

  /// Edge-list text: one "u v" per line, '#' comments, blank lines ignored,
  /// isolated vertices via "vertex u" lines.
  static DefiningGraph parse_edge_list(std::string_view source);

  /// Structured object {"vertices": [names], "edges": [[u,v], ...]}.
  static DefiningGraph from_json(const nlohmann::json& j);

  std::size_t size() const { return names_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<std::string>& vertices() const { return names_; }
  const std::string& name(int v) const { return names_.at(v); }

  /// Index of a vertex name, or -1 if absent.
  int find(std::string_view name) const;
  /// Index of a vertex name; throws DomainError if absent.
  int index_of(std::string_view name) const;

  bool adjacent(int u, int v) const { return adj_[u][v]; }
  int degree(int v) const { return static_cast<int>(neighbors_[v].size()); }
  const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }

  bool is_clique(const std::vector<int>& members) const;
  bool has_triangle() const;

  /// Lossless round-trip text form: sorted "vertex u" lines for isolated
  /// vertices followed by sorted "u v" lines.
  std::string to_edge_list() const;
  nlohmann::ordered_json to_json() const;

  bool operator==(const DefiningGraph& other) const = default;

private:
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> adj_;
  std::vector<std::vector<int>> neighbors_;
  std::size_t edge_count_ = 0;
};

/// A set of pairwise-adjacent vertices, kept sorted by vertex index.
struct Clique {
  std::vector<int> members;

  bool operator==(const Clique&) const = default;
  auto operator<=>(const Clique&) const = default;
};

/// All inclusion-maximal cliques, each sorted, the list sorted
/// lexicographically. Their union covers every vertex.
std::vector<Clique> maximal_cliques(const DefiningGraph& g);

/// Size of a maximum clique. Throws DomainError on the empty graph.
/// For the RAAG A_Gamma this equals the asymptotic rank of the universal
/// cover of the Salvetti complex (largest n with boxes [0,m]^n for all m).
int clique_number(const DefiningGraph& g);

/// Exact chromatic number by branch and bound (clique lower bound, greedy
/// upper bound). Throws ResourceLimitError when the graph has more than
/// max_exact_vertices vertices.
int chromatic_number(const DefiningGraph& g, int max_exact_vertices = 20);

/// Clique lower bound and greedy upper bound, with no size limit.
std::pair<int, int> chromatic_bounds(const DefiningGraph& g);

/// True iff g admits a proper coloring with at most k colors.
bool is_k_colorable(const DefiningGraph& g, int k);

/// A shortest odd cycle as a vertex index list (canonical rotation), or
/// nullopt if the graph is bipartite.
std::optional<std::vector<int>> shortest_odd_cycle(const DefiningGraph& g);

/// An injective map h -> t sending edges to edges (not necessarily induced),
/// as a vector indexed by h-vertices, or nullopt if none exists.
/// Backtracking with degree pruning; first solution in sorted order.
std::optional<std::vector<int>> injective_embedding(const DefiningGraph& h,
                                                    const DefiningGraph& t);

} // namespace ccb
