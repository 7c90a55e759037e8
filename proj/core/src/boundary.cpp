#include "ccb/boundary.hpp"

#include <algorithm>

namespace ccb {

std::vector<int> sbc_vertex_bases(const DefiningGraph& g) {
  std::vector<int> out;
  if (g.size() == 0) return out;
  const auto report = classify_all(g);
  for (int v = 0; v < static_cast<int>(g.size()); ++v)
    if (report.per_vertex[v].strongly_branch_complemented) out.push_back(v);
  return out;
}

BoundaryFragment BoundaryFragment::build(const DefiningGraph& g, int radius,
                                         const BoundaryLimits& limits) {
  if (radius < 0) throw DomainError("radius must be non-negative");
  BoundaryFragment f;
  f.graph_ = g;
  f.radius_ = radius;

  const auto bases = sbc_vertex_bases(g);
  for (int base : bases) {
    const auto conjugates =
        enumerate_conjugates(g, base, radius, limits.words);
    for (const auto& c : conjugates) {
      f.vertices_.push_back(c);
      if (f.vertices_.size() > limits.max_fragment_vertices)
        throw ResourceLimitError("boundary fragment exceeds max vertices");
    }
  }
  std::sort(f.vertices_.begin(), f.vertices_.end());

  // Edge rule: distinct bases, adjacent in Gamma, commuting conjugates.
  std::vector<NormalForm> elements;
  for (const auto& v : f.vertices_)
    elements.push_back(normalize(g, v.element_word(),
                                 WordLimits{1 << 20, 6, 1u << 20}));
  const int n = static_cast<int>(f.vertices_.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& a = f.vertices_[i];
      const auto& b = f.vertices_[j];
      if (a.base == b.base) continue;
      if (!g.adjacent(a.base, b.base)) continue;
      if (!commutes(g, elements[i], elements[j])) continue;
      f.edges_.emplace_back(i, j);
    }
  }

  // Independent re-check of the full edge list, and the clique bound audit.
  for (const auto& [i, j] : f.edges_) {
    const auto& a = f.vertices_[i];
    const auto& b = f.vertices_[j];
    if (!g.adjacent(a.base, b.base) || !is_strongly_bc(g, a.base) ||
        !is_strongly_bc(g, b.base) ||
        !is_identity(g,
                     concat(concat(a.element_word(), b.element_word()),
                            concat(inverse(a.element_word()),
                                   inverse(b.element_word()))),
                     WordLimits{1 << 20, 6, 1u << 20}))
      throw InternalError("boundary fragment edge failed re-verification");
  }
  if (f.size() > 0 && f.size() <= limits.clique_audit_max) {
    const auto fragment_graph = f.to_defining_graph();
    if (clique_number(fragment_graph) > clique_number(g))
      throw InternalError(
          "boundary fragment clique number exceeds the rank of Gamma");
  }
  return f;
}

std::string BoundaryFragment::label(int v) const {
  const auto& c = vertices_.at(v);
  const std::string conj = c.conjugator.empty()
                               ? "\xce\xb5"
                               : c.conjugator.to_string(graph_);
  return graph_.name(c.base) + "@" + conj;
}

DefiningGraph BoundaryFragment::to_defining_graph() const {
  std::vector<std::string> names;
  for (int v = 0; v < static_cast<int>(size()); ++v)
    names.push_back(label(v));
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [i, j] : edges_) edges.emplace_back(label(i), label(j));
  return DefiningGraph::from_vertices_edges(std::move(names), edges);
}

nlohmann::ordered_json BoundaryFragment::to_json() const {
  nlohmann::ordered_json j;
  j["radius"] = radius_;
  auto& verts = j["vertices"] = nlohmann::ordered_json::array();
  for (int v = 0; v < static_cast<int>(size()); ++v)
    verts.push_back(label(v));
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [i, j2] : edges_)
    edges.push_back({label(i), label(j2)});
  return j;
}

TargetDescriptor TargetDescriptor::multipartite(int n) {
  if (n < 1) throw DomainError("multipartite target needs n >= 1");
  TargetDescriptor t;
  t.kind = Kind::complete_multipartite;
  t.parts = n;
  return t;
}

TargetDescriptor TargetDescriptor::finite(DefiningGraph g) {
  TargetDescriptor t;
  t.kind = Kind::finite_graph;
  t.graph = std::move(g);
  return t;
}

TargetDescriptor TargetDescriptor::parse_spec(const std::string& spec) {
  constexpr std::string_view prefix = "multipartite:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string num = spec.substr(prefix.size());
    std::size_t pos = 0;
    int n = 0;
    try {
      n = std::stoi(num, &pos);
    } catch (const std::exception&) {
      throw ParseError("bad multipartite target: " + spec);
    }
    if (pos != num.size() || n < 1)
      throw ParseError("bad multipartite target: " + spec);
    return multipartite(n);
  }
  return finite(DefiningGraph::parse(spec));
}

std::string TargetDescriptor::describe() const {
  if (kind == Kind::complete_multipartite)
    return "complete " + std::to_string(parts) + "-partite graph";
  return "finite graph on " + std::to_string(graph->size()) + " vertices";
}

} // namespace ccb
