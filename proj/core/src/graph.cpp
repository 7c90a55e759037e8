#include "ccb/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ccb {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

} // namespace

DefiningGraph DefiningGraph::from_vertices_edges(
    std::vector<std::string> vertices,
    const std::vector<std::pair<std::string, std::string>>& edges) {
  DefiningGraph g;
  std::sort(vertices.begin(), vertices.end());
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (vertices[i] == vertices[i - 1])
      throw ParseError("duplicate vertex name: " + vertices[i]);
  }
  g.names_ = std::move(vertices);
  const std::size_t n = g.names_.size();
  g.adj_.assign(n, std::vector<bool>(n, false));
  for (const auto& [u, v] : edges) {
    const int ui = g.find(u);
    const int vi = g.find(v);
    if (ui < 0) throw ParseError("edge endpoint not declared: " + u);
    if (vi < 0) throw ParseError("edge endpoint not declared: " + v);
    if (ui == vi) throw ParseError("self-loop rejected: " + u);
    g.adj_[ui][vi] = g.adj_[vi][ui] = true;
  }
  g.neighbors_.assign(n, {});
  g.edge_count_ = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v)
      if (g.adj_[u][v]) g.neighbors_[u].push_back(static_cast<int>(v));
    g.edge_count_ += g.neighbors_[u].size();
  }
  g.edge_count_ /= 2;
  return g;
}

DefiningGraph DefiningGraph::parse(std::string_view source) {
  for (char c : source) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return from_json(nlohmann::json::parse(source));
    break;
  }
  return parse_edge_list(source);
}

DefiningGraph DefiningGraph::parse_edge_list(std::string_view source) {
  std::set<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::istringstream in{std::string(source)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "vertex") {
      if (toks.size() != 2)
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected \"vertex u\"");
      vertices.insert(toks[1]);
      continue;
    }
    if (toks.size() != 2)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected \"u v\", got " +
                       std::to_string(toks.size()) + " tokens");
    if (toks[0] == toks[1])
      throw ParseError("line " + std::to_string(lineno) +
                       ": self-loop rejected: " + toks[0]);
    vertices.insert(toks[0]);
    vertices.insert(toks[1]);
    edges.emplace_back(toks[0], toks[1]);
  }
  return from_vertices_edges({vertices.begin(), vertices.end()}, edges);
}

DefiningGraph DefiningGraph::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw ParseError("structured graph needs \"vertices\" and \"edges\"");
  std::vector<std::string> vertices;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_string()) throw ParseError("vertex names must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw ParseError("each edge must be a pair [u, v]");
    edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  }
  return from_vertices_edges(std::move(vertices), edges);
}

int DefiningGraph::find(std::string_view name) const {
  const auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return -1;
  return static_cast<int>(it - names_.begin());
}

int DefiningGraph::index_of(std::string_view name) const {
  const int i = find(name);
  if (i < 0) throw DomainError("unknown vertex: " + std::string(name));
  return i;
}

bool DefiningGraph::is_clique(const std::vector<int>& members) const {
  for (std::size_t i = 0; i < members.size(); ++i) {
    const int u = members[i];
    if (u < 0 || u >= static_cast<int>(size())) return false;
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (members[i] == members[j]) return false;
      if (!adjacent(members[i], members[j])) return false;
    }
  }
  return true;
}

bool DefiningGraph::has_triangle() const {
  const int n = static_cast<int>(size());
  for (int u = 0; u < n; ++u)
    for (int v : neighbors_[u]) {
      if (v <= u) continue;
      for (int w : neighbors_[v])
        if (w > v && adj_[u][w]) return true;
    }
  return false;
}

std::string DefiningGraph::to_edge_list() const {
  std::ostringstream out;
  const int n = static_cast<int>(size());
  for (int v = 0; v < n; ++v)
    if (neighbors_[v].empty()) out << "vertex " << names_[v] << "\n";
  for (int u = 0; u < n; ++u)
    for (int v : neighbors_[u])
      if (v > u) out << names_[u] << " " << names_[v] << "\n";
  return out.str();
}

nlohmann::ordered_json DefiningGraph::to_json() const {
  nlohmann::ordered_json j;
  j["vertices"] = names_;
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  const int n = static_cast<int>(size());
  for (int u = 0; u < n; ++u)
    for (int v : neighbors_[u])
      if (v > u) edges.push_back({names_[u], names_[v]});
  return j;
}

namespace {

// Bron-Kerbosch with pivoting over index sets.
void bron_kerbosch(const DefiningGraph& g, std::vector<int>& r,
                   std::vector<int> p, std::vector<int> x,
                   std::vector<Clique>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(Clique{r});
    return;
  }
  int pivot = -1, best = -1;
  for (int u : p)
    if (g.degree(u) > best) { best = g.degree(u); pivot = u; }
  for (int u : x)
    if (g.degree(u) > best) { best = g.degree(u); pivot = u; }

  std::vector<int> candidates;
  for (int v : p)
    if (pivot < 0 || !g.adjacent(pivot, v)) candidates.push_back(v);

  for (int v : candidates) {
    std::vector<int> np, nx;
    for (int w : p)
      if (g.adjacent(v, w)) np.push_back(w);
    for (int w : x)
      if (g.adjacent(v, w)) nx.push_back(w);
    r.push_back(v);
    bron_kerbosch(g, r, std::move(np), std::move(nx), out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.insert(std::lower_bound(x.begin(), x.end(), v), v);
  }
}

} // namespace

std::vector<Clique> maximal_cliques(const DefiningGraph& g) {
  std::vector<Clique> out;
  std::vector<int> all(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<int> r;
  bron_kerbosch(g, r, all, {}, out);
  for (auto& c : out) std::sort(c.members.begin(), c.members.end());
  std::sort(out.begin(), out.end());
  return out;
}

int clique_number(const DefiningGraph& g) {
  if (g.size() == 0) throw DomainError("empty graph has no clique number");
  int best = 0;
  for (const auto& c : maximal_cliques(g))
    best = std::max(best, static_cast<int>(c.members.size()));
  return best;
}

namespace {

// Vertex order used by the coloring search: degree descending, index
// ascending. Fixed order keeps results byte-identical across runs.
std::vector<int> coloring_order(const DefiningGraph& g) {
  std::vector<int> order(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return g.degree(a) > g.degree(b);
  });
  return order;
}

int greedy_upper_bound(const DefiningGraph& g, const std::vector<int>& order) {
  std::vector<int> color(g.size(), 0);
  int used = 0;
  for (int v : order) {
    std::vector<bool> taken(used + 2, false);
    for (int w : g.neighbors(v))
      if (color[w] > 0 && color[w] <= used + 1) taken[color[w]] = true;
    int c = 1;
    while (taken[c]) ++c;
    color[v] = c;
    used = std::max(used, c);
  }
  return g.size() == 0 ? 0 : used;
}

bool color_search(const DefiningGraph& g, const std::vector<int>& order,
                  std::vector<int>& color, std::size_t pos, int used,
                  int limit) {
  if (pos == order.size()) return true;
  const int v = order[pos];
  for (int c = 1; c <= std::min(used + 1, limit); ++c) {
    bool ok = true;
    for (int w : g.neighbors(v))
      if (color[w] == c) { ok = false; break; }
    if (!ok) continue;
    color[v] = c;
    if (color_search(g, order, color, pos + 1, std::max(used, c), limit))
      return true;
    color[v] = 0;
  }
  return false;
}

} // namespace

bool is_k_colorable(const DefiningGraph& g, int k) {
  if (g.size() == 0) return true;
  if (k <= 0) return false;
  const auto order = coloring_order(g);
  std::vector<int> color(g.size(), 0);
  return color_search(g, order, color, 0, 0, k);
}

std::pair<int, int> chromatic_bounds(const DefiningGraph& g) {
  if (g.size() == 0) return {0, 0};
  return {clique_number(g), greedy_upper_bound(g, coloring_order(g))};
}

int chromatic_number(const DefiningGraph& g, int max_exact_vertices) {
  if (g.size() == 0) return 0;
  if (static_cast<int>(g.size()) > max_exact_vertices)
    throw ResourceLimitError(
        "graph too large for exact chromatic search (" +
        std::to_string(g.size()) + " > " +
        std::to_string(max_exact_vertices) + " vertices)");
  auto [lb, ub] = chromatic_bounds(g);
  while (lb < ub && is_k_colorable(g, ub - 1)) --ub;
  return ub;
}

namespace {

// Rotates/reflects a cycle to its lexicographically least vertex sequence.
std::vector<int> canonical_cycle(std::vector<int> cyc) {
  const std::size_t n = cyc.size();
  std::vector<int> best;
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<int> cand(n);
      for (std::size_t i = 0; i < n; ++i) cand[i] = cyc[(s + i) % n];
      if (best.empty() || cand < best) best = cand;
    }
    std::reverse(cyc.begin(), cyc.end());
  }
  return best;
}

} // namespace

std::optional<std::vector<int>> shortest_odd_cycle(const DefiningGraph& g) {
  const int n = static_cast<int>(g.size());
  std::optional<std::vector<int>> best;
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1), parent(n, -1);
    std::vector<int> queue{s};
    dist[s] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int u = queue[qi];
      for (int v : g.neighbors(u))
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          queue.push_back(v);
        }
    }
    // An edge between same-depth vertices closes an odd walk through the
    // BFS tree; trimming to the last common ancestor leaves a simple cycle.
    for (int u = 0; u < n; ++u) {
      if (dist[u] < 0) continue;
      for (int v : g.neighbors(u)) {
        if (v <= u || dist[v] != dist[u]) continue;
        std::vector<int> pu{u}, pv{v};
        int a = u, b = v;
        while (a != b) {
          a = parent[a];
          b = parent[b];
          pu.push_back(a);
          pv.push_back(b);
        }
        pv.pop_back();
        std::reverse(pv.begin(), pv.end());
        pu.insert(pu.end(), pv.begin(), pv.end());
        if (!best || pu.size() < best->size()) best = canonical_cycle(pu);
        else if (pu.size() == best->size()) {
          auto cand = canonical_cycle(pu);
          if (cand < *best) best = cand;
        }
      }
    }
  }
  return best;
}

namespace {

bool embed_search(const DefiningGraph& h, const DefiningGraph& t,
                  const std::vector<int>& order, std::vector<int>& map,
                  std::vector<bool>& used, std::size_t pos) {
  if (pos == order.size()) return true;
  const int v = order[pos];
  for (int cand = 0; cand < static_cast<int>(t.size()); ++cand) {
    if (used[cand] || t.degree(cand) < h.degree(v)) continue;
    bool ok = true;
    for (int w : h.neighbors(v))
      if (map[w] >= 0 && !t.adjacent(cand, map[w])) { ok = false; break; }
    if (!ok) continue;
    map[v] = cand;
    used[cand] = true;
    if (embed_search(h, t, order, map, used, pos + 1)) return true;
    map[v] = -1;
    used[cand] = false;
  }
  return false;
}

} // namespace

std::optional<std::vector<int>> injective_embedding(const DefiningGraph& h,
                                                    const DefiningGraph& t) {
  if (h.size() > t.size()) return std::nullopt;
  std::vector<int> order(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return h.degree(a) > h.degree(b);
  });
  std::vector<int> map(h.size(), -1);
  std::vector<bool> used(t.size(), false);
  if (!embed_search(h, t, order, map, used, 0)) return std::nullopt;
  return map;
}

} // namespace ccb
