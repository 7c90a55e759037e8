#include "ccb/median.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <thread>
#include <unordered_map>

#include "ccb/runtime.hpp"

namespace ccb {

namespace {

std::atomic<unsigned> g_thread_budget{0};  // 0 = hardware default

} // namespace

void set_thread_budget(unsigned n) { g_thread_budget.store(n); }

unsigned thread_budget() {
  const unsigned n = g_thread_budget.load();
  if (n > 0) return n;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

namespace {

WordLimits unbounded() {
  WordLimits l;
  l.max_word_length = 1 << 20;
  return l;
}

std::string vertex_label(const DefiningGraph& g, const NormalForm& nf) {
  return nf.empty() ? "\xce\xb5" : nf.to_string(g);
}

// All nonempty cliques of g (not only maximal ones), as sorted index lists.
std::vector<std::vector<int>> all_cliques(const DefiningGraph& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  const int n = static_cast<int>(g.size());
  auto extend = [&](auto&& self, int from) -> void {
    for (int v = from; v < n; ++v) {
      bool ok = true;
      for (int u : cur)
        if (!g.adjacent(u, v)) { ok = false; break; }
      if (!ok) continue;
      cur.push_back(v);
      out.push_back(cur);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  extend(extend, 0);
  return out;
}

struct EdgeRec {
  int u, v;       // u < v
  Letter letter;  // direction from u to v
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::uint64_t edge_key(int u, int v) {
  return (static_cast<std::uint64_t>(std::min(u, v)) << 32) |
         static_cast<std::uint32_t>(std::max(u, v));
}

int lookup_neighbor(const std::vector<std::pair<Letter, int>>& nb,
                    const Letter& l) {
  const auto it = std::lower_bound(
      nb.begin(), nb.end(), l,
      [](const std::pair<Letter, int>& p, const Letter& q) {
        return p.first < q;
      });
  if (it == nb.end() || !(it->first == l)) return -1;
  return it->second;
}

// Adjacency of an element set inside the Cayley graph. Iterating generators
// in index order with + before - leaves each neighbour list sorted.
struct LabelledGraph {
  std::vector<std::vector<std::pair<Letter, int>>> adj;
  std::vector<EdgeRec> edge_list;
  std::unordered_map<std::uint64_t, int> edge_id;

  void build(const DefiningGraph& g, const std::vector<NormalForm>& elements) {
    const int n = static_cast<int>(elements.size());
    adj.assign(n, {});
    const WordLimits wl = unbounded();
    for (int v = 0; v < n; ++v) {
      for (int s = 0; s < static_cast<int>(g.size()); ++s) {
        for (int sign : {+1, -1}) {
          Word w = elements[v].letters();
          w.push_back({s, sign});
          const NormalForm t = normalize(g, w, wl);
          const auto it =
              std::lower_bound(elements.begin(), elements.end(), t);
          if (it == elements.end() || !(*it == t)) continue;
          const int u = static_cast<int>(it - elements.begin());
          adj[v].emplace_back(Letter{s, sign}, u);
          if (v < u) {
            edge_id.emplace(edge_key(v, u),
                            static_cast<int>(edge_list.size()));
            edge_list.push_back({v, u, Letter{s, sign}});
          }
        }
      }
    }
  }

  // Square-relation classes plus per-vertex side bits. Returns false when
  // some class does not split the graph into exactly two components.
  bool hyperplane_classes(std::vector<std::vector<int>>& class_edges,
                          std::vector<std::vector<int>>& vertex_sides) const {
    const int n = static_cast<int>(adj.size());
    UnionFind uf(edge_list.size());
    for (int v = 0; v < n; ++v) {
      for (const auto& [l1, u] : adj[v]) {
        for (const auto& [l2, w] : adj[v]) {
          if (!(l1 < l2)) continue;
          const int z1 = lookup_neighbor(adj[u], l2);
          const int z2 = lookup_neighbor(adj[w], l1);
          if (z1 < 0 || z1 != z2 || z1 == v) continue;
          uf.unite(edge_id.at(edge_key(v, u)), edge_id.at(edge_key(w, z1)));
          uf.unite(edge_id.at(edge_key(v, w)), edge_id.at(edge_key(u, z1)));
        }
      }
    }
    std::map<int, int> root_to_class;
    std::vector<int> edge_class(edge_list.size());
    for (std::size_t e = 0; e < edge_list.size(); ++e) {
      const int root = uf.find(static_cast<int>(e));
      auto [it, fresh] = root_to_class.emplace(
          root, static_cast<int>(root_to_class.size()));
      edge_class[e] = it->second;
    }
    const int classes = static_cast<int>(root_to_class.size());
    class_edges.assign(classes, {});
    for (std::size_t e = 0; e < edge_list.size(); ++e)
      class_edges[edge_class[e]].push_back(static_cast<int>(e));

    vertex_sides.assign(n, std::vector<int>(classes, -1));
    std::vector<int> stack;
    for (int c = 0; c < classes; ++c) {
      int components = 0;
      for (int start = 0; start < n; ++start) {
        if (vertex_sides[start][c] >= 0) continue;
        if (components >= 2) return false;
        const int side = components++;
        vertex_sides[start][c] = side;
        stack.assign(1, start);
        while (!stack.empty()) {
          const int x = stack.back();
          stack.pop_back();
          for (const auto& [l, y] : adj[x]) {
            if (vertex_sides[y][c] >= 0) continue;
            if (edge_class[edge_id.at(edge_key(x, y))] == c) continue;
            vertex_sides[y][c] = side;
            stack.push_back(y);
          }
        }
      }
      if (components != 2) return false;
    }
    return true;
  }
};

} // namespace

MedianFragment::MedianFragment(const DefiningGraph& g, int radius)
    : graph_(g), radius_(radius) {}

void MedianFragment::index_elements() {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()),
                  elements_.end());
}

void MedianFragment::build_edges() {
  LabelledGraph lg;
  lg.build(graph_, elements_);
  edges_ = std::move(lg.adj);
  edge_count_ = lg.edge_list.size();
}

void MedianFragment::compute_hyperplanes(bool strict) {
  LabelledGraph lg;
  lg.adj = edges_;
  for (int v = 0; v < static_cast<int>(size()); ++v)
    for (const auto& [l, u] : edges_[v])
      if (v < u) {
        lg.edge_id.emplace(edge_key(v, u),
                           static_cast<int>(lg.edge_list.size()));
        lg.edge_list.push_back({v, u, l});
      }
  std::vector<std::vector<int>> class_edges;
  std::vector<std::vector<int>> sides;
  hyperplanes_valid_ = lg.hyperplane_classes(class_edges, sides);
  if (!hyperplanes_valid_) {
    if (strict)
      throw InternalError("fragment hyperplane class is not two-sided");
    hyperplanes_.clear();
    sides_.clear();
    return;
  }
  hyperplanes_.clear();
  for (std::size_t c = 0; c < class_edges.size(); ++c) {
    Hyperplane h;
    h.id = static_cast<int>(c);
    for (int e : class_edges[c])
      h.dual_edges.emplace_back(lg.edge_list[e].u, lg.edge_list[e].v);
    std::sort(h.dual_edges.begin(), h.dual_edges.end());
    for (int v = 0; v < static_cast<int>(size()); ++v)
      (sides[v][c] == 0 ? h.halfspace_minus : h.halfspace_plus).push_back(v);
    hyperplanes_.push_back(std::move(h));
  }
  sides_ = std::move(sides);
}

void MedianFragment::cache_distances(std::size_t cache_max) {
  dist_cached_ = false;
  dist_cache_.clear();
  const std::size_t n = size();
  if (n == 0 || n > cache_max) return;
  std::vector<std::uint16_t> cache(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    const auto row = distances_from(static_cast<int>(a));
    for (std::size_t b = 0; b < n; ++b) {
      if (row[b] < 0) return;  // disconnected: leave the cache off
      cache[a * n + b] = static_cast<std::uint16_t>(row[b]);
    }
  }
  dist_cache_ = std::move(cache);
  dist_cached_ = true;
}

void MedianFragment::compute_signatures() {
  const std::size_t n = size();
  const std::size_t h = hyperplanes_.size();
  signature_words_ = (h + 63) / 64;
  signatures_.assign(n, std::vector<std::uint64_t>(signature_words_, 0));
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t c = 0; c < h; ++c)
      if (sides_[v][c]) signatures_[v][c / 64] |= 1ULL << (c % 64);
}

MedianFragment MedianFragment::build(const DefiningGraph& g, int radius,
                                     const FragmentLimits& limits) {
  if (radius < 0) throw DomainError("radius must be non-negative");
  if (radius > limits.max_radius)
    throw ResourceLimitError("fragment radius " + std::to_string(radius) +
                             " exceeds limit " +
                             std::to_string(limits.max_radius));
  if (g.size() == 0) throw DomainError("empty graph");

  const WordLimits wl = unbounded();
  const auto ball = enumerate_ball(g, radius, wl);

  // Ambient substrate: the cube-move ball of the same radius. Each move
  // multiplies by a +-1 diagonal of a clique, so the result is the vertex
  // set of the d-infinity ball, a convex superset of the d1-ball large
  // enough to contain its hull.
  std::vector<Word> moves;
  for (const auto& clique : all_cliques(g)) {
    const int k = static_cast<int>(clique.size());
    for (int signs = 0; signs < (1 << k); ++signs) {
      Word mv;
      for (int i = 0; i < k; ++i)
        mv.push_back({clique[i], (signs >> i) & 1 ? -1 : +1});
      moves.push_back(std::move(mv));
    }
  }

  std::set<NormalForm> amb_set{NormalForm{}};
  std::vector<NormalForm> layer{NormalForm{}};
  for (int step = 0; step < radius; ++step) {
    std::vector<NormalForm> next;
    for (const auto& v : layer) {
      for (const auto& mv : moves) {
        NormalForm t = normalize(g, concat(v.letters(), mv), wl);
        if (amb_set.insert(t).second) {
          if (amb_set.size() > limits.max_vertices)
            throw ResourceLimitError(
                "fragment substrate exceeds max vertices (" +
                std::to_string(limits.max_vertices) + ")");
          next.push_back(std::move(t));
        }
      }
    }
    layer = std::move(next);
  }

  std::vector<NormalForm> ambient(amb_set.begin(), amb_set.end());
  LabelledGraph lg;
  lg.build(g, ambient);
  std::vector<std::vector<int>> class_edges;
  std::vector<std::vector<int>> sides;
  if (!lg.hyperplane_classes(class_edges, sides))
    throw InternalError("ambient ball has a one-sided hyperplane class");

  // Keep exactly the vertices on the ball's side of every hyperplane that
  // does not split the ball: that intersection of halfspaces is the hull.
  std::vector<int> ball_idx;
  for (const auto& b : ball) {
    const auto it = std::lower_bound(ambient.begin(), ambient.end(), b);
    if (it == ambient.end() || !(*it == b))
      throw InternalError("d1-ball escapes the cube-move ball");
    ball_idx.push_back(static_cast<int>(it - ambient.begin()));
  }
  const int classes = static_cast<int>(class_edges.size());
  std::vector<int> constraint(classes, -1);
  for (int c = 0; c < classes; ++c) {
    int seen = -1;
    bool split = false;
    for (int b : ball_idx) {
      if (seen < 0) seen = sides[b][c];
      else if (sides[b][c] != seen) { split = true; break; }
    }
    if (!split) constraint[c] = seen;
  }

  MedianFragment f(g, radius);
  for (std::size_t v = 0; v < ambient.size(); ++v) {
    bool keep = true;
    for (int c = 0; c < classes && keep; ++c)
      keep = constraint[c] < 0 || sides[v][c] == constraint[c];
    if (keep) f.elements_.push_back(ambient[v]);
  }

  f.build_edges();
  f.compute_hyperplanes(/*strict=*/true);
  f.cache_distances(limits.distance_cache_max);
  f.compute_signatures();

  const auto d0 = f.distances_from(0);
  for (int v = 0; v < static_cast<int>(f.size()); ++v)
    if (d0[v] < 0) throw InternalError("fragment is not connected");

  // Sampled isometry audit against normal-form length of the quotient.
  std::mt19937 rng(0xccb0 + static_cast<unsigned>(f.size()));
  const int n = static_cast<int>(f.size());
  const int samples = std::min(200, n * n);
  for (int i = 0; i < samples; ++i) {
    const int a = static_cast<int>(rng() % n);
    const int b = static_cast<int>(rng() % n);
    const NormalForm q =
        nf_mul(g, nf_inverse(g, f.elements_[a]), f.elements_[b]);
    if (f.distance(a, b) != static_cast<int>(q.length()))
      throw InternalError("fragment distance disagrees with group distance");
  }
  return f;
}

MedianFragment MedianFragment::induced(const DefiningGraph& g,
                                       std::vector<NormalForm> elements) {
  MedianFragment f(g, -1);
  f.elements_ = std::move(elements);
  f.index_elements();
  f.build_edges();
  f.compute_hyperplanes(/*strict=*/false);
  f.cache_distances(FragmentLimits{}.distance_cache_max);
  if (f.hyperplanes_valid_) f.compute_signatures();
  return f;
}

int MedianFragment::find(const NormalForm& nf) const {
  const auto it = std::lower_bound(elements_.begin(), elements_.end(), nf);
  if (it == elements_.end() || !(*it == nf)) return -1;
  return static_cast<int>(it - elements_.begin());
}

int MedianFragment::index_of(const NormalForm& nf) const {
  const int i = find(nf);
  if (i < 0)
    throw DomainError("element not in fragment: " + vertex_label(graph_, nf));
  return i;
}

std::vector<int> MedianFragment::distances_from(int a) const {
  if (a < 0 || a >= static_cast<int>(size()))
    throw DomainError("vertex index out of range");
  std::vector<int> dist(size(), -1);
  std::vector<int> queue{a};
  dist[a] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int u = queue[qi];
    for (const auto& [l, v] : edges_[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

int MedianFragment::distance(int a, int b) const {
  if (a < 0 || b < 0 || a >= static_cast<int>(size()) ||
      b >= static_cast<int>(size()))
    throw DomainError("vertex index out of range");
  if (dist_cached_)
    return dist_cache_[static_cast<std::size_t>(a) * size() + b];
  const auto row = distances_from(a);
  if (row[b] < 0) throw InternalError("fragment is not connected");
  return row[b];
}

int MedianFragment::median_by_distances(int a, int b, int c,
                                        bool* unique) const {
  const int n = static_cast<int>(size());
  int found = -1;
  int count = 0;
  if (dist_cached_) {
    const std::size_t sn = size();
    const std::uint16_t* ra = &dist_cache_[static_cast<std::size_t>(a) * sn];
    const std::uint16_t* rb = &dist_cache_[static_cast<std::size_t>(b) * sn];
    const std::uint16_t* rc = &dist_cache_[static_cast<std::size_t>(c) * sn];
    const int ab = ra[b], bc = rb[c], ac = ra[c];
    for (int z = 0; z < n; ++z)
      if (ra[z] + rb[z] == ab && rb[z] + rc[z] == bc && ra[z] + rc[z] == ac) {
        ++count;
        if (found < 0) found = z;
      }
  } else {
    const auto da = distances_from(a);
    const auto db = distances_from(b);
    const auto dc = distances_from(c);
    const int ab = da[b], bc = db[c], ac = da[c];
    for (int z = 0; z < n; ++z)
      if (da[z] + db[z] == ab && db[z] + dc[z] == bc && da[z] + dc[z] == ac) {
        ++count;
        if (found < 0) found = z;
      }
  }
  if (unique) *unique = count == 1;
  return found;
}

int MedianFragment::median(int a, int b, int c) const {
  if (a < 0 || b < 0 || c < 0 || a >= static_cast<int>(size()) ||
      b >= static_cast<int>(size()) || c >= static_cast<int>(size()))
    throw DomainError("median arguments must be fragment members");
  bool unique = false;
  const int m = median_by_distances(a, b, c, &unique);
  if (m < 0 || !unique)
    throw InternalError("median axiom violated for a fragment triple");
  return m;
}

const std::vector<Hyperplane>& MedianFragment::hyperplanes() const {
  if (!hyperplanes_valid_)
    throw InternalError("fragment has no valid hyperplane structure");
  return hyperplanes_;
}

bool MedianFragment::hyperplanes_valid() const { return hyperplanes_valid_; }

int MedianFragment::side(int h, int v) const {
  if (!hyperplanes_valid_)
    throw InternalError("fragment has no valid hyperplane structure");
  return sides_.at(v).at(h);
}

int MedianFragment::separation(int a, int b) const {
  if (!hyperplanes_valid_)
    throw InternalError("fragment has no valid hyperplane structure");
  int sep = 0;
  for (std::size_t w = 0; w < signature_words_; ++w)
    sep += std::popcount(signatures_[a][w] ^ signatures_[b][w]);
  return sep;
}

bool MedianFragment::crossing(int h1, int h2) const {
  if (!hyperplanes_valid_)
    throw InternalError("fragment has no valid hyperplane structure");
  if (h1 < 0 || h2 < 0 || h1 >= static_cast<int>(hyperplanes_.size()) ||
      h2 >= static_cast<int>(hyperplanes_.size()))
    throw DomainError("hyperplane id out of range");
  bool quad[2][2] = {{false, false}, {false, false}};
  for (int v = 0; v < static_cast<int>(size()); ++v) {
    quad[sides_[v][h1]][sides_[v][h2]] = true;
    if (quad[0][0] && quad[0][1] && quad[1][0] && quad[1][1]) return true;
  }
  return false;
}

std::vector<int> MedianFragment::hull_by_halfspaces(
    const std::vector<int>& seeds) const {
  if (!hyperplanes_valid_)
    throw InternalError("fragment has no valid hyperplane structure");
  if (seeds.empty()) return {};
  for (int s : seeds)
    if (s < 0 || s >= static_cast<int>(size()))
      throw DomainError("hull seed out of range");
  const int classes = static_cast<int>(hyperplanes_.size());
  std::vector<int> constraint(classes, -1);
  for (int c = 0; c < classes; ++c) {
    const int seen = sides_[seeds[0]][c];
    bool split = false;
    for (int s : seeds)
      if (sides_[s][c] != seen) { split = true; break; }
    if (!split) constraint[c] = seen;
  }
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(size()); ++v) {
    bool keep = true;
    for (int c = 0; c < classes && keep; ++c)
      keep = constraint[c] < 0 || sides_[v][c] == constraint[c];
    if (keep) out.push_back(v);
  }
  return out;
}

std::vector<int> MedianFragment::hull_by_medians(
    const std::vector<int>& seeds) const {
  if (seeds.empty()) return {};
  const int n = static_cast<int>(size());
  for (int s : seeds)
    if (s < 0 || s >= n) throw DomainError("hull seed out of range");
  std::vector<bool> in(n, false);
  std::vector<int> members, frontier;
  for (int s : seeds)
    if (!in[s]) {
      in[s] = true;
      members.push_back(s);
      frontier.push_back(s);
    }
  // Each pass adjoins every z between a recent member and any member: these
  // are exactly the medians mu(a, x, b) with x running over the fragment.
  const auto row = [&](int a, std::vector<int>& scratch) -> const void* {
    if (dist_cached_)
      return &dist_cache_[static_cast<std::size_t>(a) * size()];
    scratch = distances_from(a);
    return scratch.data();
  };
  const auto at = [&](const void* r, int i) -> int {
    if (dist_cached_) return static_cast<const std::uint16_t*>(r)[i];
    return static_cast<const int*>(r)[i];
  };
  std::vector<int> sa, sb;
  while (!frontier.empty()) {
    std::vector<int> added;
    const std::vector<int> snapshot = members;
    for (int a : frontier) {
      const void* da = row(a, sa);
      for (int b : snapshot) {
        const void* db = row(b, sb);
        const int dab = at(da, b);
        for (int z = 0; z < n; ++z)
          if (!in[z] && at(da, z) + at(db, z) == dab) {
            in[z] = true;
            members.push_back(z);
            added.push_back(z);
          }
      }
    }
    frontier = std::move(added);
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<int> MedianFragment::hull(const std::vector<int>& seeds) const {
  auto by_medians = hull_by_medians(seeds);
  auto by_halfspaces = hull_by_halfspaces(seeds);
  if (by_medians != by_halfspaces)
    throw InternalError("hull routes disagree (median iteration vs "
                        "halfspace intersection)");
  return by_medians;
}

bool MedianFragment::is_geodesic(const std::vector<int>& path) const {
  if (path.empty()) return false;
  for (int v : path)
    if (v < 0 || v >= static_cast<int>(size())) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    bool adjacent = false;
    for (const auto& [l, u] : edges_[path[i]])
      if (u == path[i + 1]) { adjacent = true; break; }
    if (!adjacent) return false;
  }
  return distance(path.front(), path.back()) ==
         static_cast<int>(path.size()) - 1;
}

bool MedianFragment::is_singular_path(const std::vector<int>& path) const {
  if (!is_geodesic(path))
    throw DomainError("path is not a geodesic of the fragment");
  if (!hyperplanes_valid_)
    throw InternalError("fragment has no valid hyperplane structure");
  std::vector<int> crossed;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto e = std::make_pair(std::min(path[i], path[i + 1]),
                                  std::max(path[i], path[i + 1]));
    int found = -1;
    for (std::size_t c = 0; c < hyperplanes_.size() && found < 0; ++c)
      if (std::binary_search(hyperplanes_[c].dual_edges.begin(),
                             hyperplanes_[c].dual_edges.end(), e))
        found = static_cast<int>(c);
    if (found < 0) throw InternalError("path edge not covered by a class");
    crossed.push_back(found);
  }
  std::sort(crossed.begin(), crossed.end());
  crossed.erase(std::unique(crossed.begin(), crossed.end()), crossed.end());
  for (std::size_t i = 0; i < crossed.size(); ++i)
    for (std::size_t j = i + 1; j < crossed.size(); ++j)
      if (crossing(crossed[i], crossed[j])) return false;
  return true;
}

int MedianFragment::max_cube_dim() const {
  if (radius_ < 2)
    throw DomainError(
        "max_cube_dim requires a fragment built with radius >= 2");
  int best = 0;
  std::vector<Letter> dirs;
  std::vector<int> corners;
  auto extend = [&](auto&& self, std::size_t from) -> void {
    best = std::max(best, static_cast<int>(dirs.size()));
    const auto& nb = edges_[corners.front()];
    for (std::size_t k = from; k < nb.size(); ++k) {
      if (static_cast<int>(dirs.size() + nb.size() - k) <= best) return;
      const Letter d = nb[k].first;
      std::vector<int> shifted;
      shifted.reserve(corners.size());
      bool ok = true;
      for (int c : corners) {
        const int t = lookup_neighbor(edges_[c], d);
        if (t < 0) { ok = false; break; }
        shifted.push_back(t);
      }
      if (!ok) continue;
      bool fresh = true;
      for (int t : shifted)
        if (std::find(corners.begin(), corners.end(), t) != corners.end()) {
          fresh = false;
          break;
        }
      if (!fresh) continue;
      const std::size_t old_size = corners.size();
      corners.insert(corners.end(), shifted.begin(), shifted.end());
      dirs.push_back(d);
      self(self, k + 1);
      dirs.pop_back();
      corners.resize(old_size);
    }
  };
  for (int v = 0; v < static_cast<int>(size()); ++v) {
    corners.assign(1, v);
    dirs.clear();
    extend(extend, 0);
  }
  return best;
}

HellyResult MedianFragment::helly_check(
    const std::vector<std::vector<int>>& family) const {
  if (family.empty()) throw DomainError("empty family");
  std::vector<std::vector<int>> sets;
  for (auto s : family) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) throw DomainError("family contains an empty set");
    if (hull(s) != s) throw DomainError("family contains a non-convex set");
    sets.push_back(std::move(s));
  }
  HellyResult result;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      std::vector<int> inter;
      std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(),
                            sets[j].end(), std::back_inserter(inter));
      if (inter.empty()) return result;  // not pairwise intersecting
    }
  result.pairwise_intersecting = true;
  std::vector<int> total = sets[0];
  for (std::size_t i = 1; i < sets.size(); ++i) {
    std::vector<int> inter;
    std::set_intersection(total.begin(), total.end(), sets[i].begin(),
                          sets[i].end(), std::back_inserter(inter));
    total = std::move(inter);
  }
  if (total.empty())
    throw InternalError(
        "pairwise-intersecting convex family with empty total intersection");
  result.witness = total.front();
  return result;
}

namespace {

// Flat open-addressing set over packed signature words.
struct SignatureSet {
  std::size_t words = 0;
  std::size_t mask = 0;
  std::vector<std::uint64_t> slots;
  std::vector<bool> used;

  void init(const std::vector<std::vector<std::uint64_t>>& sigs,
            std::size_t w) {
    words = std::max<std::size_t>(w, 1);
    std::size_t cap = 16;
    while (cap < sigs.size() * 2) cap <<= 1;
    mask = cap - 1;
    slots.assign(cap * words, 0);
    used.assign(cap, false);
    std::vector<std::uint64_t> padded(words, 0);
    for (const auto& s : sigs) {
      std::fill(padded.begin(), padded.end(), 0);
      std::copy(s.begin(), s.end(), padded.begin());
      insert(padded.data());
    }
  }
  static std::uint64_t hash(const std::uint64_t* sig, std::size_t words) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < words; ++i) {
      h ^= sig[i];
      h *= 0x100000001b3ULL;
    }
    return h;
  }
  void insert(const std::uint64_t* sig) {
    std::size_t i = hash(sig, words) & mask;
    while (used[i]) {
      if (std::equal(sig, sig + words, &slots[i * words])) return;
      i = (i + 1) & mask;
    }
    used[i] = true;
    std::copy(sig, sig + words, &slots[i * words]);
  }
  bool contains(const std::uint64_t* sig) const {
    std::size_t i = hash(sig, words) & mask;
    while (used[i]) {
      if (std::equal(sig, sig + words, &slots[i * words])) return true;
      i = (i + 1) & mask;
    }
    return false;
  }
};

} // namespace

MedianCheckReport MedianFragment::verify_median_axioms(
    std::uint64_t triple_budget) const {
  MedianCheckReport report;
  report.vertices = size();
  const std::uint64_t n = size();
  if (n == 0) return report;

  const auto d0 = distances_from(0);
  if (std::any_of(d0.begin(), d0.end(), [](int d) { return d < 0; })) {
    report.method = "disconnected";
    report.failures = 1;
    return report;
  }

  if (n <= 150 || !hyperplanes_valid_) {
    // Straight from the definition: unique interval intersection.
    report.method = "interval";
    const int ni = static_cast<int>(n);
    for (int a = 0; a < ni; ++a)
      for (int b = a + 1; b < ni; ++b)
        for (int c = b + 1; c < ni; ++c) {
          bool unique = false;
          median_by_distances(a, b, c, &unique);
          ++report.triples_checked;
          if (!unique) ++report.failures;
        }
    return report;
  }

  // Signature route: check distances equal hyperplane separation, then that
  // every triple's coordinatewise majority is realized by a vertex. Given
  // the first check, the two conditions together are the median axiom.
  report.method = "signature";
  if (dist_cached_) {
    for (int a = 0; a < static_cast<int>(n); ++a)
      for (int b = a + 1; b < static_cast<int>(n); ++b)
        if (separation(a, b) != distance(a, b)) ++report.failures;
  } else {
    std::mt19937 rng(0xd15 + static_cast<unsigned>(n));
    for (int i = 0; i < 10000; ++i) {
      const int a = static_cast<int>(rng() % n);
      const int b = static_cast<int>(rng() % n);
      if (separation(a, b) != distance(a, b)) ++report.failures;
    }
  }
  if (report.failures > 0) return report;

  SignatureSet sset;
  sset.init(signatures_, signature_words_);
  const std::size_t w = std::max<std::size_t>(signature_words_, 1);

  const std::uint64_t total = n * (n - 1) * (n - 2) / 6;
  if (total > triple_budget) {
    report.sampled = true;
    std::mt19937_64 rng(0x5eedULL + n);
    std::vector<std::uint64_t> maj(w);
    for (std::uint64_t t = 0; t < 1'000'000; ++t) {
      const std::uint64_t a = rng() % n, b = rng() % n, c = rng() % n;
      if (a == b || b == c || a == c) continue;
      for (std::size_t i = 0; i < w; ++i) {
        const std::uint64_t sa = signatures_[a][i], sb = signatures_[b][i],
                            sc = signatures_[c][i];
        maj[i] = (sa & sb) | (sc & (sa ^ sb));
      }
      ++report.triples_checked;
      if (!sset.contains(maj.data())) ++report.failures;
    }
    return report;
  }

  const auto check_range = [&](std::uint64_t a_begin, std::uint64_t a_end,
                               std::uint64_t* fail_out,
                               std::uint64_t* count_out) {
    std::vector<std::uint64_t> base(w), mask(w), maj(w);
    std::uint64_t failures = 0, count = 0;
    for (std::uint64_t a = a_begin; a < a_end; ++a) {
      const auto& sa = signatures_[a];
      for (std::uint64_t b = a + 1; b < n; ++b) {
        const auto& sb = signatures_[b];
        for (std::size_t i = 0; i < w; ++i) {
          base[i] = sa[i] & sb[i];
          mask[i] = sa[i] ^ sb[i];
        }
        for (std::uint64_t c = b + 1; c < n; ++c) {
          const auto& sc = signatures_[c];
          for (std::size_t i = 0; i < w; ++i)
            maj[i] = base[i] | (sc[i] & mask[i]);
          ++count;
          if (!sset.contains(maj.data())) ++failures;
        }
      }
    }
    *fail_out = failures;
    *count_out = count;
  };

  const unsigned threads = std::max(1u, std::min(thread_budget(), 4u));
  if (threads == 1 || n < 512) {
    check_range(0, n, &report.failures, &report.triples_checked);
    return report;
  }
  // Early a-values own far more triples; split by cube-root quantiles.
  std::vector<std::uint64_t> cuts{0};
  for (unsigned t = 1; t < threads; ++t) {
    const double frac = static_cast<double>(t) / threads;
    cuts.push_back(std::min<std::uint64_t>(
        static_cast<std::uint64_t>(
            (1.0 - std::cbrt(1.0 - frac)) * static_cast<double>(n)),
        n));
  }
  cuts.push_back(n);
  std::vector<std::uint64_t> fails(threads, 0), counts(threads, 0);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back(check_range, cuts[t], cuts[t + 1], &fails[t],
                      &counts[t]);
  for (auto& th : pool) th.join();
  for (unsigned t = 0; t < threads; ++t) {
    report.failures += fails[t];
    report.triples_checked += counts[t];
  }
  return report;
}

nlohmann::ordered_json MedianFragment::export_json() const {
  nlohmann::ordered_json j;
  j["radius"] = radius_;
  auto& verts = j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& e : elements_) verts.push_back(vertex_label(graph_, e));
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (int u = 0; u < static_cast<int>(size()); ++u)
    for (const auto& [l, v] : edges_[u])
      if (u < v) edges.push_back({u, v, graph_.name(l.gen), l.sign});
  auto& hyps = j["hyperplanes"] = nlohmann::ordered_json::array();
  if (hyperplanes_valid_) {
    for (const auto& h : hyperplanes_) {
      nlohmann::ordered_json je;
      je["id"] = h.id;
      auto& de = je["edges"] = nlohmann::ordered_json::array();
      for (const auto& [u, v] : h.dual_edges) de.push_back({u, v});
      hyps.push_back(std::move(je));
    }
  }
  return j;
}

} // namespace ccb
