#include "ccb/branching.hpp"

#include <algorithm>
#include <sstream>

namespace ccb {

namespace {

std::vector<Clique> top_cliques(const DefiningGraph& g) {
  auto cliques = maximal_cliques(g);
  std::size_t omega = 0;
  for (const auto& c : cliques) omega = std::max(omega, c.members.size());
  std::erase_if(cliques,
                [&](const Clique& c) { return c.members.size() != omega; });
  return cliques;
}

// Intersection of all cliques in `family` that contain `target`.
// Returns nullopt when no clique of the family contains target.
std::optional<std::vector<int>> family_intersection(
    const std::vector<Clique>& family, const std::vector<int>& target) {
  std::optional<std::vector<int>> result;
  for (const auto& c : family) {
    if (!std::includes(c.members.begin(), c.members.end(), target.begin(),
                       target.end()))
      continue;
    if (!result) {
      result = c.members;
    } else {
      std::vector<int> next;
      std::set_intersection(result->begin(), result->end(), c.members.begin(),
                            c.members.end(), std::back_inserter(next));
      *result = std::move(next);
    }
  }
  return result;
}

void check_vertex(const DefiningGraph& g, int v) {
  if (v < 0 || v >= static_cast<int>(g.size()))
    throw DomainError("unknown vertex index: " + std::to_string(v));
}

void check_clique(const DefiningGraph& g, const Clique& c) {
  if (c.members.empty()) throw DomainError("empty clique");
  if (!std::is_sorted(c.members.begin(), c.members.end()))
    throw DomainError("clique members must be sorted");
  for (int v : c.members) check_vertex(g, v);
  if (!g.is_clique(c.members))
    throw DomainError("vertex set is not a clique");
}

bool branching_in(const std::vector<Clique>& tops, int v) {
  const auto inter = family_intersection(tops, {v});
  return inter && *inter == std::vector<int>{v};
}

bool bc_in(const DefiningGraph& g, const std::vector<Clique>& tops, int v) {
  if (!branching_in(tops, v)) return false;
  for (const auto& k : tops) {
    if (!std::binary_search(k.members.begin(), k.members.end(), v)) continue;
    std::vector<int> face;
    for (int w : k.members)
      if (w != v) face.push_back(w);
    if (face.empty()) return true;  // rank 1: empty face, vacuously true
    const auto inter = family_intersection(tops, face);
    if (inter && *inter == face) return true;
  }
  return false;
}

bool sbc_in(const DefiningGraph& g, const std::vector<Clique>& tops,
            const std::vector<bool>& bc, int v) {
  std::vector<Clique> dbc_tops;
  for (const auto& k : tops) {
    const bool all_bc = std::all_of(k.members.begin(), k.members.end(),
                                    [&](int w) { return bc[w]; });
    if (all_bc) dbc_tops.push_back(k);
  }
  const auto inter = family_intersection(dbc_tops, {v});
  return inter && *inter == std::vector<int>{v};
}

std::vector<bool> bc_table(const DefiningGraph& g,
                           const std::vector<Clique>& tops) {
  std::vector<bool> bc(g.size());
  for (int v = 0; v < static_cast<int>(g.size()); ++v)
    bc[v] = bc_in(g, tops, v);
  return bc;
}

} // namespace

bool is_branching(const DefiningGraph& g, int v) {
  check_vertex(g, v);
  return branching_in(top_cliques(g), v);
}

bool is_branch_complemented(const DefiningGraph& g, int v) {
  check_vertex(g, v);
  return bc_in(g, top_cliques(g), v);
}

bool is_strongly_bc(const DefiningGraph& g, int v) {
  check_vertex(g, v);
  const auto tops = top_cliques(g);
  return sbc_in(g, tops, bc_table(g, tops), v);
}

bool is_directionally_bc(const DefiningGraph& g, const Clique& c) {
  check_clique(g, c);
  const auto tops = top_cliques(g);
  return std::all_of(c.members.begin(), c.members.end(),
                     [&](int v) { return bc_in(g, tops, v); });
}

bool is_directionally_strongly_bc(const DefiningGraph& g, const Clique& c) {
  check_clique(g, c);
  const auto tops = top_cliques(g);
  const auto bc = bc_table(g, tops);
  return std::all_of(c.members.begin(), c.members.end(),
                     [&](int v) { return sbc_in(g, tops, bc, v); });
}

BranchReport classify_all(const DefiningGraph& g) {
  if (g.size() == 0) throw DomainError("empty graph");
  const auto cliques = maximal_cliques(g);
  std::size_t omega = 0;
  for (const auto& c : cliques) omega = std::max(omega, c.members.size());
  std::vector<Clique> tops;
  for (const auto& c : cliques)
    if (c.members.size() == omega) tops.push_back(c);

  const auto bc = bc_table(g, tops);

  BranchReport report;
  report.rank = static_cast<int>(omega);
  report.per_vertex.resize(g.size());
  for (int v = 0; v < static_cast<int>(g.size()); ++v) {
    auto& f = report.per_vertex[v];
    f.branching = branching_in(tops, v);
    f.branch_complemented = bc[v];
    f.strongly_branch_complemented = sbc_in(g, tops, bc, v);
    f.in_some_top_clique = std::any_of(
        tops.begin(), tops.end(), [&](const Clique& k) {
          return std::binary_search(k.members.begin(), k.members.end(), v);
        });
  }

  std::vector<bool> sbc(g.size());
  for (int v = 0; v < static_cast<int>(g.size()); ++v)
    sbc[v] = report.per_vertex[v].strongly_branch_complemented;

  for (const auto& c : cliques) {
    CliqueFlags f;
    f.clique = c;
    f.top_dimensional = c.members.size() == omega;
    f.directionally_bc = std::all_of(c.members.begin(), c.members.end(),
                                     [&](int v) { return bc[v]; });
    f.directionally_strongly_bc = std::all_of(
        c.members.begin(), c.members.end(), [&](int v) { return sbc[v]; });
    report.per_clique.push_back(std::move(f));
  }
  return report;
}

TriangleFreeFlags triangle_free_oracle(const DefiningGraph& g, int v) {
  check_vertex(g, v);
  if (g.has_triangle())
    throw DomainError("triangle_free_oracle requires a triangle-free graph");
  TriangleFreeFlags f;
  f.branching = g.degree(v) >= 2;
  f.branch_complemented =
      f.branching && std::any_of(g.neighbors(v).begin(), g.neighbors(v).end(),
                                 [&](int w) { return g.degree(w) >= 2; });
  return f;
}

nlohmann::ordered_json BranchReport::to_json(const DefiningGraph& g) const {
  nlohmann::ordered_json j;
  j["rank"] = rank;
  auto& verts = j["vertices"] = nlohmann::ordered_json::object();
  for (std::size_t v = 0; v < per_vertex.size(); ++v) {
    const auto& f = per_vertex[v];
    verts[g.name(static_cast<int>(v))] = {
        {"branching", f.branching},
        {"bc", f.branch_complemented},
        {"sbc", f.strongly_branch_complemented},
    };
  }
  auto& cliques = j["cliques"] = nlohmann::ordered_json::array();
  for (const auto& f : per_clique) {
    nlohmann::ordered_json c;
    auto& members = c["members"] = nlohmann::ordered_json::array();
    for (int v : f.clique.members) members.push_back(g.name(v));
    c["top"] = f.top_dimensional;
    c["dbc"] = f.directionally_bc;
    c["dsbc"] = f.directionally_strongly_bc;
    cliques.push_back(std::move(c));
  }
  return j;
}

std::string BranchReport::to_text(const DefiningGraph& g) const {
  std::ostringstream out;
  out << "rank: " << rank << "\n";
  out << "vertex  branching  bc  sbc  in-top\n";
  for (std::size_t v = 0; v < per_vertex.size(); ++v) {
    const auto& f = per_vertex[v];
    out << g.name(static_cast<int>(v)) << "  " << (f.branching ? "T" : "F")
        << " " << (f.branch_complemented ? "T" : "F") << " "
        << (f.strongly_branch_complemented ? "T" : "F") << " "
        << (f.in_some_top_clique ? "T" : "F") << "\n";
  }
  out << "maximal cliques (top / dbc / dsbc):\n";
  for (const auto& f : per_clique) {
    out << "  {";
    for (std::size_t i = 0; i < f.clique.members.size(); ++i) {
      if (i) out << ",";
      out << g.name(f.clique.members[i]);
    }
    out << "} " << (f.top_dimensional ? "T" : "F") << " "
        << (f.directionally_bc ? "T" : "F") << " "
        << (f.directionally_strongly_bc ? "T" : "F") << "\n";
  }
  return out.str();
}

} // namespace ccb
