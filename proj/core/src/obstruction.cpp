#include "ccb/obstruction.hpp"

#include <algorithm>
#include <sstream>

namespace ccb {

namespace {

const char* kRankCitation =
    "a quasiisometric embedding into a product of n rank-one factors forces "
    "asymptotic rank at most n, while the defining graph realizes arbitrarily "
    "large boxes of dimension equal to its clique number";

const char* kBoundaryCitation =
    "a quasiisometric embedding into a product of n rank-one factors induces "
    "a graph embedding of the strongly branch-complemented boundary into a "
    "complete n-partite graph, so every boundary fragment must be "
    "n-colorable";

const char* kOddCycleCitation =
    "a quasiisometric embedding into a product of two rank-one factors "
    "induces a graph embedding of the strongly branch-complemented boundary "
    "into a complete bipartite graph, which contains no odd cycle";

const char* kFiniteCitation =
    "advisory: the computed boundary fragment admits no edge-preserving "
    "injection into the given finite graph; this obstructs only if the "
    "target graph contains the whole relevant boundary graph";

} // namespace

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::rank_excess: return "RankExcess";
    case CertificateKind::chromatic_excess: return "ChromaticExcess";
    case CertificateKind::odd_cycle: return "OddCycle";
    case CertificateKind::no_embedding: return "NoEmbedding";
  }
  return "?";
}

void ObstructionCertificate::verify() const {
  switch (kind) {
    case CertificateKind::rank_excess: {
      if (!source_graph)
        throw InternalError("rank-excess certificate lacks the source graph");
      std::vector<int> members;
      for (const auto& name : witness_clique)
        members.push_back(source_graph->index_of(name));
      std::sort(members.begin(), members.end());
      if (!source_graph->is_clique(members))
        throw InternalError("rank-excess witness is not a clique");
      if (static_cast<int>(members.size()) != source_rank ||
          source_rank <= target_rank)
        throw InternalError("rank-excess certificate sizes are inconsistent");
      break;
    }
    case CertificateKind::chromatic_excess: {
      if (!fragment)
        throw InternalError("chromatic certificate lacks its fragment");
      if (is_k_colorable(*fragment, target_rank))
        throw InternalError("certified fragment is colorable after all");
      if (fragment_chromatic <= target_rank)
        throw InternalError("chromatic certificate is not an excess");
      break;
    }
    case CertificateKind::odd_cycle: {
      if (!fragment)
        throw InternalError("odd-cycle certificate lacks its fragment");
      if (odd_cycle.size() % 2 == 0 || odd_cycle.size() < 3)
        throw InternalError("certified cycle is not odd");
      std::vector<int> idx;
      for (const auto& name : odd_cycle)
        idx.push_back(fragment->index_of(name));
      for (std::size_t i = 0; i < idx.size(); ++i) {
        if (!fragment->adjacent(idx[i], idx[(i + 1) % idx.size()]))
          throw InternalError("certified cycle is not closed in the fragment");
        for (std::size_t j = i + 1; j < idx.size(); ++j)
          if (idx[i] == idx[j])
            throw InternalError("certified cycle repeats a vertex");
      }
      break;
    }
    case CertificateKind::no_embedding: {
      if (!source_graph || !target_graph)
        throw InternalError("no-embedding certificate lacks its graphs");
      if (injective_embedding(*source_graph, *target_graph))
        throw InternalError("an embedding exists after all");
      break;
    }
  }
}

nlohmann::ordered_json ObstructionCertificate::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = to_string(kind);
  nlohmann::ordered_json payload;
  payload["source_rank"] = source_rank;
  payload["target_rank"] = target_rank;
  switch (kind) {
    case CertificateKind::rank_excess:
      payload["clique"] = witness_clique;
      break;
    case CertificateKind::chromatic_excess:
      payload["chromatic_number"] = fragment_chromatic;
      payload["fragment"] = fragment->to_json();
      break;
    case CertificateKind::odd_cycle:
      payload["cycle"] = odd_cycle;
      payload["fragment"] = fragment->to_json();
      break;
    case CertificateKind::no_embedding:
      payload["source"] = source_graph->to_json();
      payload["target"] = target_graph->to_json();
      break;
  }
  j["payload"] = std::move(payload);
  j["citation"] = citation;
  j["advisory"] = advisory;
  return j;
}

std::string ObstructionCertificate::to_text() const {
  std::ostringstream out;
  out << "certificate: " << to_string(kind)
      << (advisory ? " (advisory)" : "") << "\n";
  switch (kind) {
    case CertificateKind::rank_excess: {
      out << "  clique of size " << source_rank << " vs target rank "
          << target_rank << ": {";
      for (std::size_t i = 0; i < witness_clique.size(); ++i)
        out << (i ? "," : "") << witness_clique[i];
      out << "}\n";
      break;
    }
    case CertificateKind::chromatic_excess:
      out << "  boundary fragment needs " << fragment_chromatic
          << " colors vs " << target_rank << " factors\n";
      break;
    case CertificateKind::odd_cycle: {
      out << "  odd cycle of length " << odd_cycle.size() << ": ";
      for (std::size_t i = 0; i < odd_cycle.size(); ++i)
        out << (i ? " - " : "") << odd_cycle[i];
      out << "\n";
      break;
    }
    case CertificateKind::no_embedding:
      out << "  no edge-preserving injection into the target graph\n";
      break;
  }
  out << "  basis: " << citation << "\n";
  return out.str();
}

ObstructionOutcome obstruct_product(const DefiningGraph& g, int n, int radius,
                                    const ObstructionLimits& limits) {
  if (n < 1) throw DomainError("target factor count must be >= 1");
  if (g.size() == 0) throw DomainError("empty graph");
  ObstructionOutcome outcome;
  const int omega = clique_number(g);

  if (omega > n) {
    ObstructionCertificate cert;
    cert.kind = CertificateKind::rank_excess;
    cert.citation = kRankCitation;
    cert.source_rank = omega;
    cert.target_rank = n;
    cert.source_graph = g;
    for (const auto& c : maximal_cliques(g))
      if (static_cast<int>(c.members.size()) == omega) {
        for (int v : c.members) cert.witness_clique.push_back(g.name(v));
        break;
      }
    cert.verify();
    outcome.certificate = std::move(cert);
    return outcome;
  }

  if (omega < n) {
    outcome.reason =
        "rank deficit: clique number " + std::to_string(omega) +
        " is below the target rank " + std::to_string(n) +
        "; the boundary-embedding obstruction does not apply";
    return outcome;
  }

  const auto fragment = BoundaryFragment::build(g, radius, limits.boundary);
  const auto fragment_graph = fragment.to_defining_graph();

  if (n == 2) {
    if (const auto cycle = shortest_odd_cycle(fragment_graph)) {
      ObstructionCertificate cert;
      cert.kind = CertificateKind::odd_cycle;
      cert.citation = kOddCycleCitation;
      cert.source_rank = omega;
      cert.target_rank = n;
      cert.fragment = fragment_graph;
      for (int v : *cycle) cert.odd_cycle.push_back(fragment_graph.name(v));
      cert.verify();
      outcome.certificate = std::move(cert);
      return outcome;
    }
    outcome.reason =
        "inconclusive: boundary fragment at radius " +
        std::to_string(radius) + " is bipartite";
    return outcome;
  }

  if (static_cast<int>(fragment_graph.size()) > limits.max_chi_vertices)
    throw ResourceLimitError(
        "boundary fragment too large for exact chromatic search (" +
        std::to_string(fragment_graph.size()) + " > " +
        std::to_string(limits.max_chi_vertices) + " vertices)");
  const int chi = chromatic_number(fragment_graph, limits.max_chi_vertices);
  if (chi > n) {
    ObstructionCertificate cert;
    cert.kind = CertificateKind::chromatic_excess;
    cert.citation = kBoundaryCitation;
    cert.source_rank = omega;
    cert.target_rank = n;
    cert.fragment = fragment_graph;
    cert.fragment_chromatic = chi;
    cert.verify();
    outcome.certificate = std::move(cert);
    return outcome;
  }
  outcome.reason = "inconclusive: boundary fragment at radius " +
                   std::to_string(radius) + " is " + std::to_string(n) +
                   "-colorable";
  return outcome;
}

ObstructionOutcome obstruct_finite_target(const DefiningGraph& h,
                                          const DefiningGraph& t) {
  ObstructionOutcome outcome;
  if (injective_embedding(h, t)) {
    outcome.reason = "inconclusive: an edge-preserving injection exists";
    return outcome;
  }
  ObstructionCertificate cert;
  cert.kind = CertificateKind::no_embedding;
  cert.advisory = true;
  cert.citation = kFiniteCitation;
  cert.source_graph = h;
  cert.target_graph = t;
  cert.verify();
  outcome.certificate = std::move(cert);
  return outcome;
}

} // namespace ccb
