#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccb/boundary.hpp"

namespace ccb {

struct ObstructionLimits {
  BoundaryLimits boundary;
  int max_chi_vertices = 20;
};

enum class CertificateKind {
  rank_excess,       // clique number of the source exceeds the target rank
  chromatic_excess,  // boundary fragment needs more colors than factors
  odd_cycle,         // boundary fragment has an odd cycle (2-factor targets)
  no_embedding,      // exhaustive search: fragment does not embed (advisory)
};

std::string to_string(CertificateKind kind);

/// Machine-checkable witness that no quasiisometric embedding exists.
/// verify() independently re-derives the payload; emitting a certificate
/// that fails its own checker is an internal error.
struct ObstructionCertificate {
  CertificateKind kind = CertificateKind::rank_excess;
  bool advisory = false;
  std::string citation;

  int source_rank = 0;
  int target_rank = 0;

  // rank_excess: a maximum clique of the defining graph, by vertex name.
  std::vector<std::string> witness_clique;

  // chromatic_excess / odd_cycle: the boundary fragment and its data.
  std::optional<DefiningGraph> fragment;
  int fragment_chromatic = 0;
  std::vector<std::string> odd_cycle;  // closed walk, by fragment label

  // no_embedding: source and target of the exhaustive search.
  std::optional<DefiningGraph> source_graph;
  std::optional<DefiningGraph> target_graph;

  void verify() const;  // throws InternalError when the payload is unsound
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

struct ObstructionOutcome {
  std::optional<ObstructionCertificate> certificate;
  std::string reason;  // set when no certificate is produced
};

/// Decision procedure for targets Y_1 x ... x Y_n with rank-one factors:
///   clique number > n   -> rank-excess certificate
///   clique number == n  -> boundary fragment; odd cycle (n == 2) or
///                          chromatic excess; otherwise inconclusive
///   clique number < n   -> inconclusive (rank deficit, preconditions unmet)
/// An absent certificate never asserts that an embedding exists.
ObstructionOutcome obstruct_product(const DefiningGraph& g, int n, int radius,
                                    const ObstructionLimits& limits = {});

/// Finite-target check: if h admits no edge-preserving injection into t,
/// returns an advisory certificate (sound only when t provably contains the
/// whole relevant boundary graph).
ObstructionOutcome obstruct_finite_target(const DefiningGraph& h,
                                          const DefiningGraph& t);

} // namespace ccb
