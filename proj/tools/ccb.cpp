// ccb: branching analysis of right-angled Artin groups from their defining
// graphs. Subcommands: analyze, boundary, obstruct, median, words.
//
// Exit codes: 0 analysis completed (certificate or not), 1 usage or parse
// error, 3 internal invariant violation, 4 resource bound exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ccb/boundary.hpp"
#include "ccb/branching.hpp"
#include "ccb/median.hpp"
#include "ccb/obstruction.hpp"
#include "ccb/runtime.hpp"
#include "ccb/words.hpp"

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ccb::ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ccb::DefiningGraph load_graph(const std::string& path) {
  return ccb::DefiningGraph::parse(read_file(path));
}

// Fragment elements on the command line come as compact tokens ("ab",
// "a^-1b"), with "e" for the identity when no generator has that name.
// Quoted standard word syntax works too.
ccb::Word parse_compact_word(const ccb::DefiningGraph& g,
                             const std::string& token) {
  if (token.empty() || token == "\xce\xb5") return {};
  if (token == "e" && g.find("e") < 0) return {};
  if (g.find(token) >= 0) return {{g.find(token), +1}};
  ccb::Word w;
  std::size_t pos = 0;
  while (pos < token.size()) {
    int best_len = 0, best_gen = -1;
    for (int v = 0; v < static_cast<int>(g.size()); ++v) {
      const auto& name = g.name(v);
      if (token.compare(pos, name.size(), name) == 0 &&
          static_cast<int>(name.size()) > best_len) {
        best_len = static_cast<int>(name.size());
        best_gen = v;
      }
    }
    if (best_gen < 0)
      throw ccb::ParseError("cannot read element token: " + token);
    pos += best_len;
    int sign = +1;
    if (token.compare(pos, 3, "^-1") == 0) {
      sign = -1;
      pos += 3;
    }
    w.push_back({best_gen, sign});
  }
  return w;
}

std::vector<ccb::NormalForm> parse_elements(const ccb::DefiningGraph& g,
                                            const std::vector<std::string>&
                                                args) {
  std::vector<ccb::NormalForm> out;
  for (const auto& arg : args) {
    std::istringstream in(arg);
    std::string tok;
    while (in >> tok)
      out.push_back(ccb::normalize(g, parse_compact_word(g, tok)));
  }
  return out;
}

std::string nf_label(const ccb::DefiningGraph& g, const ccb::NormalForm& nf) {
  return nf.empty() ? "\xce\xb5" : nf.to_string(g);
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_analyze(const std::string& path, bool json) {
  const auto g = load_graph(path);
  const auto report = ccb::classify_all(g);
  if (json)
    emit(report.to_json(g));
  else
    std::cout << report.to_text(g);
  return 0;
}

int cmd_boundary(const std::string& path, int radius, bool json,
                 const ccb::BoundaryLimits& limits) {
  const auto g = load_graph(path);
  const auto fragment = ccb::BoundaryFragment::build(g, radius, limits);
  if (json) {
    emit(fragment.to_json());
    return 0;
  }
  std::cout << "vertices: " << fragment.size() << "\n"
            << "edges: " << fragment.edge_count() << "\n";
  for (const auto& [i, j] : fragment.edges())
    std::cout << fragment.label(i) << " -- " << fragment.label(j) << "\n";
  return 0;
}

int cmd_obstruct(const std::string& path, const std::string& target_spec,
                 int radius, bool json, const ccb::ObstructionLimits& limits) {
  const auto g = load_graph(path);
  ccb::TargetDescriptor target;
  if (target_spec.rfind("multipartite:", 0) == 0)
    target = ccb::TargetDescriptor::parse_spec(target_spec);
  else
    target = ccb::TargetDescriptor::finite(load_graph(target_spec));

  ccb::ObstructionOutcome outcome;
  if (target.kind == ccb::TargetDescriptor::Kind::complete_multipartite) {
    outcome = ccb::obstruct_product(g, target.parts, radius, limits);
  } else {
    const auto fragment =
        ccb::BoundaryFragment::build(g, radius, limits.boundary);
    outcome = ccb::obstruct_finite_target(fragment.to_defining_graph(),
                                          *target.graph);
  }
  if (outcome.certificate) outcome.certificate->verify();

  if (json) {
    ordered_json j;
    j["graph"] = g.to_json();
    j["target"] = target.describe();
    j["radius"] = radius;
    j["certificate"] = outcome.certificate
                           ? outcome.certificate->to_json()
                           : ordered_json(nullptr);
    if (!outcome.reason.empty()) j["reason"] = outcome.reason;
    emit(j);
    return 0;
  }
  std::cout << "target: " << target.describe() << "\n";
  if (outcome.certificate)
    std::cout << outcome.certificate->to_text();
  else
    std::cout << "certificate: null\n  " << outcome.reason << "\n";
  return 0;
}

int cmd_median(const std::string& path, int radius, const std::string& action,
               const std::vector<std::string>& args, bool json,
               const ccb::FragmentLimits& limits) {
  const auto g = load_graph(path);
  const auto fragment = ccb::MedianFragment::build(g, radius, limits);

  if (action == "verify") {
    const auto report = fragment.verify_median_axioms();
    if (json) {
      ordered_json j;
      j["vertices"] = report.vertices;
      j["triples_checked"] = report.triples_checked;
      j["failures"] = report.failures;
      j["sampled"] = report.sampled;
      j["method"] = report.method;
      emit(j);
    } else {
      std::cout << "vertices: " << report.vertices << "\n"
                << "triples checked: " << report.triples_checked
                << (report.sampled ? " (sampled)" : "") << "\n"
                << "failures: " << report.failures << "\n";
    }
    if (!report.passed())
      throw ccb::InternalError("median axioms failed on a built fragment");
    return 0;
  }
  if (action == "rank") {
    const int dim = fragment.max_cube_dim();
    if (json)
      emit(ordered_json{{"max_cube_dim", dim}});
    else
      std::cout << dim << "\n";
    return 0;
  }
  if (action == "hull") {
    if (args.empty()) throw ccb::ParseError("hull needs seed elements");
    std::vector<int> seeds;
    for (const auto& nf : parse_elements(g, args))
      seeds.push_back(fragment.index_of(nf));
    const auto hull = fragment.hull(seeds);
    if (json) {
      ordered_json j = ordered_json::array();
      for (int v : hull) j.push_back(nf_label(g, fragment.element(v)));
      emit(ordered_json{{"hull", j}});
    } else {
      for (int v : hull) std::cout << nf_label(g, fragment.element(v)) << "\n";
    }
    return 0;
  }
  if (action == "singular") {
    if (args.empty()) throw ccb::ParseError("singular needs a vertex path");
    std::vector<int> ipath;
    for (const auto& nf : parse_elements(g, args))
      ipath.push_back(fragment.index_of(nf));
    const bool singular = fragment.is_singular_path(ipath);
    if (json)
      emit(ordered_json{{"singular", singular}});
    else
      std::cout << (singular ? "true" : "false") << "\n";
    return 0;
  }
  if (action == "export") {
    emit(fragment.export_json());
    return 0;
  }
  throw ccb::ParseError("unknown median action: " + action +
                        " (expected verify|rank|hull|singular|export)");
}

int cmd_words(const std::string& path, const std::string& normal_form,
              const std::string& identity, std::vector<std::string> commute,
              bool json, const ccb::WordLimits& limits) {
  const auto g = load_graph(path);
  ordered_json j;
  bool any = false;
  std::ostringstream text;
  if (!normal_form.empty()) {
    const auto nf = ccb::normalize(g, ccb::parse_word(g, normal_form), limits);
    j["normal_form"] = nf.to_string(g);
    j["length"] = nf.length();
    text << nf_label(g, nf) << "\n";
    any = true;
  }
  if (!identity.empty()) {
    const bool id = ccb::is_identity(g, ccb::parse_word(g, identity), limits);
    j["is_identity"] = id;
    text << (id ? "true" : "false") << "\n";
    any = true;
  }
  if (!commute.empty()) {
    const auto u = ccb::normalize(g, ccb::parse_word(g, commute[0]), limits);
    const auto w = ccb::normalize(g, ccb::parse_word(g, commute[1]), limits);
    const bool c = ccb::commutes(g, u, w);
    j["commutes"] = c;
    text << (c ? "true" : "false") << "\n";
    any = true;
  }
  if (!any)
    throw ccb::ParseError(
        "words needs one of --normal-form, --is-identity, --commutes");
  if (json)
    emit(j);
  else
    std::cout << text.str();
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"branching analysis for right-angled Artin groups"};
  app.require_subcommand(1);

  unsigned threads = 0;
  if (const char* env = std::getenv("CCB_THREADS"))
    threads = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  app.add_option("--threads", threads, "worker thread budget");

  std::string graph_path, target_spec, action, normal_form, identity;
  std::vector<std::string> elements, commute;
  int radius = 0;
  bool json = false;
  ccb::FragmentLimits fragment_limits;
  ccb::ObstructionLimits obstruction_limits;
  ccb::WordLimits word_limits;

  auto* analyze = app.add_subcommand("analyze", "branching classification");
  analyze->add_option("graph", graph_path)->required();
  analyze->add_flag("--json", json);

  auto* boundary =
      app.add_subcommand("boundary", "strongly-bc boundary fragment");
  boundary->add_option("graph", graph_path)->required();
  boundary->add_option("--radius", radius)
      ->check(CLI::NonNegativeNumber);
  boundary->add_flag("--json", json);
  boundary->add_option("--max-fragment",
                       obstruction_limits.boundary.max_fragment_vertices);

  auto* obstruct =
      app.add_subcommand("obstruct", "embedding obstruction certificates");
  obstruct->add_option("graph", graph_path)->required();
  obstruct->add_option("--target", target_spec, "multipartite:N or a file")
      ->required();
  obstruct->add_option("--radius", radius)->check(CLI::NonNegativeNumber);
  obstruct->add_flag("--json", json);
  obstruct->add_option("--max-fragment",
                       obstruction_limits.boundary.max_fragment_vertices);
  obstruct->add_option("--max-chi-vertices",
                       obstruction_limits.max_chi_vertices);

  auto* median = app.add_subcommand("median", "median fragment queries");
  median->add_option("graph", graph_path)->required();
  median->add_option("action", action,
                     "verify | rank | hull | singular | export")
      ->required();
  median->add_option("elements", elements, "elements for hull/singular");
  median->add_option("--radius", radius)->check(CLI::NonNegativeNumber);
  median->add_option("--max-fragment", fragment_limits.max_vertices);
  median->add_flag("--json", json);

  auto* words = app.add_subcommand("words", "word problem queries");
  words->add_option("graph", graph_path)->required();
  words->add_option("--normal-form", normal_form);
  words->add_option("--is-identity", identity);
  words->add_option("--commutes", commute)->expected(2);
  words->add_option("--max-word-length", word_limits.max_word_length);
  words->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (threads > 0) ccb::set_thread_budget(threads);

  try {
    if (*analyze) return cmd_analyze(graph_path, json);
    if (*boundary)
      return cmd_boundary(graph_path, radius, json,
                          obstruction_limits.boundary);
    if (*obstruct)
      return cmd_obstruct(graph_path, target_spec, radius, json,
                          obstruction_limits);
    if (*median)
      return cmd_median(graph_path, radius, action, elements, json,
                        fragment_limits);
    if (*words)
      return cmd_words(graph_path, normal_form, identity, commute, json,
                       word_limits);
  } catch (const ccb::ResourceLimitError& e) {
    std::cerr << "resource bound: " << e.what() << "\n";
    return 4;
  } catch (const ccb::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const ccb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
