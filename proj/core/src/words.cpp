#include "ccb/words.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ccb {

Word parse_word(const DefiningGraph& g, std::string_view text) {
  Word w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "\xce\xb5") continue;  // standalone epsilon means identity
    int sign = +1;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      sign = -1;
      tok.erase(tok.size() - 3);
    }
    const int v = g.find(tok);
    if (v < 0) throw ParseError("unknown generator: " + tok);
    w.push_back({v, sign});
  }
  return w;
}

std::string word_to_string(const DefiningGraph& g, const Word& w) {
  std::ostringstream out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out << ' ';
    out << g.name(w[i].gen);
    if (w[i].sign < 0) out << "^-1";
  }
  return out.str();
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l.sign = -l.sign;
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

namespace {

void check_letters(const DefiningGraph& g, const Word& w) {
  for (const auto& l : w) {
    if (l.gen < 0 || l.gen >= static_cast<int>(g.size()))
      throw DomainError("letter over unknown generator index " +
                        std::to_string(l.gen));
    if (l.sign != 1 && l.sign != -1)
      throw DomainError("letter sign must be +1 or -1");
  }
}

// Removes one cancellable pair x, x^-1 whose in-between letters all commute
// with x. Returns true if a pair was removed.
bool cancel_once(const DefiningGraph& g, Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (w[j].gen == w[i].gen) {
        if (w[j].sign == -w[i].sign) {
          w.erase(w.begin() + j);
          w.erase(w.begin() + i);
          return true;
        }
        break;  // same sign blocks any further pairing for position i
      }
      if (!g.adjacent(w[j].gen, w[i].gen)) break;
    }
  }
  return false;
}

// Least-lexicographic representative of the commutation class of a reduced
// word: repeatedly extract the smallest letter whose earlier letters all
// have different, adjacent generators.
Word lex_least(const DefiningGraph& g, Word w) {
  Word out;
  out.reserve(w.size());
  while (!w.empty()) {
    std::size_t best = w.size();
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      bool movable = true;
      for (std::size_t k = 0; k < pos && movable; ++k)
        movable = w[k].gen != w[pos].gen && g.adjacent(w[k].gen, w[pos].gen);
      if (movable && (best == w.size() || w[pos] < w[best])) best = pos;
    }
    out.push_back(w[best]);
    w.erase(w.begin() + best);
  }
  return out;
}

} // namespace

NormalForm normalize(const DefiningGraph& g, const Word& w,
                     const WordLimits& limits) {
  check_letters(g, w);
  if (static_cast<int>(w.size()) > limits.max_word_length)
    throw ResourceLimitError("word longer than limit (" +
                             std::to_string(w.size()) + " > " +
                             std::to_string(limits.max_word_length) + ")");
  Word reduced = w;
  while (cancel_once(g, reduced)) {}
  return NormalForm(lex_least(g, reduced));
}

bool is_identity(const DefiningGraph& g, const Word& w,
                 const WordLimits& limits) {
  return normalize(g, w, limits).empty();
}

namespace {

// Internal multiplications may exceed the user-facing input cap.
WordLimits unbounded() {
  WordLimits l;
  l.max_word_length = 1 << 20;
  return l;
}

} // namespace

bool commutes(const DefiningGraph& g, const NormalForm& u,
              const NormalForm& w) {
  Word comm = concat(concat(u.letters(), w.letters()),
                     concat(inverse(u.letters()), inverse(w.letters())));
  return normalize(g, comm, unbounded()).empty();
}

NormalForm nf_mul(const DefiningGraph& g, const NormalForm& a,
                  const NormalForm& b) {
  return normalize(g, concat(a.letters(), b.letters()), unbounded());
}

NormalForm nf_inverse(const DefiningGraph& g, const NormalForm& a) {
  return normalize(g, inverse(a.letters()), unbounded());
}

Word ConjugateGenerator::element_word() const {
  Word w = conjugator.letters();
  w.push_back({base, +1});
  Word inv = inverse(conjugator.letters());
  w.insert(w.end(), inv.begin(), inv.end());
  return w;
}

ConjugateGenerator conjugate_canonical(const DefiningGraph& g, int base,
                                       const Word& conj,
                                       const WordLimits& limits) {
  if (base < 0 || base >= static_cast<int>(g.size()))
    throw DomainError("unknown base vertex index " + std::to_string(base));
  std::vector<int> star = g.neighbors(base);
  star.push_back(base);
  std::sort(star.begin(), star.end());

  NormalForm cur = normalize(g, conj, limits);
  bool shortened = true;
  while (shortened) {
    shortened = false;
    // Greedy shortening by star letters on the right.
    for (bool again = true; again;) {
      again = false;
      for (int s : star) {
        for (int sign : {+1, -1}) {
          Word cand = cur.letters();
          cand.push_back({s, sign});
          NormalForm nf = normalize(g, cand, unbounded());
          if (nf.length() < cur.length()) {
            cur = std::move(nf);
            again = true;
          }
        }
      }
    }
    // Exhaustive sweep over the same-length plateau. Picks the shortlex
    // least element; restarts if a shorter coset element shows up after all.
    std::set<NormalForm> seen{cur};
    std::deque<NormalForm> queue{cur};
    NormalForm best = cur;
    while (!queue.empty()) {
      NormalForm x = queue.front();
      queue.pop_front();
      for (int s : star) {
        for (int sign : {+1, -1}) {
          Word cand = x.letters();
          cand.push_back({s, sign});
          NormalForm nf = normalize(g, cand, unbounded());
          if (nf.length() < cur.length()) {
            cur = std::move(nf);
            shortened = true;
            queue.clear();
            break;
          }
          if (nf.length() == cur.length() && seen.insert(nf).second) {
            if (nf < best) best = nf;
            if (seen.size() > limits.max_coset_states)
              throw ResourceLimitError("coset sweep exceeded state limit");
            queue.push_back(std::move(nf));
          }
        }
        if (shortened) break;
      }
      if (shortened) break;
    }
    if (!shortened) cur = best;
  }
  return {base, cur};
}

std::vector<NormalForm> enumerate_ball(const DefiningGraph& g, int radius,
                                       const WordLimits& limits) {
  if (radius < 0) throw DomainError("radius must be non-negative");
  std::set<NormalForm> seen;
  std::deque<NormalForm> queue;
  seen.insert(NormalForm{});
  queue.push_back(NormalForm{});
  while (!queue.empty()) {
    NormalForm w = queue.front();
    queue.pop_front();
    if (static_cast<int>(w.length()) == radius) continue;
    for (int s = 0; s < static_cast<int>(g.size()); ++s) {
      for (int sign : {+1, -1}) {
        Word cand = w.letters();
        cand.push_back({s, sign});
        NormalForm nf = normalize(g, cand, unbounded());
        if (static_cast<int>(nf.length()) <= radius && seen.insert(nf).second)
          queue.push_back(std::move(nf));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<ConjugateGenerator> enumerate_conjugates(
    const DefiningGraph& g, int base, int radius, const WordLimits& limits) {
  if (base < 0 || base >= static_cast<int>(g.size()))
    throw DomainError("unknown base vertex index " + std::to_string(base));
  if (radius < 0) throw DomainError("radius must be non-negative");
  if (radius > limits.max_conjugator_radius)
    throw ResourceLimitError("conjugator radius " + std::to_string(radius) +
                             " exceeds limit " +
                             std::to_string(limits.max_conjugator_radius));

  std::map<NormalForm, NormalForm> canonical_to_raw;
  for (const auto& c : enumerate_ball(g, radius, limits)) {
    const auto canon = conjugate_canonical(g, base, c.letters(), limits);
    if (static_cast<int>(canon.conjugator.length()) > radius) continue;
    auto [it, inserted] =
        canonical_to_raw.emplace(canon.conjugator, c);
    if (!inserted) {
      // Two raw conjugators merged: re-verify they denote the same element.
      const Word lhs = ConjugateGenerator{base, c}.element_word();
      const Word rhs =
          ConjugateGenerator{base, it->second}.element_word();
      if (!is_identity(g, concat(lhs, inverse(rhs)), unbounded()))
        throw InternalError("canonical conjugator collision for distinct "
                            "conjugates of " + g.name(base));
    }
  }
  std::vector<ConjugateGenerator> out;
  for (const auto& [canon, raw] : canonical_to_raw)
    out.push_back({base, canon});
  return out;
}

} // namespace ccb
