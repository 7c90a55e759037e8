#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ccb/graph.hpp"

namespace ccb {

/// One signed generator. Letter order is (generator index, then sign with
/// +1 before -1); it induces the shortlex order on words.
struct Letter {
  int gen = 0;
  int sign = +1;

  Letter inverse() const { return {gen, -sign}; }
  bool operator==(const Letter&) const = default;
  auto operator<=>(const Letter& o) const {
    if (auto c = gen <=> o.gen; c != 0) return c;
    return (sign < 0) <=> (o.sign < 0);
  }
};

using Word = std::vector<Letter>;

struct WordLimits {
  int max_word_length = 64;
  int max_conjugator_radius = 6;
  std::size_t max_coset_states = 1u << 20;
};

/// Whitespace-separated tokens, each "name" or "name^-1".
Word parse_word(const DefiningGraph& g, std::string_view text);

/// Inverse of the parse: tokens joined by single spaces, empty word -> "".
std::string word_to_string(const DefiningGraph& g, const Word& w);

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);

/// Shortlex normal form of a group element of A_Gamma. Two NormalForms are
/// equal sequences iff they represent the same element.
class NormalForm {
public:
  NormalForm() = default;

  const Word& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  std::string to_string(const DefiningGraph& g) const {
    return word_to_string(g, letters_);
  }

  bool operator==(const NormalForm&) const = default;
  /// Shortlex: length first, then letterwise.
  auto operator<=>(const NormalForm& o) const {
    if (auto c = letters_.size() <=> o.letters_.size(); c != 0) return c;
    return letters_ <=> o.letters_;
  }

private:
  friend NormalForm normalize(const DefiningGraph&, const Word&,
                              const WordLimits&);
  explicit NormalForm(Word w) : letters_(std::move(w)) {}
  Word letters_;
};

/// Full cancellation followed by least-lexicographic extraction within the
/// commutation class. Throws DomainError on letters outside Gamma and
/// ResourceLimitError when the input exceeds limits.max_word_length.
NormalForm normalize(const DefiningGraph& g, const Word& w,
                     const WordLimits& limits = {});

bool is_identity(const DefiningGraph& g, const Word& w,
                 const WordLimits& limits = {});

/// True iff u and w commute as group elements.
bool commutes(const DefiningGraph& g, const NormalForm& u,
              const NormalForm& w);

NormalForm nf_mul(const DefiningGraph& g, const NormalForm& a,
                  const NormalForm& b);
NormalForm nf_inverse(const DefiningGraph& g, const NormalForm& a);

/// A conjugate g.v.g^-1 of a standard generator v, keyed by the canonical
/// (shortlex-minimal) representative of the coset g<star(v)>. The
/// centralizer of v is the subgroup generated by the closed star of v, so
/// these pairs are in bijection with the conjugates themselves.
struct ConjugateGenerator {
  int base = 0;
  NormalForm conjugator;

  bool operator==(const ConjugateGenerator&) const = default;
  auto operator<=>(const ConjugateGenerator&) const = default;

  /// The element conjugator . base . conjugator^-1 as a word.
  Word element_word() const;
};

/// Canonicalizes (base, conj): greedy right-multiplication by closed-star
/// generators while the normal form shortens, then an exhaustive same-length
/// sweep. Identical for any two words denoting the same conjugate.
ConjugateGenerator conjugate_canonical(const DefiningGraph& g, int base,
                                       const Word& conj,
                                       const WordLimits& limits = {});

/// All normal forms of length <= radius, sorted shortlex.
std::vector<NormalForm> enumerate_ball(const DefiningGraph& g, int radius,
                                       const WordLimits& limits = {});

/// All distinct conjugates of `base` whose canonical conjugator has length
/// <= radius, sorted by conjugator. Colliding raw conjugators are
/// re-verified through the word problem before being merged.
std::vector<ConjugateGenerator> enumerate_conjugates(
    const DefiningGraph& g, int base, int radius,
    const WordLimits& limits = {});

} // namespace ccb
