#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arrowkernel {

// End is the barred letter of the usual notation.
enum class Role : std::uint8_t { Start = 0, End = 1 };

struct Token {
  std::uint32_t letter = 0;
  Role role = Role::Start;

  friend auto operator<=>(const Token&, const Token&) = default;
};

// Canonical encoding of a word: one code unit per token, 2 * label + role bit.
// Comparing keys lexicographically therefore compares (label, role) pairs
// with Start < End, which is the documented diagram order.
using DiagramKey = std::u16string;

// Linear token sequence in which every letter occurs once as Start and once
// as End. Cyclic semantics only enter through canonical_form and the moves.
class OrientedGaussWord {
 public:
  OrientedGaussWord() = default;

  // Throws ZeroLetterError or LetterCountError on a malformed sequence.
  explicit OrientedGaussWord(std::vector<Token> tokens);

  // Skips validation; for callers that build words from valid pieces.
  static OrientedGaussWord from_valid_tokens(std::vector<Token> tokens);

  std::span<const Token> tokens() const { return tokens_; }
  const Token& operator[](std::size_t i) const { return tokens_[i]; }
  std::size_t length() const { return tokens_.size(); }
  std::size_t arrows() const { return tokens_.size() / 2; }
  bool empty() const { return tokens_.empty(); }

  // Letters in ascending order.
  std::vector<std::uint32_t> letters() const;
  std::uint32_t max_letter() const;

  friend bool operator==(const OrientedGaussWord&,
                         const OrientedGaussWord&) = default;

 private:
  std::vector<Token> tokens_;
};

// An oriented Gauss word class under rotation and relabeling, stored as the
// canonical key of its least representative.
class ArrowDiagram {
 public:
  ArrowDiagram() = default;

  // `key` must already be canonical (as produced by canonical_key).
  static ArrowDiagram from_key(DiagramKey key);

  const DiagramKey& key() const { return key_; }
  std::size_t arrows() const { return key_.size() / 2; }
  OrientedGaussWord word() const;
  std::string text() const;

  friend bool operator==(const ArrowDiagram&, const ArrowDiagram&) = default;
  // Table order: arrow count first, then canonical encoding.
  friend std::strong_ordering operator<=>(const ArrowDiagram& a,
                                          const ArrowDiagram& b) {
    if (auto c = a.key_.size() <=> b.key_.size(); c != 0) return c;
    return a.key_.compare(b.key_) <=> 0;
  }

 private:
  DiagramKey key_;
};

// Unoriented Gauss word (each letter exactly twice), used for the N_d lists.
struct ChordWord {
  std::vector<std::uint32_t> letters;

  friend auto operator<=>(const ChordWord&, const ChordWord&) = default;
};

// "+k" / "k" is the Start of letter k, "-k" its End. Blank text is the empty
// word.
OrientedGaussWord parse_word(std::string_view text);
std::string format_word(const OrientedGaussWord& w);
std::string format_chord_word(const ChordWord& w);

// Relabels letters 1..n by order of first appearance; roles are unchanged.
OrientedGaussWord normalize_word(const OrientedGaussWord& w);

// Least normalized rotation under the (label, role) order.
ArrowDiagram canonical_form(const OrientedGaussWord& w);

// Hot-path variant of canonical_form; `tokens` must form a valid word.
DiagramKey canonical_key(std::span<const Token> tokens);

OrientedGaussWord reverse_word(const OrientedGaussWord& w);

// Cyclic left rotation by t positions (t may be negative or exceed length).
OrientedGaussWord rotate_word(const OrientedGaussWord& w, std::ptrdiff_t t);

// Keeps the tokens whose letter is in `keep` and normalizes the result.
// Throws UnknownLetterError if `keep` names a letter absent from w.
OrientedGaussWord subword(const OrientedGaussWord& w,
                          std::span<const std::uint32_t> keep);

// v followed by w, with w's letters shifted above v's.
OrientedGaussWord concatenate(const OrientedGaussWord& v,
                              const OrientedGaussWord& w);

// Class of the reversed word.
ArrowDiagram mirror(const ArrowDiagram& x);

}  // namespace arrowkernel

template <>
struct std::hash<arrowkernel::ArrowDiagram> {
  std::size_t operator()(const arrowkernel::ArrowDiagram& x) const noexcept {
    return std::hash<arrowkernel::DiagramKey>{}(x.key());
  }
};
