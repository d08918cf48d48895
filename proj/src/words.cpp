#include "arrowkernel/words.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "arrowkernel/error.hpp"

namespace arrowkernel {
namespace {

void validate(std::span<const Token> tokens) {
  std::unordered_map<std::uint32_t, std::pair<int, int>> seen;
  for (const Token& t : tokens) {
    if (t.letter == 0) throw ZeroLetterError("letter 0 is not allowed");
    auto& [starts, ends] = seen[t.letter];
    (t.role == Role::Start ? starts : ends) += 1;
  }
  for (const auto& [letter, c] : seen) {
    if (c.first != 1 || c.second != 1)
      throw LetterCountError("letter " + std::to_string(letter) +
                             " must occur exactly once as +" +
                             std::to_string(letter) + " and once as -" +
                             std::to_string(letter));
  }
}

Token parse_token(std::string_view s) {
  Role role = Role::Start;
  std::string_view digits = s;
  if (s.front() == '+' || s.front() == '-') {
    role = s.front() == '-' ? Role::End : Role::Start;
    digits.remove_prefix(1);
  }
  std::uint32_t value = 0;
  if (digits.empty() || digits.front() == '+' || digits.front() == '-')
    throw SyntaxError("malformed token '" + std::string(s) + "'");
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size())
    throw SyntaxError("malformed token '" + std::string(s) + "'");
  if (value == 0) throw ZeroLetterError("letter 0 is not allowed");
  return {value, role};
}

}  // namespace

OrientedGaussWord::OrientedGaussWord(std::vector<Token> tokens)
    : tokens_(std::move(tokens)) {
  validate(tokens_);
}

OrientedGaussWord OrientedGaussWord::from_valid_tokens(
    std::vector<Token> tokens) {
  OrientedGaussWord w;
  w.tokens_ = std::move(tokens);
  return w;
}

std::vector<std::uint32_t> OrientedGaussWord::letters() const {
  std::vector<std::uint32_t> out;
  out.reserve(arrows());
  for (const Token& t : tokens_)
    if (t.role == Role::Start) out.push_back(t.letter);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint32_t OrientedGaussWord::max_letter() const {
  std::uint32_t m = 0;
  for (const Token& t : tokens_) m = std::max(m, t.letter);
  return m;
}

ArrowDiagram ArrowDiagram::from_key(DiagramKey key) {
  ArrowDiagram x;
  x.key_ = std::move(key);
  return x;
}

OrientedGaussWord ArrowDiagram::word() const {
  std::vector<Token> tokens;
  tokens.reserve(key_.size());
  for (char16_t c : key_)
    tokens.push_back({static_cast<std::uint32_t>(c >> 1),
                      (c & 1) ? Role::End : Role::Start});
  return OrientedGaussWord::from_valid_tokens(std::move(tokens));
}

std::string ArrowDiagram::text() const { return format_word(word()); }

OrientedGaussWord parse_word(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',';
  };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) tokens.push_back(parse_token(text.substr(i, j - i)));
    i = j;
  }
  return OrientedGaussWord(std::move(tokens));
}

std::string format_word(const OrientedGaussWord& w) {
  std::string out;
  for (const Token& t : w.tokens()) {
    if (!out.empty()) out += ' ';
    if (t.role == Role::End) out += '-';
    out += std::to_string(t.letter);
  }
  return out;
}

std::string format_chord_word(const ChordWord& w) {
  std::string out;
  for (std::uint32_t l : w.letters) {
    if (!out.empty()) out += ' ';
    out += std::to_string(l);
  }
  return out;
}

OrientedGaussWord normalize_word(const OrientedGaussWord& w) {
  std::unordered_map<std::uint32_t, std::uint32_t> relabel;
  std::vector<Token> tokens;
  tokens.reserve(w.length());
  for (const Token& t : w.tokens()) {
    auto [it, fresh] =
        relabel.try_emplace(t.letter, static_cast<std::uint32_t>(relabel.size() + 1));
    tokens.push_back({it->second, t.role});
  }
  return OrientedGaussWord::from_valid_tokens(std::move(tokens));
}

DiagramKey canonical_key(std::span<const Token> tokens) {
  const std::size_t len = tokens.size();
  if (len == 0) return {};

  // Dense ids so the relabel scratch array stays tiny.
  std::vector<std::uint32_t> distinct;
  distinct.reserve(len / 2);
  for (const Token& t : tokens)
    if (t.role == Role::Start) distinct.push_back(t.letter);
  std::sort(distinct.begin(), distinct.end());
  std::vector<std::uint16_t> id(len);
  for (std::size_t p = 0; p < len; ++p)
    id[p] = static_cast<std::uint16_t>(
        std::lower_bound(distinct.begin(), distinct.end(), tokens[p].letter) -
        distinct.begin());

  DiagramKey best, cur(len, u'\0');
  std::vector<std::uint16_t> label(len / 2);
  // A normalized word always opens with the Start of letter 1, so only
  // rotations beginning at a Start token can be minimal.
  for (std::size_t s = 0; s < len; ++s) {
    if (tokens[s].role != Role::Start) continue;
    std::fill(label.begin(), label.end(), 0);
    std::uint16_t next = 1;
    int cmp = best.empty() ? -1 : 0;
    for (std::size_t q = 0; q < len; ++q) {
      std::size_t p = s + q;
      if (p >= len) p -= len;
      std::uint16_t& lab = label[id[p]];
      if (lab == 0) lab = next++;
      auto code = static_cast<char16_t>(
          2 * lab + (tokens[p].role == Role::End ? 1 : 0));
      if (cmp == 0) {
        if (code < best[q]) cmp = -1;
        else if (code > best[q]) { cmp = 1; break; }
      }
      cur[q] = code;
    }
    if (cmp < 0) best = cur;
  }
  return best;
}

ArrowDiagram canonical_form(const OrientedGaussWord& w) {
  return ArrowDiagram::from_key(canonical_key(w.tokens()));
}

OrientedGaussWord reverse_word(const OrientedGaussWord& w) {
  std::vector<Token> tokens(w.tokens().rbegin(), w.tokens().rend());
  return OrientedGaussWord::from_valid_tokens(std::move(tokens));
}

OrientedGaussWord rotate_word(const OrientedGaussWord& w, std::ptrdiff_t t) {
  const auto len = static_cast<std::ptrdiff_t>(w.length());
  if (len == 0) return w;
  std::ptrdiff_t shift = ((t % len) + len) % len;
  std::vector<Token> tokens(w.tokens().begin(), w.tokens().end());
  std::rotate(tokens.begin(), tokens.begin() + shift, tokens.end());
  return OrientedGaussWord::from_valid_tokens(std::move(tokens));
}

OrientedGaussWord subword(const OrientedGaussWord& w,
                          std::span<const std::uint32_t> keep) {
  std::vector<std::uint32_t> present = w.letters();
  for (std::uint32_t l : keep)
    if (!std::binary_search(present.begin(), present.end(), l))
      throw UnknownLetterError("letter " + std::to_string(l) +
                               " does not occur in the word");
  std::vector<std::uint32_t> k(keep.begin(), keep.end());
  std::sort(k.begin(), k.end());
  std::vector<Token> tokens;
  for (const Token& t : w.tokens())
    if (std::binary_search(k.begin(), k.end(), t.letter)) tokens.push_back(t);
  return normalize_word(OrientedGaussWord::from_valid_tokens(std::move(tokens)));
}

OrientedGaussWord concatenate(const OrientedGaussWord& v,
                              const OrientedGaussWord& w) {
  const std::uint32_t shift = v.max_letter();
  std::vector<Token> tokens(v.tokens().begin(), v.tokens().end());
  tokens.reserve(v.length() + w.length());
  for (const Token& t : w.tokens()) tokens.push_back({t.letter + shift, t.role});
  return OrientedGaussWord::from_valid_tokens(std::move(tokens));
}

ArrowDiagram mirror(const ArrowDiagram& x) {
  return canonical_form(reverse_word(x.word()));
}

}  // namespace arrowkernel
