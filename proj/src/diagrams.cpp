#include "arrowkernel/diagrams.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "arrowkernel/error.hpp"

namespace arrowkernel {
namespace {

// Linear positions of both endpoints of each dense letter id.
struct Endpoints {
  std::vector<std::uint16_t> id;
  std::vector<std::pair<std::size_t, std::size_t>> ends;
};

Endpoints endpoints(std::span<const Token> tokens) {
  std::vector<std::uint32_t> distinct;
  for (const Token& t : tokens)
    if (t.role == Role::Start) distinct.push_back(t.letter);
  std::sort(distinct.begin(), distinct.end());
  Endpoints e;
  e.id.resize(tokens.size());
  e.ends.assign(distinct.size(), {SIZE_MAX, SIZE_MAX});
  for (std::size_t p = 0; p < tokens.size(); ++p) {
    auto l = static_cast<std::uint16_t>(
        std::lower_bound(distinct.begin(), distinct.end(), tokens[p].letter) -
        distinct.begin());
    e.id[p] = l;
    auto& [first, second] = e.ends[l];
    (first == SIZE_MAX ? first : second) = p;
  }
  return e;
}

}  // namespace

Filter parse_filter(std::string_view name) {
  if (name == "all") return Filter::All;
  if (name == "conn" || name == "connected") return Filter::Connected;
  if (name == "irr" || name == "irreducible") return Filter::Irreducible;
  throw Error("unknown filter '" + std::string(name) + "'");
}

std::string_view filter_name(Filter f) {
  switch (f) {
    case Filter::All: return "all";
    case Filter::Connected: return "conn";
    case Filter::Irreducible: return "irr";
  }
  return "all";
}

void check_window(int b, int d) {
  if (b < 1 || b > d)
    throw WindowError("invalid arrow window " + std::to_string(b) + ".." +
                      std::to_string(d) + " (need 1 <= b <= d)");
}

bool is_connected(std::span<const Token> tokens) {
  const std::size_t len = tokens.size();
  if (len == 0) return true;
  Endpoints e = endpoints(tokens);
  std::vector<char> inside(e.ends.size());
  for (std::size_t s = 0; s < len; ++s) {
    std::fill(inside.begin(), inside.end(), 0);
    std::size_t open = 0;
    for (std::size_t l = 1; l < len; ++l) {
      std::size_t p = (s + l - 1) % len;
      if (inside[e.id[p]]) {
        --open;
      } else {
        inside[e.id[p]] = 1;
        ++open;
      }
      if (open == 0) return false;
    }
  }
  return true;
}

bool is_irreducible(std::span<const Token> tokens) {
  Endpoints e = endpoints(tokens);
  const std::size_t n = e.ends.size();
  for (std::size_t a = 0; a < n; ++a) {
    auto [pa, qa] = e.ends[a];
    bool crossed = false;
    for (std::size_t c = 0; c < n && !crossed; ++c) {
      if (c == a) continue;
      auto [pc, qc] = e.ends[c];
      bool in1 = pa < pc && pc < qa;
      bool in2 = pa < qc && qc < qa;
      crossed = in1 != in2;
    }
    if (!crossed) return false;
  }
  return true;
}

Classification classify(const OrientedGaussWord& w) {
  return {is_connected(w.tokens()), is_irreducible(w.tokens())};
}

Classification classify(const ArrowDiagram& x) { return classify(x.word()); }

bool satisfies(Filter f, const ArrowDiagram& x) {
  switch (f) {
    case Filter::All: return true;
    case Filter::Connected: return is_connected(x.word().tokens());
    case Filter::Irreducible: return is_irreducible(x.word().tokens());
  }
  return true;
}

std::vector<ChordWord> enumerate_normal_pairings(int d) {
  std::vector<ChordWord> level{ChordWord{}};
  for (int k = 1; k <= d; ++k) {
    const std::size_t len = 2 * static_cast<std::size_t>(k);
    std::vector<ChordWord> next;
    next.reserve(level.size() * (len - 1));
    for (const ChordWord& w : level) {
      for (std::size_t latter = 1; latter < len; ++latter) {
        ChordWord v;
        v.letters.resize(len);
        v.letters[0] = 1;
        v.letters[latter] = 1;
        std::size_t src = 0;
        for (std::size_t p = 1; p < len; ++p)
          if (p != latter) v.letters[p] = w.letters[src++] + 1;
        next.push_back(std::move(v));
      }
    }
    level = std::move(next);
  }
  return level;
}

DiagramTable::DiagramTable(Window window, Filter filter,
                           std::vector<ArrowDiagram> entries)
    : window_(window), filter_(filter), entries_(std::move(entries)) {
  check_window(window.b, window.d);
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const ArrowDiagram& x = entries_[i];
    const auto n = static_cast<int>(x.arrows());
    if (n < window.b || n > window.d)
      throw WindowError("table entry " + std::to_string(i + 1) + " has " +
                        std::to_string(n) + " arrows, outside the window");
    if (i > 0 && !(entries_[i - 1] < x))
      throw FormatError("table entries must be distinct and sorted (entry " +
                        std::to_string(i + 1) + ")");
    if (!satisfies(filter, x))
      throw FormatError("table entry " + std::to_string(i + 1) +
                        " fails the filter");
    index_.emplace(x.key(), i);
  }
}

std::optional<std::size_t> DiagramTable::find(const ArrowDiagram& x) const {
  return find(x.key());
}

std::optional<std::size_t> DiagramTable::find(const DiagramKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

DiagramTable enumerate_diagrams(int b, int d, Filter filter, unsigned threads) {
  check_window(b, d);
  threads = std::max(1u, threads);

  std::vector<std::pair<int, std::vector<ChordWord>>> levels;
  for (int n = b; n <= d; ++n) levels.emplace_back(n, enumerate_normal_pairings(n));

  auto worker = [&](unsigned shard, std::vector<DiagramKey>& out) {
    std::size_t ordinal = 0;
    std::vector<Token> tokens;
    for (const auto& [n, pairings] : levels) {
      const std::uint32_t assignments = 1u << n;
      for (const ChordWord& c : pairings) {
        if (ordinal++ % threads != shard) continue;
        tokens.resize(c.letters.size());
        // Bit for letter l (most significant for l = 1) says whether its
        // first occurrence is the End.
        for (std::uint32_t bits = 0; bits < assignments; ++bits) {
          std::uint32_t seen = 0;
          for (std::size_t p = 0; p < c.letters.size(); ++p) {
            std::uint32_t l = c.letters[p];
            bool first = !(seen & (1u << l));
            seen |= 1u << l;
            bool end_first = (bits >> (n - l)) & 1u;
            tokens[p] = {l, first == end_first ? Role::End : Role::Start};
          }
          out.push_back(canonical_key(tokens));
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  };

  std::vector<std::vector<DiagramKey>> shards(threads);
  if (threads == 1) {
    worker(0, shards[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned s = 0; s < threads; ++s)
      pool.emplace_back(worker, s, std::ref(shards[s]));
    for (auto& t : pool) t.join();
  }

  std::vector<ArrowDiagram> entries;
  for (auto& shard : shards)
    for (auto& k : shard) entries.push_back(ArrowDiagram::from_key(std::move(k)));
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  std::erase_if(entries, [&](const ArrowDiagram& x) { return !satisfies(filter, x); });
  return DiagramTable({b, d}, filter, std::move(entries));
}

MirrorReport mirror_pairs(const DiagramTable& t) {
  MirrorReport r;
  r.partner.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto j = t.find(mirror(t[i]));
    if (!j)
      throw IndexError("mirror image of table entry " + std::to_string(i + 1) +
                       " is not in the table");
    r.partner[i] = *j;
    if (*j == i) r.self_mirror.push_back(i);
    else if (i < *j) r.pairs.emplace_back(i, *j);
  }
  return r;
}

}  // namespace arrowkernel
