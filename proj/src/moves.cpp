#include "arrowkernel/moves.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "arrowkernel/error.hpp"

namespace arrowkernel {
namespace {

using Group = std::vector<TemplateToken>;

// Letter runs of a template between its arcs.
std::vector<Group> letter_groups(const TemplateWord& t) {
  std::vector<Group> out;
  bool open = false;
  for (const TemplateToken& tok : t) {
    if (std::isupper(static_cast<unsigned char>(tok.symbol))) {
      open = false;
      continue;
    }
    if (!open) out.emplace_back();
    open = true;
    out.back().push_back(tok);
  }
  return out;
}

bool is_rewrite(MoveType t) { return t == MoveType::StrongRIII || t == MoveType::WeakRIII; }

std::vector<Group> groups_for(MoveKind k, bool primed) {
  return letter_groups(move_pattern(move_family(k.type), k.variant, primed));
}

void check_kind(MoveKind k) {
  if (k.variant < 0 || k.variant >= move_variants(k.type))
    throw Error("move " + std::string(family_name(move_family(k.type))) +
                " has no variant " + std::to_string(k.variant));
}

// True iff `pos` places the groups contiguously, in cyclic order, without
// overlap, with roles and letter identities as in the template.
bool realizes(const OrientedGaussWord& w, const std::vector<Group>& groups,
              const std::vector<std::size_t>& pos) {
  const std::size_t n = w.length();
  std::size_t total = 0;
  for (const Group& g : groups) total += g.size();
  if (pos.size() != total || total > n) return false;
  for (std::size_t p : pos)
    if (p >= n) return false;
  std::map<char, std::uint32_t> letter_of;
  std::map<std::uint32_t, char> symbol_of;
  std::size_t idx = 0, used = 0;
  for (const Group& g : groups) {
    const std::size_t rel = (pos[idx] + n - pos[0]) % n;
    if (rel < used) return false;
    for (std::size_t t = 0; t < g.size(); ++t, ++idx) {
      if (pos[idx] != (pos[0] + rel + t) % n) return false;
      const Token& tok = w[pos[idx]];
      if (tok.role != g[t].role) return false;
      auto [a, fa] = letter_of.try_emplace(g[t].symbol, tok.letter);
      auto [b, fb] = symbol_of.try_emplace(tok.letter, g[t].symbol);
      if (a->second != tok.letter || b->second != g[t].symbol) return false;
    }
    used = rel + g.size();
  }
  return used <= n;
}

std::vector<MoveSite> match_sites(const OrientedGaussWord& w, const std::vector<Group>& groups,
                                  Direction dir) {
  const std::size_t n = w.length();
  std::vector<MoveSite> out;
  std::size_t total = 0;
  for (const Group& g : groups) total += g.size();
  if (groups.empty() || total > n) return out;
  std::vector<std::size_t> partner(n);
  {
    std::map<std::uint32_t, std::size_t> first;
    for (std::size_t p = 0; p < n; ++p) {
      auto [it, fresh] = first.try_emplace(w[p].letter, p);
      if (!fresh) {
        partner[p] = it->second;
        partner[it->second] = p;
      }
    }
  }
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> pos;
  // Group starts after the first follow from partners of letters already
  // placed; a group with no such letter tries every start.
  auto extend = [&](auto&& self, std::size_t g) -> void {
    if (g == groups.size()) {
      if (!realizes(w, groups, pos)) return;
      std::vector<std::size_t> key = pos;
      std::sort(key.begin(), key.end());
      if (seen.insert(key).second) out.push_back({pos, dir});
      return;
    }
    std::vector<std::size_t> starts;
    for (std::size_t t = 0; t < groups[g].size() && starts.empty(); ++t) {
      std::size_t idx = 0;
      for (std::size_t h = 0; h < g; ++h)
        for (const TemplateToken& tok : groups[h]) {
          if (tok.symbol == groups[g][t].symbol)
            starts.push_back((partner[pos[idx]] + n - t) % n);
          ++idx;
        }
    }
    if (starts.empty())
      for (std::size_t s = 0; s < n; ++s) starts.push_back(s);
    for (std::size_t s : starts) {
      for (std::size_t t = 0; t < groups[g].size(); ++t) pos.push_back((s + t) % n);
      self(self, g + 1);
      pos.resize(pos.size() - groups[g].size());
    }
  };
  for (std::size_t s0 = 0; s0 < n; ++s0) {
    for (std::size_t t = 0; t < groups[0].size(); ++t) pos.push_back((s0 + t) % n);
    extend(extend, 1);
    pos.clear();
  }
  return out;
}

// One site per cyclic placement: groups go into gaps 0 .. n - 1 of w (gap g
// precedes token g), in any order within a gap. Positions are the start
// indices of the groups in the unnormalized result. An empty w admits only
// the template order, the others being rotations of it.
std::vector<MoveSite> insertion_sites(const OrientedGaussWord& w, const std::vector<Group>& groups) {
  const std::size_t n = w.length();
  std::vector<std::size_t> order(groups.size());
  for (std::size_t g = 0; g < order.size(); ++g) order[g] = g;
  std::vector<MoveSite> out;
  std::vector<std::size_t> slots;
  auto emit = [&] {
    std::vector<std::size_t> pos(groups.size());
    std::size_t shift = 0;
    for (std::size_t r = 0; r < order.size(); ++r) {
      pos[order[r]] = slots[r] + shift;
      shift += groups[order[r]].size();
    }
    out.push_back({std::move(pos), Direction::Backward});
  };
  auto rec = [&](auto&& self, std::size_t lo) -> void {
    if (slots.size() == groups.size()) {
      emit();
      return;
    }
    for (std::size_t s = lo; s < std::max<std::size_t>(n, 1); ++s) {
      slots.push_back(s);
      self(self, s);
      slots.pop_back();
    }
  };
  do {
    rec(rec, 0);
  } while (n > 0 && std::next_permutation(order.begin(), order.end()));
  std::sort(out.begin(), out.end(),
            [](const MoveSite& a, const MoveSite& b) { return a.positions < b.positions; });
  return out;
}

// Group intervals fit in the result and do not overlap.
bool valid_slots(const OrientedGaussWord& w, const MoveSite& s, const std::vector<Group>& groups) {
  if (s.positions.size() != groups.size()) return false;
  std::size_t total = w.length();
  for (const Group& g : groups) total += g.size();
  std::vector<char> used(total, 0);
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (std::size_t t = 0; t < groups[g].size(); ++t) {
      const std::size_t p = s.positions[g] + t;
      if (p >= total || used[p]) return false;
      used[p] = 1;
    }
  return true;
}

}  // namespace

RelatorFamily move_family(MoveType t) {
  switch (t) {
    case MoveType::RI: return RelatorFamily::R1;
    case MoveType::StrongRII: return RelatorFamily::SII;
    case MoveType::WeakRII: return RelatorFamily::WII;
    case MoveType::StrongRIII: return RelatorFamily::SIII;
    case MoveType::WeakRIII: return RelatorFamily::WIII;
  }
  return RelatorFamily::R1;
}

int move_variants(MoveType t) { return family_variants(move_family(t)); }

MoveType parse_move_type(std::string_view name) {
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "ri" || lower == "r1") return MoveType::RI;
  if (lower == "sii") return MoveType::StrongRII;
  if (lower == "wii") return MoveType::WeakRII;
  if (lower == "siii") return MoveType::StrongRIII;
  if (lower == "wiii") return MoveType::WeakRIII;
  throw Error("unknown move '" + std::string(name) + "'");
}

std::string move_name(MoveKind k) {
  std::string s(family_name(move_family(k.type)));
  if (s == "R1") s = "RI";
  if (move_variants(k.type) > 1) s += k.variant == 0 ? "(A)" : "(B)";
  return s;
}

std::vector<MoveKind> parse_move_list(std::string_view list) {
  std::vector<MoveKind> out;
  std::size_t i = 0;
  while (i <= list.size()) {
    std::size_t j = list.find(',', i);
    if (j == std::string_view::npos) j = list.size();
    std::string_view item = list.substr(i, j - i);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const MoveType t = parse_move_type(item);
      for (int v = 0; v < move_variants(t); ++v) {
        const MoveKind k{t, v};
        if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
      }
    }
    i = j + 1;
  }
  if (out.empty()) throw Error("empty move list");
  return out;
}

std::vector<MoveSite> find_sites(const OrientedGaussWord& w, MoveKind k, Direction dir) {
  check_kind(k);
  if (dir == Direction::Forward) return match_sites(w, groups_for(k, false), dir);
  if (is_rewrite(k.type)) return match_sites(w, groups_for(k, true), dir);
  return insertion_sites(w, groups_for(k, false));
}

OrientedGaussWord apply_move(const OrientedGaussWord& w, MoveKind k, const MoveSite& s) {
  check_kind(k);
  const bool backward = s.direction == Direction::Backward;
  const std::vector<Group> groups = groups_for(k, is_rewrite(k.type) && backward);
  std::vector<Token> out;

  if (!is_rewrite(k.type) && backward) {
    if (!valid_slots(w, s, groups))
      throw InvalidSiteError("not an insertion site for " + move_name(k));
    std::map<char, std::uint32_t> fresh;
    for (const Group& g : groups)
      for (const TemplateToken& t : g)
        fresh.try_emplace(t.symbol, w.max_letter() + 1 + static_cast<std::uint32_t>(fresh.size()));
    std::size_t total = w.length();
    for (const Group& g : groups) total += g.size();
    out.assign(total, Token{});
    std::vector<char> taken(total, 0);
    for (std::size_t g = 0; g < groups.size(); ++g)
      for (std::size_t t = 0; t < groups[g].size(); ++t) {
        out[s.positions[g] + t] = {fresh.at(groups[g][t].symbol), groups[g][t].role};
        taken[s.positions[g] + t] = 1;
      }
    std::size_t next = 0;
    for (std::size_t p = 0; p < total; ++p)
      if (!taken[p]) out[p] = w[next++];
    return normalize_word(OrientedGaussWord::from_valid_tokens(std::move(out)));
  }

  if (!realizes(w, groups, s.positions))
    throw InvalidSiteError("positions do not match the " + move_name(k) + " pattern");
  if (!is_rewrite(k.type)) {
    std::vector<char> drop(w.length(), 0);
    for (std::size_t p : s.positions) drop[p] = 1;
    for (std::size_t p = 0; p < w.length(); ++p)
      if (!drop[p]) out.push_back(w[p]);
  } else {
    out.assign(w.tokens().begin(), w.tokens().end());
    for (std::size_t t = 0; t + 1 < s.positions.size(); t += 2)
      std::swap(out[s.positions[t]], out[s.positions[t + 1]]);
  }
  return normalize_word(OrientedGaussWord::from_valid_tokens(std::move(out)));
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  if (n == 0) throw Error("uniform_index over an empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range);
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return static_cast<std::size_t>(x % range);
}

std::vector<WalkStep> random_walk_steps(const OrientedGaussWord& w,
                                        const std::vector<MoveKind>& allowed,
                                        int steps, std::uint64_t seed) {
  for (MoveKind k : allowed) check_kind(k);
  std::mt19937_64 rng(seed);
  std::vector<WalkStep> out;
  OrientedGaussWord cur = w;
  std::vector<std::pair<MoveKind, MoveSite>> options;
  for (int step = 0; step < steps; ++step) {
    options.clear();
    for (MoveKind k : allowed)
      for (Direction d : {Direction::Forward, Direction::Backward})
        for (MoveSite& s : find_sites(cur, k, d)) options.emplace_back(k, std::move(s));
    if (options.empty()) break;
    auto& [k, s] = options[uniform_index(rng, options.size())];
    cur = apply_move(cur, k, s);
    out.push_back({cur, k, s});
  }
  return out;
}

std::vector<OrientedGaussWord> random_walk(const OrientedGaussWord& w,
                                           const std::vector<MoveKind>& allowed,
                                           int steps, std::uint64_t seed) {
  std::vector<OrientedGaussWord> out{w};
  for (WalkStep& s : random_walk_steps(w, allowed, steps, seed)) out.push_back(std::move(s.word));
  return out;
}

OrientedGaussWord random_word(std::size_t arrows, std::mt19937_64& rng) {
  std::vector<std::size_t> slot(2 * arrows);
  for (std::size_t i = 0; i < slot.size(); ++i) slot[i] = i;
  for (std::size_t i = slot.size(); i > 1; --i) std::swap(slot[i - 1], slot[uniform_index(rng, i)]);
  std::vector<Token> tokens(2 * arrows);
  for (std::size_t a = 0; a < arrows; ++a) {
    const bool flip = uniform_index(rng, 2) == 1;
    const auto letter = static_cast<std::uint32_t>(a + 1);
    tokens[slot[2 * a]] = {letter, flip ? Role::End : Role::Start};
    tokens[slot[2 * a + 1]] = {letter, flip ? Role::Start : Role::End};
  }
  return normalize_word(OrientedGaussWord::from_valid_tokens(std::move(tokens)));
}

}  // namespace arrowkernel
