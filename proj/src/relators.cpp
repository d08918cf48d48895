#include "arrowkernel/relators.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "arrowkernel/error.hpp"

namespace arrowkernel {
namespace {

// "~" marks the End (barred) occurrence.
TemplateWord parse_template(std::string_view s) {
  TemplateWord out;
  Role role = Role::Start;
  for (char c : s) {
    if (c == ' ') continue;
    if (c == '~') {
      role = Role::End;
      continue;
    }
    out.push_back({c, role});
    role = Role::Start;
  }
  return out;
}

struct Variant {
  std::vector<TemplateTerm> terms;
  TemplateWord g, g_primed;
};

Variant make_variant(std::initializer_list<const char*> plus,
                     std::initializer_list<const char*> minus) {
  Variant v;
  for (const char* t : plus) v.terms.push_back({1, parse_template(t)});
  for (const char* t : minus) v.terms.push_back({-1, parse_template(t)});
  v.g = v.terms.front().word;
  if (minus.size() > 0) {
    v.g_primed = parse_template(*minus.begin());
  } else {
    for (const TemplateToken& t : v.g)
      if (std::isupper(static_cast<unsigned char>(t.symbol))) v.g_primed.push_back(t);
  }
  return v;
}

const std::vector<Variant>& variants(RelatorFamily f) {
  static const std::map<RelatorFamily, std::vector<Variant>> table = {
      {RelatorFamily::R1, {make_variant({"S i ~i"}, {}), make_variant({"S ~i i"}, {})}},
      {RelatorFamily::SII,
       {make_variant({"S i ~j T j ~i", "S i T ~i", "S ~j T j"}, {}),
        make_variant({"S ~i j T ~j i", "S ~i T i", "S j T ~j"}, {})}},
      {RelatorFamily::WII, {make_variant({"S ~i j T i ~j", "S ~i T i", "S j T ~j"}, {})}},
      {RelatorFamily::SIII,
       {make_variant({"S ~i j T ~k i U ~j k", "S ~i j T i U ~j", "S ~i T ~k i U k",
                      "S j T ~k U ~j k"},
                     {"S j ~i T i ~k U k ~j", "S j ~i T i U ~j", "S ~i T i ~k U k",
                      "S j T ~k U k ~j"}),
        make_variant({"S k ~j T i ~k U j ~i", "S ~j T i U j ~i", "S k T i ~k U ~i",
                      "S k ~j T ~k U j"},
                     {"S ~j k T ~k i U ~i j", "S ~j T i U ~i j", "S k T ~k i U ~i",
                      "S ~j k T ~k U j"})}},
      {RelatorFamily::WIII,
       {make_variant({"S ~i ~j T i ~k U j k", "S ~i ~j T i U j", "S ~i T i ~k U k",
                      "S ~j T ~k U j k"},
                     {"S ~j ~i T ~k i U k j", "S ~j ~i T i U j", "S ~i T ~k i U k",
                      "S ~j T ~k U k j"}),
        make_variant({"S k j T ~k i U ~j ~i", "S j T i U ~j ~i", "S k T ~k i U ~i",
                      "S k j T ~k U ~j"},
                     {"S j k T i ~k U ~i ~j", "S j T i U ~i ~j", "S k T i ~k U ~i",
                      "S j k T ~k U ~j"})}},
  };
  return table.at(f);
}

void check_variant(RelatorFamily f, int variant) {
  if (variant < 0 || variant >= family_variants(f))
    throw IndexError("family " + std::string(family_name(f)) + " has no variant " +
                     std::to_string(variant));
}

void instantiate_into(const TemplateWord& t, std::span<const Token> u,
                      std::span<const std::size_t> cuts, std::uint32_t base,
                      std::vector<Token>& out) {
  out.clear();
  for (const TemplateToken& s : t) {
    if (s.symbol >= 'i' && s.symbol <= 'k') {
      out.push_back({base + static_cast<std::uint32_t>(s.symbol - 'i' + 1), s.role});
      continue;
    }
    const auto arc = static_cast<std::size_t>(s.symbol - 'S');
    const std::size_t from = arc == 0 ? 0 : cuts[arc - 1];
    const std::size_t to = arc < cuts.size() ? cuts[arc] : u.size();
    out.insert(out.end(), u.begin() + static_cast<std::ptrdiff_t>(from),
               u.begin() + static_cast<std::ptrdiff_t>(to));
  }
}

void check_cuts(RelatorFamily f, const OrientedGaussWord& u,
                std::span<const std::size_t> cuts) {
  bool ok = cuts.size() + 1 == static_cast<std::size_t>(family_arcs(f));
  for (std::size_t q = 0; ok && q < cuts.size(); ++q)
    ok = cuts[q] <= u.length() && (q == 0 || cuts[q - 1] <= cuts[q]);
  if (!ok) throw IndexError("invalid arc composition for the base word");
}

// Byte key of a combination, for hashing during dedup.
std::u16string serialize(const LinearCombination& c) {
  std::u16string s;
  for (const auto& [x, coef] : c.terms()) {
    s += x.key();
    s += u'\0';
    auto v = static_cast<std::uint64_t>(coef);
    for (int q = 0; q < 4; ++q) s += static_cast<char16_t>((v >> (16 * q)) & 0xffff);
  }
  return s;
}

}  // namespace

RelatorFamily parse_family(std::string_view name) {
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "r1") return RelatorFamily::R1;
  if (lower == "sii") return RelatorFamily::SII;
  if (lower == "wii") return RelatorFamily::WII;
  if (lower == "siii") return RelatorFamily::SIII;
  if (lower == "wiii") return RelatorFamily::WIII;
  throw Error("unknown relator family '" + std::string(name) + "'");
}

std::string_view family_name(RelatorFamily f) {
  switch (f) {
    case RelatorFamily::R1: return "R1";
    case RelatorFamily::SII: return "SII";
    case RelatorFamily::WII: return "WII";
    case RelatorFamily::SIII: return "SIII";
    case RelatorFamily::WIII: return "WIII";
  }
  return "R1";
}

int family_letters(RelatorFamily f) {
  switch (f) {
    case RelatorFamily::R1: return 1;
    case RelatorFamily::SII:
    case RelatorFamily::WII: return 2;
    default: return 3;
  }
}

int family_arcs(RelatorFamily f) { return family_letters(f); }

int family_variants(RelatorFamily f) { return static_cast<int>(variants(f).size()); }

std::span<const TemplateTerm> relator_template(RelatorFamily f, int variant) {
  check_variant(f, variant);
  return variants(f)[static_cast<std::size_t>(variant)].terms;
}

const TemplateWord& move_pattern(RelatorFamily f, int variant, bool primed) {
  check_variant(f, variant);
  const Variant& v = variants(f)[static_cast<std::size_t>(variant)];
  return primed ? v.g_primed : v.g;
}

OrientedGaussWord instantiate(const TemplateWord& t, const OrientedGaussWord& u,
                              std::span<const std::size_t> cuts) {
  std::size_t arcs = 0;
  for (const TemplateToken& s : t)
    if (s.symbol >= 'S' && s.symbol <= 'U') arcs = std::max<std::size_t>(arcs, s.symbol - 'S' + 1);
  bool ok = cuts.size() + 1 >= arcs;
  for (std::size_t q = 0; ok && q < cuts.size(); ++q)
    ok = cuts[q] <= u.length() && (q == 0 || cuts[q - 1] <= cuts[q]);
  if (!ok) throw IndexError("invalid arc composition for the base word");
  std::vector<Token> out;
  instantiate_into(t, u.tokens(), cuts, u.max_letter(), out);
  return OrientedGaussWord::from_valid_tokens(std::move(out));
}

LinearCombination instantiate_relator(RelatorFamily f, int variant,
                                      const OrientedGaussWord& u,
                                      std::span<const std::size_t> cuts) {
  check_cuts(f, u, cuts);
  LinearCombination c;
  std::vector<Token> buf;
  for (const TemplateTerm& term : relator_template(f, variant)) {
    instantiate_into(term.word, u.tokens(), cuts, u.max_letter(), buf);
    c.add(ArrowDiagram::from_key(canonical_key(buf)), term.sign);
  }
  return c;
}

LinearCombination project_combination(const LinearCombination& c, int b, int d,
                                      Filter support) {
  LinearCombination out;
  for (const auto& [x, coef] : c.terms()) {
    const auto n = static_cast<int>(x.arrows());
    if (n < b || n > d || !satisfies(support, x)) continue;
    out.add(x, coef);
  }
  return out;
}

std::vector<RelatorColumn> generate_relators(RelatorFamily family, int b, int d,
                                             Filter support, unsigned threads) {
  check_window(b, d);
  threads = std::max(1u, threads);
  const int m = family_letters(family);
  const int arcs = family_arcs(family);
  const int nvariants = family_variants(family);

  struct Base {
    OrientedGaussWord word;
    int top;
  };
  std::vector<Base> bases;
  for (int n = std::max(m, b); n <= d + 1; ++n) {
    const int u = n - m;
    for (const ChordWord& c : enumerate_normal_pairings(u)) {
      for (std::uint32_t bits = 0; bits < (1u << u); ++bits) {
        std::vector<Token> tokens(c.letters.size());
        std::uint32_t seen = 0;
        for (std::size_t p = 0; p < c.letters.size(); ++p) {
          std::uint32_t l = c.letters[p];
          bool first = !(seen & (1u << l));
          seen |= 1u << l;
          bool end_first = (bits >> (u - static_cast<int>(l))) & 1u;
          tokens[p] = {l, first == end_first ? Role::End : Role::Start};
        }
        bases.push_back({OrientedGaussWord::from_valid_tokens(std::move(tokens)), n});
      }
    }
  }

  struct Found {
    std::size_t ordinal;
    RelatorColumn column;
  };

  auto worker = [&](unsigned shard, std::vector<Found>& out) {
    std::unordered_set<std::u16string> seen;
    std::vector<Token> buf;
    std::vector<std::size_t> cuts(static_cast<std::size_t>(arcs - 1));
    std::size_t ordinal = 0;
    for (std::size_t bi = 0; bi < bases.size(); ++bi) {
      const Base& base = bases[bi];
      const std::size_t len = base.word.length();
      // Compositions are enumerated as nondecreasing cut vectors.
      std::fill(cuts.begin(), cuts.end(), 0);
      while (true) {
        for (int v = 0; v < nvariants; ++v) {
          const std::size_t my = ordinal++;
          if (bi % threads != shard) continue;
          LinearCombination c;
          for (const TemplateTerm& term : relator_template(family, v)) {
            instantiate_into(term.word, base.word.tokens(), cuts, base.word.max_letter(), buf);
            const auto n = static_cast<int>(buf.size() / 2);
            if (n < b || n > d) continue;
            c.add(ArrowDiagram::from_key(canonical_key(buf)), term.sign);
          }
          if (c.empty()) continue;
          if (!seen.insert(serialize(c)).second) continue;
          RelatorProvenance prov{family, format_word(base.word),
                                 cuts, v, base.top};
          out.push_back({my, {std::move(c), std::move(prov)}});
        }
        // Advance to the next nondecreasing cut vector.
        std::size_t q = cuts.size();
        while (q > 0 && cuts[q - 1] == len) --q;
        if (q == 0) break;
        ++cuts[q - 1];
        for (std::size_t r = q; r < cuts.size(); ++r) cuts[r] = cuts[q - 1];
      }
    }
  };

  std::vector<std::vector<Found>> shards(threads);
  if (threads == 1) {
    worker(0, shards[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned s = 0; s < threads; ++s) pool.emplace_back(worker, s, std::ref(shards[s]));
    for (auto& t : pool) t.join();
  }

  std::vector<Found> all;
  for (auto& s : shards)
    for (auto& f : s) all.push_back(std::move(f));
  std::sort(all.begin(), all.end(),
            [](const Found& x, const Found& y) { return x.ordinal < y.ordinal; });

  std::unordered_set<std::u16string> seen;
  std::unordered_map<DiagramKey, bool> passes;
  std::vector<RelatorColumn> out;
  for (Found& f : all) {
    if (!seen.insert(serialize(f.column.combination)).second) continue;
    LinearCombination kept;
    for (const auto& [x, coef] : f.column.combination.terms()) {
      auto it = passes.find(x.key());
      if (it == passes.end()) it = passes.emplace(x.key(), satisfies(support, x)).first;
      if (it->second) kept.add(x, coef);
    }
    if (kept.empty()) continue;
    f.column.combination = std::move(kept);
    out.push_back(std::move(f.column));
  }
  return out;
}

EvaluationMatrix build_matrix(const DiagramTable& rows,
                              std::span<const RelatorColumn> cols) {
  EvaluationMatrix m{IntMatrix(rows.size()), {}};
  std::set<std::vector<std::pair<std::size_t, std::int64_t>>> seen;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::vector<std::pair<std::size_t, std::int64_t>> entries;
    for (const auto& [x, coef] : cols[j].combination.terms())
      if (auto i = rows.find(x)) entries.emplace_back(*i, coef);
    std::sort(entries.begin(), entries.end());
    if (entries.empty() || !seen.insert(entries).second) continue;
    std::vector<IntMatrix::Entry> col;
    for (auto [i, coef] : entries) col.push_back({i, mpz_class(static_cast<long>(coef))});
    m.entries.append_column(std::move(col));
    m.sources.push_back(j);
  }
  return m;
}

}  // namespace arrowkernel
