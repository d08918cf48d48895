#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arrowkernel/counting.hpp"
#include "arrowkernel/diagrams.hpp"
#include "arrowkernel/words.hpp"
#include "arrowkernel/zkernel.hpp"

namespace arrowkernel {

enum class RelatorFamily { R1, SII, WII, SIII, WIII };

// Case-insensitive r1|sii|wii|siii|wiii.
RelatorFamily parse_family(std::string_view name);
// "R1", "SII", ...
std::string_view family_name(RelatorFamily f);

// Number of pattern letters (i, j, k) in the family's top term.
int family_letters(RelatorFamily f);
// Number of arcs S, T, U.
int family_arcs(RelatorFamily f);
int family_variants(RelatorFamily f);

// A template symbol is an arc ('S', 'T', 'U') or a pattern letter
// ('i', 'j', 'k'); role only matters for letters.
struct TemplateToken {
  char symbol;
  Role role;
};
using TemplateWord = std::vector<TemplateToken>;

struct TemplateTerm {
  int sign;
  TemplateWord word;
};

// Signed term list of one variant (0 = A, 1 = B).
std::span<const TemplateTerm> relator_template(RelatorFamily f, int variant);

// The two sides of the corresponding move: G carries all pattern letters;
// G' is the other side (the bare arcs for RI and RII).
const TemplateWord& move_pattern(RelatorFamily f, int variant, bool primed);

// Cuts u at `cuts` (family_arcs - 1 nondecreasing token offsets) into arcs and
// substitutes them into `t`; pattern letters become max_letter(u) + 1, + 2,
// + 3 for i, j, k.
OrientedGaussWord instantiate(const TemplateWord& t, const OrientedGaussWord& u,
                              std::span<const std::size_t> cuts);

// Full, unprojected relator for one base word, composition and variant.
LinearCombination instantiate_relator(RelatorFamily f, int variant,
                                      const OrientedGaussWord& u,
                                      std::span<const std::size_t> cuts);

struct RelatorProvenance {
  RelatorFamily family = RelatorFamily::R1;
  std::string base_word;
  std::vector<std::size_t> cuts;
  int variant = 0;
  int top_arrows = 0;
};

struct RelatorColumn {
  LinearCombination combination;
  RelatorProvenance provenance;
};

// Terms outside [b, d] or failing the support predicate are dropped.
LinearCombination project_combination(const LinearCombination& c, int b, int d,
                                      Filter support);

// Relators with top terms of max(m, b) .. d + 1 arrows, projected to [b, d].
// Duplicates are removed on the window projection, in generation order, before
// the support filter is applied; combinations emptied by either step are
// dropped. Throws WindowError unless 1 <= b <= d.
std::vector<RelatorColumn> generate_relators(RelatorFamily family, int b, int d,
                                             Filter support,
                                             unsigned threads = 1);

struct EvaluationMatrix {
  IntMatrix entries;
  // Index into the input column list for each kept column.
  std::vector<std::size_t> sources;
};

// A[i][j] = coefficient of rows[i] in cols[j]; zero columns and repeated
// columns (after the first) are removed.
EvaluationMatrix build_matrix(const DiagramTable& rows,
                              std::span<const RelatorColumn> cols);

}  // namespace arrowkernel
