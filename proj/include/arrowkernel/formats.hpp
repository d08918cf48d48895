#pragma once

#include <cstddef>
#include <iosfwd>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "arrowkernel/diagrams.hpp"
#include "arrowkernel/relators.hpp"
#include "arrowkernel/zkernel.hpp"

namespace arrowkernel {

// One JSON object per line:
// {"index","word","arrows","connected","irreducible","mirror_index"}, indices
// 1-based; mirror_index is 0 when the mirror image is not in the table.
void write_table_jsonl(std::ostream& out, const DiagramTable& t);

// The window spans the arrow counts present; the filter is the first of
// Connected, Irreducible, All that every entry satisfies. Throws FormatError
// on malformed lines, wrong indices, inconsistent flags or unsorted entries.
DiagramTable read_table_jsonl(std::istream& in);

// {"family": "SIII", "terms": [{"word": "...", "coef": n}, ...]}
void write_relators_jsonl(std::ostream& out, std::span<const RelatorColumn> cols);
std::vector<RelatorColumn> read_relators_jsonl(std::istream& in);

// One vector per line, comma-separated, no header.
void write_vectors_csv(std::ostream& out, const std::vector<std::vector<mpz_class>>& rows);
void write_kernel_csv(std::ostream& out, const KernelBasis& k);
std::vector<std::vector<mpz_class>> read_vectors_csv(std::istream& in);

// Header of column ids FAMILY_n (n = 1-based position in `cols`), then one
// line per table row.
void write_matrix_csv(std::ostream& out, const EvaluationMatrix& m,
                      std::span<const RelatorColumn> cols);

// {"reflective_pairs": [[a, b], ...]} with 1-based table indices or word
// strings; returned 0-based. Throws FormatError, or IndexError for an index
// or word that is not in the table.
std::set<std::pair<std::size_t, std::size_t>> read_whitelist_json(std::istream& in,
                                                                   const DiagramTable& t);

}  // namespace arrowkernel
