#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arrowkernel/counting.hpp"
#include "arrowkernel/diagrams.hpp"
#include "arrowkernel/moves.hpp"
#include "arrowkernel/relators.hpp"
#include "arrowkernel/zkernel.hpp"

namespace arrowkernel {

// Left kernel of the evaluation matrix of `cols` over `t`. With a whitelist,
// every mirroring pair outside it is forced to equal coefficients.
KernelBasis table_kernel(const DiagramTable& t, std::span<const RelatorColumn> cols,
                         const std::set<std::pair<std::size_t, std::size_t>>* whitelist,
                         const KernelOptions& options = {});

// Full pipeline for one window: table, relators with the table filter as
// support, matrix, kernel.
std::size_t window_dimension(RelatorFamily f, int b, int d, Filter filter,
                             unsigned threads = 1, const KernelOptions& options = {});

struct VerifyOptions {
  std::vector<MoveKind> moves;
  int trials = 1000;
  int steps = 20;
  std::uint64_t seed = 0;
  // Start words have 0 .. max_start_arrows arrows (default: window d + 1).
  std::optional<std::size_t> max_start_arrows;
  unsigned threads = 1;
};

struct Counterexample {
  int trial = 0;
  std::size_t functional = 0;  // 0-based row of the coefficient list
  OrientedGaussWord start;
  std::vector<WalkStep> steps;
  std::vector<mpz_class> values;  // value after each word, start first
};

struct VerifyReport {
  bool passed = true;
  int trials = 0;
  std::size_t words = 0;
  std::optional<Counterexample> failure;  // lowest failing trial
};

// Checks that every functional is constant along random walks. Trial t uses
// seed + t for both its start word and its walk, so reports do not depend on
// the thread count.
VerifyReport verify_invariance(const DiagramTable& t,
                               const std::vector<std::vector<mpz_class>>& coeffs,
                               const VerifyOptions& options);

std::string format_report(const VerifyReport& r);

}  // namespace arrowkernel
