#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "arrowkernel/relators.hpp"
#include "arrowkernel/words.hpp"

namespace arrowkernel {

enum class MoveType { RI, StrongRII, WeakRII, StrongRIII, WeakRIII };

// variant 0 = A, 1 = B. RI A removes/inserts i ~i, RI B ~i i.
struct MoveKind {
  MoveType type = MoveType::RI;
  int variant = 0;
  friend bool operator==(const MoveKind&, const MoveKind&) = default;
};

RelatorFamily move_family(MoveType t);
int move_variants(MoveType t);

// ri|r1|sii|wii|siii|wiii, case-insensitive.
MoveType parse_move_type(std::string_view name);
std::string move_name(MoveKind k);

// Every variant of each type in a comma-separated list such as "ri,wiii".
std::vector<MoveKind> parse_move_list(std::string_view list);

// Forward removes RI/RII patterns and turns the left RIII side into the
// right; Backward inserts RI/RII patterns and turns the right RIII side back.
enum class Direction { Forward, Backward };

// Pattern matches: token positions of the pattern letters in template order.
// RI/RII insertions: for each letter group, in template order, the index at
// which it starts in the result before normalization.
struct MoveSite {
  std::vector<std::size_t> positions;
  Direction direction = Direction::Forward;
  friend bool operator==(const MoveSite&, const MoveSite&) = default;
};

// Cyclic matches are reported once per position set, by increasing first
// position.
std::vector<MoveSite> find_sites(const OrientedGaussWord& w, MoveKind k,
                                 Direction dir = Direction::Forward);

// Throws InvalidSiteError if `s` is not a site of `k` on `w`. The result is
// normalized.
OrientedGaussWord apply_move(const OrientedGaussWord& w, MoveKind k, const MoveSite& s);

struct WalkStep {
  OrientedGaussWord word;
  MoveKind kind;
  MoveSite site;
};

// Uniform index in [0, n) by rejection on the raw engine output, so a walk
// depends only on the seed.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);

// Each step applies a move chosen uniformly among all sites of all allowed
// kinds in both directions. Stops early when nothing applies. The returned
// words include the start and are normalized after the first.
std::vector<OrientedGaussWord> random_walk(const OrientedGaussWord& w,
                                           const std::vector<MoveKind>& allowed,
                                           int steps, std::uint64_t seed);
// Same walk with the move taken at each step (steps.size() == words - 1).
std::vector<WalkStep> random_walk_steps(const OrientedGaussWord& w,
                                        const std::vector<MoveKind>& allowed,
                                        int steps, std::uint64_t seed);

// Uniform pairing of 2n positions with independent random orientations.
OrientedGaussWord random_word(std::size_t arrows, std::mt19937_64& rng);

}  // namespace arrowkernel
