#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arrowkernel/words.hpp"

namespace arrowkernel {

enum class Filter { All, Connected, Irreducible };

// Accepts all|conn|connected|irr|irreducible.
Filter parse_filter(std::string_view name);
std::string_view filter_name(Filter f);

// Arrow-count window [b, d].
struct Window {
  int b = 1;
  int d = 1;

  friend bool operator==(const Window&, const Window&) = default;
};

// Throws WindowError unless 1 <= b <= d.
void check_window(int b, int d);

struct Classification {
  bool connected = false;
  bool irreducible = false;
};

bool is_connected(std::span<const Token> tokens);
bool is_irreducible(std::span<const Token> tokens);
Classification classify(const OrientedGaussWord& w);
Classification classify(const ArrowDiagram& x);
bool satisfies(Filter f, const ArrowDiagram& x);

std::vector<ChordWord> enumerate_normal_pairings(int d);

class DiagramTable {
 public:
  DiagramTable() = default;

  // Entries must be distinct, sorted, inside the window and satisfy the
  // filter; throws FormatError / WindowError otherwise.
  DiagramTable(Window window, Filter filter, std::vector<ArrowDiagram> entries);

  Window window() const { return window_; }
  Filter filter() const { return filter_; }
  std::span<const ArrowDiagram> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const ArrowDiagram& operator[](std::size_t i) const { return entries_[i]; }

  // 0-based position, if present.
  std::optional<std::size_t> find(const ArrowDiagram& x) const;
  std::optional<std::size_t> find(const DiagramKey& key) const;

 private:
  Window window_;
  Filter filter_ = Filter::All;
  std::vector<ArrowDiagram> entries_;
  std::unordered_map<DiagramKey, std::size_t> index_;
};

DiagramTable enumerate_diagrams(int b, int d, Filter filter,
                                unsigned threads = 1);

// 0-based indices; pairs have first < second and are sorted.
struct MirrorReport {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> self_mirror;
  // partner[i] is the index of the mirror of entry i (i itself if
  // self-mirror).
  std::vector<std::size_t> partner;
};

// Throws IndexError if a mirror image is missing from the table.
MirrorReport mirror_pairs(const DiagramTable& t);

}  // namespace arrowkernel
