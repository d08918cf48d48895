#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "arrowkernel/words.hpp"
#include "oracles.hpp"

namespace testing {

inline arrowkernel::OrientedGaussWord W(const std::string& text) {
  return arrowkernel::parse_word(text);
}

inline oracle::Word to_oracle(const arrowkernel::OrientedGaussWord& w) {
  oracle::Word out;
  for (const auto& t : w.tokens()) {
    const int l = static_cast<int>(t.letter);
    out.push_back(t.role == arrowkernel::Role::Start ? l : -l);
  }
  return out;
}

inline arrowkernel::OrientedGaussWord from_oracle(const oracle::Word& w) {
  std::vector<arrowkernel::Token> tokens;
  for (int t : w)
    tokens.push_back({static_cast<std::uint32_t>(std::abs(t)),
                      t > 0 ? arrowkernel::Role::Start : arrowkernel::Role::End});
  return arrowkernel::OrientedGaussWord(std::move(tokens));
}

}  // namespace testing
