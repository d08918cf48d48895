#include "arrowkernel/pipeline.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <thread>

#include "arrowkernel/error.hpp"

namespace arrowkernel {

KernelBasis table_kernel(const DiagramTable& t, std::span<const RelatorColumn> cols,
                         const std::set<std::pair<std::size_t, std::size_t>>* whitelist,
                         const KernelOptions& options) {
  EvaluationMatrix m = build_matrix(t, cols);
  if (options.progress)
    options.progress("matrix " + std::to_string(m.entries.rows()) + " x " +
                     std::to_string(m.entries.cols()) + ", " +
                     std::to_string(m.entries.nonzeros()) + " nonzeros");
  if (whitelist) return left_kernel(add_mirror_constraints(m.entries, mirror_pairs(t), *whitelist), options);
  return left_kernel(m.entries, options);
}

std::size_t window_dimension(RelatorFamily f, int b, int d, Filter filter, unsigned threads,
                             const KernelOptions& options) {
  const DiagramTable t = enumerate_diagrams(b, d, filter, threads);
  if (options.progress)
    options.progress("window (" + std::to_string(b) + "," + std::to_string(d) + "): " +
                     std::to_string(t.size()) + " diagrams");
  const auto cols = generate_relators(f, b, d, filter, threads);
  if (options.progress) options.progress(std::to_string(cols.size()) + " relators");
  return table_kernel(t, cols, nullptr, options).dim();
}

namespace {

std::optional<Counterexample> run_trial(const DiagramTable& t,
                                        const std::vector<Functional>& fs,
                                        const VerifyOptions& o, std::size_t max_arrows,
                                        int trial, std::size_t& words) {
  std::mt19937_64 rng(o.seed + static_cast<std::uint64_t>(trial));
  const OrientedGaussWord start = random_word(uniform_index(rng, max_arrows + 1), rng);
  const std::vector<WalkStep> steps = random_walk_steps(start, o.moves, o.steps, rng());
  words += steps.size() + 1;

  std::vector<std::vector<std::uint64_t>> counts;
  counts.push_back(subdiagram_counts(t, start));
  for (const WalkStep& s : steps) counts.push_back(subdiagram_counts(t, s.word));
  for (std::size_t g = 0; g < fs.size(); ++g) {
    std::vector<mpz_class> values;
    for (const auto& c : counts) values.push_back(evaluate_functional(fs[g], c));
    if (std::all_of(values.begin(), values.end(),
                    [&](const mpz_class& v) { return v == values.front(); }))
      continue;
    return Counterexample{trial, g, start, steps, std::move(values)};
  }
  return std::nullopt;
}

}  // namespace

VerifyReport verify_invariance(const DiagramTable& t,
                               const std::vector<std::vector<mpz_class>>& coeffs,
                               const VerifyOptions& o) {
  if (o.moves.empty()) throw Error("no moves to verify against");
  if (o.trials < 0 || o.steps < 0) throw Error("trials and steps must be non-negative");
  std::vector<Functional> fs;
  for (const auto& c : coeffs) fs.emplace_back(t, c);
  const std::size_t max_arrows =
      o.max_start_arrows.value_or(static_cast<std::size_t>(t.window().d) + 1);

  VerifyReport report;
  report.trials = o.trials;
  std::mutex mu;
  const unsigned threads = std::max(1u, std::min<unsigned>(o.threads, static_cast<unsigned>(std::max(1, o.trials))));
  auto worker = [&](unsigned shard) {
    std::size_t words = 0;
    std::optional<Counterexample> first;
    for (int trial = static_cast<int>(shard); trial < o.trials; trial += static_cast<int>(threads)) {
      auto bad = run_trial(t, fs, o, max_arrows, trial, words);
      if (bad) {
        first = std::move(bad);
        break;
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    report.words += words;
    if (first && (!report.failure || first->trial < report.failure->trial))
      report.failure = std::move(first);
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned s = 0; s < threads; ++s) pool.emplace_back(worker, s);
    for (auto& th : pool) th.join();
  }
  report.passed = !report.failure;
  return report;
}

std::string format_report(const VerifyReport& r) {
  std::ostringstream out;
  if (r.passed) {
    out << "PASS " << r.trials << " walks, " << r.words << " words\n";
    return out.str();
  }
  const Counterexample& c = *r.failure;
  out << "FAIL trial " << c.trial << ", functional " << c.functional + 1 << "\n";
  out << "  [" << format_word(c.start) << "] value " << c.values[0].get_str() << "\n";
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const WalkStep& s = c.steps[i];
    out << "  " << move_name(s.kind)
        << (s.site.direction == Direction::Forward ? " forward" : " backward") << " -> ["
        << format_word(s.word) << "] value " << c.values[i + 1].get_str() << "\n";
  }
  return out.str();
}

}  // namespace arrowkernel
