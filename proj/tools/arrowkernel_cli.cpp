#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arrowkernel/arrowkernel.h"

namespace {

struct Failure {
  int code;
};

void check(ak_status s) {
  if (s == AK_OK) return;
  std::cerr << "arrowkernel: " << ak_status_string(s);
  const std::string msg = ak_last_error();
  if (!msg.empty()) std::cerr << ": " << msg;
  std::cerr << "\n";
  throw Failure{2};
}

template <typename F>
std::string fetch(F&& call) {
  std::size_t need = 0;
  ak_status s = call(nullptr, 0, &need);
  if (s != AK_ERR_BUFFER) check(s);
  std::string buf(need, '\0');
  check(call(buf.data(), buf.size(), &need));
  buf.resize(need - 1);
  return buf;
}

// "B..D" or "B".
std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      int v = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
    int b = std::stoi(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(text);
    int d = std::stoi(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
    return {b, d};
  } catch (const std::logic_error&) {
    std::cerr << "arrowkernel: bad range '" << text << "' (expected B..D)\n";
    throw Failure{2};
  }
}

const auto t0 = std::chrono::steady_clock::now();

void progress(const char* line, void* user) {
  if (*static_cast<bool*>(user)) return;
  const double s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char stamp[32];
  std::snprintf(stamp, sizeof stamp, "[%8.2fs] ", s);
  std::cerr << stamp << line << "\n";
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};
using Table = Handle<ak_table, ak_table_free>;
using Relators = Handle<ak_relators, ak_relators_free>;
using Kernel = Handle<ak_kernel, ak_kernel_free>;

unsigned default_threads() {
  if (const char* env = std::getenv("ARROWKERNEL_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arrow diagrams, Reidemeister relators and exact integer kernels"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = default_threads();
  bool quiet = false;
  app.add_option("--threads", threads, "Worker threads (default: $ARROWKERNEL_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_flag("-q,--quiet", quiet, "No progress output on stderr");

  std::string arrows, filter = "all", out, family, support, table, whitelist, matrix_out;
  std::string coeffs, word, moves = "ri", windows;
  std::vector<std::string> relator_files;
  std::size_t row = 1;
  int trials = 1000, steps = 20;
  std::uint64_t seed = 0;

  auto* en = app.add_subcommand("enumerate", "Write the diagram table of a window");
  en->add_option("--arrows", arrows, "Window B..D")->required();
  en->add_option("--filter", filter, "all|conn|irr")->capture_default_str();
  en->add_option("--out", out, "Table JSONL")->required();

  auto* rel = app.add_subcommand("relators", "Generate a relator family");
  rel->add_option("--family", family, "r1|sii|wii|siii|wiii")->required();
  rel->add_option("--arrows", arrows, "Window B..D (default: the table's)");
  rel->add_option("--support", support, "all|conn|irr (default: the table's filter, else all)");
  rel->add_option("--table", table, "Table JSONL supplying window and support defaults");
  rel->add_option("--out", out, "Relator JSONL")->required();

  auto* ker = app.add_subcommand("kernel", "Integer kernel of the evaluation matrix");
  ker->add_option("--table", table, "Table JSONL")->required();
  ker->add_option("--relators", relator_files, "Relator JSONL (repeatable)")->required();
  ker->add_option("--mirror-constraints", whitelist, "Whitelist JSON of reflective pairs");
  ker->add_option("--matrix-out", matrix_out, "Also write the evaluation matrix CSV");
  ker->add_option("--out", out, "Basis CSV")->required();

  auto* ev = app.add_subcommand("evaluate", "Value of one functional on a word");
  ev->add_option("--table", table, "Table JSONL")->required();
  ev->add_option("--coeffs", coeffs, "Coefficient CSV")->required();
  ev->add_option("--row", row, "1-based coefficient row")->capture_default_str();
  ev->add_option("--word", word, "Word such as \"1 -2 -1 2\"")->required();

  auto* ve = app.add_subcommand("verify", "Check invariance along random move sequences");
  ve->add_option("--table", table, "Table JSONL")->required();
  ve->add_option("--coeffs", coeffs, "Coefficient CSV")->required();
  ve->add_option("--moves", moves, "Comma-separated ri,sii,wii,siii,wiii")->capture_default_str();
  ve->add_option("--trials", trials, "Walks")->capture_default_str()->check(CLI::NonNegativeNumber);
  ve->add_option("--steps", steps, "Moves per walk")->capture_default_str()->check(CLI::NonNegativeNumber);
  ve->add_option("--seed", seed, "Seed")->capture_default_str();

  auto* di = app.add_subcommand("dims", "Kernel dimensions over windows (b, b+1)");
  di->add_option("--family", family, "siii|wiii|...")->required();
  di->add_option("--windows", windows, "Range of b, e.g. 2..5")->required();
  di->add_option("--filter", filter, "Table filter and support")->default_val("conn");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*en) {
      auto [b, d] = parse_range(arrows);
      Table t;
      check(ak_table_enumerate(b, d, filter.c_str(), threads, &t.p));
      check(ak_table_save(t.p, out.c_str()));
      progress((std::to_string(ak_table_size(t.p)) + " diagrams").c_str(), &quiet);
    } else if (*rel) {
      int b = 0, d = 0;
      std::string sup = support.empty() ? "all" : support;
      if (!table.empty()) {
        Table t;
        check(ak_table_load(table.c_str(), &t.p));
        check(ak_table_window(t.p, &b, &d));
        if (support.empty()) sup = ak_table_filter(t.p);
      }
      if (!arrows.empty()) std::tie(b, d) = parse_range(arrows);
      else if (table.empty()) {
        std::cerr << "arrowkernel: relators needs --arrows or --table\n";
        return 2;
      }
      Relators r;
      check(ak_relators_generate(family.c_str(), b, d, sup.c_str(), threads, &r.p));
      check(ak_relators_save(r.p, out.c_str()));
      progress((std::to_string(ak_relators_size(r.p)) + " relators").c_str(), &quiet);
    } else if (*ker) {
      Table t;
      check(ak_table_load(table.c_str(), &t.p));
      Relators all;
      for (const std::string& f : relator_files) {
        Relators r;
        check(ak_relators_load(f.c_str(), &r.p));
        if (!all.p) std::swap(all.p, r.p);
        else check(ak_relators_append(all.p, r.p));
      }
      Kernel k;
      check(ak_kernel_compute(t.p, all.p, whitelist.empty() ? nullptr : whitelist.c_str(),
                              progress, &quiet, &k.p));
      if (!matrix_out.empty()) check(ak_matrix_save_csv(t.p, all.p, matrix_out.c_str()));
      check(ak_kernel_save_csv(k.p, out.c_str()));
      progress(("kernel dimension " + std::to_string(ak_kernel_dim(k.p))).c_str(), &quiet);
    } else if (*ev) {
      Table t;
      check(ak_table_load(table.c_str(), &t.p));
      Kernel k;
      check(ak_kernel_load_csv(coeffs.c_str(), t.p, &k.p));
      if (row == 0) {
        std::cerr << "arrowkernel: --row is 1-based\n";
        return 2;
      }
      std::cout << fetch([&](char* buf, std::size_t size, std::size_t* need) {
        return ak_evaluate(t.p, k.p, row - 1, word.c_str(), buf, size, need);
      }) << "\n";
    } else if (*ve) {
      Table t;
      check(ak_table_load(table.c_str(), &t.p));
      Kernel k;
      check(ak_kernel_load_csv(coeffs.c_str(), t.p, &k.p));
      int passed = 0;
      std::cout << fetch([&](char* buf, std::size_t size, std::size_t* need) {
        return ak_verify(t.p, k.p, moves.c_str(), trials, steps, seed, threads, &passed, buf,
                         size, need);
      });
      return passed ? 0 : 1;
    } else if (*di) {
      auto [lo, hi] = parse_range(windows);
      std::string line;
      for (int b = lo; b <= hi; ++b) {
        std::size_t dim = 0;
        check(ak_dims(family.c_str(), b, b + 1, filter.c_str(), threads, progress, &quiet, &dim));
        progress(("(" + std::to_string(b) + "," + std::to_string(b + 1) + "): " +
                  std::to_string(dim)).c_str(),
                 &quiet);
        line += (line.empty() ? "" : " ") + std::to_string(dim);
      }
      std::cout << line << "\n";
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
