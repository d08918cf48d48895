#include "arrowkernel/arrowkernel.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "arrowkernel/error.hpp"
#include "arrowkernel/formats.hpp"
#include "arrowkernel/pipeline.hpp"

struct ak_table {
  arrowkernel::DiagramTable table;
};

struct ak_relators {
  std::vector<arrowkernel::RelatorColumn> cols;
};

struct ak_kernel {
  std::size_t ambient = 0;
  std::vector<std::vector<mpz_class>> rows;
};

namespace {

using namespace arrowkernel;

thread_local std::string last_error;

class IoError : public Error {
 public:
  using Error::Error;
};

template <typename F>
ak_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return AK_OK;
  } catch (const SyntaxError& e) {
    last_error = e.what();
    return AK_ERR_SYNTAX;
  } catch (const LetterCountError& e) {
    last_error = e.what();
    return AK_ERR_LETTER_COUNT;
  } catch (const ZeroLetterError& e) {
    last_error = e.what();
    return AK_ERR_ZERO_LETTER;
  } catch (const UnknownLetterError& e) {
    last_error = e.what();
    return AK_ERR_UNKNOWN_LETTER;
  } catch (const WindowError& e) {
    last_error = e.what();
    return AK_ERR_WINDOW;
  } catch (const IndexError& e) {
    last_error = e.what();
    return AK_ERR_INDEX;
  } catch (const DimensionError& e) {
    last_error = e.what();
    return AK_ERR_DIMENSION;
  } catch (const InvalidSiteError& e) {
    last_error = e.what();
    return AK_ERR_INVALID_SITE;
  } catch (const FormatError& e) {
    last_error = e.what();
    return AK_ERR_FORMAT;
  } catch (const IoError& e) {
    last_error = e.what();
    return AK_ERR_IO;
  } catch (const Error& e) {
    last_error = e.what();
    return AK_ERR_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return AK_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return AK_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw Error(std::string(what) + " must not be null");
}

std::ifstream open_in(const char* path) {
  need(path, "path");
  std::ifstream in(path);
  if (!in) throw IoError(std::string("cannot open ") + path);
  return in;
}

// Writes through a sibling temporary so a failed call leaves no partial file.
void save(const char* path, const std::function<void(std::ostream&)>& body) {
  need(path, "path");
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(std::string("cannot write ") + path);
    try {
      body(out);
    } catch (...) {
      out.close();
      std::filesystem::remove(tmp);
      throw;
    }
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw IoError(std::string("write failed for ") + path);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError(std::string("cannot write ") + path + ": " + ec.message());
  }
}

// String results: errors from `make` map as usual, a short buffer to
// AK_ERR_BUFFER.
template <typename F>
ak_status guard_string(char* buf, std::size_t size, std::size_t* required, F&& make) {
  std::string s;
  ak_status st = guard([&] { s = make(); });
  if (st != AK_OK) return st;
  if (required) *required = s.size() + 1;
  if (!buf || size < s.size() + 1) {
    last_error = "buffer of " + std::to_string(size) + " bytes, need " + std::to_string(s.size() + 1);
    return AK_ERR_BUFFER;
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return AK_OK;
}

KernelOptions progress_options(ak_progress_fn fn, void* user) {
  KernelOptions o;
  if (fn) o.progress = [fn, user](const std::string& s) { fn(s.c_str(), user); };
  return o;
}

}  // namespace

extern "C" {

const char* ak_status_string(ak_status s) {
  switch (s) {
    case AK_OK: return "ok";
    case AK_ERR_SYNTAX: return "syntax error";
    case AK_ERR_LETTER_COUNT: return "letter count error";
    case AK_ERR_ZERO_LETTER: return "zero letter";
    case AK_ERR_UNKNOWN_LETTER: return "unknown letter";
    case AK_ERR_WINDOW: return "invalid window";
    case AK_ERR_INDEX: return "index out of range";
    case AK_ERR_DIMENSION: return "dimension mismatch";
    case AK_ERR_INVALID_SITE: return "invalid move site";
    case AK_ERR_FORMAT: return "format error";
    case AK_ERR_IO: return "i/o error";
    case AK_ERR_ARGUMENT: return "invalid argument";
    case AK_ERR_BUFFER: return "buffer too small";
    case AK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ak_last_error(void) { return last_error.c_str(); }

ak_status ak_table_enumerate(int b, int d, const char* filter, unsigned threads, ak_table** out) {
  return guard([&] {
    need(filter, "filter");
    need(out, "out");
    *out = new ak_table{enumerate_diagrams(b, d, parse_filter(filter), threads)};
  });
}

ak_status ak_table_load(const char* path, ak_table** out) {
  return guard([&] {
    need(out, "out");
    std::ifstream in = open_in(path);
    *out = new ak_table{read_table_jsonl(in)};
  });
}

ak_status ak_table_save(const ak_table* t, const char* path) {
  return guard([&] {
    need(t, "table");
    save(path, [&](std::ostream& out) { write_table_jsonl(out, t->table); });
  });
}

size_t ak_table_size(const ak_table* t) { return t ? t->table.size() : 0; }

ak_status ak_table_window(const ak_table* t, int* b, int* d) {
  return guard([&] {
    need(t, "table");
    if (b) *b = t->table.window().b;
    if (d) *d = t->table.window().d;
  });
}

const char* ak_table_filter(const ak_table* t) {
  return t ? filter_name(t->table.filter()).data() : "";
}

ak_status ak_table_word(const ak_table* t, size_t index, char* buf, size_t size,
                        size_t* required) {
  return guard_string(buf, size, required, [&] {
    need(t, "table");
    if (index >= t->table.size()) throw IndexError("table index out of range");
    return t->table[index].text();
  });
}

void ak_table_free(ak_table* t) { delete t; }

ak_status ak_relators_generate(const char* family, int b, int d, const char* support,
                               unsigned threads, ak_relators** out) {
  return guard([&] {
    need(family, "family");
    need(support, "support");
    need(out, "out");
    *out = new ak_relators{generate_relators(parse_family(family), b, d, parse_filter(support), threads)};
  });
}

ak_status ak_relators_load(const char* path, ak_relators** out) {
  return guard([&] {
    need(out, "out");
    std::ifstream in = open_in(path);
    *out = new ak_relators{read_relators_jsonl(in)};
  });
}

ak_status ak_relators_append(ak_relators* dst, const ak_relators* src) {
  return guard([&] {
    need(dst, "destination");
    need(src, "source");
    std::vector<RelatorColumn> copy = src->cols;
    dst->cols.insert(dst->cols.end(), copy.begin(), copy.end());
  });
}

ak_status ak_relators_save(const ak_relators* r, const char* path) {
  return guard([&] {
    need(r, "relators");
    save(path, [&](std::ostream& out) { write_relators_jsonl(out, r->cols); });
  });
}

size_t ak_relators_size(const ak_relators* r) { return r ? r->cols.size() : 0; }

void ak_relators_free(ak_relators* r) { delete r; }

ak_status ak_matrix_save_csv(const ak_table* t, const ak_relators* r, const char* path) {
  return guard([&] {
    need(t, "table");
    need(r, "relators");
    const EvaluationMatrix m = build_matrix(t->table, r->cols);
    save(path, [&](std::ostream& out) { write_matrix_csv(out, m, r->cols); });
  });
}

ak_status ak_kernel_compute(const ak_table* t, const ak_relators* r, const char* whitelist_path,
                            ak_progress_fn progress, void* user, ak_kernel** out) {
  return guard([&] {
    need(t, "table");
    need(r, "relators");
    need(out, "out");
    std::set<std::pair<std::size_t, std::size_t>> whitelist;
    if (whitelist_path) {
      std::ifstream in = open_in(whitelist_path);
      whitelist = read_whitelist_json(in, t->table);
    }
    KernelBasis k = table_kernel(t->table, r->cols, whitelist_path ? &whitelist : nullptr,
                                 progress_options(progress, user));
    *out = new ak_kernel{k.ambient(), k.vectors()};
  });
}

ak_status ak_kernel_load_csv(const char* path, const ak_table* t, ak_kernel** out) {
  return guard([&] {
    need(out, "out");
    std::ifstream in = open_in(path);
    auto rows = read_vectors_csv(in);
    const std::size_t ambient = rows.empty() ? (t ? t->table.size() : 0) : rows.front().size();
    if (t && ambient != t->table.size())
      throw DimensionError("coefficient rows have " + std::to_string(ambient) +
                           " entries but the table has " + std::to_string(t->table.size()));
    *out = new ak_kernel{ambient, std::move(rows)};
  });
}

ak_status ak_kernel_save_csv(const ak_kernel* k, const char* path) {
  return guard([&] {
    need(k, "kernel");
    save(path, [&](std::ostream& out) {
      write_vectors_csv(out, k->rows);
    });
  });
}

size_t ak_kernel_dim(const ak_kernel* k) { return k ? k->rows.size() : 0; }

size_t ak_kernel_ambient(const ak_kernel* k) { return k ? k->ambient : 0; }

ak_status ak_kernel_entry(const ak_kernel* k, size_t row, size_t col, char* buf, size_t size,
                          size_t* required) {
  return guard_string(buf, size, required, [&] {
    need(k, "kernel");
    if (row >= k->rows.size() || col >= k->ambient) throw IndexError("kernel entry out of range");
    return k->rows[row][col].get_str();
  });
}

void ak_kernel_free(ak_kernel* k) { delete k; }

ak_status ak_evaluate(const ak_table* t, const ak_kernel* k, size_t row, const char* word,
                      char* buf, size_t size, size_t* required) {
  return guard_string(buf, size, required, [&] {
    need(t, "table");
    need(k, "kernel");
    need(word, "word");
    if (row >= k->rows.size())
      throw IndexError("coefficient row " + std::to_string(row + 1) + " out of range (" +
                       std::to_string(k->rows.size()) + " rows)");
    const Functional f(t->table, k->rows[row]);
    return evaluate_functional(f, parse_word(word)).get_str();
  });
}

ak_status ak_verify(const ak_table* t, const ak_kernel* k, const char* moves, int trials,
                    int steps, uint64_t seed, unsigned threads, int* passed, char* report,
                    size_t size, size_t* required) {
  return guard_string(report, size, required, [&] {
    need(t, "table");
    need(k, "kernel");
    need(moves, "moves");
    VerifyOptions o;
    o.moves = parse_move_list(moves);
    o.trials = trials;
    o.steps = steps;
    o.seed = seed;
    o.threads = threads;
    const VerifyReport r = verify_invariance(t->table, k->rows, o);
    if (passed) *passed = r.passed ? 1 : 0;
    return format_report(r);
  });
}

ak_status ak_dims(const char* family, int b, int d, const char* filter, unsigned threads,
                  ak_progress_fn progress, void* user, size_t* dim) {
  return guard([&] {
    need(family, "family");
    need(filter, "filter");
    need(dim, "dim");
    *dim = window_dimension(parse_family(family), b, d, parse_filter(filter), threads,
                            progress_options(progress, user));
  });
}

ak_status ak_word_canonical(const char* word, char* buf, size_t size, size_t* required) {
  return guard_string(buf, size, required, [&] {
    need(word, "word");
    return canonical_form(parse_word(word)).text();
  });
}

}  // extern "C"
