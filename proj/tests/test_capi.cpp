#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "arrowkernel/arrowkernel.h"
#include "doctest.h"

namespace {

std::string word_at(const ak_table* t, size_t i) {
  size_t need = 0;
  REQUIRE(ak_table_word(t, i, nullptr, 0, &need) == AK_ERR_BUFFER);
  std::string s(need, '\0');
  REQUIRE(ak_table_word(t, i, s.data(), s.size(), &need) == AK_OK);
  s.resize(need - 1);
  return s;
}

std::string canonical(const char* w) {
  char buf[256];
  size_t need = 0;
  REQUIRE(ak_word_canonical(w, buf, sizeof buf, &need) == AK_OK);
  return buf;
}

std::string slurp(const char* path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Files {
  ~Files() {
    for (const char* p : {"capi_table.jsonl", "capi_rel.jsonl", "capi_basis.csv", "capi_matrix.csv",
                          "capi_white.json", "capi_bad.csv"})
      std::remove(p);
  }
};

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("status strings and errors") {
  CHECK(std::string(ak_status_string(AK_OK)) == "ok");
  CHECK(std::string(ak_status_string(AK_ERR_BUFFER)) == "buffer too small");
  char buf[64];
  CHECK(ak_word_canonical("1 1", buf, sizeof buf, nullptr) == AK_ERR_LETTER_COUNT);
  CHECK(std::string(ak_last_error()).size() > 0);
  CHECK(ak_word_canonical("1 x", buf, sizeof buf, nullptr) == AK_ERR_SYNTAX);
  CHECK(ak_word_canonical("0 -0", buf, sizeof buf, nullptr) == AK_ERR_ZERO_LETTER);
  CHECK(ak_word_canonical("2 1 -2 -1", buf, sizeof buf, nullptr) == AK_OK);
  CHECK(std::string(ak_last_error()).empty());
  CHECK(canonical("2 1 -2 -1") == "1 2 -1 -2");
  CHECK(ak_word_canonical("2 1 -2 -1", buf, 3, nullptr) == AK_ERR_BUFFER);
  ak_table* t = nullptr;
  CHECK(ak_table_enumerate(3, 2, "all", 1, &t) == AK_ERR_WINDOW);
  CHECK(t == nullptr);
  CHECK(ak_table_enumerate(2, 3, "nope", 1, &t) == AK_ERR_ARGUMENT);
  CHECK(ak_table_load("/nonexistent/table.jsonl", &t) == AK_ERR_IO);
  CHECK(ak_table_enumerate(2, 3, "all", 1, nullptr) == AK_ERR_ARGUMENT);
  ak_table_free(nullptr);
  CHECK(ak_table_size(nullptr) == 0);
}

TEST_CASE("tables") {
  Files cleanup;
  ak_table* t = nullptr;
  REQUIRE(ak_table_enumerate(2, 3, "conn", 2, &t) == AK_OK);
  CHECK(ak_table_size(t) == 7);
  int b = 0, d = 0;
  CHECK(ak_table_window(t, &b, &d) == AK_OK);
  CHECK(b == 2);
  CHECK(d == 3);
  CHECK(std::string(ak_table_filter(t)) == "conn");
  CHECK(word_at(t, 0) == "1 2 -1 -2");
  char buf[8];
  CHECK(ak_table_word(t, 7, buf, sizeof buf, nullptr) == AK_ERR_INDEX);

  REQUIRE(ak_table_save(t, "capi_table.jsonl") == AK_OK);
  ak_table* back = nullptr;
  REQUIRE(ak_table_load("capi_table.jsonl", &back) == AK_OK);
  CHECK(ak_table_size(back) == 7);
  for (size_t i = 0; i < 7; ++i) CHECK(word_at(back, i) == word_at(t, i));
  ak_table_free(back);
  ak_table_free(t);

  std::ofstream("capi_table.jsonl") << "{\"index\":1,\"word\":\"1 2\"}\n";
  CHECK(ak_table_load("capi_table.jsonl", &back) == AK_ERR_FORMAT);
}

TEST_CASE("relators, kernels and evaluation") {
  Files cleanup;
  ak_table* t = nullptr;
  REQUIRE(ak_table_enumerate(2, 3, "conn", 1, &t) == AK_OK);
  ak_relators* r = nullptr;
  REQUIRE(ak_relators_generate("siii", 2, 3, "conn", 1, &r) == AK_OK);
  CHECK(ak_relators_size(r) == 6);
  CHECK(ak_relators_generate("sv", 2, 3, "conn", 1, &r) == AK_ERR_ARGUMENT);

  REQUIRE(ak_relators_save(r, "capi_rel.jsonl") == AK_OK);
  ak_relators* loaded = nullptr;
  REQUIRE(ak_relators_load("capi_rel.jsonl", &loaded) == AK_OK);
  CHECK(ak_relators_size(loaded) == 6);
  REQUIRE(ak_relators_append(loaded, r) == AK_OK);
  CHECK(ak_relators_size(loaded) == 12);

  int lines = 0;
  auto count = [](const char*, void* user) { ++*static_cast<int*>(user); };
  ak_kernel* k = nullptr;
  REQUIRE(ak_kernel_compute(t, loaded, nullptr, count, &lines, &k) == AK_OK);
  CHECK(lines > 0);
  CHECK(ak_kernel_dim(k) == 3);
  CHECK(ak_kernel_ambient(k) == 7);
  char buf[32];
  CHECK(ak_kernel_entry(k, 0, 0, buf, sizeof buf, nullptr) == AK_OK);
  CHECK(ak_kernel_entry(k, 3, 0, buf, sizeof buf, nullptr) == AK_ERR_INDEX);

  REQUIRE(ak_matrix_save_csv(t, r, "capi_matrix.csv") == AK_OK);
  const std::string m = slurp("capi_matrix.csv");
  CHECK(std::count(m.begin(), m.end(), '\n') == 8);

  REQUIRE(ak_kernel_save_csv(k, "capi_basis.csv") == AK_OK);
  ak_kernel* k2 = nullptr;
  REQUIRE(ak_kernel_load_csv("capi_basis.csv", t, &k2) == AK_OK);
  CHECK(ak_kernel_dim(k2) == 3);
  std::ofstream("capi_bad.csv") << "1,2,3\n";
  ak_kernel* bad = nullptr;
  CHECK(ak_kernel_load_csv("capi_bad.csv", t, &bad) == AK_ERR_DIMENSION);

  // Kernel values are invariant: the word and a Reidemeister I extension agree.
  for (size_t row = 0; row < 3; ++row) {
    char a[64], c[64];
    REQUIRE(ak_evaluate(t, k2, row, "1 2 -1 3 -2 -3", a, sizeof a, nullptr) == AK_OK);
    REQUIRE(ak_evaluate(t, k2, row, "1 2 -1 3 -2 -3 4 -4", c, sizeof c, nullptr) == AK_OK);
    CHECK(std::string(a) == std::string(c));
  }
  CHECK(ak_evaluate(t, k2, 3, "1 -1", buf, sizeof buf, nullptr) == AK_ERR_INDEX);
  CHECK(ak_evaluate(t, k2, 0, "1 1", buf, sizeof buf, nullptr) == AK_ERR_LETTER_COUNT);

  int passed = 0;
  size_t need = 0;
  CHECK(ak_verify(t, k2, "ri,siii", 50, 10, 1, 1, &passed, nullptr, 0, &need) == AK_ERR_BUFFER);
  std::string report(need, '\0');
  REQUIRE(ak_verify(t, k2, "ri,siii", 50, 10, 1, 1, &passed, report.data(), report.size(), &need) ==
          AK_OK);
  CHECK(passed == 1);
  CHECK(report.rfind("PASS", 0) == 0);

  std::ofstream("capi_white.json") << "{\"reflective_pairs\": []}";
  ak_kernel* constrained = nullptr;
  REQUIRE(ak_kernel_compute(t, r, "capi_white.json", nullptr, nullptr, &constrained) == AK_OK);
  CHECK(ak_kernel_dim(constrained) <= 3);

  ak_kernel_free(constrained);
  ak_kernel_free(k2);
  ak_kernel_free(k);
  ak_relators_free(loaded);
  ak_relators_free(r);
  ak_table_free(t);
}

TEST_CASE("dims") {
  size_t dim = 0;
  REQUIRE(ak_dims("wiii", 2, 3, "conn", 1, nullptr, nullptr, &dim) == AK_OK);
  CHECK(dim == 1);
  REQUIRE(ak_dims("siii", 3, 4, "conn", 1, nullptr, nullptr, &dim) == AK_OK);
  CHECK(dim == 18);
  CHECK(ak_dims("siii", 4, 3, "conn", 1, nullptr, nullptr, &dim) == AK_ERR_WINDOW);
}

}  // TEST_SUITE
