#ifndef ARROWKERNEL_H
#define ARROWKERNEL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define AK_API __attribute__((visibility("default")))
#else
#define AK_API
#endif

typedef enum ak_status {
  AK_OK = 0,
  AK_ERR_SYNTAX = 1,
  AK_ERR_LETTER_COUNT = 2,
  AK_ERR_ZERO_LETTER = 3,
  AK_ERR_UNKNOWN_LETTER = 4,
  AK_ERR_WINDOW = 5,
  AK_ERR_INDEX = 6,
  AK_ERR_DIMENSION = 7,
  AK_ERR_INVALID_SITE = 8,
  AK_ERR_FORMAT = 9,
  AK_ERR_IO = 10,
  AK_ERR_ARGUMENT = 11,
  AK_ERR_BUFFER = 12, /* output buffer too small; *required holds the size */
  AK_ERR_INTERNAL = 13
} ak_status;

typedef struct ak_table ak_table;
typedef struct ak_relators ak_relators;
typedef struct ak_kernel ak_kernel;

/* Receives progress lines (no trailing newline). */
typedef void (*ak_progress_fn)(const char* line, void* user);

AK_API const char* ak_status_string(ak_status s);
/* Message of the last failed call on this thread; "" if none. */
AK_API const char* ak_last_error(void);

/* String outputs: the text plus a terminating NUL is copied when it fits in
   size bytes; *required (if non-null) always receives the needed size. */

/* filter: "all", "conn" or "irr". */
AK_API ak_status ak_table_enumerate(int b, int d, const char* filter, unsigned threads,
                                    ak_table** out);
AK_API ak_status ak_table_load(const char* path, ak_table** out);
AK_API ak_status ak_table_save(const ak_table* t, const char* path);
AK_API size_t ak_table_size(const ak_table* t);
/* Arrow-count window and filter name ("all", "conn", "irr") of a table. */
AK_API ak_status ak_table_window(const ak_table* t, int* b, int* d);
AK_API const char* ak_table_filter(const ak_table* t);
AK_API ak_status ak_table_word(const ak_table* t, size_t index, char* buf, size_t size,
                               size_t* required);
AK_API void ak_table_free(ak_table* t);

/* family: "r1", "sii", "wii", "siii" or "wiii"; support as for filters. */
AK_API ak_status ak_relators_generate(const char* family, int b, int d, const char* support,
                                      unsigned threads, ak_relators** out);
AK_API ak_status ak_relators_load(const char* path, ak_relators** out);
/* Appends the columns of src to dst. */
AK_API ak_status ak_relators_append(ak_relators* dst, const ak_relators* src);
AK_API ak_status ak_relators_save(const ak_relators* r, const char* path);
AK_API size_t ak_relators_size(const ak_relators* r);
AK_API void ak_relators_free(ak_relators* r);

AK_API ak_status ak_matrix_save_csv(const ak_table* t, const ak_relators* r, const char* path);

/* whitelist_path may be null (no mirror constraints); progress may be null. */
AK_API ak_status ak_kernel_compute(const ak_table* t, const ak_relators* r,
                                   const char* whitelist_path, ak_progress_fn progress,
                                   void* user, ak_kernel** out);
/* Coefficient rows; t (may be null) checks the row length. */
AK_API ak_status ak_kernel_load_csv(const char* path, const ak_table* t, ak_kernel** out);
AK_API ak_status ak_kernel_save_csv(const ak_kernel* k, const char* path);
AK_API size_t ak_kernel_dim(const ak_kernel* k);
AK_API size_t ak_kernel_ambient(const ak_kernel* k);
AK_API ak_status ak_kernel_entry(const ak_kernel* k, size_t row, size_t col, char* buf,
                                 size_t size, size_t* required);
AK_API void ak_kernel_free(ak_kernel* k);

/* Value of coefficient row `row` (0-based) on a word, as decimal text. */
AK_API ak_status ak_evaluate(const ak_table* t, const ak_kernel* k, size_t row,
                             const char* word, char* buf, size_t size, size_t* required);

/* moves: comma-separated list such as "ri,wiii". *passed is 1 or 0; the
   report text ends with the first counterexample walk, if any. */
AK_API ak_status ak_verify(const ak_table* t, const ak_kernel* k, const char* moves,
                           int trials, int steps, uint64_t seed, unsigned threads,
                           int* passed, char* report, size_t size, size_t* required);

/* Kernel dimension of the full pipeline over one window. */
AK_API ak_status ak_dims(const char* family, int b, int d, const char* filter,
                         unsigned threads, ak_progress_fn progress, void* user,
                         size_t* dim);

/* Canonical representative of the class of a word. */
AK_API ak_status ak_word_canonical(const char* word, char* buf, size_t size,
                                   size_t* required);

#ifdef __cplusplus
}
#endif

#endif
