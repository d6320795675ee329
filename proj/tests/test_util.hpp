#pragma once
// Minimal check harness shared by all test executables.

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace testu {

inline int& fail_count() { static int n = 0; return n; }
inline int& check_count() { static int n = 0; return n; }

#define CHECK(cond)                                                          \
  do {                                                                       \
    ++testu::check_count();                                                  \
    if (!(cond)) {                                                           \
      ++testu::fail_count();                                                 \
      std::cout << "FAIL " << __FILE__ << ":" << __LINE__ << "  " << #cond   \
                << std::endl;                                                \
    }                                                                        \
  } while (0)

// (a) and (b) may be GMP expression templates; never store them past the
// full expression -- re-evaluate for the failure message instead
#define CHECK_EQ(a, b)                                                       \
  do {                                                                       \
    ++testu::check_count();                                                  \
    if (!((a) == (b))) {                                                     \
      ++testu::fail_count();                                                 \
      std::ostringstream os_;                                                \
      os_ << "FAIL " << __FILE__ << ":" << __LINE__ << "  " << #a            \
          << " == " << #b << "  (got ";                                      \
      os_ << (a);                                                            \
      os_ << " vs ";                                                         \
      os_ << (b);                                                            \
      std::cout << os_.str() << ")" << std::endl;                            \
    }                                                                        \
  } while (0)

#define CHECK_THROWS(expr)                                                   \
  do {                                                                       \
    ++testu::check_count();                                                  \
    bool threw_ = false;                                                     \
    try { (void)(expr); } catch (...) { threw_ = true; }                     \
    if (!threw_) {                                                           \
      ++testu::fail_count();                                                 \
      std::cout << "FAIL " << __FILE__ << ":" << __LINE__ << "  expected "   \
                << #expr << " to throw" << std::endl;                        \
    }                                                                        \
  } while (0)

inline int finish(const char* name) {
  if (fail_count() == 0) {
    std::cout << name << ": " << check_count() << " checks passed" << std::endl;
    return 0;
  }
  std::cout << name << ": " << fail_count() << " of " << check_count()
            << " checks FAILED" << std::endl;
  return 1;
}

// tiny deterministic PRNG for fuzz corpora (no libc rand, reproducible)
struct Rng {
  unsigned long long s;
  explicit Rng(unsigned long long seed) : s(seed * 2654435761ULL + 1) {}
  unsigned long long next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  int uniform(int lo, int hi) {  // inclusive
    return lo + (int)(next() % (unsigned long long)(hi - lo + 1));
  }
};

}  // namespace testu
