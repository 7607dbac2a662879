#pragma once

#include <doctest.h>

#include "krein/error.hpp"

// Fails unless `expr` throws krein::Error with the given code.
#define CHECK_ERRC(expr, errc)                                          \
  do {                                                                  \
    bool thrown_ = false;                                               \
    try {                                                               \
      (void)(expr);                                                     \
    } catch (const krein::Error& e_) {                                  \
      thrown_ = true;                                                   \
      CHECK_MESSAGE(e_.code() == (errc), e_.what());                    \
    }                                                                   \
    CHECK_MESSAGE(thrown_, "expected " #errc " from " #expr);           \
  } while (0)
