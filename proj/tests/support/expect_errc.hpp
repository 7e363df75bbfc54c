#pragma once

#include <gtest/gtest.h>

#include "pstkit/error.hpp"

#define EXPECT_ERRC(stmt, errc)                                              \
  do {                                                                       \
    try {                                                                    \
      stmt;                                                                  \
      ADD_FAILURE() << "expected " << pst::to_string(errc) << ", no throw";  \
    } catch (const pst::Error& e) {                                          \
      EXPECT_EQ(e.code(), errc) << e.what();                                 \
    }                                                                        \
  } while (0)
