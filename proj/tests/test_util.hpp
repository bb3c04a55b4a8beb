#ifndef LOOPFORCE_TESTS_TEST_UTIL_HPP
#define LOOPFORCE_TESTS_TEST_UTIL_HPP

#include <gtest/gtest.h>

#include <functional>

#include "loopforce/error.hpp"

// Error code raised by f, or a test failure when f does not throw.
inline loopforce::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const loopforce::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return loopforce::ErrorCode::InvalidArgument;
}

#endif  // LOOPFORCE_TESTS_TEST_UTIL_HPP
