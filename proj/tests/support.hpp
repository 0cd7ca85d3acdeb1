#pragma once

#include "doctest.h"
#include "pfid/error.hpp"

/// Runs f and returns the code of the pfid::Error it throws.
template <class F>
pfid::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const pfid::Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return pfid::ErrorCode::Parse;
}
