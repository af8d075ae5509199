#pragma once

#include <functional>

#include "reprorl/error.hpp"

namespace testing {

// True iff fn throws reprorl::Error with the given code.
inline bool throws_code(const std::function<void()>& fn, reprorl::Errc code) {
  try {
    fn();
  } catch (const reprorl::Error& e) {
    return e.code() == code;
  } catch (...) {
    return false;
  }
  return false;
}

}  // namespace testing
