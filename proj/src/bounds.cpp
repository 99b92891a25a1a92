#include "mpgh/bounds.hpp"

namespace mpgh {

const char* status_name(PetersenStatus s) {
  switch (s) {
    case PetersenStatus::kOk:
      return "ok";
    case PetersenStatus::kUncovered:
      return "uncovered";
    case PetersenStatus::kMismatch:
      return "mismatch";
  }
  return "unknown";
}

}  // namespace mpgh
