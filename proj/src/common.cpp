#include "dads/common.hpp"

#include <cstdio>

namespace dads {

const char* to_string(GuardKind kind) {
  switch (kind) {
    case GuardKind::gain_overflow: return "gain-overflow";
    case GuardKind::blowup: return "blowup";
    case GuardKind::non_finite: return "non-finite";
  }
  return "unknown";
}

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace dads
