#include "xgeom/error.hpp"

#include <cstdio>

namespace xgeom {

namespace {

std::string describe(const char* what, double value) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s (worst %.6g)", what, value);
  return buf;
}

}  // namespace

const char* to_string(InvalidDensity::Reason reason) noexcept {
  switch (reason) {
    case InvalidDensity::Reason::NotHermitian: return "NotHermitian";
    case InvalidDensity::Reason::TraceNotOne: return "TraceNotOne";
    case InvalidDensity::Reason::NotPSD: return "NotPSD";
  }
  return "Unknown";
}

InvalidDensity::InvalidDensity(Reason reason, double worst)
    : DomainError(describe(to_string(reason), worst)), reason_(reason), worst_(worst) {}

NotXShaped::NotXShaped(int row, int col, double magnitude)
    : DomainError(describe(("NotXShaped: entry r" + std::to_string(row + 1) + std::to_string(col + 1)).c_str(),
                           magnitude)),
      row_(row),
      col_(col),
      magnitude_(magnitude) {}

}  // namespace xgeom
