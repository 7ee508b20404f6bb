#pragma once

#include <iosfwd>

namespace et6::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

int dispatch(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace et6::cli
