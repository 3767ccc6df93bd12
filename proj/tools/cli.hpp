#pragma once

#include <iosfwd>
#include <vector>
#include <string>

namespace mbt::cli {

// Exit codes: 0 success, 1 test failures or diagnostics, 2 bad flags,
// 3 file or parse errors.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mbt::cli
