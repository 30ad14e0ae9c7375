#pragma once

// Command-line front end.
//
//   alphafair select       --input pop.csv --m 2 --alpha 1
//   alphafair rates        --scenario 1 --sigma 0.25 --alpha 0
//   alphafair parity-alpha --scenario 3 --sigma 0.8
//   alphafair report       --scenario 1 --sigma 0.6 --alpha 1
//   alphafair sweep        --scenario 2 --sigma 0.6
//   alphafair scenario     --id 3 --sigma 0.8 --cmd parity-alpha
//
// Exit status: 0 ok, 2 bad arguments, 3 file or parse error, 4 domain error.

#include <iosfwd>
#include <string>
#include <vector>

namespace alphafair {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitDomain = 4;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace alphafair
