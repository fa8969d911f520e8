// SPDX-License-Identifier: Apache-2.0

#ifndef ISP_CLI_HPP
#define ISP_CLI_HPP

#include <iosfwd>
#include <span>
#include <string>

namespace isp
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

// Runs the `isp` command line. args[0] is the program name. Diagnostics are written to
// `err` as a single line: "isp: error: kind=<usage|data> message=<text>".
int run_cli(std::span<const std::string> args, std::ostream &out, std::ostream &err);

}  // namespace isp

#endif  // ISP_CLI_HPP
