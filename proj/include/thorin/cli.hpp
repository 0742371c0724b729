#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace thorin::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDomain = 2;
inline constexpr int kNumerical = 3;
inline constexpr int kChecksFailed = 4;  // verify --strict only

// Grid grammar: "a,b,c" | "a:b:n" (n points, linear, inclusive) | "log:a:b:n".
std::vector<double> parse_grid(std::string_view spec);

// %.17g, so every double reads back exactly.
std::string num(double v);

// Runs thorin-lab with args excluding the program name. Artifacts go to out
// (or the --out file), diagnostics and sidecars to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int main(int argc, char** argv);

}  // namespace thorin::cli
