#ifndef RAKIT_CLI_HH
#define RAKIT_CLI_HH 1

#include <iosfwd>
#include <string>
#include <vector>

namespace rakit::cli
{
    namespace exit_code
    {
        inline constexpr int positive = 0;
        inline constexpr int negative = 1;
        inline constexpr int usage = 2;
        inline constexpr int budget = 3;
    }

    /// Runs one command. `args` excludes the program name.
    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}

#endif
