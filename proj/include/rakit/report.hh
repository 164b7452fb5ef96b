#ifndef RAKIT_REPORT_HH
#define RAKIT_REPORT_HH 1

#include <string>
#include <vector>

namespace rakit
{
    /// One broken law together with the atoms (or domain elements) that witness it.
    struct Violation
    {
        std::string law;
        std::vector<std::string> witness;
        std::string detail;
    };

    struct ValidationReport
    {
        std::vector<Violation> violations;
        std::vector<std::string> warnings;

        [[nodiscard]] auto ok() const noexcept -> bool { return violations.empty(); }
        [[nodiscard]] auto count(const std::string & law) const -> std::size_t;
    };

    [[nodiscard]] auto to_string(const Violation &) -> std::string;
}

#endif
