#ifndef RAKIT_ALGEBRA_HH
#define RAKIT_ALGEBRA_HH 1

#include <rakit/element.hh>
#include <rakit/report.hh>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rakit
{
    /// A finite relation algebra given by its atom structure: atom names, the converse
    /// map, the atoms below the identity, and the atom-level composition table.
    ///
    /// Construction only checks shapes (sizes, index ranges). The relation algebra laws
    /// are checked separately by validate_algebra(), so that broken tables can still be
    /// loaded and diagnosed.
    class RelationAlgebra
    {
    public:
        RelationAlgebra(std::string name, std::vector<std::string> atoms, std::vector<std::size_t> converse,
            Element identity, std::vector<Element> table);

        [[nodiscard]] auto name() const -> const std::string & { return _name; }
        [[nodiscard]] auto size() const noexcept -> std::size_t { return _atoms.size(); }
        [[nodiscard]] auto atom_names() const -> const std::vector<std::string> & { return _atoms; }
        [[nodiscard]] auto atom_name(std::size_t a) const -> const std::string & { return _atoms.at(a); }
        [[nodiscard]] auto atom_index(std::string_view name) const -> std::optional<std::size_t>;

        [[nodiscard]] auto converse_atom(std::size_t a) const -> std::size_t { return _converse[a]; }
        [[nodiscard]] auto table(std::size_t a, std::size_t b) const -> Element { return _table[a * size() + b]; }
        [[nodiscard]] auto is_identity_atom(std::size_t a) const -> bool { return _identity.contains(a); }

        [[nodiscard]] auto zero() const noexcept -> Element { return Element{}; }
        [[nodiscard]] auto top() const noexcept -> Element { return _top; }
        [[nodiscard]] auto identity() const noexcept -> Element { return _identity; }

        /// Union of table(a, b) over a in x and b in y.
        [[nodiscard]] auto compose(Element x, Element y) const -> Element;
        [[nodiscard]] auto converse(Element x) const -> Element;
        [[nodiscard]] auto complement(Element x) const noexcept -> Element { return Element{_top.bits() & ~x.bits()}; }

        /// Parses a comma-separated atom list such as "lt,eq"; "0" and "1" name the
        /// bottom and top elements. Throws ParseError on unknown atoms.
        [[nodiscard]] auto parse_element(std::string_view text) const -> Element;

        /// Atom names in declaration order joined by `separator`; the empty element prints as "0".
        [[nodiscard]] auto format(Element x, std::string_view separator = ",") const -> std::string;

        /// Replaces one table entry; used to build mutated tables for diagnostics.
        auto set_table(std::size_t a, std::size_t b, Element value) -> void;

    private:
        std::string _name;
        std::vector<std::string> _atoms;
        std::vector<std::size_t> _converse;
        Element _identity;
        Element _top;
        std::vector<Element> _table;
    };

    /// Reads the line-oriented algebra file format. Structural only: the laws are not checked.
    [[nodiscard]] auto parse_algebra(std::string_view text) -> RelationAlgebra;

    /// Writes `ra` back in the algebra file format, atoms in declaration order.
    [[nodiscard]] auto write_algebra(const RelationAlgebra & ra) -> std::string;

    /// Checks the atom-level relation algebra laws. Every broken law is reported with
    /// the atoms that witness it; empty table entries only produce warnings.
    [[nodiscard]] auto validate_algebra(const RelationAlgebra & ra) -> ValidationReport;
}

#endif
