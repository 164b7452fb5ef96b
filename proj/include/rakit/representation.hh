#ifndef RAKIT_REPRESENTATION_HH
#define RAKIT_REPRESENTATION_HH 1

#include <rakit/algebra.hh>
#include <rakit/network.hh>
#include <rakit/report.hh>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rakit
{
    /// A finite domain {0..n-1} together with an explicit binary relation per atom.
    class ConcreteRepresentation
    {
    public:
        ConcreteRepresentation(std::string name, std::optional<std::string> algebra_name, std::size_t domain_size);

        [[nodiscard]] auto name() const -> const std::string & { return _name; }
        [[nodiscard]] auto algebra_name() const -> const std::optional<std::string> & { return _algebra_name; }
        [[nodiscard]] auto domain_size() const noexcept -> std::size_t { return _domain_size; }
        [[nodiscard]] auto atom_count() const noexcept -> std::size_t { return _atoms.size(); }
        [[nodiscard]] auto atom_names() const -> const std::vector<std::string> & { return _atoms; }
        [[nodiscard]] auto atom_index(std::string_view name) const -> std::optional<std::size_t>;

        auto add_atom(std::string name) -> std::size_t;
        /// Returns false if the pair was already present.
        auto add_pair(std::size_t atom, std::size_t i, std::size_t j) -> bool;
        auto remove_pair(std::size_t atom, std::size_t i, std::size_t j) -> void;

        [[nodiscard]] auto holds(std::size_t atom, std::size_t i, std::size_t j) const -> bool
        {
            return _relations[atom][i * _domain_size + j] != 0;
        }

    private:
        std::string _name;
        std::optional<std::string> _algebra_name;
        std::size_t _domain_size;
        std::vector<std::string> _atoms;
        std::vector<std::vector<std::uint8_t>> _relations;
    };

    /// Reads the representation file format. Structural only: no validation.
    [[nodiscard]] auto parse_representation(std::string_view text) -> ConcreteRepresentation;
    [[nodiscard]] auto write_representation(const ConcreteRepresentation & cr) -> std::string;

    /// Checks that the atom relations are nonempty, partition the square, that the
    /// identity is a union of atoms, and that converse and composition stay inside
    /// unions of atoms.
    [[nodiscard]] auto validate_representation(const ConcreteRepresentation & cr) -> ValidationReport;

    /// The abstract algebra read off the relations. Throws InvalidInput if `cr` does not validate.
    [[nodiscard]] auto derive_algebra(const ConcreteRepresentation & cr) -> RelationAlgebra;

    struct ModelCheckStats
    {
        unsigned long long assignments = 0;
    };

    /// Searches for s with (s(x), s(y)) in the relation of labels(x,y) for every ordered
    /// pair. Atom bit i of a label refers to the i-th atom of `cr`. Empty optional if none.
    [[nodiscard]] auto model_check(const ConcreteRepresentation & cr, const Network & n, ModelCheckStats * stats = nullptr)
        -> std::optional<std::vector<std::size_t>>;
}

#endif
