#ifndef RAKIT_BOUNDS_HH
#define RAKIT_BOUNDS_HH 1

#include <rakit/algebra.hh>
#include <rakit/network.hh>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rakit
{
    enum class BoundFamily
    {
        loops,     // F1: one element
        pairs,     // F2: two elements
        triangles  // F3: three elements
    };

    [[nodiscard]] auto to_string(BoundFamily f) -> std::string;

    struct Bound
    {
        BoundFamily family;
        LabeledStructure structure;
    };

    /// Forbidden substructures over the atom signature. A structure embeds none of them
    /// exactly when it is an atomic network.
    struct BoundSet
    {
        std::string algebra_name;
        std::vector<Bound> bounds;

        [[nodiscard]] auto count(BoundFamily f) const -> std::size_t;
    };

    /// Largest atom count generate_bounds() accepts; the pair family has 4^k members.
    inline constexpr std::size_t max_bound_atoms = 8;

    /// F1: every loop that is not a single self-converse identity atom. F2: every
    /// two-element structure with valid loops that is not an atomic network. F3: every
    /// three-element structure whose two-element substructures are atomic networks but
    /// which breaks the triangle condition. Each family is reduced up to isomorphism.
    [[nodiscard]] auto generate_bounds(const RelationAlgebra & ra) -> BoundSet;

    /// Index of the first bound that embeds (as an induced substructure) into `s`.
    [[nodiscard]] auto find_embedded_bound(const BoundSet & bs, const LabeledStructure & s) -> std::optional<std::size_t>;

    /// True iff no bound embeds into `s`.
    [[nodiscard]] auto check_membership(const BoundSet & bs, const LabeledStructure & s) -> bool;

    /// Concatenated network files with every pair explicit, each preceded by a family comment.
    [[nodiscard]] auto write_bounds(const RelationAlgebra & ra, const BoundSet & bs) -> std::string;
}

#endif
