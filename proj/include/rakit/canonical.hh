#ifndef RAKIT_CANONICAL_HH
#define RAKIT_CANONICAL_HH 1

#include <rakit/element.hh>
#include <rakit/network.hh>

#include <cstddef>
#include <span>
#include <vector>

namespace rakit
{
    /// Lexicographically least row-major label matrix over all node permutations.
    /// Two label matrices are isomorphic iff their canonical forms are equal.
    /// Cost is n! * n^2; meant for the small networks used in exhaustive checks.
    [[nodiscard]] auto canonical_form(std::span<const Element> matrix, std::size_t n) -> std::vector<Element::Bits>;

    [[nodiscard]] auto canonical_form(const Network & n) -> std::vector<Element::Bits>;
    [[nodiscard]] auto canonical_form(const LabeledStructure & s) -> std::vector<Element::Bits>;
}

#endif
