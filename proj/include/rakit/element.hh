#ifndef RAKIT_ELEMENT_HH
#define RAKIT_ELEMENT_HH 1

#include <bit>
#include <cstddef>
#include <cstdint>

namespace rakit
{
    /// Largest supported number of atoms; an element is a bit mask over the atoms.
    inline constexpr std::size_t max_atoms = 64;

    /// An element of the Boolean part of a finite relation algebra: a set of atoms.
    /// Bit i is atom i in the order the algebra file declares them.
    class Element
    {
    public:
        using Bits = std::uint64_t;

        constexpr Element() noexcept = default;
        constexpr explicit Element(Bits bits) noexcept : _bits(bits) {}

        [[nodiscard]] static constexpr auto atom(std::size_t index) noexcept -> Element
        {
            return Element{Bits{1} << index};
        }

        [[nodiscard]] constexpr auto bits() const noexcept -> Bits { return _bits; }
        [[nodiscard]] constexpr auto empty() const noexcept -> bool { return _bits == 0; }
        [[nodiscard]] constexpr auto size() const noexcept -> std::size_t { return std::popcount(_bits); }
        [[nodiscard]] constexpr auto is_atom() const noexcept -> bool { return std::has_single_bit(_bits); }
        [[nodiscard]] constexpr auto contains(std::size_t index) const noexcept -> bool { return (_bits >> index) & 1U; }

        /// Index of the lowest atom; undefined on the empty element.
        [[nodiscard]] constexpr auto first_atom() const noexcept -> std::size_t { return std::countr_zero(_bits); }

        template <typename F>
        constexpr auto for_each_atom(F && f) const -> void
        {
            for (Bits rest = _bits; rest != 0; rest &= rest - 1)
                f(static_cast<std::size_t>(std::countr_zero(rest)));
        }

        friend constexpr auto operator==(Element, Element) noexcept -> bool = default;
        friend constexpr auto operator<=>(Element, Element) noexcept = default;

    private:
        Bits _bits = 0;
    };

    [[nodiscard]] constexpr auto meet(Element x, Element y) noexcept -> Element { return Element{x.bits() & y.bits()}; }
    [[nodiscard]] constexpr auto join(Element x, Element y) noexcept -> Element { return Element{x.bits() | y.bits()}; }
    [[nodiscard]] constexpr auto leq(Element x, Element y) noexcept -> bool { return (x.bits() & ~y.bits()) == 0; }
}

#endif
