#ifndef RAKIT_NETWORK_HH
#define RAKIT_NETWORK_HH 1

#include <rakit/algebra.hh>
#include <rakit/element.hh>

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rakit
{
    /// A finite set of named nodes with an Element label on every ordered pair, loops included.
    class Network
    {
    public:
        Network() = default;
        explicit Network(std::vector<std::string> nodes, Element fill = Element{});
        Network(std::vector<std::string> nodes, std::vector<Element> labels);

        [[nodiscard]] auto size() const noexcept -> std::size_t { return _nodes.size(); }
        [[nodiscard]] auto nodes() const -> const std::vector<std::string> & { return _nodes; }
        [[nodiscard]] auto node_name(std::size_t x) const -> const std::string & { return _nodes.at(x); }
        [[nodiscard]] auto node_index(std::string_view name) const -> std::optional<std::size_t>;

        [[nodiscard]] auto label(std::size_t x, std::size_t y) const -> Element { return _labels[x * size() + y]; }
        auto set_label(std::size_t x, std::size_t y, Element e) -> void { _labels[x * size() + y] = e; }
        [[nodiscard]] auto labels() const -> std::span<const Element> { return _labels; }

        /// Sets (x,y) to e and (y,x) to the converse of e.
        auto set_edge(const RelationAlgebra & ra, std::size_t x, std::size_t y, Element e) -> void;

        /// Appends a node; every new pair is labelled `fill`.
        auto add_node(std::string name, Element fill = Element{}) -> std::size_t;

        /// The sub-network induced by `keep`, in the given order.
        [[nodiscard]] auto induced(std::span<const std::size_t> keep) const -> Network;
        [[nodiscard]] auto prefix(std::size_t count) const -> Network;

        std::string name = "net";

        friend auto operator==(const Network & a, const Network & b) -> bool
        {
            return a._nodes == b._nodes && a._labels == b._labels;
        }

    private:
        std::vector<std::string> _nodes;
        std::vector<Element> _labels;
    };

    /// A finite structure over the atom signature: for every ordered pair, the set of
    /// atoms whose relation holds on it.
    struct LabeledStructure
    {
        std::vector<std::string> elements;
        std::vector<Element> relations;

        LabeledStructure() = default;
        explicit LabeledStructure(std::vector<std::string> elements);

        [[nodiscard]] auto size() const noexcept -> std::size_t { return elements.size(); }
        [[nodiscard]] auto at(std::size_t x, std::size_t y) const -> Element { return relations[x * size() + y]; }
        auto set(std::size_t x, std::size_t y, Element atoms) -> void { relations[x * size() + y] = atoms; }
        [[nodiscard]] auto holds(std::size_t atom, std::size_t x, std::size_t y) const -> bool { return at(x, y).contains(atom); }
    };

    using Triple = std::array<std::size_t, 3>;

    /// Reads the network file format: unspecified pairs become 1, unspecified loops
    /// become Id, and a pair given in one direction only gets the converse in the other.
    [[nodiscard]] auto parse_network(const RelationAlgebra & ra, std::string_view text) -> Network;

    /// Writes `n` so that parse_network reads it back unchanged.
    [[nodiscard]] auto write_network(const RelationAlgebra & ra, const Network & n) -> std::string;

    /// Writes every ordered pair explicitly, including loops.
    [[nodiscard]] auto write_network_explicit(const RelationAlgebra & ra, const Network & n) -> std::string;

    /// Meets every label with the converse of its reverse and every loop with Id.
    /// Empty optional if some label becomes 0.
    [[nodiscard]] auto normalize(const RelationAlgebra & ra, const Network & n) -> std::optional<Network>;

    /// Refines labels(x,z) by labels(x,y);labels(y,z) over all ordered triples until a
    /// fixpoint is reached. Empty optional if some label becomes 0.
    [[nodiscard]] auto path_consistency(const RelationAlgebra & ra, const Network & n) -> std::optional<Network>;

    /// First ordered triple (x,y,z) with labels(x,z) not below labels(x,y);labels(y,z).
    [[nodiscard]] auto find_triangle_violation(const RelationAlgebra & ra, const Network & n) -> std::optional<Triple>;

    /// Every label an atom, loops below Id, reverse pairs conversed, and the triangle
    /// condition on all ordered triples (repeated nodes included).
    [[nodiscard]] auto is_atomic(const RelationAlgebra & ra, const Network & n) -> bool;

    struct SolveStats
    {
        unsigned long long decisions = 0;
        unsigned long long failures = 0;
    };

    /// Backtracking search for an atomic refinement, with path consistency after every
    /// decision. Empty optional if no atomic refinement exists.
    [[nodiscard]] auto refine_solve(const RelationAlgebra & ra, const Network & n, SolveStats * stats = nullptr)
        -> std::optional<Network>;

    /// Label of (x,y) is the meet of the atoms holding on it, or 1 if none holds.
    [[nodiscard]] auto struct_to_net(const RelationAlgebra & ra, const LabeledStructure & s) -> Network;

    /// (x,y) satisfies exactly the atoms in labels(x,y).
    [[nodiscard]] auto net_to_struct(const Network & n) -> LabeledStructure;
}

#endif
