#ifndef RAKIT_AMALGAMATION_HH
#define RAKIT_AMALGAMATION_HH 1

#include <rakit/algebra.hh>
#include <rakit/errors.hh>
#include <rakit/network.hh>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rakit
{
    /// Two atomic networks over a common atomic base, each adding one node: `left` is
    /// the base plus p and `right` is the base plus q, the new node last in both.
    struct AmalgamationDiagram
    {
        Network base;
        Network left;
        Network right;
    };

    /// Throws InvalidInput unless the diagram is a well-formed 2-point diagram of atomic networks.
    auto check_diagram(const RelationAlgebra & ra, const AmalgamationDiagram & d) -> void;

    /// The network on base + {p, q} with labels(p,q) = atom and labels(q,p) its converse.
    [[nodiscard]] auto combine(const RelationAlgebra & ra, const AmalgamationDiagram & d, std::size_t atom) -> Network;

    /// The first atom (declaration order) for (p,q) making the combined network atomic.
    /// Every ordered triple that involves both p and q is checked.
    [[nodiscard]] auto amalgamate(const RelationAlgebra & ra, const AmalgamationDiagram & d) -> std::optional<std::size_t>;

    struct BlockedAtom
    {
        std::size_t atom;
        Triple triple; // node indices in combine(ra, d, atom)
    };

    /// For every atom, one ordered triple that rules it out for (p,q). Empty if the diagram amalgamates.
    [[nodiscard]] auto explain_failure(const RelationAlgebra & ra, const AmalgamationDiagram & d) -> std::vector<BlockedAtom>;

    /// One line naming the blocked edge (p,q) and a violated triple per candidate atom.
    [[nodiscard]] auto describe_failure(const RelationAlgebra & ra, const AmalgamationDiagram & d) -> std::string;

    /// Every atomic network obtained from `base` by appending one node called `name`.
    /// With `injective`, the new node is never identity-related to an old node.
    [[nodiscard]] auto one_point_extensions(const RelationAlgebra & ra, const Network & base, const std::string & name,
        bool injective = false) -> std::vector<Network>;

    /// One atomic network per isomorphism class on `size` nodes, nodes named n0, n1, ...,
    /// each in canonical arrangement and listed in canonical-form order.
    [[nodiscard]] auto enumerate_atomic_networks(const RelationAlgebra & ra, std::size_t size) -> std::vector<Network>;

    enum class Verdict
    {
        yes,
        no,
        indeterminate
    };

    [[nodiscard]] auto to_string(Verdict v) -> std::string;

    inline constexpr unsigned long long default_diagram_budget = 50'000'000ULL;

    struct AmalgamationOptions
    {
        /// Largest base size examined; defaults to the number of atoms.
        std::optional<std::size_t> max_base;
        unsigned threads = 1;
        unsigned long long diagram_budget = default_diagram_budget;
    };

    struct AmalgamationResult
    {
        Verdict verdict = Verdict::indeterminate;
        std::optional<AmalgamationDiagram> witness;
        std::size_t max_base = 0;
        std::size_t bases_checked = 0;
        unsigned long long diagrams_checked = 0;
        std::string message;
    };

    /// Checks every 2-point diagram whose base has at most max_base nodes, smallest bases
    /// first, so a NO witness has a minimal base. The verdict and witness do not depend
    /// on the thread count. Running out of budget gives Verdict::indeterminate.
    [[nodiscard]] auto decide_amalgamation_property(const RelationAlgebra & ra, const AmalgamationOptions & options = {})
        -> AmalgamationResult;

    class ExtensionFailed : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    struct GrowOptions
    {
        /// Never label a new node identity-related to an existing one.
        bool injective = false;
        /// Upper bound on the number of one-point extensions listed per step.
        std::size_t max_candidates = 1'000'000;
    };

    /// Grows an atomic network one node at a time from the empty network, picking each
    /// new node's labels uniformly among all choices that keep the network atomic.
    /// Deterministic for a given seed. Throws ExtensionFailed if a step has no choice,
    /// BudgetExceeded if a step has more than max_candidates choices.
    [[nodiscard]] auto grow_limit(const RelationAlgebra & ra, std::size_t target_size, std::uint64_t seed,
        const GrowOptions & options = {}) -> Network;
}

#endif
