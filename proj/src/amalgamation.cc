#include <rakit/amalgamation.hh>
#include <rakit/canonical.hh>

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <thread>

using std::nullopt;
using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace rakit
{
    namespace
    {
        auto triangle_ok(const RelationAlgebra & ra, const Network & n, size_t x, size_t y, size_t z) -> bool
        {
            return leq(n.label(x, z), ra.compose(n.label(x, y), n.label(y, z)));
        }

        /// First ordered triple over `nodes` that mentions both a and b and breaks the triangle condition.
        auto violation_through(const RelationAlgebra & ra, const Network & n, const vector<size_t> & nodes, size_t a, size_t b)
            -> optional<Triple>
        {
            for (auto x : nodes)
                for (auto y : nodes)
                    for (auto z : nodes) {
                        bool has_a = x == a || y == a || z == a, has_b = x == b || y == b || z == b;
                        if (has_a && has_b && ! triangle_ok(ra, n, x, y, z))
                            return Triple{x, y, z};
                    }
            return nullopt;
        }

        auto all_nodes(const Network & n) -> vector<size_t>
        {
            vector<size_t> nodes(n.size());
            for (size_t i = 0; i < nodes.size(); ++i)
                nodes[i] = i;
            return nodes;
        }

        auto combine_unchecked(const RelationAlgebra & ra, const AmalgamationDiagram & d) -> Network
        {
            auto m = d.base.size();
            Network result = d.left;
            auto q = result.add_node(d.right.node_name(m), ra.top());
            for (size_t r = 0; r < m; ++r) {
                result.set_label(q, r, d.right.label(m, r));
                result.set_label(r, q, d.right.label(r, m));
            }
            result.set_label(q, q, d.right.label(m, m));
            result.name = "amalgam";
            return result;
        }

        auto first_fitting_atom(const RelationAlgebra & ra, const AmalgamationDiagram & d) -> optional<size_t>
        {
            auto combined = combine_unchecked(ra, d);
            auto p = d.base.size(), q = p + 1;
            auto nodes = all_nodes(combined);
            for (size_t a = 0; a < ra.size(); ++a) {
                combined.set_label(p, q, Element::atom(a));
                combined.set_label(q, p, Element::atom(ra.converse_atom(a)));
                if (! violation_through(ra, combined, nodes, p, q))
                    return a;
            }
            return nullopt;
        }
    }

    auto check_diagram(const RelationAlgebra & ra, const AmalgamationDiagram & d) -> void
    {
        auto m = d.base.size();
        if (d.left.size() != m + 1 || d.right.size() != m + 1)
            throw InvalidInput{"malformed diagram: each side must add exactly one node to the base"};
        for (size_t x = 0; x < m; ++x)
            for (size_t y = 0; y < m; ++y)
                if (d.left.label(x, y) != d.base.label(x, y) || d.right.label(x, y) != d.base.label(x, y))
                    throw InvalidInput{"malformed diagram: sides disagree with the base on (" + d.base.node_name(x) + ","
                        + d.base.node_name(y) + ")"};
        if (! is_atomic(ra, d.left) || ! is_atomic(ra, d.right))
            throw InvalidInput{"malformed diagram: both sides must be atomic networks"};
    }

    auto combine(const RelationAlgebra & ra, const AmalgamationDiagram & d, size_t atom) -> Network
    {
        check_diagram(ra, d);
        auto result = combine_unchecked(ra, d);
        auto p = d.base.size();
        result.set_label(p, p + 1, Element::atom(atom));
        result.set_label(p + 1, p, Element::atom(ra.converse_atom(atom)));
        return result;
    }

    auto amalgamate(const RelationAlgebra & ra, const AmalgamationDiagram & d) -> optional<size_t>
    {
        check_diagram(ra, d);
        return first_fitting_atom(ra, d);
    }

    auto explain_failure(const RelationAlgebra & ra, const AmalgamationDiagram & d) -> vector<BlockedAtom>
    {
        check_diagram(ra, d);
        vector<BlockedAtom> blocked;
        auto p = d.base.size();
        for (size_t a = 0; a < ra.size(); ++a) {
            auto combined = combine_unchecked(ra, d);
            combined.set_label(p, p + 1, Element::atom(a));
            combined.set_label(p + 1, p, Element::atom(ra.converse_atom(a)));
            auto violation = violation_through(ra, combined, all_nodes(combined), p, p + 1);
            if (! violation)
                return {};
            blocked.push_back(BlockedAtom{a, *violation});
        }
        return blocked;
    }

    auto describe_failure(const RelationAlgebra & ra, const AmalgamationDiagram & d) -> string
    {
        auto blocked = explain_failure(ra, d);
        auto combined = combine_unchecked(ra, d);
        auto p = d.base.size();
        const auto & pn = combined.node_name(p);
        const auto & qn = combined.node_name(p + 1);
        if (blocked.empty())
            return "edge (" + pn + "," + qn + ") can be labelled; the diagram amalgamates";

        string line = "edge (" + pn + "," + qn + ") admits no atom:";
        for (size_t i = 0; i < blocked.size(); ++i) {
            const auto & [atom, t] = blocked[i];
            combined.set_label(p, p + 1, Element::atom(atom));
            combined.set_label(p + 1, p, Element::atom(ra.converse_atom(atom)));
            auto name = [&](size_t x) { return combined.node_name(x); };
            line += (i == 0 ? " " : "; ") + ra.atom_name(atom) + " breaks (" + name(t[0]) + "," + name(t[1]) + "," + name(t[2]) + "): "
                + name(t[0]) + "-" + name(t[2]) + " " + ra.format(combined.label(t[0], t[2])) + " not in "
                + ra.format(combined.label(t[0], t[1])) + ";" + ra.format(combined.label(t[1], t[2]));
        }
        return line;
    }

    auto one_point_extensions(const RelationAlgebra & ra, const Network & base, const string & name, bool injective)
        -> vector<Network>
    {
        vector<Network> result;
        Network grown = base;
        auto fresh = grown.add_node(name, ra.top());
        auto m = base.size();
        vector<size_t> placed{fresh};

        auto extend = [&](auto & self, size_t r) -> void {
            if (r == m) {
                result.push_back(grown);
                return;
            }
            placed.push_back(r);
            for (size_t a = 0; a < ra.size(); ++a) {
                if (injective && ra.is_identity_atom(a))
                    continue;
                grown.set_label(fresh, r, Element::atom(a));
                grown.set_label(r, fresh, Element::atom(ra.converse_atom(a)));
                if (ra.converse_atom(ra.converse_atom(a)) != a)
                    continue;
                if (! violation_through(ra, grown, placed, fresh, r))
                    self(self, r + 1);
            }
            placed.pop_back();
        };

        for (size_t e = 0; e < ra.size(); ++e) {
            if (! ra.is_identity_atom(e) || ra.converse_atom(e) != e)
                continue;
            grown.set_label(fresh, fresh, Element::atom(e));
            if (triangle_ok(ra, grown, fresh, fresh, fresh))
                extend(extend, 0);
        }
        return result;
    }

    namespace
    {
        auto named(size_t count, const string & prefix) -> vector<string>
        {
            vector<string> names;
            for (size_t i = 0; i < count; ++i)
                names.push_back(prefix + std::to_string(i));
            return names;
        }

        auto from_canonical(const vector<Element::Bits> & form, size_t size, const string & prefix) -> Network
        {
            vector<Element> labels;
            for (auto b : form)
                labels.emplace_back(b);
            return Network{named(size, prefix), std::move(labels)};
        }

        auto extend_classes(const RelationAlgebra & ra, const vector<Network> & classes, size_t size) -> vector<Network>
        {
            std::map<vector<Element::Bits>, bool> seen;
            for (const auto & smaller : classes)
                for (const auto & bigger : one_point_extensions(ra, smaller, "n" + std::to_string(size - 1)))
                    seen.emplace(canonical_form(bigger), true);
            vector<Network> result;
            for (const auto & [form, unused] : seen)
                result.push_back(from_canonical(form, size, "n"));
            return result;
        }
    }

    auto enumerate_atomic_networks(const RelationAlgebra & ra, size_t size) -> vector<Network>
    {
        vector<Network> classes{Network{}};
        for (size_t m = 1; m <= size; ++m)
            classes = extend_classes(ra, classes, m);
        return classes;
    }

    auto to_string(Verdict v) -> string
    {
        switch (v) {
        case Verdict::yes: return "YES";
        case Verdict::no: return "NO";
        case Verdict::indeterminate: return "INDETERMINATE";
        }
        return "INDETERMINATE";
    }

    namespace
    {
        struct BaseWork
        {
            Network base;
            vector<Network> sides_p, sides_q;
        };

        auto rename(Network n, const string & prefix, const string & last) -> Network
        {
            vector<string> names = named(n.size(), prefix);
            if (! names.empty() && ! last.empty())
                names.back() = last;
            return Network{std::move(names), vector<Element>(n.labels().begin(), n.labels().end())};
        }
    }

    auto decide_amalgamation_property(const RelationAlgebra & ra, const AmalgamationOptions & options) -> AmalgamationResult
    {
        AmalgamationResult result;
        result.max_base = options.max_base.value_or(ra.size());
        auto threads = std::max(1U, options.threads);

        vector<Network> classes{Network{}};
        for (size_t m = 0; m <= result.max_base; ++m) {
            if (m > 0)
                classes = extend_classes(ra, classes, m);

            vector<BaseWork> work;
            unsigned long long level_total = 0;
            for (const auto & c : classes) {
                BaseWork w;
                w.base = rename(c, "r", "");
                w.base.name = "base";
                for (const auto & ext : one_point_extensions(ra, w.base, "p")) {
                    w.sides_p.push_back(ext);
                    w.sides_p.back().name = "left";
                    auto other = rename(ext, "r", "q");
                    other.name = "right";
                    w.sides_q.push_back(std::move(other));
                }
                level_total += static_cast<unsigned long long>(w.sides_p.size()) * w.sides_p.size();
                work.push_back(std::move(w));
            }

            if (result.diagrams_checked + level_total > options.diagram_budget) {
                result.verdict = Verdict::indeterminate;
                result.message = "diagram budget of " + std::to_string(options.diagram_budget) + " exceeded at base size "
                    + std::to_string(m);
                return result;
            }

            // Rows (base, left side) in a fixed order; the failing diagram with the least
            // (row, right side) wins, whichever worker finds it.
            vector<std::pair<size_t, size_t>> rows;
            for (size_t b = 0; b < work.size(); ++b)
                for (size_t i = 0; i < work[b].sides_p.size(); ++i)
                    rows.emplace_back(b, i);

            constexpr auto none = std::numeric_limits<size_t>::max();
            std::atomic<size_t> next_row{0};
            std::mutex best_mutex;
            std::pair<size_t, size_t> best{none, none};
            std::atomic<size_t> best_row{none};

            auto worker = [&]() {
                while (true) {
                    auto row = next_row.fetch_add(1);
                    if (row >= rows.size() || row > best_row.load())
                        return;
                    auto [b, i] = rows[row];
                    const auto & w = work[b];
                    for (size_t j = 0; j < w.sides_q.size(); ++j) {
                        AmalgamationDiagram d{w.base, w.sides_p[i], w.sides_q[j]};
                        if (! first_fitting_atom(ra, d)) {
                            std::lock_guard lock{best_mutex};
                            if (std::pair{row, j} < best) {
                                best = {row, j};
                                best_row = row;
                            }
                            break;
                        }
                    }
                }
            };

            if (threads == 1)
                worker();
            else {
                vector<std::thread> pool;
                for (unsigned t = 0; t < threads; ++t)
                    pool.emplace_back(worker);
                for (auto & t : pool)
                    t.join();
            }

            result.bases_checked += work.size();
            if (best.first != none) {
                auto [b, i] = rows[best.first];
                result.verdict = Verdict::no;
                result.witness = AmalgamationDiagram{work[b].base, work[b].sides_p[i], work[b].sides_q[best.second]};
                result.diagrams_checked += level_total;
                result.message = describe_failure(ra, *result.witness);
                return result;
            }
            result.diagrams_checked += level_total;
        }

        result.verdict = Verdict::yes;
        result.message = "all 2-point diagrams with base size at most " + std::to_string(result.max_base) + " amalgamate";
        return result;
    }

    auto grow_limit(const RelationAlgebra & ra, size_t target_size, std::uint64_t seed, const GrowOptions & options) -> Network
    {
        std::mt19937_64 rng{seed};
        // Rejection sampling on the raw engine output keeps the choice identical across standard libraries.
        auto pick = [&](size_t count) -> size_t {
            auto range = static_cast<std::uint64_t>(count);
            auto limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
            std::uint64_t value;
            do
                value = rng();
            while (value >= limit);
            return static_cast<size_t>(value % range);
        };

        Network current;
        current.name = "grown";
        for (size_t m = 0; m < target_size; ++m) {
            auto candidates = one_point_extensions(ra, current, "n" + std::to_string(m), options.injective);
            if (candidates.size() > options.max_candidates)
                throw BudgetExceeded{"more than " + std::to_string(options.max_candidates) + " extensions at size " + std::to_string(m)};
            if (candidates.empty())
                throw ExtensionFailed{"the atomic network on " + std::to_string(m) + " nodes has no one-point atomic extension"};
            current = std::move(candidates[pick(candidates.size())]);
            current.name = "grown";
        }
        return current;
    }
}
