#include <rakit/amalgamation.hh>
#include <rakit/canonical.hh>
#include <rakit/representation.hh>

#include "oracles.hh"

#include <doctest.h>

#include <random>
#include <set>

using namespace rakit;

namespace
{
    auto point_diagram(const RelationAlgebra & pa, const char * left_label, const char * right_label) -> AmalgamationDiagram
    {
        Network base{{"u"}, pa.identity()};
        Network left = base, right = base;
        left.add_node("p", pa.identity());
        left.set_edge(pa, 1, 0, pa.parse_element(left_label));
        right.add_node("q", pa.identity());
        right.set_edge(pa, 0, 1, pa.parse_element(right_label));
        return {base, left, right};
    }

    auto acyclic_strict_order(const RelationAlgebra & pa, const Network & n) -> bool
    {
        // Kahn's algorithm on the lt edges.
        auto lt = *pa.atom_index("lt");
        std::vector<std::size_t> indegree(n.size(), 0);
        for (std::size_t x = 0; x < n.size(); ++x)
            for (std::size_t y = 0; y < n.size(); ++y)
                if (n.label(x, y).contains(lt))
                    ++indegree[y];
        std::vector<std::size_t> ready;
        for (std::size_t x = 0; x < n.size(); ++x)
            if (indegree[x] == 0)
                ready.push_back(x);
        std::size_t seen = 0;
        while (! ready.empty()) {
            auto x = ready.back();
            ready.pop_back();
            ++seen;
            for (std::size_t y = 0; y < n.size(); ++y)
                if (n.label(x, y).contains(lt) && --indegree[y] == 0)
                    ready.push_back(y);
        }
        return seen == n.size();
    }
}

TEST_CASE("enumerate_atomic_networks small cases")
{
    auto pa = oracle::point();
    CHECK(enumerate_atomic_networks(pa, 0).size() == 1);
    CHECK(enumerate_atomic_networks(pa, 1).size() == 1);
    auto two = enumerate_atomic_networks(pa, 2);
    CHECK(two.size() == 2);
}

TEST_CASE("enumerate_atomic_networks matches brute-force class counts")
{
    auto pa = oracle::point();
    auto ll = oracle::leftlinear();
    auto b9 = derive_algebra(oracle::b9_rep());
    for (std::size_t n = 0; n <= 4; ++n)
        CHECK(enumerate_atomic_networks(pa, n).size() == oracle::count_atomic_classes(pa, n));
    for (std::size_t n = 0; n <= 3; ++n) {
        CHECK(enumerate_atomic_networks(ll, n).size() == oracle::count_atomic_classes(ll, n));
        CHECK(enumerate_atomic_networks(b9, n).size() == oracle::count_atomic_classes(b9, n));
    }
}

TEST_CASE("enumerated networks are atomic and pairwise non-isomorphic")
{
    for (const auto & ra : {oracle::point(), oracle::leftlinear()})
        for (std::size_t n = 0; n <= 4; ++n) {
            std::set<std::vector<Element::Bits>> forms;
            for (const auto & net : enumerate_atomic_networks(ra, n)) {
                CHECK(is_atomic(ra, net));
                CHECK(forms.insert(canonical_form(net)).second);
            }
        }
}

TEST_CASE("multiple identity atoms give one single-node class each")
{
    auto ra = parse_algebra(R"(algebra split
atoms e1 e2 a b
identity e1 e2
converse e1 e1
converse e2 e2
converse a b
compose e1 e1 = e1
compose e1 e2 = 0
compose e1 a = a
compose e1 b = 0
compose e2 e1 = 0
compose e2 e2 = e2
compose e2 a = 0
compose e2 b = b
compose a e1 = 0
compose a e2 = a
compose a a = 0
compose a b = e1
compose b e1 = b
compose b e2 = 0
compose b a = e2
compose b b = 0
)");
    CHECK(enumerate_atomic_networks(ra, 1).size() == 2);
    for (std::size_t n = 0; n <= 4; ++n)
        CHECK(enumerate_atomic_networks(ra, n).size() == oracle::count_atomic_classes(ra, n));
}

TEST_CASE("amalgamate point algebra examples")
{
    auto pa = oracle::point();
    auto d = point_diagram(pa, "lt", "lt");
    auto atom = amalgamate(pa, d);
    REQUIRE(atom);
    CHECK(*atom == *pa.atom_index("lt"));
    CHECK(is_atomic(pa, combine(pa, d, *atom)));
    CHECK(explain_failure(pa, d).empty());

    // Empty base: any atom fits.
    AmalgamationDiagram empty{Network{}, Network{{"p"}, pa.identity()}, Network{{"q"}, pa.identity()}};
    CHECK(amalgamate(pa, empty) == std::size_t{0});

    auto bad = d;
    bad.right.set_edge(pa, 0, 1, pa.parse_element("lt,gt"));
    CHECK_THROWS_AS((void)amalgamate(pa, bad), InvalidInput);
    auto disagree = d;
    disagree.left = Network{{"v"}, pa.identity()};
    disagree.left.add_node("p", pa.identity());
    disagree.left.set_edge(pa, 0, 0, pa.parse_element("lt"));
    CHECK_THROWS_AS((void)amalgamate(pa, disagree), InvalidInput);
}

TEST_CASE("amalgamate results are always atomic")
{
    std::mt19937_64 rng{17};
    for (const auto & ra : {oracle::point(), oracle::leftlinear(), derive_algebra(oracle::b9_rep())})
        for (std::size_t m = 0; m <= 3; ++m)
            for (const auto & base : enumerate_atomic_networks(ra, m)) {
                auto lefts = one_point_extensions(ra, base, "p");
                auto rights = one_point_extensions(ra, base, "q");
                for (int sample = 0; sample < 10 && ! lefts.empty(); ++sample) {
                    AmalgamationDiagram d{base, lefts[rng() % lefts.size()], rights[rng() % rights.size()]};
                    if (auto atom = amalgamate(ra, d))
                        CHECK(is_atomic(ra, combine(ra, d, *atom)));
                    else {
                        auto blocked = explain_failure(ra, d);
                        CHECK(blocked.size() == ra.size());
                        for (const auto & [a, t] : blocked) {
                            auto combined = combine(ra, d, a);
                            CHECK(! leq(combined.label(t[0], t[2]), ra.compose(combined.label(t[0], t[1]), combined.label(t[1], t[2]))));
                        }
                    }
                }
            }
}

TEST_CASE("point algebra has the amalgamation property")
{
    auto pa = oracle::point();
    auto result = decide_amalgamation_property(pa);
    CHECK(result.verdict == Verdict::yes);
    CHECK(result.max_base == 3);
    CHECK(! result.witness);
}

TEST_CASE("left linear algebra fails amalgamation with a small witness")
{
    auto ll = oracle::leftlinear();
    auto result = decide_amalgamation_property(ll);
    REQUIRE(result.verdict == Verdict::no);
    REQUIRE(result.witness);
    const auto & w = *result.witness;
    CHECK(w.base.size() + 2 <= 6);
    CHECK(! amalgamate(ll, w));
    CHECK(describe_failure(ll, w).starts_with("edge (p,q) admits no atom:"));

    AmalgamationOptions parallel;
    parallel.threads = 4;
    auto again = decide_amalgamation_property(ll, parallel);
    REQUIRE(again.witness);
    CHECK(again.witness->left == w.left);
    CHECK(again.witness->right == w.right);
    CHECK(again.message == result.message);
}

TEST_CASE("B9 amalgamation verdict")
{
    auto b9 = derive_algebra(oracle::b9_rep());
    auto result = decide_amalgamation_property(b9);
    // Regression value from the exhaustive run. B9 has no fully universal
    // representation, so this verdict says nothing about normal representations.
    CHECK(result.verdict == Verdict::no);
    REQUIRE(result.witness);
    CHECK(result.witness->base.size() == 3);
    CHECK(! amalgamate(b9, *result.witness));
}

TEST_CASE("budget exhaustion is indeterminate, never NO")
{
    AmalgamationOptions tiny;
    tiny.diagram_budget = 5;
    auto result = decide_amalgamation_property(oracle::leftlinear(), tiny);
    CHECK(result.verdict == Verdict::indeterminate);
    CHECK(! result.witness);
}

TEST_CASE("larger diagrams amalgamate when all small ones do")
{
    auto pa = oracle::point();
    std::mt19937_64 rng{123};
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 200; ++seed) {
        auto base = grow_limit(pa, pa.size() + 1 + seed % 2, seed);
        auto lefts = one_point_extensions(pa, base, "p");
        auto rights = one_point_extensions(pa, base, "q");
        AmalgamationDiagram d{base, lefts[rng() % lefts.size()], rights[rng() % rights.size()]};
        CHECK(amalgamate(pa, d).has_value());
        ++checked;
    }
}

TEST_CASE("grow_limit")
{
    auto pa = oracle::point();
    CHECK(grow_limit(pa, 0, 1).size() == 0);
    auto one = grow_limit(pa, 1, 1);
    REQUIRE(one.size() == 1);
    CHECK(one.label(0, 0) == pa.identity());

    GrowOptions strict;
    strict.injective = true;
    auto five = grow_limit(pa, 5, 42, strict);
    CHECK(is_atomic(pa, five));
    CHECK(acyclic_strict_order(pa, five));
    for (std::size_t x = 0; x < 5; ++x)
        for (std::size_t y = 0; y < 5; ++y)
            if (x != y)
                CHECK(! five.label(x, y).contains(*pa.atom_index("eq")));

    CHECK(grow_limit(pa, 12, 9) == grow_limit(pa, 12, 9));
    CHECK(grow_limit(pa, 12, 9).labels().size() == 144);

    auto ll = oracle::leftlinear();
    auto grown = grow_limit(ll, 10, 3);
    for (std::size_t m = 0; m <= 10; ++m)
        CHECK(is_atomic(ll, grown.prefix(m)));
}

TEST_CASE("grow_limit reports a dead end")
{
    // Only the identity atom: every extension must relate the new node by the identity,
    // which the injective mode forbids.
    auto trivial = parse_algebra("algebra trivial\natoms e\nidentity e\nconverse e e\ncompose e e = e\n");
    GrowOptions strict;
    strict.injective = true;
    CHECK(grow_limit(trivial, 1, 0, strict).size() == 1);
    CHECK_THROWS_AS((void)grow_limit(trivial, 2, 0, strict), ExtensionFailed);
}
