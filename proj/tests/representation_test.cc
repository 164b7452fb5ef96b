#include <rakit/errors.hh>
#include <rakit/network.hh>
#include <rakit/representation.hh>

#include "oracles.hh"

#include <doctest.h>

#include <random>

using namespace rakit;

TEST_CASE("B9 over Z7 loads and validates")
{
    auto cr = oracle::b9_rep();
    CHECK(cr.domain_size() == 7);
    CHECK(cr.atom_count() == 4);
    CHECK(cr.algebra_name() == "b9");
    CHECK(validate_representation(cr).ok());
    CHECK(parse_representation(write_representation(cr)).atom_names() == cr.atom_names());
}

TEST_CASE("representation parse errors")
{
    CHECK_THROWS_AS((void)parse_representation("representation r\ndomain 7\npairs a : (7,0)\n"), ParseError);
    CHECK_THROWS_AS((void)parse_representation("representation r\ndomain 2\npairs a : (0,1) (0,1)\n"), ParseError);
    CHECK_THROWS_AS((void)parse_representation("representation r\ndomain 2\natoms a\npairs b : (0,1)\n"), ParseError);
    CHECK_THROWS_AS((void)parse_representation("representation r\ndomain 2\npairs a : 0,1\n"), ParseError);
    CHECK_THROWS_AS((void)parse_representation("representation r\npairs a : (0,1)\n"), ParseError);

    // A three-element linear order loads; squareness only fails when pairs are missing.
    auto order = parse_representation(
        "representation lin3\ndomain 3\npairs eq : (0,0) (1,1) (2,2)\npairs lt : (0,1) (0,2) (1,2)\npairs gt : (1,0) (2,0) (2,1)\n");
    auto report = validate_representation(order);
    CHECK(report.count("squareness") == 0);
    CHECK(report.count("composition-closure") > 0);
}

TEST_CASE("validation catches broken representations")
{
    auto cr = oracle::b9_rep();
    cr.remove_pair(*cr.atom_index("r1"), 0, 1);
    auto report = validate_representation(cr);
    CHECK(report.count("squareness") == 1);
    CHECK(report.count("converse") > 0);

    // Make r1 asymmetric: move (1,0) into r2 and (0,2) into r1.
    auto skew = oracle::b9_rep();
    auto r1 = *skew.atom_index("r1"), r2 = *skew.atom_index("r2");
    skew.remove_pair(r1, 1, 0);
    skew.add_pair(r2, 1, 0);
    skew.remove_pair(r2, 0, 2);
    skew.add_pair(r1, 0, 2);
    auto skewed = validate_representation(skew);
    CHECK(skewed.count("squareness") == 0);
    CHECK(skewed.count("converse") > 0);
    CHECK_THROWS_AS((void)derive_algebra(skew), InvalidInput);
}

TEST_CASE("derived B9 table")
{
    auto cr = oracle::b9_rep();
    auto ra = derive_algebra(cr);
    auto r = [&](const char * a) { return ra.parse_element(a); };
    CHECK(ra.name() == "b9");
    CHECK(ra.identity() == r("r0"));
    CHECK(ra.table(1, 1) == r("r0,r2"));
    for (std::size_t a = 0; a < 4; ++a) {
        CHECK(ra.table(0, a) == Element::atom(a));
        CHECK(ra.converse_atom(a) == a);
    }
    CHECK(write_algebra(ra) == oracle::corpus("b9.ra"));

    // Brute-force composition over Z7: c is in a;b iff some (x,z) in c has a witness y.
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            for (std::size_t c = 0; c < 4; ++c) {
                bool reached = false;
                for (std::size_t x = 0; x < 7; ++x)
                    for (std::size_t y = 0; y < 7; ++y)
                        for (std::size_t z = 0; z < 7; ++z)
                            if (cr.holds(a, x, y) && cr.holds(b, y, z) && cr.holds(c, x, z))
                                reached = true;
                CHECK(ra.compose(Element::atom(a), Element::atom(b)).contains(c) == reached);
            }
}

TEST_CASE("model checking over B9")
{
    auto cr = oracle::b9_rep();
    auto ra = derive_algebra(cr);

    auto pair = parse_network(ra, "network t\nnodes a b\nedge a b : r1\n");
    auto s = model_check(cr, pair);
    REQUIRE(s);
    CHECK(cr.holds(1, (*s)[0], (*s)[1]));

    auto n = parse_network(ra, oracle::corpus("b9-n.net"));
    CHECK(is_atomic(ra, n));
    CHECK(path_consistency(ra, n).has_value());
    CHECK(! model_check(cr, n));

    auto zero = parse_network(ra, "network t\nnodes a b\nedge a b : 0\n");
    CHECK(! model_check(cr, zero));
    CHECK(model_check(cr, Network{}).has_value());
}

TEST_CASE("model_check agrees with exhaustive assignment on B9 networks up to four nodes")
{
    auto cr = oracle::b9_rep();
    auto ra = derive_algebra(cr);
    std::mt19937_64 rng{3};
    for (int i = 0; i < 400; ++i) {
        std::size_t size = 1 + i % 4;
        std::vector<std::string> names;
        for (std::size_t x = 0; x < size; ++x)
            names.push_back("v" + std::to_string(x));
        Network n{names};
        for (std::size_t x = 0; x < size; ++x)
            for (std::size_t y = 0; y < size; ++y) {
                // Bias towards narrow labels so both verdicts show up.
                auto bits = rng() & rng() & 0xF;
                n.set_label(x, y, x == y ? Element{bits | 1} : Element{bits});
            }
        auto s = model_check(cr, n);
        CHECK(s.has_value() == oracle::model_check(cr, n));
        if (s)
            for (std::size_t x = 0; x < size; ++x)
                for (std::size_t y = 0; y < size; ++y) {
                    bool covered = false;
                    n.label(x, y).for_each_atom([&](std::size_t a) { covered = covered || cr.holds(a, (*s)[x], (*s)[y]); });
                    CHECK(covered);
                }
    }
}
