#include <rakit/bounds.hh>
#include <rakit/canonical.hh>
#include <rakit/errors.hh>

#include <algorithm>
#include <set>

using std::nullopt;
using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace rakit
{
    auto to_string(BoundFamily f) -> string
    {
        switch (f) {
        case BoundFamily::loops: return "F1";
        case BoundFamily::pairs: return "F2";
        case BoundFamily::triangles: return "F3";
        }
        return "F?";
    }

    auto BoundSet::count(BoundFamily f) const -> size_t
    {
        return std::count_if(bounds.begin(), bounds.end(), [&](const Bound & b) { return b.family == f; });
    }

    namespace
    {
        auto names(size_t count) -> vector<string>
        {
            vector<string> result;
            for (size_t i = 0; i < count; ++i)
                result.push_back("x" + std::to_string(i));
            return result;
        }

        /// Triangle condition on every ordered triple over `nodes` of a structure whose
        /// pairs each hold exactly one atom.
        auto triangles_hold(const RelationAlgebra & ra, const LabeledStructure & s) -> bool
        {
            for (size_t x = 0; x < s.size(); ++x)
                for (size_t y = 0; y < s.size(); ++y)
                    for (size_t z = 0; z < s.size(); ++z)
                        if (! leq(s.at(x, z), ra.compose(s.at(x, y), s.at(y, z))))
                            return false;
            return true;
        }

        auto good_loop(const RelationAlgebra & ra, Element loop) -> bool
        {
            if (! loop.is_atom())
                return false;
            auto e = loop.first_atom();
            return ra.is_identity_atom(e) && ra.converse_atom(e) == e && ra.table(e, e).contains(e);
        }

        auto good_pair(const RelationAlgebra & ra, const LabeledStructure & s) -> bool
        {
            auto forward = s.at(0, 1), backward = s.at(1, 0);
            return forward.is_atom() && backward.is_atom() && ra.converse(forward) == backward && triangles_hold(ra, s);
        }

        struct Collector
        {
            BoundSet & out;
            std::set<vector<Element::Bits>> seen;

            auto add(BoundFamily family, const LabeledStructure & s) -> void
            {
                if (seen.insert(canonical_form(s)).second)
                    out.bounds.push_back(Bound{family, s});
            }
        };
    }

    auto generate_bounds(const RelationAlgebra & ra) -> BoundSet
    {
        auto k = ra.size();
        if (k > max_bound_atoms)
            throw InvalidInput{"bound generation supports at most " + std::to_string(max_bound_atoms) + " atoms"};

        BoundSet result{ra.name(), {}};
        Collector collect{result, {}};
        auto subsets = Element::Bits{1} << k;

        vector<Element> loops;
        for (Element::Bits bits = 0; bits < subsets; ++bits) {
            LabeledStructure s{names(1)};
            s.set(0, 0, Element{bits});
            if (good_loop(ra, Element{bits}))
                loops.emplace_back(bits);
            else
                collect.add(BoundFamily::loops, s);
        }

        for (auto l0 : loops)
            for (auto l1 : loops)
                for (Element::Bits forward = 0; forward < subsets; ++forward)
                    for (Element::Bits backward = 0; backward < subsets; ++backward) {
                        LabeledStructure s{names(2)};
                        s.set(0, 0, l0);
                        s.set(1, 1, l1);
                        s.set(0, 1, Element{forward});
                        s.set(1, 0, Element{backward});
                        if (! good_pair(ra, s))
                            collect.add(BoundFamily::pairs, s);
                    }

        for (auto l0 : loops)
            for (auto l1 : loops)
                for (auto l2 : loops)
                    for (size_t a01 = 0; a01 < k; ++a01)
                        for (size_t a02 = 0; a02 < k; ++a02)
                            for (size_t a12 = 0; a12 < k; ++a12) {
                                LabeledStructure s{names(3)};
                                Element loop[3] = {l0, l1, l2};
                                for (size_t i = 0; i < 3; ++i)
                                    s.set(i, i, loop[i]);
                                auto put = [&](size_t x, size_t y, size_t a) {
                                    s.set(x, y, Element::atom(a));
                                    s.set(y, x, Element::atom(ra.converse_atom(a)));
                                };
                                put(0, 1, a01);
                                put(0, 2, a02);
                                put(1, 2, a12);

                                bool pairs_ok = true;
                                for (auto [x, y] : {std::pair<size_t, size_t>{0, 1}, {0, 2}, {1, 2}}) {
                                    LabeledStructure sub{names(2)};
                                    sub.set(0, 0, s.at(x, x));
                                    sub.set(1, 1, s.at(y, y));
                                    sub.set(0, 1, s.at(x, y));
                                    sub.set(1, 0, s.at(y, x));
                                    pairs_ok = pairs_ok && good_pair(ra, sub);
                                }
                                if (pairs_ok && ! triangles_hold(ra, s))
                                    collect.add(BoundFamily::triangles, s);
                            }

        return result;
    }

    namespace
    {
        auto embeds(const LabeledStructure & bound, const LabeledStructure & s) -> bool
        {
            auto m = bound.size();
            if (m > s.size())
                return false;
            vector<size_t> image(m);
            vector<char> used(s.size(), 0);

            auto place = [&](auto & self, size_t i) -> bool {
                if (i == m)
                    return true;
                for (size_t v = 0; v < s.size(); ++v) {
                    if (used[v] || s.at(v, v) != bound.at(i, i))
                        continue;
                    bool fits = true;
                    for (size_t j = 0; j < i && fits; ++j)
                        fits = s.at(v, image[j]) == bound.at(i, j) && s.at(image[j], v) == bound.at(j, i);
                    if (! fits)
                        continue;
                    image[i] = v;
                    used[v] = 1;
                    if (self(self, i + 1))
                        return true;
                    used[v] = 0;
                }
                return false;
            };
            return place(place, 0);
        }
    }

    auto find_embedded_bound(const BoundSet & bs, const LabeledStructure & s) -> optional<size_t>
    {
        for (size_t i = 0; i < bs.bounds.size(); ++i)
            if (embeds(bs.bounds[i].structure, s))
                return i;
        return nullopt;
    }

    auto check_membership(const BoundSet & bs, const LabeledStructure & s) -> bool
    {
        return ! find_embedded_bound(bs, s);
    }

    auto write_bounds(const RelationAlgebra & ra, const BoundSet & bs) -> string
    {
        string out;
        size_t index = 0;
        for (const auto & b : bs.bounds) {
            Network n{b.structure.elements, b.structure.relations};
            n.name = bs.algebra_name + "-" + to_string(b.family) + "-" + std::to_string(index++);
            out += "# family: " + to_string(b.family) + "\n";
            out += write_network_explicit(ra, n);
        }
        return out;
    }
}
