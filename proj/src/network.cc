#include <rakit/errors.hh>
#include <rakit/network.hh>

#include "text.hh"

#include <algorithm>
#include <deque>
#include <sstream>

using std::nullopt;
using std::optional;
using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace rakit
{
    Network::Network(vector<string> nodes, Element fill) :
        _nodes(std::move(nodes)),
        _labels(_nodes.size() * _nodes.size(), fill)
    {
    }

    Network::Network(vector<string> nodes, vector<Element> labels) :
        _nodes(std::move(nodes)),
        _labels(std::move(labels))
    {
        if (_labels.size() != _nodes.size() * _nodes.size())
            throw InvalidInput{"label matrix does not match the node count"};
    }

    auto Network::node_index(string_view name) const -> optional<size_t>
    {
        auto it = std::find(_nodes.begin(), _nodes.end(), name);
        if (it == _nodes.end())
            return nullopt;
        return static_cast<size_t>(it - _nodes.begin());
    }

    auto Network::set_edge(const RelationAlgebra & ra, size_t x, size_t y, Element e) -> void
    {
        set_label(x, y, e);
        if (x != y)
            set_label(y, x, ra.converse(e));
    }

    auto Network::add_node(string name, Element fill) -> size_t
    {
        auto n = size();
        vector<Element> grown((n + 1) * (n + 1), fill);
        for (size_t x = 0; x < n; ++x)
            std::copy_n(_labels.begin() + x * n, n, grown.begin() + x * (n + 1));
        _labels = std::move(grown);
        _nodes.push_back(std::move(name));
        return n;
    }

    auto Network::induced(std::span<const size_t> keep) const -> Network
    {
        vector<string> names;
        for (auto x : keep)
            names.push_back(_nodes.at(x));
        Network result{std::move(names)};
        for (size_t i = 0; i < keep.size(); ++i)
            for (size_t j = 0; j < keep.size(); ++j)
                result.set_label(i, j, label(keep[i], keep[j]));
        result.name = name;
        return result;
    }

    auto Network::prefix(size_t count) const -> Network
    {
        vector<size_t> keep(std::min(count, size()));
        for (size_t i = 0; i < keep.size(); ++i)
            keep[i] = i;
        return induced(keep);
    }

    LabeledStructure::LabeledStructure(vector<string> e) :
        elements(std::move(e)),
        relations(elements.size() * elements.size())
    {
    }

    auto parse_network(const RelationAlgebra & ra, string_view input) -> Network
    {
        optional<string> name;
        optional<Network> result;
        vector<char> given;

        for (const auto & line : text::tokenize(input)) {
            const auto & tok = line.tokens;
            auto n = line.number;
            auto keyword = tok[0].value;

            if (keyword == "network") {
                if (name)
                    text::fail("duplicate 'network' line", n, tok[0].column);
                if (tok.size() != 2)
                    text::fail("expected 'network <name>'", n, tok[0].column);
                name = string{tok[1].value};
            }
            else if (! name)
                text::fail("file must start with 'network <name>'", n, tok[0].column);
            else if (keyword == "nodes") {
                if (result)
                    text::fail("duplicate 'nodes' line", n, tok[0].column);
                vector<string> nodes;
                for (size_t i = 1; i < tok.size(); ++i) {
                    if (std::find(nodes.begin(), nodes.end(), tok[i].value) != nodes.end())
                        text::fail("duplicate node '" + string{tok[i].value} + "'", n, tok[i].column);
                    if (tok[i].value == ":")
                        text::fail("reserved node name ':'", n, tok[i].column);
                    nodes.emplace_back(tok[i].value);
                }
                result.emplace(std::move(nodes));
                given.assign(result->size() * result->size(), 0);
            }
            else if (keyword == "edge") {
                if (! result)
                    text::fail("'nodes' line must precede 'edge'", n, tok[0].column);
                if (tok.size() < 5 || tok[3].value != ":")
                    text::fail("expected 'edge <x> <y> : <a1> [<a2> ...]'", n, tok[0].column);
                auto node = [&](const text::Token & t) {
                    auto index = result->node_index(t.value);
                    if (! index)
                        text::fail("unknown node '" + string{t.value} + "'", n, t.column);
                    return *index;
                };
                auto x = node(tok[1]), y = node(tok[2]);
                if (given[x * result->size() + y])
                    text::fail("duplicate edge " + string{tok[1].value} + " " + string{tok[2].value}, n, tok[0].column);
                given[x * result->size() + y] = 1;

                Element label;
                if (tok.size() == 5 && (tok[4].value == "0" || tok[4].value == "1"))
                    label = tok[4].value == "0" ? ra.zero() : ra.top();
                else
                    for (size_t i = 4; i < tok.size(); ++i) {
                        auto atom = ra.atom_index(tok[i].value);
                        if (! atom)
                            text::fail("unknown atom '" + string{tok[i].value} + "'", n, tok[i].column);
                        label = join(label, Element::atom(*atom));
                    }
                result->set_label(x, y, label);
            }
            else
                text::fail("unknown keyword '" + string{keyword} + "'", n, tok[0].column);
        }

        if (! name)
            text::fail("missing 'network' line", 1, 0);
        if (! result)
            result.emplace(vector<string>{});

        auto size = result->size();
        for (size_t x = 0; x < size; ++x)
            for (size_t y = 0; y < size; ++y) {
                if (given[x * size + y])
                    continue;
                if (x == y)
                    result->set_label(x, x, ra.identity());
                else if (given[y * size + x])
                    result->set_label(x, y, ra.converse(result->label(y, x)));
                else
                    result->set_label(x, y, ra.top());
            }
        result->name = *name;
        return std::move(*result);
    }

    namespace
    {
        auto header(const Network & n) -> string
        {
            string out = "network " + (n.name.empty() ? string{"net"} : n.name) + "\nnodes";
            for (const auto & node : n.nodes())
                out += " " + node;
            return out + "\n";
        }

        auto edge_line(const RelationAlgebra & ra, const Network & n, size_t x, size_t y) -> string
        {
            return "edge " + n.node_name(x) + " " + n.node_name(y) + " : " + ra.format(n.label(x, y), " ") + "\n";
        }
    }

    auto write_network(const RelationAlgebra & ra, const Network & n) -> string
    {
        string out = header(n);
        for (size_t x = 0; x < n.size(); ++x) {
            if (n.label(x, x) != ra.identity())
                out += edge_line(ra, n, x, x);
            for (size_t y = x + 1; y < n.size(); ++y) {
                auto forward = n.label(x, y), backward = n.label(y, x);
                bool conversed = backward == ra.converse(forward);
                if (! (conversed && forward == ra.top()))
                    out += edge_line(ra, n, x, y);
                if (! conversed)
                    out += edge_line(ra, n, y, x);
            }
        }
        return out;
    }

    auto write_network_explicit(const RelationAlgebra & ra, const Network & n) -> string
    {
        string out = header(n);
        for (size_t x = 0; x < n.size(); ++x)
            for (size_t y = 0; y < n.size(); ++y)
                out += edge_line(ra, n, x, y);
        return out;
    }

    auto normalize(const RelationAlgebra & ra, const Network & n) -> optional<Network>
    {
        Network result = n;
        for (size_t x = 0; x < n.size(); ++x)
            for (size_t y = 0; y < n.size(); ++y) {
                auto label = meet(n.label(x, y), ra.converse(n.label(y, x)));
                if (x == y)
                    label = meet(label, ra.identity());
                if (label.empty())
                    return nullopt;
                result.set_label(x, y, label);
            }
        return result;
    }

    auto path_consistency(const RelationAlgebra & ra, const Network & n) -> optional<Network>
    {
        Network result = n;
        auto size = n.size();
        for (auto e : n.labels())
            if (e.empty())
                return nullopt;

        // Queue of pairs whose label changed; a change of (i,j) can only tighten
        // (i,k) through (i,j);(j,k) and (k,j) through (k,i);(i,j).
        std::deque<std::pair<size_t, size_t>> queue;
        vector<char> queued(size * size, 1);
        for (size_t i = 0; i < size; ++i)
            for (size_t j = 0; j < size; ++j)
                queue.emplace_back(i, j);

        auto revise = [&](size_t x, size_t y, Element through) -> bool {
            auto old = result.label(x, y);
            auto refined = meet(old, through);
            if (refined == old)
                return true;
            result.set_label(x, y, refined);
            if (refined.empty())
                return false;
            if (! queued[x * size + y]) {
                queued[x * size + y] = 1;
                queue.emplace_back(x, y);
            }
            return true;
        };

        while (! queue.empty()) {
            auto [i, j] = queue.front();
            queue.pop_front();
            queued[i * size + j] = 0;
            for (size_t k = 0; k < size; ++k) {
                if (! revise(i, k, ra.compose(result.label(i, j), result.label(j, k))))
                    return nullopt;
                if (! revise(k, j, ra.compose(result.label(k, i), result.label(i, j))))
                    return nullopt;
            }
        }
        return result;
    }

    auto find_triangle_violation(const RelationAlgebra & ra, const Network & n) -> optional<Triple>
    {
        auto size = n.size();
        for (size_t x = 0; x < size; ++x)
            for (size_t y = 0; y < size; ++y)
                for (size_t z = 0; z < size; ++z)
                    if (! leq(n.label(x, z), ra.compose(n.label(x, y), n.label(y, z))))
                        return Triple{x, y, z};
        return nullopt;
    }

    auto is_atomic(const RelationAlgebra & ra, const Network & n) -> bool
    {
        auto size = n.size();
        for (size_t x = 0; x < size; ++x) {
            if (! leq(n.label(x, x), ra.identity()))
                return false;
            for (size_t y = 0; y < size; ++y) {
                auto label = n.label(x, y);
                if (! label.is_atom() || n.label(y, x) != ra.converse(label))
                    return false;
            }
        }
        return ! find_triangle_violation(ra, n);
    }

    namespace
    {
        auto search(const RelationAlgebra & ra, const Network & n, SolveStats & stats) -> optional<Network>
        {
            optional<std::pair<size_t, size_t>> branch;
            size_t best = 0;
            for (size_t x = 0; x < n.size(); ++x)
                for (size_t y = x; y < n.size(); ++y) {
                    auto width = n.label(x, y).size();
                    if (width > 1 && (! branch || width < best)) {
                        branch.emplace(x, y);
                        best = width;
                    }
                }

            if (! branch) {
                if (is_atomic(ra, n))
                    return n;
                ++stats.failures;
                return nullopt;
            }

            auto [x, y] = *branch;
            optional<Network> found;
            n.label(x, y).for_each_atom([&](size_t atom) {
                if (found)
                    return;
                ++stats.decisions;
                Network trial = n;
                trial.set_edge(ra, x, y, Element::atom(atom));
                auto propagated = normalize(ra, trial);
                if (propagated)
                    propagated = path_consistency(ra, *propagated);
                if (! propagated) {
                    ++stats.failures;
                    return;
                }
                found = search(ra, *propagated, stats);
            });
            return found;
        }
    }

    auto refine_solve(const RelationAlgebra & ra, const Network & n, SolveStats * stats) -> optional<Network>
    {
        if (is_atomic(ra, n))
            return n;
        SolveStats local;
        auto & counters = stats ? *stats : local;
        auto start = normalize(ra, n);
        if (start)
            start = path_consistency(ra, *start);
        if (! start) {
            ++counters.failures;
            return nullopt;
        }
        auto result = search(ra, *start, counters);
        if (result)
            result->name = n.name;
        return result;
    }

    auto struct_to_net(const RelationAlgebra & ra, const LabeledStructure & s) -> Network
    {
        Network result{s.elements};
        for (size_t x = 0; x < s.size(); ++x)
            for (size_t y = 0; y < s.size(); ++y) {
                auto holding = s.at(x, y);
                if (holding.empty())
                    result.set_label(x, y, ra.top());
                else if (holding.is_atom())
                    result.set_label(x, y, holding);
                else
                    result.set_label(x, y, ra.zero());
            }
        return result;
    }

    auto net_to_struct(const Network & n) -> LabeledStructure
    {
        LabeledStructure result{n.nodes()};
        result.relations.assign(n.labels().begin(), n.labels().end());
        return result;
    }
}
