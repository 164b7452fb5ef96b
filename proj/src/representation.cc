#include <rakit/errors.hh>
#include <rakit/representation.hh>

#include "text.hh"

#include <algorithm>
#include <charconv>
#include <sstream>

using std::nullopt;
using std::optional;
using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace rakit
{
    ConcreteRepresentation::ConcreteRepresentation(string name, optional<string> algebra_name, size_t domain_size) :
        _name(std::move(name)),
        _algebra_name(std::move(algebra_name)),
        _domain_size(domain_size)
    {
        if (_domain_size == 0)
            throw InvalidInput{"representation domain must be nonempty"};
    }

    auto ConcreteRepresentation::atom_index(string_view name) const -> optional<size_t>
    {
        auto it = std::find(_atoms.begin(), _atoms.end(), name);
        if (it == _atoms.end())
            return nullopt;
        return static_cast<size_t>(it - _atoms.begin());
    }

    auto ConcreteRepresentation::add_atom(string name) -> size_t
    {
        if (atom_index(name))
            throw InvalidInput{"duplicate atom '" + name + "'"};
        if (_atoms.size() == max_atoms)
            throw InvalidInput{"too many atoms"};
        _atoms.push_back(std::move(name));
        _relations.emplace_back(_domain_size * _domain_size, 0);
        return _atoms.size() - 1;
    }

    auto ConcreteRepresentation::add_pair(size_t atom, size_t i, size_t j) -> bool
    {
        auto & slot = _relations.at(atom).at(i * _domain_size + j);
        if (slot)
            return false;
        slot = 1;
        return true;
    }

    auto ConcreteRepresentation::remove_pair(size_t atom, size_t i, size_t j) -> void
    {
        _relations.at(atom).at(i * _domain_size + j) = 0;
    }

    namespace
    {
        auto parse_pair(const text::Token & token, size_t line, size_t domain) -> std::pair<size_t, size_t>
        {
            auto v = token.value;
            auto comma = v.find(',');
            if (v.size() < 5 || v.front() != '(' || v.back() != ')' || comma == string_view::npos)
                text::fail("expected a pair '(i,j)', got '" + string{v} + "'", line, token.column);
            auto number = [&](string_view digits) {
                size_t value = 0;
                auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
                if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
                    text::fail("expected a pair '(i,j)', got '" + string{v} + "'", line, token.column);
                return value;
            };
            auto i = number(v.substr(1, comma - 1)), j = number(v.substr(comma + 1, v.size() - comma - 2));
            if (i >= domain || j >= domain)
                text::fail("pair " + string{v} + " out of range for domain " + std::to_string(domain), line, token.column);
            return {i, j};
        }
    }

    auto parse_representation(string_view input) -> ConcreteRepresentation
    {
        optional<string> name, algebra;
        optional<ConcreteRepresentation> result;
        bool declared_atoms = false;

        for (const auto & line : text::tokenize(input)) {
            const auto & tok = line.tokens;
            auto n = line.number;
            auto keyword = tok[0].value;

            if (keyword == "representation") {
                if (name)
                    text::fail("duplicate 'representation' line", n, tok[0].column);
                if (tok.size() == 2)
                    name = string{tok[1].value};
                else if (tok.size() == 4 && tok[2].value == "over") {
                    name = string{tok[1].value};
                    algebra = string{tok[3].value};
                }
                else
                    text::fail("expected 'representation <name> [over <algebra-name>]'", n, tok[0].column);
            }
            else if (! name)
                text::fail("file must start with 'representation <name>'", n, tok[0].column);
            else if (keyword == "domain") {
                if (result)
                    text::fail("duplicate 'domain' line", n, tok[0].column);
                if (tok.size() != 2)
                    text::fail("expected 'domain <n>'", n, tok[0].column);
                auto size = text::parse_size(tok[1], n);
                if (size == 0)
                    text::fail("domain must be nonempty", n, tok[1].column);
                result.emplace(*name, algebra, size);
            }
            else if (! result)
                text::fail("'domain' line must precede '" + string{keyword} + "'", n, tok[0].column);
            else if (keyword == "atoms") {
                if (declared_atoms || result->atom_count() != 0)
                    text::fail("'atoms' must appear once, before any 'pairs' line", n, tok[0].column);
                for (size_t i = 1; i < tok.size(); ++i) {
                    if (result->atom_index(tok[i].value))
                        text::fail("duplicate atom '" + string{tok[i].value} + "'", n, tok[i].column);
                    result->add_atom(string{tok[i].value});
                }
                declared_atoms = true;
            }
            else if (keyword == "pairs") {
                if (tok.size() < 3 || tok[2].value != ":")
                    text::fail("expected 'pairs <atom> : (i,j) ...'", n, tok[0].column);
                auto atom = result->atom_index(tok[1].value);
                if (! atom) {
                    if (declared_atoms)
                        text::fail("unknown atom '" + string{tok[1].value} + "'", n, tok[1].column);
                    atom = result->add_atom(string{tok[1].value});
                }
                for (size_t i = 3; i < tok.size(); ++i) {
                    auto [a, b] = parse_pair(tok[i], n, result->domain_size());
                    if (! result->add_pair(*atom, a, b))
                        text::fail("duplicate pair " + string{tok[i].value} + " for atom '" + string{tok[1].value} + "'", n,
                            tok[i].column);
                }
            }
            else
                text::fail("unknown keyword '" + string{keyword} + "'", n, tok[0].column);
        }

        if (! name)
            text::fail("missing 'representation' line", 1, 0);
        if (! result)
            text::fail("missing 'domain' line", 1, 0);
        if (result->atom_count() == 0)
            text::fail("representation has no atoms", 1, 0);
        return std::move(*result);
    }

    auto write_representation(const ConcreteRepresentation & cr) -> string
    {
        std::ostringstream out;
        out << "representation " << cr.name();
        if (cr.algebra_name())
            out << " over " << *cr.algebra_name();
        out << "\ndomain " << cr.domain_size() << "\natoms";
        for (const auto & a : cr.atom_names())
            out << ' ' << a;
        out << '\n';
        auto size = cr.domain_size();
        for (size_t a = 0; a < cr.atom_count(); ++a) {
            out << "pairs " << cr.atom_names()[a] << " :";
            for (size_t i = 0; i < size; ++i)
                for (size_t j = 0; j < size; ++j)
                    if (cr.holds(a, i, j))
                        out << " (" << i << ',' << j << ')';
            out << '\n';
        }
        return out.str();
    }

    namespace
    {
        using Relation = vector<std::uint8_t>;

        auto relation_of(const ConcreteRepresentation & cr, size_t atom) -> Relation
        {
            auto size = cr.domain_size();
            Relation r(size * size);
            for (size_t i = 0; i < size; ++i)
                for (size_t j = 0; j < size; ++j)
                    r[i * size + j] = cr.holds(atom, i, j);
            return r;
        }

        auto converse_of(const Relation & r, size_t size) -> Relation
        {
            Relation c(size * size);
            for (size_t i = 0; i < size; ++i)
                for (size_t j = 0; j < size; ++j)
                    c[j * size + i] = r[i * size + j];
            return c;
        }

        auto compose_relations(const Relation & r, const Relation & s, size_t size) -> Relation
        {
            Relation c(size * size);
            for (size_t x = 0; x < size; ++x)
                for (size_t y = 0; y < size; ++y)
                    if (r[x * size + y])
                        for (size_t z = 0; z < size; ++z)
                            if (s[y * size + z])
                                c[x * size + z] = 1;
            return c;
        }

        auto pair_name(size_t i, size_t j) -> string
        {
            return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }

        auto is_identity_atom(const Relation & r, size_t size) -> bool
        {
            bool any = false;
            for (size_t i = 0; i < size; ++i)
                for (size_t j = 0; j < size; ++j)
                    if (r[i * size + j]) {
                        if (i != j)
                            return false;
                        any = true;
                    }
            return any;
        }
    }

    auto validate_representation(const ConcreteRepresentation & cr) -> ValidationReport
    {
        ValidationReport report;
        auto size = cr.domain_size();
        auto k = cr.atom_count();
        const auto & names = cr.atom_names();
        vector<Relation> relations;
        for (size_t a = 0; a < k; ++a)
            relations.push_back(relation_of(cr, a));

        for (size_t a = 0; a < k; ++a)
            if (std::none_of(relations[a].begin(), relations[a].end(), [](auto v) { return v != 0; }))
                report.violations.push_back(Violation{"atom-nonempty", {names[a]}, "relation of " + names[a] + " is empty"});

        for (size_t i = 0; i < size; ++i)
            for (size_t j = 0; j < size; ++j) {
                vector<string> owners;
                for (size_t a = 0; a < k; ++a)
                    if (relations[a][i * size + j])
                        owners.push_back(names[a]);
                if (owners.size() != 1) {
                    auto witness = owners;
                    witness.insert(witness.begin(), pair_name(i, j));
                    report.violations.push_back(Violation{"squareness", witness,
                        "pair " + pair_name(i, j) + (owners.empty() ? " is in no atom relation" : " is in several atom relations")});
                }
            }

        for (size_t a = 0; a < k; ++a) {
            bool diagonal = false, off = false;
            for (size_t i = 0; i < size; ++i)
                for (size_t j = 0; j < size; ++j)
                    if (relations[a][i * size + j])
                        (i == j ? diagonal : off) = true;
            if (diagonal && off)
                report.violations.push_back(Violation{"identity", {names[a]},
                    names[a] + " mixes diagonal and off-diagonal pairs, so Id is not a union of atoms"});
        }
        for (size_t i = 0; i < size; ++i) {
            bool covered = false;
            for (size_t a = 0; a < k; ++a)
                if (is_identity_atom(relations[a], size) && relations[a][i * size + i])
                    covered = true;
            if (! covered)
                report.violations.push_back(Violation{"identity", {pair_name(i, i)}, "diagonal pair " + pair_name(i, i) + " is in no identity atom"});
        }

        for (size_t a = 0; a < k; ++a) {
            auto conv = converse_of(relations[a], size);
            if (std::find(relations.begin(), relations.end(), conv) == relations.end())
                report.violations.push_back(Violation{"converse", {names[a]}, "converse of " + names[a] + " is not an atom relation"});
        }

        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < k; ++b) {
                auto product = compose_relations(relations[a], relations[b], size);
                for (size_t c = 0; c < k; ++c) {
                    bool meets = false, inside = true;
                    for (size_t p = 0; p < size * size; ++p)
                        if (relations[c][p]) {
                            if (product[p])
                                meets = true;
                            else
                                inside = false;
                        }
                    if (meets && ! inside)
                        report.violations.push_back(Violation{"composition-closure", {names[a], names[b], names[c]},
                            names[a] + ";" + names[b] + " meets " + names[c] + " without containing it"});
                }
            }

        return report;
    }

    auto derive_algebra(const ConcreteRepresentation & cr) -> RelationAlgebra
    {
        auto report = validate_representation(cr);
        if (! report.ok())
            throw InvalidInput{"representation '" + cr.name() + "' is not a square proper relation algebra: " + to_string(report.violations.front())};

        auto size = cr.domain_size();
        auto k = cr.atom_count();
        vector<Relation> relations;
        for (size_t a = 0; a < k; ++a)
            relations.push_back(relation_of(cr, a));

        vector<size_t> converse(k);
        Element identity;
        for (size_t a = 0; a < k; ++a) {
            auto conv = converse_of(relations[a], size);
            converse[a] = static_cast<size_t>(std::find(relations.begin(), relations.end(), conv) - relations.begin());
            if (is_identity_atom(relations[a], size))
                identity = join(identity, Element::atom(a));
        }

        vector<Element> table(k * k);
        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < k; ++b) {
                auto product = compose_relations(relations[a], relations[b], size);
                Element entry;
                for (size_t c = 0; c < k; ++c)
                    for (size_t p = 0; p < size * size; ++p)
                        if (relations[c][p] && product[p]) {
                            entry = join(entry, Element::atom(c));
                            break;
                        }
                table[a * k + b] = entry;
            }

        return RelationAlgebra{cr.algebra_name().value_or(cr.name()), cr.atom_names(), std::move(converse), identity, std::move(table)};
    }

    auto model_check(const ConcreteRepresentation & cr, const Network & n, ModelCheckStats * stats) -> optional<vector<size_t>>
    {
        auto domain = cr.domain_size();
        auto nodes = n.size();

        // Atom owning each domain pair; pairs outside every relation match no label.
        constexpr auto no_atom = max_atoms;
        vector<size_t> owner(domain * domain, no_atom);
        for (size_t a = 0; a < cr.atom_count(); ++a)
            for (size_t i = 0; i < domain; ++i)
                for (size_t j = 0; j < domain; ++j)
                    if (cr.holds(a, i, j) && owner[i * domain + j] == no_atom)
                        owner[i * domain + j] = a;
        auto allowed = [&](Element label, size_t i, size_t j) {
            auto a = owner[i * domain + j];
            return a != no_atom && label.contains(a);
        };

        ModelCheckStats local;
        auto & counters = stats ? *stats : local;

        vector<vector<size_t>> candidates(nodes);
        for (size_t x = 0; x < nodes; ++x) {
            for (size_t v = 0; v < domain; ++v)
                if (allowed(n.label(x, x), v, v))
                    candidates[x].push_back(v);
            if (candidates[x].empty())
                return nullopt;
        }

        vector<size_t> assignment(nodes);
        vector<char> assigned(nodes, 0);

        auto search = [&](auto & self, const vector<vector<size_t>> & domains, size_t depth) -> bool {
            if (depth == nodes)
                return true;
            size_t x = nodes;
            for (size_t y = 0; y < nodes; ++y)
                if (! assigned[y] && (x == nodes || domains[y].size() < domains[x].size()))
                    x = y;

            assigned[x] = 1;
            for (auto v : domains[x]) {
                ++counters.assignments;
                assignment[x] = v;
                auto next = domains;
                bool wiped = false;
                for (size_t y = 0; y < nodes && ! wiped; ++y) {
                    if (assigned[y])
                        continue;
                    auto & d = next[y];
                    std::erase_if(d, [&](size_t w) { return ! allowed(n.label(x, y), v, w) || ! allowed(n.label(y, x), w, v); });
                    wiped = d.empty();
                }
                if (! wiped && self(self, next, depth + 1))
                    return true;
            }
            assigned[x] = 0;
            return false;
        };

        if (! search(search, candidates, 0))
            return nullopt;
        return assignment;
    }
}
