#include <rakit/algebra.hh>
#include <rakit/errors.hh>

#include "text.hh"

#include <algorithm>
#include <sstream>

using std::optional;
using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace rakit
{
    auto ValidationReport::count(const string & law) const -> size_t
    {
        return std::count_if(violations.begin(), violations.end(), [&](const Violation & v) { return v.law == law; });
    }

    auto to_string(const Violation & v) -> string
    {
        string result = v.law + " (";
        for (size_t i = 0; i < v.witness.size(); ++i)
            result += (i == 0 ? "" : " ") + v.witness[i];
        result += ")";
        if (! v.detail.empty())
            result += ": " + v.detail;
        return result;
    }

    RelationAlgebra::RelationAlgebra(string name, vector<string> atoms, vector<size_t> converse, Element identity,
        vector<Element> table) :
        _name(std::move(name)),
        _atoms(std::move(atoms)),
        _converse(std::move(converse)),
        _identity(identity),
        _table(std::move(table))
    {
        auto k = _atoms.size();
        if (k == 0 || k > max_atoms)
            throw InvalidInput{"an algebra needs between 1 and " + std::to_string(max_atoms) + " atoms"};
        if (_converse.size() != k || _table.size() != k * k)
            throw InvalidInput{"converse map or composition table has the wrong size"};
        _top = Element{k == max_atoms ? ~Element::Bits{0} : (Element::Bits{1} << k) - 1};
        for (auto c : _converse)
            if (c >= k)
                throw InvalidInput{"converse map refers to an atom out of range"};
        if (_identity.empty() || ! leq(_identity, _top))
            throw InvalidInput{"identity must be a nonempty set of atoms"};
        for (auto e : _table)
            if (! leq(e, _top))
                throw InvalidInput{"composition table refers to an atom out of range"};
    }

    auto RelationAlgebra::atom_index(string_view name) const -> optional<size_t>
    {
        auto it = std::find(_atoms.begin(), _atoms.end(), name);
        if (it == _atoms.end())
            return std::nullopt;
        return static_cast<size_t>(it - _atoms.begin());
    }

    auto RelationAlgebra::compose(Element x, Element y) const -> Element
    {
        Element::Bits result = 0;
        auto k = size();
        x.for_each_atom([&](size_t a) {
            auto row = _table.data() + a * k;
            y.for_each_atom([&](size_t b) { result |= row[b].bits(); });
        });
        return Element{result};
    }

    auto RelationAlgebra::converse(Element x) const -> Element
    {
        Element::Bits result = 0;
        x.for_each_atom([&](size_t a) { result |= Element::atom(_converse[a]).bits(); });
        return Element{result};
    }

    auto RelationAlgebra::parse_element(string_view text) const -> Element
    {
        if (text == "0")
            return zero();
        if (text == "1")
            return top();
        Element result;
        size_t start = 0;
        while (true) {
            auto comma = text.find(',', start);
            auto name = text.substr(start, comma == string_view::npos ? string_view::npos : comma - start);
            auto index = atom_index(name);
            if (! index)
                throw ParseError{"unknown atom '" + string{name} + "'", 1, start + 1};
            result = join(result, Element::atom(*index));
            if (comma == string_view::npos)
                break;
            start = comma + 1;
        }
        return result;
    }

    auto RelationAlgebra::format(Element x, string_view separator) const -> string
    {
        if (x.empty())
            return "0";
        string result;
        x.for_each_atom([&](size_t a) {
            if (! result.empty())
                result += separator;
            result += _atoms[a];
        });
        return result;
    }

    auto RelationAlgebra::set_table(size_t a, size_t b, Element value) -> void
    {
        if (a >= size() || b >= size() || ! leq(value, _top))
            throw InvalidInput{"table entry out of range"};
        _table[a * size() + b] = value;
    }

    namespace
    {
        auto lookup(const vector<string> & atoms, const text::Token & token, size_t line) -> size_t
        {
            auto it = std::find(atoms.begin(), atoms.end(), token.value);
            if (it == atoms.end())
                text::fail("unknown atom '" + string{token.value} + "'", line, token.column);
            return static_cast<size_t>(it - atoms.begin());
        }
    }

    auto parse_algebra(string_view input) -> RelationAlgebra
    {
        optional<string> name;
        vector<string> atoms;
        bool have_atoms = false;
        optional<Element> identity;
        vector<optional<size_t>> converse;
        vector<optional<Element>> table;
        size_t last_line = 0;

        for (const auto & line : text::tokenize(input)) {
            const auto & tok = line.tokens;
            auto n = line.number;
            last_line = n;
            auto keyword = tok[0].value;

            if (keyword == "algebra") {
                if (name)
                    text::fail("duplicate 'algebra' line", n, tok[0].column);
                if (tok.size() != 2)
                    text::fail("expected 'algebra <name>'", n, tok[0].column);
                name = string{tok[1].value};
                continue;
            }
            if (! name)
                text::fail("file must start with 'algebra <name>'", n, tok[0].column);

            if (keyword == "atoms") {
                if (have_atoms)
                    text::fail("duplicate 'atoms' line", n, tok[0].column);
                if (tok.size() < 2)
                    text::fail("expected at least one atom", n, tok[0].column);
                if (tok.size() - 1 > max_atoms)
                    text::fail("too many atoms (at most " + std::to_string(max_atoms) + ")", n, tok[0].column);
                for (size_t i = 1; i < tok.size(); ++i) {
                    if (tok[i].value == "0" || tok[i].value == "1" || tok[i].value == "=" || tok[i].value == ":"
                        || tok[i].value.find(',') != string_view::npos)
                        text::fail("reserved atom name '" + string{tok[i].value} + "'", n, tok[i].column);
                    if (std::find(atoms.begin(), atoms.end(), tok[i].value) != atoms.end())
                        text::fail("duplicate atom '" + string{tok[i].value} + "'", n, tok[i].column);
                    atoms.emplace_back(tok[i].value);
                }
                have_atoms = true;
                converse.assign(atoms.size(), std::nullopt);
                table.assign(atoms.size() * atoms.size(), std::nullopt);
                continue;
            }
            if (! have_atoms)
                text::fail("'atoms' line must precede '" + string{keyword} + "'", n, tok[0].column);

            if (keyword == "identity") {
                if (identity)
                    text::fail("duplicate 'identity' line", n, tok[0].column);
                if (tok.size() < 2)
                    text::fail("expected at least one identity atom", n, tok[0].column);
                Element id;
                for (size_t i = 1; i < tok.size(); ++i)
                    id = join(id, Element::atom(lookup(atoms, tok[i], n)));
                identity = id;
            }
            else if (keyword == "converse") {
                if (tok.size() != 3)
                    text::fail("expected 'converse <a> <b>'", n, tok[0].column);
                auto a = lookup(atoms, tok[1], n), b = lookup(atoms, tok[2], n);
                if (converse[a])
                    text::fail("atom '" + atoms[a] + "' already has a converse", n, tok[1].column);
                if (converse[b])
                    text::fail("atom '" + atoms[b] + "' already has a converse", n, tok[2].column);
                converse[a] = b;
                converse[b] = a;
            }
            else if (keyword == "compose") {
                if (tok.size() < 5 || tok[3].value != "=")
                    text::fail("expected 'compose <a> <b> = <c1> [<c2> ...]'", n, tok[0].column);
                auto a = lookup(atoms, tok[1], n), b = lookup(atoms, tok[2], n);
                auto & entry = table[a * atoms.size() + b];
                if (entry)
                    text::fail("duplicate table entry: compose " + atoms[a] + " " + atoms[b], n, tok[0].column);
                Element value;
                if (tok.size() == 5 && tok[4].value == "0")
                    value = Element{};
                else
                    for (size_t i = 4; i < tok.size(); ++i)
                        value = join(value, Element::atom(lookup(atoms, tok[i], n)));
                entry = value;
            }
            else
                text::fail("unknown keyword '" + string{keyword} + "'", n, tok[0].column);
        }

        auto end = last_line + 1;
        if (! name)
            text::fail("missing 'algebra' line", end, 0);
        if (! have_atoms)
            text::fail("missing 'atoms' line", end, 0);
        if (! identity)
            text::fail("missing 'identity' line", end, 0);

        vector<size_t> conv(atoms.size());
        for (size_t a = 0; a < atoms.size(); ++a) {
            if (! converse[a])
                text::fail("missing converse line for atom '" + atoms[a] + "'", end, 0);
            conv[a] = *converse[a];
        }
        vector<Element> entries(table.size());
        for (size_t a = 0; a < atoms.size(); ++a)
            for (size_t b = 0; b < atoms.size(); ++b) {
                auto & e = table[a * atoms.size() + b];
                if (! e)
                    text::fail("missing table entry: compose " + atoms[a] + " " + atoms[b], end, 0);
                entries[a * atoms.size() + b] = *e;
            }

        return RelationAlgebra{std::move(*name), std::move(atoms), std::move(conv), *identity, std::move(entries)};
    }

    auto write_algebra(const RelationAlgebra & ra) -> string
    {
        std::ostringstream out;
        out << "algebra " << ra.name() << '\n';
        out << "atoms";
        for (const auto & a : ra.atom_names())
            out << ' ' << a;
        out << '\n';
        out << "identity " << ra.format(ra.identity(), " ") << '\n';
        for (size_t a = 0; a < ra.size(); ++a)
            if (ra.converse_atom(a) >= a)
                out << "converse " << ra.atom_name(a) << ' ' << ra.atom_name(ra.converse_atom(a)) << '\n';
        for (size_t a = 0; a < ra.size(); ++a)
            for (size_t b = 0; b < ra.size(); ++b)
                out << "compose " << ra.atom_name(a) << ' ' << ra.atom_name(b) << " = " << ra.format(ra.table(a, b), " ") << '\n';
        return out.str();
    }

    auto validate_algebra(const RelationAlgebra & ra) -> ValidationReport
    {
        ValidationReport report;
        auto k = ra.size();
        auto name = [&](size_t a) { return ra.atom_name(a); };
        auto add = [&](string law, vector<string> witness, string detail) {
            report.violations.push_back(Violation{std::move(law), std::move(witness), std::move(detail)});
        };

        for (size_t a = 0; a < k; ++a)
            if (ra.converse_atom(ra.converse_atom(a)) != a)
                add("converse-involution", {name(a)}, "converse of converse of " + name(a) + " is " + name(ra.converse_atom(ra.converse_atom(a))));

        for (size_t e = 0; e < k; ++e)
            if (ra.is_identity_atom(e) && ra.converse_atom(e) != e)
                add("identity-converse", {name(e)}, "identity atom " + name(e) + " is not self-converse");

        for (size_t a = 0; a < k; ++a) {
            auto single = Element::atom(a);
            if (auto right = ra.compose(single, ra.identity()); right != single)
                add("identity-law", {name(a)}, name(a) + " ; Id = " + ra.format(right));
            if (auto left = ra.compose(ra.identity(), single); left != single)
                add("identity-law", {name(a)}, "Id ; " + name(a) + " = " + ra.format(left));
        }

        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < k; ++b)
                if (ra.table(a, b).empty())
                    report.warnings.push_back("empty table entry: compose " + name(a) + " " + name(b) + " = 0");

        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < k; ++b)
                for (size_t c = 0; c < k; ++c) {
                    auto ca = ra.converse_atom(a), cb = ra.converse_atom(b), cc = ra.converse_atom(c);
                    bool in_ab = ra.table(a, b).contains(c);

                    if (in_ab != ra.table(cb, ca).contains(cc))
                        add("converse-composition", {name(a), name(b), name(c)},
                            name(c) + (in_ab ? " is" : " is not") + " in " + name(a) + ";" + name(b) + " but " + name(cc)
                                + (in_ab ? " is not" : " is") + " in " + name(cb) + ";" + name(ca));

                    bool in_first = ra.table(c, cb).contains(a), in_second = ra.table(ca, c).contains(b);
                    if (in_ab != in_first || in_ab != in_second)
                        add("rotation", {name(a), name(b), name(c)},
                            string{"membership differs: "} + name(c) + " in " + name(a) + ";" + name(b) + "=" + (in_ab ? "yes" : "no")
                                + ", " + name(a) + " in " + name(c) + ";" + name(cb) + "=" + (in_first ? "yes" : "no") + ", "
                                + name(b) + " in " + name(ca) + ";" + name(c) + "=" + (in_second ? "yes" : "no"));

                    auto left = ra.compose(ra.table(a, b), Element::atom(c));
                    auto right = ra.compose(Element::atom(a), ra.table(b, c));
                    if (left != right)
                        add("associativity", {name(a), name(b), name(c)},
                            "(" + name(a) + ";" + name(b) + ");" + name(c) + " = " + ra.format(left) + " but " + name(a) + ";(" + name(b)
                                + ";" + name(c) + ") = " + ra.format(right));
                }

        return report;
    }
}
