#include <rakit/canonical.hh>

#include <algorithm>
#include <numeric>

namespace rakit
{
    auto canonical_form(std::span<const Element> matrix, std::size_t n) -> std::vector<Element::Bits>
    {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);

        std::vector<Element::Bits> best(n * n), current(n * n);
        for (std::size_t i = 0; i < n * n; ++i)
            best[i] = matrix[i].bits();

        while (std::next_permutation(perm.begin(), perm.end())) {
            // Compare while building so most permutations bail out early.
            bool smaller = false, larger = false;
            for (std::size_t i = 0; i < n && ! larger; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    auto value = matrix[perm[i] * n + perm[j]].bits();
                    current[i * n + j] = value;
                    if (! smaller) {
                        if (value > best[i * n + j]) {
                            larger = true;
                            break;
                        }
                        if (value < best[i * n + j])
                            smaller = true;
                    }
                }
            if (smaller)
                best = current;
        }
        return best;
    }

    auto canonical_form(const Network & n) -> std::vector<Element::Bits>
    {
        return canonical_form(n.labels(), n.size());
    }

    auto canonical_form(const LabeledStructure & s) -> std::vector<Element::Bits>
    {
        return canonical_form(s.relations, s.size());
    }
}
