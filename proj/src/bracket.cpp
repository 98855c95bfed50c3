#include "bracket.hpp"

#include "errors.hpp"

#include <cstdint>
#include <map>

namespace jones {

LaurentPoly bracket(const LinkDiagram& diagram, int max_crossings) {
    const int m = diagram.crossings();
    if (m > max_crossings)
        throw limit_error("bracket: " + std::to_string(m) + " crossings exceeds cap of " +
                          std::to_string(max_crossings));

    // Tally states by (A-exponent, loop count); expand the d powers once at
    // the end. Counts fit in 64 bits for any m within the cap.
    std::map<std::pair<int, int>, std::int64_t> tally;
    const auto& word = diagram.braid().word;
    int max_loops = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        int a_exp = 0;
        for (int c = 0; c < m; ++c) {
            const int s = word[c] > 0 ? 1 : -1;
            a_exp += (mask >> c & 1) ? s : -s;
        }
        const int loops = diagram.resolution_loops(mask);
        if (loops > max_loops)
            max_loops = loops;
        ++tally[{a_exp, loops}];
    }

    std::vector<LaurentPoly> d_pow(max_loops);
    d_pow[0] = LaurentPoly::one();
    for (int j = 1; j < max_loops; ++j)
        d_pow[j] = d_pow[j - 1] * LaurentPoly::d_poly();

    LaurentPoly out;
    for (const auto& [key, count] : tally)
        out += d_pow[key.second - 1].scaled(count) * LaurentPoly::monomial(key.first);
    return out;
}

LaurentPoly jones_exact(const LinkDiagram& diagram, int max_crossings) {
    const int w = diagram.writhe();
    return LaurentPoly::neg_A_pow(3L * w) * bracket(diagram, max_crossings);
}

Complex jones_value(const BraidWord& braid, Closure kind, int k, int max_crossings) {
    LinkDiagram d(braid, kind);
    return jones_exact(d, max_crossings).eval(unit_A(k));
}

} // namespace jones
