#include "bracket.hpp"
#include "errors.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace jones;

namespace {

LaurentPoly trefoil_jones() {
    // right-handed trefoil: -t^{-4} + t^{-3} + t^{-1} at t = A^{-4}
    return LaurentPoly::monomial(16, -1) + LaurentPoly::monomial(12) + LaurentPoly::monomial(4);
}

} // namespace

TEST_CASE("resolution loop counts") {
    LinkDiagram kink(BraidWord{2, {1}}, Closure::trace);
    CHECK(kink.resolution_loops(1) == 1); // capcup
    CHECK(kink.resolution_loops(0) == 2); // identity
    CHECK(LinkDiagram(BraidWord{3, {}}, Closure::trace).resolution_loops(0) == 3);
}

TEST_CASE("bracket pins") {
    CHECK(bracket(LinkDiagram(BraidWord{1, {}}, Closure::trace)) == LaurentPoly::one());

    // A d^0 + A^{-1} d^1 = -A^{-3}
    CHECK(bracket(LinkDiagram(BraidWord{2, {1}}, Closure::trace)) ==
          LaurentPoly::monomial(-3, -1));

    // eight-state sum for sigma_1^3
    const LaurentPoly expected = LaurentPoly::monomial(7) - LaurentPoly::monomial(3) -
                                 LaurentPoly::monomial(-5);
    CHECK(bracket(LinkDiagram(BraidWord{2, {1, 1, 1}}, Closure::trace)) == expected);
}

TEST_CASE("jones polynomial pins") {
    CHECK(jones_exact(LinkDiagram(BraidWord{1, {}}, Closure::trace)) == LaurentPoly::one());

    // Reidemeister-I sanity: the kink cancels
    CHECK(jones_exact(LinkDiagram(BraidWord{2, {1}}, Closure::trace)) == LaurentPoly::one());

    CHECK(jones_exact(LinkDiagram(BraidWord{2, {1, 1, 1}}, Closure::trace)) == trefoil_jones());

    // Hopf link: -A^{10} - A^2
    const LaurentPoly hopf = LaurentPoly::monomial(10, -1) + LaurentPoly::monomial(2, -1);
    CHECK(jones_exact(LinkDiagram(BraidWord{2, {1, 1}}, Closure::trace)) == hopf);

    // plat closure of sigma_2 in B_4 is an unknot with a kink
    CHECK(jones_exact(LinkDiagram(BraidWord{4, {2}}, Closure::plat)) == LaurentPoly::one());
    CHECK(jones_exact(LinkDiagram(BraidWord{2, {}}, Closure::plat)) == LaurentPoly::one());
}

TEST_CASE("jones_value") {
    for (int k : {3, 4, 5, 7, 10})
        CHECK(std::abs(jones_value(BraidWord{1, {}}, Closure::trace, k) - Complex(1, 0)) < 1e-12);

    const Complex at5 = jones_value(BraidWord{2, {1, 1, 1}}, Closure::trace, 5);
    CHECK(std::abs(at5 - trefoil_jones().eval(unit_A(5))) < 1e-12);
}

TEST_CASE("markov moves leave jones_exact unchanged") {
    SplitMix64 rng(55);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(3));
        BraidWord b = testutil::random_braid(rng, n, 6);
        const LaurentPoly base = jones_exact(LinkDiagram(b, Closure::trace));

        // conjugation: g + w + (-g)
        const int g = 1 + static_cast<int>(rng.below(n - 1));
        BraidWord conj;
        conj.strands = n;
        conj.word.push_back(g);
        conj.word.insert(conj.word.end(), b.word.begin(), b.word.end());
        conj.word.push_back(-g);
        CHECK(jones_exact(LinkDiagram(conj, Closure::trace)) == base);

        // stabilization: w + (+-n) in B_{n+1}
        BraidWord stab;
        stab.strands = n + 1;
        stab.word = b.word;
        stab.word.push_back(rng.below(2) ? n : -n);
        CHECK(jones_exact(LinkDiagram(stab, Closure::trace)) == base);
    }
}

TEST_CASE("reidemeister II insertion leaves bracket unchanged") {
    SplitMix64 rng(66);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(3));
        BraidWord b = testutil::random_braid(rng, n, 6);
        const LaurentPoly base = bracket(LinkDiagram(b, Closure::trace));
        const int g = 1 + static_cast<int>(rng.below(n - 1));
        const size_t at = rng.below(b.word.size() + 1);
        b.word.insert(b.word.begin() + at, {g, -g});
        CHECK(bracket(LinkDiagram(b, Closure::trace)) == base);
    }
}

TEST_CASE("disjoint circle multiplies the bracket by d") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(3));
        BraidWord b = testutil::random_braid(rng, n, 6);
        BraidWord wide = b;
        wide.strands = n + 1; // unused strand closes into a split circle
        CHECK(bracket(LinkDiagram(wide, Closure::trace)) ==
              bracket(LinkDiagram(b, Closure::trace)) * LaurentPoly::d_poly());
    }
}

TEST_CASE("crossing cap enforced") {
    BraidWord big;
    big.strands = 2;
    big.word.assign(25, 1);
    CHECK_THROWS_AS(bracket(LinkDiagram(big, Closure::trace)), limit_error);

    BraidWord five{2, {1, 1, 1, 1, 1}};
    CHECK_THROWS_AS(bracket(LinkDiagram(five, Closure::trace), 4), limit_error);
    CHECK_NOTHROW(bracket(LinkDiagram(five, Closure::trace), 5));
}
