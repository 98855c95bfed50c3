#include "path_model.hpp"
#include "test_util.hpp"
#include "tl_diagram.hpp"

#include <doctest.h>

#include <cmath>

using namespace jones;

TEST_CASE("path enumeration") {
    PathBasis b25(2, 5);
    REQUIRE(b25.dim() == 2);
    CHECK(b25.bits_string(0) == "10");
    CHECK(b25.bits_string(1) == "11");
    CHECK(b25.endpoint(0) == 1);
    CHECK(b25.endpoint(1) == 3);

    PathBasis b43(4, 3);
    REQUIRE(b43.dim() == 1);
    CHECK(b43.bits_string(0) == "1010");

    PathBasis b14(1, 4);
    REQUIRE(b14.dim() == 1);
    CHECK(b14.bits_string(0) == "1");
    CHECK(b14.endpoint(0) == 2);

    CHECK_THROWS_AS(PathBasis(2, 2), std::invalid_argument);

    // every endpoint has the parity of n+1
    PathBasis b65(6, 5);
    for (int i = 0; i < b65.dim(); ++i)
        CHECK((b65.endpoint(i) - (6 + 1)) % 2 == 0);
}

TEST_CASE("path counts table") {
    const auto s5 = PathBasis::counts(3, 5);
    CHECK(PathBasis::counts(2, 5)[2][1] == 1);
    CHECK(PathBasis::counts(2, 5)[2][3] == 1);
    CHECK(s5[3][2] == 2);

    for (int n : {2, 4, 6})
        for (int k : {3, 5, 8}) {
            PathBasis basis(n, k);
            const auto s = PathBasis::counts(n, k);
            std::uint64_t total = 0;
            for (int j = 0; j <= k; ++j) {
                total += s[n][j];
                if ((j - (n + 1)) % 2 != 0)
                    CHECK(s[n][j] == 0);
                CHECK(s[n][j] == static_cast<std::uint64_t>(basis.block_dim(j)));
            }
            CHECK(total == static_cast<std::uint64_t>(basis.dim()));
        }
}

TEST_CASE("phi_E on the two-path basis") {
    PathBasis basis(2, 5);
    CoefficientTable ct(5);
    BlockOperator phi1 = phi_E(1, basis, ct);

    // block l=1 holds path 10: diagonal lambda_2/lambda_1; block l=3 holds 11
    // which is annihilated
    REQUIRE(phi1.block[1].rows == 1);
    REQUIRE(phi1.block[3].rows == 1);
    CHECK(std::abs(phi1.block[1].at(0, 0) - Complex(ct.lambda[2] / ct.lambda[1], 0)) < 1e-14);
    CHECK(std::abs(phi1.block[3].at(0, 0)) == 0.0);

    // lambda_2/lambda_1 = d when lambda_0 = 0
    CHECK(std::abs(phi1.block[1].at(0, 0).real() - ct.d) < 1e-12);

    // Phi^2 = d Phi here
    const BlockOperator sq = phi1.mul(phi1);
    CHECK(sq.max_abs_diff(phi1.scaled(ct.d)) < 1e-12);
}

TEST_CASE("phi annihilates 00 and 11 bit patterns") {
    PathBasis basis(4, 6);
    CoefficientTable ct(6);
    for (int i = 1; i <= 3; ++i) {
        BlockOperator phi = phi_E(i, basis, ct);
        for (int col = 0; col < basis.dim(); ++col) {
            const std::uint32_t p = basis.path(col);
            if ((p >> (i - 1) & 1) != (p >> i & 1))
                continue;
            const int l = basis.block_of(col);
            for (int row = 0; row < basis.block_dim(l); ++row)
                CHECK(std::abs(phi.block[l].at(row, basis.offset_of(col))) == 0.0);
        }
    }
}

TEST_CASE("TL relations for Phi") {
    for (int k : {3, 5, 8}) {
        CoefficientTable ct(k);
        for (int n = 2; n <= 6; ++n) {
            PathBasis basis(n, k);
            std::vector<BlockOperator> phi;
            phi.push_back(BlockOperator::identity(basis)); // placeholder index 0
            for (int i = 1; i <= n - 1; ++i)
                phi.push_back(phi_E(i, basis, ct));

            for (int i = 1; i <= n - 1; ++i) {
                // Phi_i^2 = d Phi_i
                CHECK(phi[i].mul(phi[i]).max_abs_diff(phi[i].scaled(ct.d)) < 1e-10);
                // Hermitian
                CHECK(phi[i].max_abs_diff(phi[i].adjoint()) < 1e-12);
                // Phi_i Phi_{i+1} Phi_i = Phi_i
                if (i + 1 <= n - 1) {
                    CHECK(phi[i].mul(phi[i + 1]).mul(phi[i]).max_abs_diff(phi[i]) < 1e-10);
                    CHECK(phi[i + 1].mul(phi[i]).mul(phi[i + 1]).max_abs_diff(phi[i + 1]) < 1e-10);
                }
                for (int j = i + 2; j <= n - 1; ++j)
                    CHECK(phi[i].mul(phi[j]).max_abs_diff(phi[j].mul(phi[i])) < 1e-10);
            }
        }
    }
}

TEST_CASE("phi_sigma is unitary and inverts") {
    for (int k : {3, 5, 8}) {
        CoefficientTable ct(k);
        for (int n = 2; n <= 5; ++n) {
            PathBasis basis(n, k);
            for (int i = 1; i <= n - 1; ++i) {
                const BlockOperator u = phi_sigma(i, +1, basis, ct);
                const BlockOperator v = phi_sigma(i, -1, basis, ct);
                CHECK(u.mul(u.adjoint()).max_abs_diff(BlockOperator::identity(basis)) < 1e-12);
                CHECK(u.mul(v).max_abs_diff(BlockOperator::identity(basis)) < 1e-12);
                CHECK(v.max_abs_diff(u.adjoint()) < 1e-14);
            }
        }
    }

    // k=3: the single path 10 gives the 1x1 block A d + A^{-1} with d = 1
    PathBasis b23(2, 3);
    CoefficientTable ct3(3);
    const BlockOperator u = phi_sigma(1, +1, b23, ct3);
    const Complex a = unit_A(3);
    CHECK(std::abs(u.block[1].at(0, 0) - (a + 1.0 / a)) < 1e-13);
}

TEST_CASE("apply_braid agrees with assembled matrices and preserves norm") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(5));
        const int k = 3 + static_cast<int>(rng.below(5));
        const BraidWord b = testutil::random_braid(rng, n, 8);
        PathBasis basis(n, k);
        CoefficientTable ct(k);

        std::vector<Complex> state(basis.dim());
        double norm = 0;
        for (auto& v : state) {
            v = Complex(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
            norm += std::norm(v);
        }
        norm = std::sqrt(norm);
        for (auto& v : state)
            v /= norm;

        // matrix route
        const BlockOperator op = assemble_phi(b, basis, ct);
        std::vector<Complex> expect(basis.dim());
        for (int row = 0; row < basis.dim(); ++row) {
            Complex acc{};
            for (int col = 0; col < basis.dim(); ++col)
                acc += op.entry(row, col) * state[col];
            expect[row] = acc;
        }

        std::vector<Complex> got = state;
        apply_braid(b, basis, ct, got);
        double diff = 0, norm2 = 0;
        for (int i = 0; i < basis.dim(); ++i) {
            diff = std::max(diff, std::abs(got[i] - expect[i]));
            norm2 += std::norm(got[i]);
        }
        CHECK(diff < 1e-12);
        CHECK(std::abs(std::sqrt(norm2) - 1.0) < 1e-12);

        // inverse word undoes the action
        apply_braid(b.inverse(), basis, ct, got);
        double back = 0;
        for (int i = 0; i < basis.dim(); ++i)
            back = std::max(back, std::abs(got[i] - state[i]));
        CHECK(back < 1e-12);
    }

    // empty word leaves the state alone
    PathBasis basis(3, 5);
    CoefficientTable ct(5);
    std::vector<Complex> v(basis.dim(), Complex(0.5, -0.25));
    auto w = v;
    apply_braid(BraidWord{3, {}}, basis, ct, w);
    CHECK(w == v);
}

TEST_CASE("block structure is preserved") {
    SplitMix64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(4));
        const int k = 3 + static_cast<int>(rng.below(4));
        const BraidWord b = testutil::random_braid(rng, n, 6);
        PathBasis basis(n, k);
        CoefficientTable ct(k);
        for (int start = 0; start < basis.dim(); ++start) {
            std::vector<Complex> state(basis.dim());
            state[start] = 1.0;
            apply_braid(b, basis, ct, state);
            for (int i = 0; i < basis.dim(); ++i)
                if (basis.block_of(i) != basis.block_of(start))
                    CHECK(state[i] == Complex{});
        }
    }
}

TEST_CASE("weighted trace") {
    for (int k : {3, 4, 5, 8})
        for (int n = 1; n <= 5; ++n) {
            PathBasis basis(n, k);
            CoefficientTable ct(k);
            CHECK(std::abs(weighted_trace(BlockOperator::identity(basis), ct) - Complex(1, 0)) <
                  1e-13);
        }

    PathBasis basis(2, 5);
    CoefficientTable ct(5);
    CHECK(normalization(basis, ct) == doctest::Approx(1.53884).epsilon(1e-5));
    const Complex tr = weighted_trace(phi_E(1, basis, ct), ct);
    CHECK(std::abs(tr - Complex(1.0 / ct.d, 0)) < 1e-12);
    CHECK(tr.real() == doctest::Approx(0.61803).epsilon(1e-4));
}

TEST_CASE("markov property of the weighted trace") {
    SplitMix64 rng(23);
    for (int k : {3, 5, 8}) {
        CoefficientTable ct(k);
        for (int n = 3; n <= 6; ++n) {
            PathBasis basis(n, k);
            for (int trial = 0; trial < 5; ++trial) {
                // random word in Phi_1..Phi_{n-2}
                BlockOperator w = BlockOperator::identity(basis);
                const int len = static_cast<int>(rng.below(4));
                for (int s = 0; s < len; ++s)
                    w = w.mul(phi_E(1 + static_cast<int>(rng.below(n - 2)), basis, ct));
                const BlockOperator we = w.mul(phi_E(n - 1, basis, ct));
                const Complex lhs = weighted_trace(we, ct);
                const Complex rhs = weighted_trace(w, ct) / ct.d;
                CHECK(std::abs(lhs - rhs) < 1e-10);
            }
        }
    }
}

TEST_CASE("weighted trace matches the diagrammatic markov trace") {
    SplitMix64 rng(29);
    for (int k : {3, 4, 5, 7, 10}) {
        CoefficientTable ct(k);
        for (int trial = 0; trial < 12; ++trial) {
            const int n = 2 + static_cast<int>(rng.below(3));
            const BraidWord b = testutil::random_braid(rng, n, 8);
            PathBasis basis(n, k);
            const Complex lhs = weighted_trace(assemble_phi(b, basis, ct), ct);
            const Complex rhs = markov_trace_value(rho_A(b), unit_A(k));
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
    }
}

TEST_CASE("coefficient table identities") {
    for (int k = 3; k <= 64; ++k) {
        CoefficientTable ct(k);
        for (int l = 1; l <= k - 1; ++l) {
            // eigenvector identity
            CHECK(std::abs(ct.lam(l - 1) + ct.lam(l + 1) - ct.d * ct.lam(l)) < 1e-12);
            // b_l d_l + a_l c_l = d
            CHECK(std::abs(ct.b(l) * ct.dcoef(l) + ct.a(l) * ct.c(l) - ct.d) < 1e-12);
            // a and b are real here, so the conjugation constraints collapse
            CHECK(ct.a(l) == ct.c(l));
            CHECK(ct.b(l) == ct.dcoef(l));
        }
        for (int l = 1; l <= k - 2; ++l)
            CHECK(std::abs(ct.b(l + 1) * ct.c(l) - 1.0) < 1e-12);
        for (int l = 2; l <= k - 1; ++l)
            CHECK(std::abs(ct.a(l - 1) * ct.dcoef(l) - 1.0) < 1e-12);
    }
}

TEST_CASE("capcup projector") {
    for (int k : {3, 5, 8}) {
        CoefficientTable ct(k);
        for (int n = 2; n <= 8; n += 2) {
            PathBasis basis(n, k);
            BlockOperator proj = phi_E(1, basis, ct);
            for (int i = 3; i <= n - 1; i += 2)
                proj = proj.mul(phi_E(i, basis, ct));
            proj = proj.scaled(1.0 / std::pow(ct.d, n / 2.0));

            std::uint32_t alpha = 0;
            for (int j = 0; j < n; j += 2)
                alpha |= std::uint32_t{1} << j;
            const int ai = basis.index_of(alpha);
            REQUIRE(ai >= 0);

            BlockOperator expect = BlockOperator::zero(basis);
            expect.block[basis.block_of(ai)].at(basis.offset_of(ai), basis.offset_of(ai)) = 1.0;
            CHECK(proj.max_abs_diff(expect) < 1e-10);
        }
    }
}
