#include "bracket.hpp"
#include "estimator.hpp"
#include "test_util.hpp"
#include "tl_diagram.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace jones;

TEST_CASE("plan_samples") {
    EstimatorConfig cfg;
    cfg.epsilon = 1.0;
    cfg.delta = 0.5;
    CHECK(plan_samples(cfg) == 5);

    cfg.epsilon = 0.1;
    cfg.delta = 0.01;
    CHECK(plan_samples(cfg) == 1199);

    // halving epsilon quadruples the count (up to the ceilings)
    EstimatorConfig half = cfg;
    half.epsilon = 0.05;
    CHECK(plan_samples(half) <= 4 * plan_samples(cfg));
    CHECK(plan_samples(half) >= 4 * plan_samples(cfg) - 4);

    cfg.epsilon = 0.0;
    CHECK_THROWS_AS(plan_samples(cfg), std::invalid_argument);
    cfg.epsilon = 0.1;
    cfg.delta = 1.0;
    CHECK_THROWS_AS(plan_samples(cfg), std::invalid_argument);
}

TEST_CASE("weighted path sampling") {
    // (4,3): the only admissible path
    {
        PathBasis basis(4, 3);
        CoefficientTable ct(3);
        const auto counts = PathBasis::counts(4, 3);
        SplitMix64 rng(1);
        for (int i = 0; i < 20; ++i)
            CHECK(sample_weighted_path(basis, ct, counts, rng) ==
                  PathBasis::parse_bits("1010"));
    }

    // (2,5): Pr(10) = lambda_1/(lambda_1+lambda_3), Pr(11) = lambda_3/(...)
    {
        PathBasis basis(2, 5);
        CoefficientTable ct(5);
        const auto counts = PathBasis::counts(2, 5);
        const double p10 = ct.lambda[1] / (ct.lambda[1] + ct.lambda[3]);
        CHECK(p10 == doctest::Approx(0.38197).epsilon(1e-4));

        const int draws = 100000;
        int hits = 0;
        for (int j = 0; j < draws; ++j) {
            SplitMix64 rng = SplitMix64::stream(2024, j);
            if (sample_weighted_path(basis, ct, counts, rng) == PathBasis::parse_bits("10"))
                ++hits;
        }
        const double freq = static_cast<double>(hits) / draws;
        const double sigma = std::sqrt(p10 * (1 - p10) / draws);
        CHECK(std::abs(freq - p10) < 4 * sigma);
    }
}

TEST_CASE("per-path sampling probabilities telescope to lambda_l / N") {
    // Exactness of the reverse-DP branch ratios: the product of the branch
    // probabilities along any path must be exactly 1/S[n][l], hence the
    // overall draw probability lambda_l S[n][l]/N * 1/S[n][l] = lambda_l/N.
    const int n = 6, k = 5;
    PathBasis basis(n, k);
    const auto counts = PathBasis::counts(n, k);
    for (int idx = 0; idx < basis.dim(); ++idx) {
        const std::uint32_t p = basis.path(idx);
        BigInt num = 1, den = 1;
        int pos = basis.endpoint(idx);
        for (int j = n; j >= 1; --j) {
            const std::uint64_t w_down = pos - 1 >= 1 ? counts[j - 1][pos - 1] : 0;
            const std::uint64_t w_up = pos + 1 <= k - 1 ? counts[j - 1][pos + 1] : 0;
            const bool went_right = (p >> (j - 1)) & 1; // step j was a right move
            num *= went_right ? w_down : w_up;           // weight of the chosen branch
            den *= w_down + w_up;
            pos += went_right ? -1 : 1;
        }
        CHECK(pos == 1);
        CHECK(num * counts[n][basis.endpoint(idx)] == den);
    }
}

TEST_CASE("hadamard test values") {
    SplitMix64 rng(5);

    // empty braid: Q = I
    {
        const BraidWord b{3, {}};
        PathBasis basis(3, 5);
        for (int i = 0; i < basis.dim(); ++i) {
            CHECK(hadamard_test(b, 5, basis.path(i), false, EstimatorMode::exact_expectation,
                                rng) == doctest::Approx(1.0));
            CHECK(hadamard_test(b, 5, basis.path(i), true, EstimatorMode::exact_expectation,
                                rng) == doctest::Approx(0.0));
            // sampled Re draws are all +1
            for (int s = 0; s < 5; ++s)
                CHECK(hadamard_test(b, 5, basis.path(i), false,
                                    EstimatorMode::bernoulli_sampled, rng) == 1.0);
        }
    }

    // <11|phi_1|11> = A^{-1} on (n=2, k=5)
    {
        HadamardTester t(BraidWord{2, {1}}, 5);
        const int idx = t.basis().index_of(PathBasis::parse_bits("11"));
        REQUIRE(idx >= 0);
        CHECK(std::abs(t.bra_ket(idx) - 1.0 / unit_A(5)) < 1e-13);
    }

    // braid and inverse give conjugate diagonal entries
    {
        SplitMix64 gen(31);
        for (int trial = 0; trial < 10; ++trial) {
            const int n = 2 + static_cast<int>(gen.below(3));
            const BraidWord b = testutil::random_braid(gen, n, 6);
            HadamardTester tf(b, 5), tb(b.inverse(), 5);
            for (int i = 0; i < tf.basis().dim(); ++i)
                CHECK(std::abs(tf.bra_ket(i) - std::conj(tb.bra_ket(i))) < 1e-12);
        }
    }
}

TEST_CASE("estimator is unbiased against the weighted trace") {
    SplitMix64 gen(41);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(gen.below(5));
        const int k = 3 + static_cast<int>(gen.below(4));
        const BraidWord b = testutil::random_braid(gen, n, 6);
        HadamardTester t(b, k);
        const CoefficientTable& ct = t.coeffs();
        const double nfac = normalization(t.basis(), ct);
        Complex mixture{};
        for (int i = 0; i < t.basis().dim(); ++i)
            mixture += ct.lambda[t.basis().endpoint(i)] / nfac * t.bra_ket(i);
        CHECK(std::abs(mixture - t.weighted_trace_value()) < 1e-10);
    }
}

TEST_CASE("approx trace closure") {
    EstimatorConfig exact;
    exact.mode = EstimatorMode::exact_expectation;

    // empty braid on one strand: exactly 1
    {
        const ApproxResult r = approx_jones_trace(BraidWord{1, {}}, 5, exact);
        CHECK(r.estimate == Complex(1.0, 0.0));
        CHECK(r.samples_per_part == 0);
    }

    // exact mode equals the state-sum oracle
    {
        const ApproxResult r = approx_jones_trace(BraidWord{2, {1, 1, 1}}, 5, exact);
        CHECK(std::abs(r.estimate - jones_value(BraidWord{2, {1, 1, 1}}, Closure::trace, 5)) <
              1e-9);
        REQUIRE(r.reference.has_value());
        CHECK(std::abs(r.estimate - *r.reference) < 1e-12);
    }

    // sampled mode lands inside the guaranteed envelope for a fixed seed
    {
        EstimatorConfig cfg;
        cfg.epsilon = 0.1;
        cfg.delta = 0.01;
        cfg.seed = 12345;
        const ApproxResult r = approx_jones_trace(BraidWord{2, {1, 1, 1}}, 5, cfg);
        const Complex oracle = jones_value(BraidWord{2, {1, 1, 1}}, Closure::trace, 5);
        CHECK(std::abs(r.estimate - oracle) <= 0.1 * d_value(5));
        CHECK(r.samples_per_part == 1199);

        // seeded reproducibility, bit for bit
        const ApproxResult r2 = approx_jones_trace(BraidWord{2, {1, 1, 1}}, 5, cfg);
        CHECK(r.estimate.real() == r2.estimate.real());
        CHECK(r.estimate.imag() == r2.estimate.imag());
        CHECK(r.mean_re == r2.mean_re);
        CHECK(r.mean_im == r2.mean_im);
    }
}

TEST_CASE("approx plat closure") {
    EstimatorConfig exact;
    exact.mode = EstimatorMode::exact_expectation;

    // empty braid on two strands: the unknot, exactly 1 up to rounding in the
    // d^2 lambda_1 / N chain
    {
        const ApproxResult r = approx_jones_plat(BraidWord{2, {}}, 5, exact);
        CHECK(std::abs(r.estimate - Complex(1, 0)) < 1e-12);
        CHECK(r.mean_re == 1.0);
    }

    // sampled mode on the empty braid still has every x_j = +1
    {
        EstimatorConfig cfg;
        cfg.epsilon = 0.5;
        cfg.delta = 0.1;
        cfg.seed = 7;
        const ApproxResult r = approx_jones_plat(BraidWord{2, {}}, 5, cfg);
        CHECK(r.mean_re == 1.0);
    }

    // exact mode equals the state-sum oracle on plat closures
    {
        const ApproxResult r = approx_jones_plat(BraidWord{4, {2}}, 5, exact);
        CHECK(std::abs(r.estimate - jones_value(BraidWord{4, {2}}, Closure::plat, 5)) < 1e-9);
    }

    CHECK_THROWS_AS(approx_jones_plat(BraidWord{3, {}}, 5, exact), std::invalid_argument);
}

TEST_CASE("exact_reference sweeps") {
    SplitMix64 gen(51);
    for (int k : {3, 4, 5, 7, 10}) {
        for (int trial = 0; trial < 8; ++trial) {
            const int n = 2 + static_cast<int>(gen.below(3));
            const BraidWord b = testutil::random_braid(gen, n, 8);
            CHECK(std::abs(exact_reference(b, Closure::trace, k) -
                           jones_value(b, Closure::trace, k)) < 1e-9);
        }
        for (int trial = 0; trial < 4; ++trial) {
            const BraidWord b = testutil::random_braid(gen, 4, 6);
            CHECK(std::abs(exact_reference(b, Closure::plat, k) -
                           jones_value(b, Closure::plat, k)) < 1e-9);
        }
    }

    // n-strand identity braid: the n-component unlink, d^{n-1}
    for (int n = 1; n <= 4; ++n) {
        const Complex v = exact_reference(BraidWord{n, {}}, Closure::trace, 5);
        CHECK(std::abs(v - cpow_int(Complex(d_value(5), 0), n - 1)) < 1e-10);
    }

    // conjugation invariance (trace cyclicity)
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(gen.below(3));
        BraidWord b = testutil::random_braid(gen, n, 6);
        const int g = 1 + static_cast<int>(gen.below(n - 1));
        BraidWord conj;
        conj.strands = n;
        conj.word.push_back(g);
        conj.word.insert(conj.word.end(), b.word.begin(), b.word.end());
        conj.word.push_back(-g);
        CHECK(std::abs(exact_reference(b, Closure::trace, 5) -
                       exact_reference(conj, Closure::trace, 5)) < 1e-10);
    }
}

TEST_CASE("plat estimate matches the capcup tangle trace route") {
    SplitMix64 gen(61);
    EstimatorConfig exact;
    exact.mode = EstimatorMode::exact_expectation;
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 * (1 + static_cast<int>(gen.below(2)));
        const BraidWord b = testutil::random_braid(gen, n, 6);
        const int k = 3 + static_cast<int>(gen.below(5));
        const ApproxResult r = approx_jones_plat(b, k, exact);
        const int w = LinkDiagram(b, Closure::plat).writhe();
        const Complex via_tl = jones_via_trace(Tangle::plat_tangle(b), w).eval(unit_A(k));
        CHECK(std::abs(r.estimate - via_tl) < 1e-9);
    }
}

TEST_CASE("seeded concentration at desk scale") {
    const BraidWord b{3, {1, -2, 1}};
    const Complex oracle = jones_value(b, Closure::trace, 5);
    EstimatorConfig cfg;
    cfg.epsilon = 0.1;
    cfg.delta = 0.01;
    int violations = 0;
    const int runs = 60;
    for (int s = 0; s < runs; ++s) {
        cfg.seed = 1000 + s;
        const ApproxResult r = approx_jones_trace(b, 5, cfg, false);
        if (std::abs(r.estimate - oracle) > r.envelope)
            ++violations;
    }
    CHECK(violations <= runs * 3 / 100 + 1);
}
