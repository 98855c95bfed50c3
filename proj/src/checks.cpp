#include "checks.hpp"

#include "bracket.hpp"
#include "circuit.hpp"
#include "estimator.hpp"
#include "path_model.hpp"
#include "rng.hpp"
#include "tl_diagram.hpp"

#include <cmath>
#include <sstream>

namespace jones {

namespace {

BraidWord random_braid(SplitMix64& rng, int n, int max_m) {
    BraidWord b;
    b.strands = n;
    if (n < 2)
        return b;
    const int m = static_cast<int>(rng.below(max_m + 1));
    for (int i = 0; i < m; ++i) {
        const int idx = 1 + static_cast<int>(rng.below(n - 1));
        b.word.push_back(rng.below(2) ? idx : -idx);
    }
    return b;
}

struct Suite {
    std::vector<CheckResult>& out;

    void residual_check(const std::string& name, double residual, double tol,
                        const std::string& detail = "") {
        CheckResult r;
        r.name = name;
        r.residual = residual;
        r.passed = residual <= tol;
        std::ostringstream os;
        os << "residual " << residual << " vs tolerance " << tol;
        if (!detail.empty())
            os << "; " << detail;
        r.detail = os.str();
        out.push_back(std::move(r));
    }

    void flag_check(const std::string& name, bool ok, const std::string& detail) {
        out.push_back({name, ok, ok ? 0.0 : 1.0, detail});
    }
};

} // namespace

std::vector<CheckResult> run_checks(const std::string& level, std::uint64_t seed) {
    if (level != "quick" && level != "full")
        throw std::invalid_argument("verify level must be 'quick' or 'full'");
    const bool quick = level == "quick";
    std::vector<CheckResult> out;
    Suite suite{out};

    const int n_max = quick ? 4 : 6;
    const std::vector<int> ks = quick ? std::vector<int>{3, 5} : std::vector<int>{3, 4, 5, 6, 7, 8};

    // TL relations, hermiticity and unitarity of the path representation
    {
        double rel = 0, herm = 0, unit = 0;
        for (int k : ks) {
            CoefficientTable ct(k);
            for (int n = 2; n <= n_max; ++n) {
                PathBasis basis(n, k);
                std::vector<BlockOperator> phi{BlockOperator::identity(basis)};
                for (int i = 1; i <= n - 1; ++i)
                    phi.push_back(phi_E(i, basis, ct));
                for (int i = 1; i <= n - 1; ++i) {
                    rel = std::max(rel, phi[i].mul(phi[i]).max_abs_diff(phi[i].scaled(ct.d)));
                    herm = std::max(herm, phi[i].max_abs_diff(phi[i].adjoint()));
                    if (i + 1 <= n - 1) {
                        rel = std::max(rel,
                                       phi[i].mul(phi[i + 1]).mul(phi[i]).max_abs_diff(phi[i]));
                        rel = std::max(rel, phi[i + 1].mul(phi[i]).mul(phi[i + 1]).max_abs_diff(
                                                phi[i + 1]));
                    }
                    for (int j = i + 2; j <= n - 1; ++j)
                        rel = std::max(rel, phi[i].mul(phi[j]).max_abs_diff(phi[j].mul(phi[i])));
                    const BlockOperator u = phi_sigma(i, +1, basis, ct);
                    unit = std::max(
                        unit, u.mul(u.adjoint()).max_abs_diff(BlockOperator::identity(basis)));
                    unit = std::max(unit, u.mul(phi_sigma(i, -1, basis, ct))
                                              .max_abs_diff(BlockOperator::identity(basis)));
                }
            }
        }
        suite.residual_check("tl-relations-phi", rel, 1e-10);
        suite.residual_check("phi-hermitian", herm, 1e-12);
        suite.residual_check("phi-sigma-unitary", unit, 1e-12);
    }

    // coefficient table identities
    {
        double res = 0;
        const int k_top = quick ? 16 : 64;
        for (int k = 3; k <= k_top; ++k) {
            CoefficientTable ct(k);
            for (int l = 1; l <= k - 1; ++l) {
                res = std::max(res, std::abs(ct.lam(l - 1) + ct.lam(l + 1) - ct.d * ct.lam(l)));
                res = std::max(res,
                               std::abs(ct.b(l) * ct.dcoef(l) + ct.a(l) * ct.c(l) - ct.d));
            }
            for (int l = 1; l <= k - 2; ++l)
                res = std::max(res, std::abs(ct.b(l + 1) * ct.c(l) - 1.0));
            for (int l = 2; l <= k - 1; ++l)
                res = std::max(res, std::abs(ct.a(l - 1) * ct.dcoef(l) - 1.0));
        }
        suite.residual_check("coefficient-identities", res, 1e-12);
    }

    // block preservation is structural: applying a random braid to a basis
    // vector never leaves its endpoint block
    {
        SplitMix64 rng(seed + 1);
        double res = 0;
        for (int trial = 0; trial < (quick ? 5 : 15); ++trial) {
            const int n = 2 + static_cast<int>(rng.below(n_max - 1));
            const int k = ks[rng.below(ks.size())];
            const BraidWord b = random_braid(rng, n, 6);
            PathBasis basis(n, k);
            CoefficientTable ct(k);
            for (int start = 0; start < basis.dim(); ++start) {
                std::vector<Complex> state(basis.dim());
                state[start] = 1.0;
                apply_braid(b, basis, ct, state);
                for (int i = 0; i < basis.dim(); ++i)
                    if (basis.block_of(i) != basis.block_of(start))
                        res = std::max(res, std::abs(state[i]));
            }
        }
        suite.residual_check("block-preservation", res, 0.0, "cross-block amplitude");
    }

    // Markov property of the weighted trace
    {
        SplitMix64 rng(seed + 2);
        double res = 0;
        for (int k : ks) {
            CoefficientTable ct(k);
            for (int n = 3; n <= n_max; ++n) {
                PathBasis basis(n, k);
                for (int trial = 0; trial < (quick ? 3 : 6); ++trial) {
                    BlockOperator w = BlockOperator::identity(basis);
                    const int len = static_cast<int>(rng.below(4));
                    for (int s = 0; s < len && n >= 3; ++s)
                        w = w.mul(phi_E(1 + static_cast<int>(rng.below(n - 2)), basis, ct));
                    const Complex lhs = weighted_trace(w.mul(phi_E(n - 1, basis, ct)), ct);
                    const Complex rhs = weighted_trace(w, ct) / ct.d;
                    res = std::max(res, std::abs(lhs - rhs));
                }
            }
        }
        suite.residual_check("markov-weighted-trace", res, 1e-10);
    }

    // capcup projector
    {
        double res = 0;
        for (int k : ks) {
            CoefficientTable ct(k);
            for (int n = 2; n <= (quick ? 6 : 8); n += 2) {
                PathBasis basis(n, k);
                BlockOperator proj = phi_E(1, basis, ct);
                for (int i = 3; i <= n - 1; i += 2)
                    proj = proj.mul(phi_E(i, basis, ct));
                proj = proj.scaled(1.0 / std::pow(ct.d, n / 2.0));
                std::uint32_t alpha = 0;
                for (int j = 0; j < n; j += 2)
                    alpha |= std::uint32_t{1} << j;
                const int ai = basis.index_of(alpha);
                BlockOperator expect = BlockOperator::zero(basis);
                expect.block[basis.block_of(ai)].at(basis.offset_of(ai), basis.offset_of(ai)) =
                    1.0;
                res = std::max(res, proj.max_abs_diff(expect));
            }
        }
        suite.residual_check("capcup-projector", res, 1e-10);
    }

    // exact oracle agreement: state sum vs TL diagrams (polynomial equality)
    // and vs the path model (numeric)
    {
        SplitMix64 rng(seed + 3);
        bool equal = true;
        double res = 0;
        const int trials = quick ? 20 : 60;
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 2 + static_cast<int>(rng.below(3));
            const BraidWord b = random_braid(rng, n, 8);
            const LaurentPoly lhs = jones_exact(LinkDiagram(b, Closure::trace));
            if (lhs != jones_via_trace(b, Closure::trace))
                equal = false;
            for (int k : {3, 4, 5, 7, 10})
                res = std::max(res, std::abs(lhs.eval(unit_A(k)) -
                                             exact_reference(b, Closure::trace, k)));
        }
        suite.flag_check("oracle-bracket-vs-tl", equal, "exact polynomial equality");
        suite.residual_check("oracle-path-model", res, 1e-9);
    }

    // Markov moves on the state sum
    {
        SplitMix64 rng(seed + 4);
        bool ok = true;
        const int trials = quick ? 15 : 40;
        for (int trial = 0; trial < trials && ok; ++trial) {
            const int n = 2 + static_cast<int>(rng.below(3));
            const BraidWord b = random_braid(rng, n, 6);
            const LaurentPoly base = jones_exact(LinkDiagram(b, Closure::trace));
            const int g = 1 + static_cast<int>(rng.below(n - 1));
            BraidWord conj{n, {}};
            conj.word.push_back(g);
            conj.word.insert(conj.word.end(), b.word.begin(), b.word.end());
            conj.word.push_back(-g);
            if (jones_exact(LinkDiagram(conj, Closure::trace)) != base)
                ok = false;
            BraidWord stab{n + 1, b.word};
            stab.word.push_back(rng.below(2) ? n : -n);
            if (jones_exact(LinkDiagram(stab, Closure::trace)) != base)
                ok = false;
            BraidWord r2 = b;
            r2.word.insert(r2.word.begin() + rng.below(r2.word.size() + 1), {g, -g});
            if (jones_exact(LinkDiagram(r2, Closure::trace)) != base)
                ok = false;
        }
        suite.flag_check("markov-moves", ok, "conjugation, stabilization, R2 insertion");
    }

    // known value pins
    {
        const LaurentPoly trefoil = LaurentPoly::monomial(16, -1) + LaurentPoly::monomial(12) +
                                    LaurentPoly::monomial(4);
        const LaurentPoly hopf = LaurentPoly::monomial(10, -1) + LaurentPoly::monomial(2, -1);
        const bool ok =
            jones_exact(LinkDiagram(BraidWord{1, {}}, Closure::trace)) == LaurentPoly::one() &&
            jones_exact(LinkDiagram(BraidWord{2, {1}}, Closure::trace)) == LaurentPoly::one() &&
            jones_exact(LinkDiagram(BraidWord{2, {1, 1, 1}}, Closure::trace)) == trefoil &&
            jones_exact(LinkDiagram(BraidWord{2, {1, 1}}, Closure::trace)) == hopf;
        suite.flag_check("known-value-pins", ok,
                         "unknot, kink, trefoil -t^-4+t^-3+t^-1, Hopf -A^10-A^2");
    }

    // sampler: exact branch ratios and endpoint frequencies
    {
        const int n = 6, k = 5;
        PathBasis basis(n, k);
        CoefficientTable ct(k);
        const auto counts = PathBasis::counts(n, k);
        bool exact_ok = true;
        for (int idx = 0; idx < basis.dim(); ++idx) {
            const std::uint32_t p = basis.path(idx);
            BigInt num = 1, den = 1;
            int pos = basis.endpoint(idx);
            for (int j = n; j >= 1; --j) {
                const std::uint64_t w_down = pos - 1 >= 1 ? counts[j - 1][pos - 1] : 0;
                const std::uint64_t w_up = pos + 1 <= k - 1 ? counts[j - 1][pos + 1] : 0;
                const bool went_right = (p >> (j - 1)) & 1;
                num *= went_right ? w_down : w_up;
                den *= w_down + w_up;
                pos += went_right ? -1 : 1;
            }
            if (pos != 1 || num * counts[n][basis.endpoint(idx)] != den)
                exact_ok = false;
        }
        suite.flag_check("sampler-branch-ratios", exact_ok,
                         "reverse-DP products telescope to 1/S[n][l]");

        const int draws = quick ? 20000 : 100000;
        std::vector<int> hits(k + 1, 0);
        for (int j = 0; j < draws; ++j) {
            SplitMix64 rng = SplitMix64::stream(seed + 5, j);
            const std::uint32_t p = sample_weighted_path(basis, ct, counts, rng);
            int pos = 1;
            for (int s = 0; s < n; ++s)
                pos += (p >> s & 1) ? 1 : -1;
            ++hits[pos];
        }
        const double nfac = normalization(basis, ct);
        double worst_sigmas = 0;
        for (int l = 1; l <= k - 1; ++l) {
            const double prob = ct.lambda[l] * static_cast<double>(counts[n][l]) / nfac;
            if (prob == 0)
                continue;
            const double sigma = std::sqrt(prob * (1 - prob) / draws);
            worst_sigmas =
                std::max(worst_sigmas, std::abs(hits[l] / double(draws) - prob) / sigma);
        }
        suite.residual_check("sampler-endpoint-frequencies", worst_sigmas, 4.0,
                             "deviation in sigma units");
    }

    // estimator: unbiasedness against the weighted trace and reproducibility
    {
        SplitMix64 rng(seed + 6);
        double res = 0;
        for (int trial = 0; trial < (quick ? 4 : 10); ++trial) {
            const int n = 2 + static_cast<int>(rng.below(quick ? 3 : 5));
            const int k = ks[rng.below(ks.size())];
            const BraidWord b = random_braid(rng, n, 6);
            HadamardTester t(b, k);
            const CoefficientTable& ct = t.coeffs();
            const double nfac = normalization(t.basis(), ct);
            Complex mixture{};
            for (int i = 0; i < t.basis().dim(); ++i)
                mixture += ct.lambda[t.basis().endpoint(i)] / nfac * t.bra_ket(i);
            res = std::max(res, std::abs(mixture - t.weighted_trace_value()));
        }
        suite.residual_check("estimator-unbiased", res, 1e-10);

        EstimatorConfig cfg;
        cfg.epsilon = 0.25;
        cfg.delta = 0.05;
        cfg.seed = seed + 7;
        const BraidWord b{3, {1, -2, 1}};
        const ApproxResult r1 = approx_jones_trace(b, 5, cfg, false);
        const ApproxResult r2 = approx_jones_trace(b, 5, cfg, false);
        suite.flag_check("estimator-reproducible",
                         r1.estimate == r2.estimate && r1.mean_re == r2.mean_re &&
                             r1.mean_im == r2.mean_im,
                         "identical seed gives bit-identical results");
    }

    // seeded concentration (full level only; 200 seeded runs, <= 3% misses)
    if (!quick) {
        const BraidWord b{3, {1, -2, 1, 1}};
        const Complex oracle = jones_value(b, Closure::trace, 5);
        EstimatorConfig cfg;
        cfg.epsilon = 0.1;
        cfg.delta = 0.01;
        int violations = 0;
        const int runs = 200;
        for (int s = 0; s < runs; ++s) {
            cfg.seed = seed + 100 + s;
            const ApproxResult r = approx_jones_trace(b, 5, cfg, false);
            if (std::abs(r.estimate - oracle) > r.envelope)
                ++violations;
        }
        suite.residual_check("estimator-concentration",
                             static_cast<double>(violations) / runs, 0.03,
                             std::to_string(violations) + " of 200 runs outside the envelope");
    }

    // circuit synthesis: equivalence, counter cleanliness, round trip
    {
        SplitMix64 rng(seed + 8);
        double res = 0, clean = 0, had = 0;
        bool round_ok = true;
        for (int trial = 0; trial < (quick ? 4 : 10); ++trial) {
            const int n = 2 + static_cast<int>(rng.below(3));
            const int k = 3 + static_cast<int>(rng.below(3));
            const BraidWord b = random_braid(rng, n, 4);
            PathBasis basis(n, k);
            CoefficientTable ct(k);
            const Circuit c = synthesize_braid(b, k);
            const auto mat = circuit_to_matrix(c, basis);
            res = std::max(res, mat.op.max_abs_diff(assemble_phi(b, basis, ct)));
            res = std::max(res, mat.max_offblock);
            clean = std::max(clean, counter_cleanliness(c, basis));
            if (parse_text(emit_text(c)) != c)
                round_ok = false;

            const int idx = static_cast<int>(rng.below(basis.dim()));
            HadamardTester t(b, k);
            const Complex expect = t.bra_ket(idx);
            const std::string bits = basis.bits_string(idx);
            had = std::max(had, std::abs(circuit_expectation(synthesize_hadamard_test(
                                             b, k, bits, 0)) -
                                         expect.real()));
            had = std::max(had, std::abs(circuit_expectation(synthesize_hadamard_test(
                                             b, k, bits, 1)) -
                                         expect.imag()));
        }
        suite.residual_check("circuit-equivalence", res, 1e-10);
        suite.residual_check("circuit-counter-clean", clean, 0.0);
        suite.residual_check("circuit-hadamard", had, 1e-10);
        suite.flag_check("circuit-roundtrip", round_ok, "parse(emit(C)) == C");
    }

    return out;
}

} // namespace jones
