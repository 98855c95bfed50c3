#include "estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace jones {

EstimatorMode mode_from_string(const std::string& s) {
    if (s == "exact")
        return EstimatorMode::exact_expectation;
    if (s == "sampled")
        return EstimatorMode::bernoulli_sampled;
    throw std::invalid_argument("mode must be 'exact' or 'sampled', got '" + s + "'");
}

const char* mode_name(EstimatorMode m) {
    return m == EstimatorMode::exact_expectation ? "exact" : "sampled";
}

void EstimatorConfig::validate() const {
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("estimator: epsilon must be in (0, 1]");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("estimator: delta must be in (0, 1)");
}

std::uint64_t plan_samples(const EstimatorConfig& cfg) {
    cfg.validate();
    return static_cast<std::uint64_t>(
        std::ceil(2.0 / (cfg.epsilon * cfg.epsilon) * std::log(4.0 / cfg.delta)));
}

std::uint32_t sample_weighted_path(const PathBasis& basis, const CoefficientTable& ct,
                                   const std::vector<std::vector<std::uint64_t>>& counts,
                                   SplitMix64& rng) {
    const int n = basis.n();
    const int k = basis.k();

    // Endpoint block: Pr(l) = lambda_l S[n][l] / N.
    double total = 0;
    for (int l = 1; l <= k - 1; ++l)
        total += ct.lambda[l] * static_cast<double>(counts[n][l]);
    double u = rng.uniform01() * total;
    int ell = -1;
    for (int l = 1; l <= k - 1; ++l) {
        const double w = ct.lambda[l] * static_cast<double>(counts[n][l]);
        if (w == 0)
            continue;
        ell = l;
        u -= w;
        if (u < 0)
            break;
    }

    // Uniform path in the block, sites chosen in reverse order with branch
    // ratio S[j-1][l-1] : S[j-1][l+1].
    std::uint32_t path = 0;
    int pos = ell;
    for (int j = n; j >= 1; --j) {
        const std::uint64_t w_down = pos - 1 >= 1 ? counts[j - 1][pos - 1] : 0;
        const std::uint64_t w_up = pos + 1 <= k - 1 ? counts[j - 1][pos + 1] : 0;
        int prev;
        if (w_down + w_up == 0)
            throw std::logic_error("sample_weighted_path: stranded walk");
        if (w_down == 0)
            prev = pos + 1;
        else if (w_up == 0)
            prev = pos - 1;
        else
            prev = rng.below(w_down + w_up) < w_down ? pos - 1 : pos + 1;
        if (prev < pos)
            path |= std::uint32_t{1} << (j - 1); // step j moved right
        pos = prev;
    }
    return path;
}

HadamardTester::HadamardTester(const BraidWord& braid, int k)
    : basis_(braid.strands, k), ct_(k), op_(assemble_phi(braid, basis_, ct_)) {}

Complex HadamardTester::bra_ket(int path_index) const {
    return op_.entry(path_index, path_index);
}

Complex HadamardTester::alpha_expectation() const {
    std::uint32_t alpha = 0;
    for (int j = 0; j < basis_.n(); j += 2)
        alpha |= std::uint32_t{1} << j;
    const int idx = basis_.index_of(alpha);
    if (idx < 0)
        throw std::logic_error("alpha state 1010... is not admissible");
    return op_.entry(idx, idx);
}

Complex HadamardTester::weighted_trace_value() const {
    return weighted_trace(op_, ct_);
}

int HadamardTester::sample(int path_index, bool imaginary_part, SplitMix64& rng) const {
    const Complex v = bra_ket(path_index);
    const double part = imaginary_part ? v.imag() : v.real();
    const double p = (1.0 + part) / 2.0;
    if (p < -1e-9 || p > 1.0 + 1e-9)
        throw std::logic_error("hadamard test: probability outside [0,1]; unitarity violated");
    return rng.uniform01() < p ? 1 : -1;
}

double hadamard_test(const BraidWord& braid, int k, std::uint32_t path, bool imaginary_part,
                     EstimatorMode mode, SplitMix64& rng) {
    HadamardTester t(braid, k);
    const int idx = t.basis().index_of(path);
    if (idx < 0)
        throw std::invalid_argument("hadamard_test: path is not in the basis");
    if (mode == EstimatorMode::exact_expectation) {
        const Complex v = t.bra_ket(idx);
        return imaginary_part ? v.imag() : v.real();
    }
    return t.sample(idx, imaginary_part, rng);
}

namespace {

ApproxResult finish(Complex rescale, int writhe, Complex raw, std::uint64_t samples,
                    const EstimatorConfig& cfg, std::optional<Complex> reference) {
    ApproxResult r;
    r.samples_per_part = samples;
    r.mean_re = raw.real();
    r.mean_im = raw.imag();
    r.rescale = rescale;
    r.writhe = writhe;
    r.estimate = rescale * raw;
    r.envelope = cfg.epsilon * std::abs(rescale);
    r.reference = reference;
    return r;
}

} // namespace

ApproxResult approx_jones_trace(const BraidWord& braid, int k, const EstimatorConfig& cfg,
                                bool want_reference) {
    cfg.validate();
    HadamardTester tester(braid, k);
    const CoefficientTable& ct = tester.coeffs();
    const int w = braid.exponent_sum(); // trace closure: all strands run downward
    const Complex rescale =
        cpow_int(-unit_A(k), 3L * w) * cpow_int(Complex(ct.d, 0.0), braid.strands - 1);

    std::optional<Complex> reference;
    if (want_reference)
        reference = rescale * tester.weighted_trace_value();

    if (cfg.mode == EstimatorMode::exact_expectation) {
        // The analytic expectation of the sampling loop is the weighted trace.
        return finish(rescale, w, tester.weighted_trace_value(), 0, cfg, reference);
    }

    const std::uint64_t reps = plan_samples(cfg);
    const auto counts = PathBasis::counts(braid.strands, k);
    long sum_x = 0, sum_y = 0;
    for (std::uint64_t j = 0; j < reps; ++j) {
        SplitMix64 rng = SplitMix64::stream(cfg.seed, j);
        const std::uint32_t p = sample_weighted_path(tester.basis(), ct, counts, rng);
        sum_x += tester.sample(tester.basis().index_of(p), false, rng);
    }
    for (std::uint64_t j = 0; j < reps; ++j) {
        SplitMix64 rng = SplitMix64::stream(cfg.seed, reps + j);
        const std::uint32_t p = sample_weighted_path(tester.basis(), ct, counts, rng);
        sum_y += tester.sample(tester.basis().index_of(p), true, rng);
    }
    const Complex r(static_cast<double>(sum_x) / reps, static_cast<double>(sum_y) / reps);
    return finish(rescale, w, r, reps, cfg, reference);
}

ApproxResult approx_jones_plat(const BraidWord& braid, int k, const EstimatorConfig& cfg,
                               bool want_reference) {
    cfg.validate();
    if (braid.strands % 2 != 0)
        throw std::invalid_argument("plat closure requires an even strand count");
    HadamardTester tester(braid, k);
    const CoefficientTable& ct = tester.coeffs();
    const int n = braid.strands;
    const int w = LinkDiagram(braid, Closure::plat).writhe();
    const double nfac = normalization(tester.basis(), ct);
    const Complex rescale = cpow_int(-unit_A(k), 3L * w) *
                            cpow_int(Complex(ct.d, 0.0), 3L * n / 2 - 1) * ct.lambda[1] / nfac;

    const Complex v = tester.alpha_expectation();
    std::optional<Complex> reference;
    if (want_reference)
        reference = rescale * v;

    if (cfg.mode == EstimatorMode::exact_expectation)
        return finish(rescale, w, v, 0, cfg, reference);

    const std::uint64_t reps = plan_samples(cfg);
    const double p_re = (1.0 + v.real()) / 2.0;
    const double p_im = (1.0 + v.imag()) / 2.0;
    if (p_re < -1e-9 || p_re > 1.0 + 1e-9 || p_im < -1e-9 || p_im > 1.0 + 1e-9)
        throw std::logic_error("hadamard test: probability outside [0,1]; unitarity violated");
    long sum_x = 0, sum_y = 0;
    for (std::uint64_t j = 0; j < reps; ++j) {
        SplitMix64 rng = SplitMix64::stream(cfg.seed, j);
        sum_x += rng.uniform01() < p_re ? 1 : -1;
    }
    for (std::uint64_t j = 0; j < reps; ++j) {
        SplitMix64 rng = SplitMix64::stream(cfg.seed, reps + j);
        sum_y += rng.uniform01() < p_im ? 1 : -1;
    }
    const Complex r(static_cast<double>(sum_x) / reps, static_cast<double>(sum_y) / reps);
    return finish(rescale, w, r, reps, cfg, reference);
}

Complex exact_reference(const BraidWord& braid, Closure kind, int k) {
    EstimatorConfig cfg;
    cfg.mode = EstimatorMode::exact_expectation;
    if (kind == Closure::trace)
        return approx_jones_trace(braid, k, cfg, false).estimate;
    return approx_jones_plat(braid, k, cfg, false).estimate;
}

} // namespace jones
