#pragma once

#include "braid.hpp"
#include "laurent.hpp"
#include "path_model.hpp"
#include "rng.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace jones {

enum class EstimatorMode { exact_expectation, bernoulli_sampled };

EstimatorMode mode_from_string(const std::string& s); // "exact" | "sampled"
const char* mode_name(EstimatorMode m);

struct EstimatorConfig {
    double epsilon = 0.1;
    double delta = 0.01;
    std::uint64_t seed = 0;
    EstimatorMode mode = EstimatorMode::bernoulli_sampled;

    void validate() const; // throws unless 0 < eps <= 1 and 0 < delta < 1
};

struct ApproxResult {
    Complex estimate;
    std::uint64_t samples_per_part = 0; // 0 in exact-expectation mode
    double mean_re = 0.0;               // raw mean of the x_j
    double mean_im = 0.0;               // raw mean of the y_j
    Complex rescale;                    // estimate = rescale * (mean_re + i*mean_im)
    int writhe = 0;
    double envelope = 0.0; // epsilon * |rescale|: the guaranteed accuracy radius
    std::optional<Complex> reference;   // exact value, when requested
};

// Per-part repetition count ceil((2/eps^2) ln(4/delta)): Hoeffding plus a
// union bound over the real and imaginary parts gives
// P(|mean - expectation| > eps for either part) <= delta.
std::uint64_t plan_samples(const EstimatorConfig& cfg);

// One weighted path draw: endpoint block l with probability
// lambda_l |P_{n,k,l}| / N, then a uniform path in the block by reverse
// dynamic programming with exact integer branch ratios.
std::uint32_t sample_weighted_path(const PathBasis& basis, const CoefficientTable& ct,
                                   const std::vector<std::vector<std::uint64_t>>& counts,
                                   SplitMix64& rng);

// Assembles phi(B) once and serves Hadamard-test values and samples for it.
class HadamardTester {
  public:
    HadamardTester(const BraidWord& braid, int k);

    const PathBasis& basis() const { return basis_; }
    const CoefficientTable& coeffs() const { return ct_; }

    Complex bra_ket(int path_index) const; // <p|phi(B)|p>
    Complex alpha_expectation() const;     // <alpha|phi(B)|alpha> for alpha = 1010...
    Complex weighted_trace_value() const;  // Tr_n(phi(B))
    // +1/-1 with mean Re or Im of <p|phi(B)|p>; throws if the implied
    // probability leaves [0,1] by more than 1e-9 (a unitarity bug).
    int sample(int path_index, bool imaginary_part, SplitMix64& rng) const;

  private:
    PathBasis basis_;
    CoefficientTable ct_;
    BlockOperator op_;
};

// Convenience single-shot form: exact mode returns Re or Im of <p|phi(B)|p>,
// sampled mode returns a +1/-1 draw with that expectation.
double hadamard_test(const BraidWord& braid, int k, std::uint32_t path, bool imaginary_part,
                     EstimatorMode mode, SplitMix64& rng);

// Approximate-Jones-Trace-Closure: r averages Hadamard-test samples over
// freshly drawn weighted paths; output (-A)^{3w} d^{n-1} r.
ApproxResult approx_jones_trace(const BraidWord& braid, int k, const EstimatorConfig& cfg,
                                bool want_reference = true);

// Approximate-Jones-Plat-Closure: r estimates <alpha|phi(B)|alpha>; output
// (-A)^{3w} d^{3n/2-1} lambda_1 r / N. Requires even n.
ApproxResult approx_jones_plat(const BraidWord& braid, int k, const EstimatorConfig& cfg,
                               bool want_reference = true);

// Deterministic reference value via the weighted block trace (trace closure)
// or the exact alpha expectation (plat closure).
Complex exact_reference(const BraidWord& braid, Closure kind, int k);

} // namespace jones
