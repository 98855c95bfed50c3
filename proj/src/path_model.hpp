#pragma once

#include "braid.hpp"
#include "laurent.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace jones {

// lambda_l = sin(pi l / k) for l in 1..k-1, zero outside, and the derived
// local coefficients of the path representation. d = 2cos(pi/k).
struct CoefficientTable {
    explicit CoefficientTable(int k); // throws if k < 3

    int k;
    double d;
    std::vector<double> lambda; // index 0..k, lambda[0] = lambda[k] = 0

    double lam(int l) const { return l < 0 || l > k ? 0.0 : lambda[l]; }
    // Local max/min weights; a = c and b = d are real here.
    double a(int l) const { return std::sqrt(lam(l + 1) / lam(l)); }
    double b(int l) const { return std::sqrt(lam(l - 1) / lam(l)); }
    double c(int l) const { return a(l); }
    double dcoef(int l) const { return b(l); }
};

// The admissible n-step paths on the line graph with k-1 vertices: bit j set
// means step j+1 moves right. Paths start at vertex 1 and stay in 1..k-1.
// Basis order is lexicographic in the bit string; the basis is partitioned
// into blocks by endpoint.
class PathBasis {
  public:
    PathBasis(int n, int k); // throws if n < 1, n > 30 or k < 3

    int n() const { return n_; }
    int k() const { return k_; }
    int dim() const { return static_cast<int>(paths_.size()); }

    std::uint32_t path(int idx) const { return paths_[idx]; }
    int endpoint(int idx) const { return endpoint_[idx]; }
    int index_of(std::uint32_t path) const; // -1 if not admissible
    int block_of(int idx) const { return endpoint_[idx]; }
    int offset_of(int idx) const { return offset_[idx]; }

    // blocks()[l] lists global basis indices with endpoint l (empty when the
    // parity of l does not match n+1).
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int block_dim(int l) const { return static_cast<int>(blocks_[l].size()); }

    // Vertex reached after the first i-1 steps (i in 1..n+1); z_1 = 1.
    int prefix_pos(std::uint32_t path, int i) const;

    std::string bits_string(int idx) const;
    static std::string bits_string(std::uint32_t path, int n);
    static std::uint32_t parse_bits(const std::string& bits); // throws on non-binary

    // S[i][j] = number of i-step paths from vertex 1 to vertex j, 0 <= i <= n,
    // 0 <= j <= k.
    static std::vector<std::vector<std::uint64_t>> counts(int n, int k);

  private:
    int n_, k_;
    std::vector<std::uint32_t> paths_;
    std::vector<int> endpoint_;
    std::vector<int> offset_;
    std::vector<std::vector<int>> blocks_;
    std::unordered_map<std::uint32_t, int> lookup_;
};

// Small dense complex matrix, row-major.
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<Complex> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    static Matrix identity(int n);

    Complex& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    Complex at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    Matrix mul(const Matrix& rhs) const;
    Matrix adjoint() const;
    Complex trace() const;
    double max_abs_diff(const Matrix& rhs) const;
    double max_abs() const;
};

// A complex operator on the path space stored block-diagonally by endpoint;
// operators in the image of the representation never mix blocks.
struct BlockOperator {
    const PathBasis* basis = nullptr;
    std::vector<Matrix> block; // indexed by endpoint l, 0..k

    static BlockOperator identity(const PathBasis& basis);
    static BlockOperator zero(const PathBasis& basis);

    BlockOperator mul(const BlockOperator& rhs) const;
    BlockOperator adjoint() const;
    BlockOperator scaled(Complex s) const;
    double max_abs_diff(const BlockOperator& rhs) const;
    Complex entry(int gi, int gj) const; // 0 for cross-block entries
};

// Phi_i: the path-model image of E_i; acts on bits (i, i+1) through the
// lambda ratios at z_i, annihilating the 00 and 11 patterns.
BlockOperator phi_E(int i, const PathBasis& basis, const CoefficientTable& ct);

// phi(sigma_i^{sign}) = A Phi_i + A^{-1} I for sign +1, its adjoint for -1.
BlockOperator phi_sigma(int i, int sign, const PathBasis& basis, const CoefficientTable& ct);

// The full unitary for a braid word: letters act on a state in reading order,
// i.e. the matrix is phi(g_m) ... phi(g_1).
BlockOperator assemble_phi(const BraidWord& braid, const PathBasis& basis,
                           const CoefficientTable& ct);

// In-place application of the braid unitary to a statevector indexed by the
// basis. Each letter touches only amplitude pairs related by a 01/10 swap.
void apply_braid(const BraidWord& braid, const PathBasis& basis, const CoefficientTable& ct,
                 std::vector<Complex>& state);

// Tr_n(W) = (1/N) sum_l lambda_l Tr(W|_l) with N = sum_l lambda_l dim(H_l).
Complex weighted_trace(const BlockOperator& w, const CoefficientTable& ct);
double normalization(const PathBasis& basis, const CoefficientTable& ct);

} // namespace jones
