#include "path_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jones {

CoefficientTable::CoefficientTable(int k_in) : k(k_in) {
    if (k < 3)
        throw std::invalid_argument("CoefficientTable: k must be >= 3");
    d = d_value(k);
    lambda.assign(k + 1, 0.0);
    for (int l = 1; l <= k - 1; ++l)
        lambda[l] = std::sin(std::numbers::pi * l / k);
}

PathBasis::PathBasis(int n, int k) : n_(n), k_(k) {
    if (n < 1)
        throw std::invalid_argument("PathBasis: n must be >= 1");
    if (n > 30)
        throw std::invalid_argument("PathBasis: n > 30 exceeds the enumeration budget");
    if (k < 3)
        throw std::invalid_argument("PathBasis: k must be >= 3");

    // Depth-first in step order, left step before right step, gives
    // lexicographic order of the bit strings.
    struct Frame {
        std::uint32_t bits;
        int pos;
        int step;
    };
    std::vector<Frame> stack;
    stack.push_back({0, 1, 0});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.step == n_) {
            paths_.push_back(f.bits);
            endpoint_.push_back(f.pos);
            continue;
        }
        // push right step first so the left branch is explored first
        if (f.pos + 1 <= k_ - 1)
            stack.push_back({f.bits | (std::uint32_t{1} << f.step), f.pos + 1, f.step + 1});
        if (f.pos - 1 >= 1)
            stack.push_back({f.bits, f.pos - 1, f.step + 1});
    }

    blocks_.assign(k_ + 1, {});
    offset_.assign(paths_.size(), 0);
    for (int i = 0; i < dim(); ++i) {
        lookup_.emplace(paths_[i], i);
        offset_[i] = static_cast<int>(blocks_[endpoint_[i]].size());
        blocks_[endpoint_[i]].push_back(i);
    }
}

int PathBasis::index_of(std::uint32_t path) const {
    auto it = lookup_.find(path);
    return it == lookup_.end() ? -1 : it->second;
}

int PathBasis::prefix_pos(std::uint32_t path, int i) const {
    int pos = 1;
    for (int j = 0; j < i - 1; ++j)
        pos += (path >> j & 1) ? 1 : -1;
    return pos;
}

std::string PathBasis::bits_string(std::uint32_t path, int n) {
    std::string s(n, '0');
    for (int j = 0; j < n; ++j)
        if (path >> j & 1)
            s[j] = '1';
    return s;
}

std::string PathBasis::bits_string(int idx) const {
    return bits_string(paths_[idx], n_);
}

std::uint32_t PathBasis::parse_bits(const std::string& bits) {
    if (bits.empty() || bits.size() > 30)
        throw std::invalid_argument("path bits: length must be 1..30");
    std::uint32_t p = 0;
    for (size_t j = 0; j < bits.size(); ++j) {
        if (bits[j] == '1')
            p |= std::uint32_t{1} << j;
        else if (bits[j] != '0')
            throw std::invalid_argument("path bits: expected a 0/1 string");
    }
    return p;
}

std::vector<std::vector<std::uint64_t>> PathBasis::counts(int n, int k) {
    std::vector<std::vector<std::uint64_t>> s(n + 1, std::vector<std::uint64_t>(k + 1, 0));
    s[0][1] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= k - 1; ++j)
            s[i][j] = (j - 1 >= 1 ? s[i - 1][j - 1] : 0) + (j + 1 <= k - 1 ? s[i - 1][j + 1] : 0);
    return s;
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::mul(const Matrix& rhs) const {
    if (cols != rhs.rows)
        throw std::invalid_argument("Matrix::mul: shape mismatch");
    Matrix out(rows, rhs.cols);
    for (int i = 0; i < rows; ++i)
        for (int l = 0; l < cols; ++l) {
            const Complex v = at(i, l);
            if (v == Complex{})
                continue;
            for (int j = 0; j < rhs.cols; ++j)
                out.at(i, j) += v * rhs.at(l, j);
        }
    return out;
}

Matrix Matrix::adjoint() const {
    Matrix out(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            out.at(j, i) = std::conj(at(i, j));
    return out;
}

Complex Matrix::trace() const {
    Complex t;
    for (int i = 0; i < rows && i < cols; ++i)
        t += at(i, i);
    return t;
}

double Matrix::max_abs_diff(const Matrix& rhs) const {
    if (rows != rhs.rows || cols != rhs.cols)
        throw std::invalid_argument("Matrix::max_abs_diff: shape mismatch");
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - rhs.a[i]));
    return m;
}

double Matrix::max_abs() const {
    double m = 0;
    for (const auto& v : a)
        m = std::max(m, std::abs(v));
    return m;
}

BlockOperator BlockOperator::identity(const PathBasis& basis) {
    BlockOperator w;
    w.basis = &basis;
    w.block.resize(basis.k() + 1);
    for (int l = 0; l <= basis.k(); ++l)
        w.block[l] = Matrix::identity(basis.block_dim(l));
    return w;
}

BlockOperator BlockOperator::zero(const PathBasis& basis) {
    BlockOperator w;
    w.basis = &basis;
    w.block.resize(basis.k() + 1);
    for (int l = 0; l <= basis.k(); ++l)
        w.block[l] = Matrix(basis.block_dim(l), basis.block_dim(l));
    return w;
}

BlockOperator BlockOperator::mul(const BlockOperator& rhs) const {
    if (basis != rhs.basis)
        throw std::invalid_argument("BlockOperator::mul: basis mismatch");
    BlockOperator out;
    out.basis = basis;
    out.block.resize(block.size());
    for (size_t l = 0; l < block.size(); ++l)
        out.block[l] = block[l].mul(rhs.block[l]);
    return out;
}

BlockOperator BlockOperator::adjoint() const {
    BlockOperator out;
    out.basis = basis;
    out.block.resize(block.size());
    for (size_t l = 0; l < block.size(); ++l)
        out.block[l] = block[l].adjoint();
    return out;
}

BlockOperator BlockOperator::scaled(Complex s) const {
    BlockOperator out = *this;
    for (auto& m : out.block)
        for (auto& v : m.a)
            v *= s;
    return out;
}

double BlockOperator::max_abs_diff(const BlockOperator& rhs) const {
    double m = 0;
    for (size_t l = 0; l < block.size(); ++l)
        m = std::max(m, block[l].max_abs_diff(rhs.block[l]));
    return m;
}

Complex BlockOperator::entry(int gi, int gj) const {
    const int li = basis->block_of(gi), lj = basis->block_of(gj);
    if (li != lj)
        return {};
    return block[li].at(basis->offset_of(gi), basis->offset_of(gj));
}

BlockOperator phi_E(int i, const PathBasis& basis, const CoefficientTable& ct) {
    if (i < 1 || i > basis.n() - 1)
        throw std::invalid_argument("phi_E: index must satisfy 1 <= i <= n-1");
    BlockOperator w = BlockOperator::zero(basis);
    for (int l = 0; l <= basis.k(); ++l) {
        const auto& idxs = basis.blocks()[l];
        Matrix& m = w.block[l];
        for (int col = 0; col < static_cast<int>(idxs.size()); ++col) {
            const std::uint32_t p = basis.path(idxs[col]);
            const int bi = p >> (i - 1) & 1;
            const int bj = p >> i & 1;
            if (bi == bj)
                continue; // 00 and 11 are annihilated
            const int z = basis.prefix_pos(p, i);
            const double diag = (bi == 0 ? ct.lam(z - 1) : ct.lam(z + 1)) / ct.lam(z);
            m.at(col, col) = diag;
            const double off = std::sqrt(ct.lam(z + 1) * ct.lam(z - 1)) / ct.lam(z);
            if (off != 0.0) {
                const std::uint32_t q = p ^ (std::uint32_t{3} << (i - 1)); // swap 01 <-> 10
                const int qi = basis.index_of(q);
                m.at(basis.offset_of(qi), col) = off;
            }
        }
    }
    return w;
}

BlockOperator phi_sigma(int i, int sign, const PathBasis& basis, const CoefficientTable& ct) {
    const Complex a = unit_A(ct.k);
    const Complex cE = sign > 0 ? a : 1.0 / a;
    const Complex cI = sign > 0 ? 1.0 / a : a;
    BlockOperator w = phi_E(i, basis, ct);
    for (int l = 0; l <= basis.k(); ++l) {
        Matrix& m = w.block[l];
        for (auto& v : m.a)
            v *= cE;
        for (int r = 0; r < m.rows; ++r)
            m.at(r, r) += cI;
    }
    return w;
}

BlockOperator assemble_phi(const BraidWord& braid, const PathBasis& basis,
                           const CoefficientTable& ct) {
    braid.validate();
    BlockOperator acc = BlockOperator::identity(basis);
    for (int g : braid.word)
        acc = phi_sigma(std::abs(g), g > 0 ? 1 : -1, basis, ct).mul(acc);
    return acc;
}

void apply_braid(const BraidWord& braid, const PathBasis& basis, const CoefficientTable& ct,
                 std::vector<Complex>& state) {
    braid.validate();
    if (static_cast<int>(state.size()) != basis.dim())
        throw std::invalid_argument("apply_braid: statevector dimension mismatch");
    const Complex a = unit_A(ct.k);
    for (int g : braid.word) {
        const int i = std::abs(g);
        const Complex cE = g > 0 ? a : 1.0 / a;
        const Complex cI = g > 0 ? 1.0 / a : a;
        for (int idx = 0; idx < basis.dim(); ++idx) {
            const std::uint32_t p = basis.path(idx);
            const int bi = p >> (i - 1) & 1;
            const int bj = p >> i & 1;
            if (bi == bj) {
                state[idx] *= cI; // Phi annihilates, phi contributes A^{-sign}
                continue;
            }
            const int z = basis.prefix_pos(p, i);
            const int partner = basis.index_of(p ^ (std::uint32_t{3} << (i - 1)));
            if (bi != 0) {
                // pattern 10: the 01 member handles the pair when it exists;
                // at z = 1 there is no partner and only the diagonal acts
                if (partner < 0)
                    state[idx] = (cE * ct.lam(z + 1) / ct.lam(z) + cI) * state[idx];
                continue;
            }
            const double diag01 = ct.lam(z - 1) / ct.lam(z);
            const double diag10 = ct.lam(z + 1) / ct.lam(z);
            const double off = std::sqrt(ct.lam(z + 1) * ct.lam(z - 1)) / ct.lam(z);
            if (partner < 0) {
                state[idx] = (cE * diag01 + cI) * state[idx];
                continue;
            }
            const Complex v01 = state[idx];
            const Complex v10 = state[partner];
            state[idx] = (cE * diag01 + cI) * v01 + cE * off * v10;
            state[partner] = cE * off * v01 + (cE * diag10 + cI) * v10;
        }
    }
}

double normalization(const PathBasis& basis, const CoefficientTable& ct) {
    double n = 0;
    for (int l = 1; l <= basis.k() - 1; ++l)
        n += ct.lambda[l] * basis.block_dim(l);
    return n;
}

Complex weighted_trace(const BlockOperator& w, const CoefficientTable& ct) {
    Complex t;
    for (int l = 1; l <= w.basis->k() - 1; ++l)
        t += ct.lambda[l] * w.block[l].trace();
    return t / normalization(*w.basis, ct);
}

} // namespace jones
