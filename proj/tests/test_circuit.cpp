#include "circuit.hpp"
#include "estimator.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace jones;

TEST_CASE("counter walk shape") {
    CHECK(counter_walk(1, 4, 5, false).empty());
    const auto walk = counter_walk(3, 4, 5, false);
    REQUIRE(walk.size() == 2);
    CHECK(walk[0].targets[0] == 0);
    CHECK(walk[1].targets[0] == 1);
    CHECK(walk[0].modulus == 10);
    const auto undo = counter_walk(3, 4, 5, true);
    CHECK(undo[0].targets[0] == 1); // reversed order
    CHECK(undo[0].step == -1);
}

TEST_CASE("counter walk composes to the identity") {
    // a circuit holding only a compute+uncompute walk acts as the identity
    const int n = 4, k = 5;
    Circuit c;
    c.path_qubits = n;
    c.counter_qubits = counter_bits(k);
    c.modulus = 2 * k;
    for (auto& g : counter_walk(3, n, k, false))
        c.gates.push_back(g);
    for (auto& g : counter_walk(3, n, k, true))
        c.gates.push_back(g);
    PathBasis basis(n, k);
    const auto res = circuit_to_matrix(c, basis);
    CHECK(res.op.max_abs_diff(BlockOperator::identity(basis)) < 1e-14);
    CHECK(res.max_offblock == 0.0);
    CHECK(res.max_leak < 1e-12);
}

TEST_CASE("local crossing gate is unitary") {
    for (int k = 3; k <= 8; ++k) {
        CoefficientTable ct(k);
        for (int sign : {+1, -1}) {
            const Matrix u = local_crossing_unitary(k, sign, ct);
            const Matrix prod = u.mul(u.adjoint());
            CHECK(prod.max_abs_diff(Matrix::identity(u.rows)) < 1e-12);
        }
        const Matrix up = local_crossing_unitary(k, +1, ct);
        const Matrix dn = local_crossing_unitary(k, -1, ct);
        CHECK(dn.max_abs_diff(up.adjoint()) < 1e-14);
    }

    // l=1 sector: the 01 pattern holds the bare scalar A^{-1}, the 10 pattern
    // A d + A^{-1} = -A^3
    CoefficientTable ct(5);
    const Matrix u = local_crossing_unitary(5, +1, ct);
    const Complex a = unit_A(5);
    CHECK(std::abs(u.at(4 + 2, 4 + 2) - 1.0 / a) < 1e-13);
    CHECK(std::abs(u.at(4 + 1, 4 + 1) - (-a * a * a)) < 1e-12);
    CHECK(std::abs(u.at(4 + 2, 4 + 1)) < 1e-13);
}

TEST_CASE("synthesize_braid structure") {
    CHECK(synthesize_braid(BraidWord{3, {}}, 5).gates.empty());

    const Circuit c = synthesize_braid(BraidWord{2, {1, 1, 1}}, 5);
    CHECK(c.gates.size() == 3); // i=1 needs no walk
    for (const auto& g : c.gates)
        CHECK(g.kind == GateKind::local_crossing);

    const BraidWord b{4, {1, -2, 3, 2, -1}};
    const Circuit c2 = synthesize_braid(b, 5);
    CHECK(c2.gates.size() <= 5 * (2 * 3 + 1));
    for (const auto& g : c2.gates)
        CHECK(static_cast<int>(g.targets.size()) <= c2.counter_qubits + 2);
}

TEST_CASE("circuit matches the direct representation") {
    // all single-generator braids
    for (int k : {3, 4, 5}) {
        CoefficientTable ct(k);
        for (int n = 2; n <= 4; ++n) {
            PathBasis basis(n, k);
            for (int i = 1; i <= n - 1; ++i)
                for (int sign : {+1, -1}) {
                    const BraidWord b{n, {sign * i}};
                    const auto res = circuit_to_matrix(synthesize_braid(b, k), basis);
                    CHECK(res.op.max_abs_diff(phi_sigma(i, sign, basis, ct)) < 1e-10);
                    CHECK(res.max_offblock < 1e-12);
                    CHECK(res.max_leak < 1e-10);
                }
        }
    }

    // random braids
    SplitMix64 rng(71);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(3));
        const int k = 3 + static_cast<int>(rng.below(3));
        const BraidWord b = testutil::random_braid(rng, n, 4);
        PathBasis basis(n, k);
        CoefficientTable ct(k);
        const auto res = circuit_to_matrix(synthesize_braid(b, k), basis);
        CHECK(res.op.max_abs_diff(assemble_phi(b, basis, ct)) < 1e-10);
    }

    // braid followed by its inverse: identity on the path space
    {
        BraidWord b{3, {1, -2, 2}};
        BraidWord both = b;
        const BraidWord inv = b.inverse();
        both.word.insert(both.word.end(), inv.word.begin(), inv.word.end());
        PathBasis basis(3, 5);
        const auto res = circuit_to_matrix(synthesize_braid(both, 5), basis);
        CHECK(res.op.max_abs_diff(BlockOperator::identity(basis)) < 1e-10);
    }
}

TEST_CASE("counter returns to init after every crossing block") {
    SplitMix64 rng(73);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(3));
        const int k = 3 + static_cast<int>(rng.below(3));
        const BraidWord b = testutil::random_braid(rng, n, 4);
        PathBasis basis(n, k);
        CHECK(counter_cleanliness(synthesize_braid(b, k), basis) < 1e-14);
    }
}

TEST_CASE("hadamard test circuits") {
    // empty braid, Re part: P(+1) = 1
    {
        const Circuit c = synthesize_hadamard_test(BraidWord{2, {}}, 5, "10", 0);
        CHECK(circuit_expectation(c) == doctest::Approx(1.0).epsilon(1e-12));
    }

    // circuit expectation matches the analytic inner product
    SplitMix64 rng(79);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(2));
        const int k = 3 + static_cast<int>(rng.below(3));
        const BraidWord b = testutil::random_braid(rng, n, 3);
        HadamardTester t(b, k);
        const int idx = static_cast<int>(rng.below(t.basis().dim()));
        const std::string bits = t.basis().bits_string(idx);
        const Complex expect = t.bra_ket(idx);
        const double re = circuit_expectation(synthesize_hadamard_test(b, k, bits, 0));
        const double im = circuit_expectation(synthesize_hadamard_test(b, k, bits, 1));
        CHECK(std::abs(re - expect.real()) < 1e-10);
        CHECK(std::abs(im - expect.imag()) < 1e-10);
    }

    // Im part of B and of B^{-1} are negated
    for (int trial = 0; trial < 5; ++trial) {
        const BraidWord b = testutil::random_braid(rng, 3, 3);
        PathBasis basis(3, 5);
        const int idx = static_cast<int>(rng.below(basis.dim()));
        const std::string bits = basis.bits_string(idx);
        const double im_f = circuit_expectation(synthesize_hadamard_test(b, 5, bits, 1));
        const double im_b =
            circuit_expectation(synthesize_hadamard_test(b.inverse(), 5, bits, 1));
        CHECK(std::abs(im_f + im_b) < 1e-10);
    }
}

TEST_CASE("text emission round-trips") {
    // header-only document for the empty circuit
    Circuit empty = synthesize_braid(BraidWord{3, {}}, 5);
    const std::string text = emit_text(empty);
    CHECK(text.find("registers path=3 counter=4 ancilla=0") != std::string::npos);
    CHECK(text.find("gates 0") != std::string::npos);
    CHECK(parse_text(text) == empty);

    // counter-update lines carry the modulus 2k
    const Circuit c = synthesize_braid(BraidWord{4, {3, -2}}, 5);
    const std::string t2 = emit_text(c);
    CHECK(t2.find("counter-update") != std::string::npos);
    CHECK(t2.find("mod=10") != std::string::npos);
    CHECK(parse_text(t2) == c);
    CHECK(emit_text(parse_text(t2)) == t2); // byte-stable

    // hadamard-test circuits round-trip too
    const Circuit h = synthesize_hadamard_test(BraidWord{2, {1, 1}}, 4, "10", 1);
    CHECK(parse_text(emit_text(h)) == h);
    CHECK(emit_text(h).find("input 10") != std::string::npos);
}
