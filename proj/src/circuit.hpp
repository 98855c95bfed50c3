#pragma once

#include "braid.hpp"
#include "path_model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace jones {

enum class GateKind { counter_update, local_crossing, phase_prep, hadamard, measure };

const char* gate_kind_name(GateKind k);

// Qubit layout: path qubits 0..n-1 (qubit j holds step j+1), counter qubits
// n..n+c-1 (least significant first), optional test ancilla at n+c.
// Matrix index bit j corresponds to targets[j].
struct Gate {
    GateKind kind;
    std::vector<int> targets;
    std::vector<int> controls; // all-ones controls
    int step = 0;              // counter-update: +1 compute, -1 uncompute
    int modulus = 0;           // counter-update: 2k
    int sign = 0;              // local-crossing: crossing sign
    int gen_index = 0;         // local-crossing: generator index i
    int part = 0;              // phase-prep: 0 = Re variant, 1 = Im variant
    int matrix_id = -1;        // explicit unitary for macro-gates

    bool operator==(const Gate& rhs) const;
};

struct Circuit {
    int path_qubits = 0;
    int counter_qubits = 0;
    int ancilla = 0;   // 0 or 1
    int modulus = 0;   // 2k
    int counter_init = 1;
    std::string input_path; // bit string, empty when unset
    std::vector<Gate> gates;
    std::vector<Matrix> matrices;

    int total_qubits() const { return path_qubits + counter_qubits + ancilla; }
    int ancilla_qubit() const { return path_qubits + counter_qubits; }

    bool operator==(const Circuit& rhs) const;
};

int counter_bits(int k); // ceil(log2(2k))

// The per-crossing counter walk: one controlled +-1 mod 2k update per path
// qubit 1..i-1, reversed and inverted when uncomputing.
std::vector<Gate> counter_walk(int i, int n, int k, bool uncompute);

// Block unitary on (path_i, path_{i+1}, counter): for counter value l in
// 1..k-1 the 4x4 action of A Phi + A^{-1} I (bit patterns 00/11 pick up the
// scalar A^{-sign}); identity on other counter values.
Matrix local_crossing_unitary(int k, int sign, const CoefficientTable& ct);

Circuit synthesize_braid(const BraidWord& braid, int k);

// Ancilla prep, controlled-Q(B) (every gate gains the ancilla as control),
// final Hadamard, measurement. part: 0 = Re, 1 = Im.
Circuit synthesize_hadamard_test(const BraidWord& braid, int k, const std::string& input_path,
                                 int part);

struct CircuitMatrixResult {
    BlockOperator op;
    double max_offblock = 0.0; // largest cross-block matrix element
    double max_leak = 0.0;     // largest amplitude left outside counter=init
};

// Dense product of the gates restricted to (path basis) x (counter = init).
// Throws when the total qubit count exceeds 22.
CircuitMatrixResult circuit_to_matrix(const Circuit& c, const PathBasis& basis);

// Statevector simulation of a Hadamard-test circuit on its declared input;
// returns P(+1) - P(-1) on the measured ancilla.
double circuit_expectation(const Circuit& c);

// Simulates each basis input and reports the largest amplitude found outside
// counter=init at any crossing-block boundary (exactly 0 for a clean walk).
double counter_cleanliness(const Circuit& c, const PathBasis& basis);

// Line-oriented IR; emit is byte-stable, parse(emit(c)) == c.
std::string emit_text(const Circuit& c);
Circuit parse_text(const std::string& text);

} // namespace jones
