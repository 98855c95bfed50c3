#include "circuit.hpp"

#include "errors.hpp"
#include "laurent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace jones {

const char* gate_kind_name(GateKind k) {
    switch (k) {
    case GateKind::counter_update: return "counter-update";
    case GateKind::local_crossing: return "local-crossing";
    case GateKind::phase_prep: return "phase-prep";
    case GateKind::hadamard: return "hadamard";
    case GateKind::measure: return "measure";
    }
    return "?";
}

bool Gate::operator==(const Gate& rhs) const {
    return kind == rhs.kind && targets == rhs.targets && controls == rhs.controls &&
           step == rhs.step && modulus == rhs.modulus && sign == rhs.sign &&
           gen_index == rhs.gen_index && part == rhs.part && matrix_id == rhs.matrix_id;
}

bool Circuit::operator==(const Circuit& rhs) const {
    if (path_qubits != rhs.path_qubits || counter_qubits != rhs.counter_qubits ||
        ancilla != rhs.ancilla || modulus != rhs.modulus || counter_init != rhs.counter_init ||
        input_path != rhs.input_path || gates != rhs.gates ||
        matrices.size() != rhs.matrices.size())
        return false;
    for (size_t i = 0; i < matrices.size(); ++i) {
        if (matrices[i].rows != rhs.matrices[i].rows || matrices[i].cols != rhs.matrices[i].cols ||
            matrices[i].a != rhs.matrices[i].a)
            return false;
    }
    return true;
}

int counter_bits(int k) {
    int c = 1;
    while ((1 << c) < 2 * k)
        ++c;
    return c;
}

std::vector<Gate> counter_walk(int i, int n, int k, bool uncompute) {
    if (i < 1 || i > n - 1)
        throw std::invalid_argument("counter_walk: index must satisfy 1 <= i <= n-1");
    const int c = counter_bits(k);
    std::vector<Gate> gates;
    for (int j = 1; j <= i - 1; ++j) {
        Gate g;
        g.kind = GateKind::counter_update;
        g.step = uncompute ? -1 : +1;
        g.modulus = 2 * k;
        g.targets.push_back(j - 1); // path qubit holding step j
        for (int q = 0; q < c; ++q)
            g.targets.push_back(n + q);
        gates.push_back(std::move(g));
    }
    if (uncompute)
        std::reverse(gates.begin(), gates.end());
    return gates;
}

Matrix local_crossing_unitary(int k, int sign, const CoefficientTable& ct) {
    const int c = counter_bits(k);
    const int dim = 1 << (c + 2);
    const Complex a = unit_A(k);
    const Complex cE = sign > 0 ? a : 1.0 / a;
    const Complex cI = sign > 0 ? 1.0 / a : a;

    Matrix m(dim, dim);
    for (int l = 0; l < (1 << c); ++l) {
        const int base = 4 * l;
        if (l >= 1 && l <= k - 1) {
            // patterns 00 and 11: Phi annihilates, leaving the scalar A^{-sign}
            m.at(base + 0, base + 0) = cI;
            m.at(base + 3, base + 3) = cI;
            // patterns 01 (step left then right) and 10: index bit 0 is the
            // earlier step, so "01" sits at index offset 2 and "10" at 1.
            const double d01 = ct.lam(l - 1) / ct.lam(l);
            const double d10 = ct.lam(l + 1) / ct.lam(l);
            const double off = std::sqrt(ct.lam(l - 1) * ct.lam(l + 1)) / ct.lam(l);
            m.at(base + 2, base + 2) = cE * d01 + cI;
            m.at(base + 1, base + 1) = cE * d10 + cI;
            m.at(base + 2, base + 1) = cE * off;
            m.at(base + 1, base + 2) = cE * off;
        } else {
            for (int p = 0; p < 4; ++p)
                m.at(base + p, base + p) = 1.0;
        }
    }
    return m;
}

namespace {

int intern_matrix(Circuit& c, Matrix m) {
    for (size_t i = 0; i < c.matrices.size(); ++i)
        if (c.matrices[i].rows == m.rows && c.matrices[i].a == m.a)
            return static_cast<int>(i);
    c.matrices.push_back(std::move(m));
    return static_cast<int>(c.matrices.size()) - 1;
}

Matrix hadamard_matrix() {
    Matrix m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m.at(0, 0) = s;
    m.at(0, 1) = s;
    m.at(1, 0) = s;
    m.at(1, 1) = -s;
    return m;
}

Matrix phase_prep_matrix(int part) {
    // Column 0 is the prepared state: (|0> + |1>)/sqrt(2) for the Re variant,
    // (|0> - i|1>)/sqrt(2) for the Im variant.
    Matrix m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    if (part == 0)
        return hadamard_matrix();
    m.at(0, 0) = s;
    m.at(0, 1) = s;
    m.at(1, 0) = Complex(0.0, -s);
    m.at(1, 1) = Complex(0.0, s);
    return m;
}

} // namespace

Circuit synthesize_braid(const BraidWord& braid, int k) {
    braid.validate();
    if (k < 3)
        throw std::invalid_argument("synthesize_braid: k must be >= 3");
    const int n = braid.strands;
    const int c = counter_bits(k);
    const CoefficientTable ct(k);

    Circuit out;
    out.path_qubits = n;
    out.counter_qubits = c;
    out.modulus = 2 * k;

    int matrix_pos = -1, matrix_neg = -1;
    for (int g : braid.word) {
        const int i = std::abs(g);
        const int sign = g > 0 ? 1 : -1;
        for (auto& gate : counter_walk(i, n, k, false))
            out.gates.push_back(std::move(gate));
        Gate local;
        local.kind = GateKind::local_crossing;
        local.sign = sign;
        local.gen_index = i;
        local.targets.push_back(i - 1);
        local.targets.push_back(i);
        for (int q = 0; q < c; ++q)
            local.targets.push_back(n + q);
        int& cache = sign > 0 ? matrix_pos : matrix_neg;
        if (cache < 0)
            cache = intern_matrix(out, local_crossing_unitary(k, sign, ct));
        local.matrix_id = cache;
        out.gates.push_back(std::move(local));
        for (auto& gate : counter_walk(i, n, k, true))
            out.gates.push_back(std::move(gate));
    }
    return out;
}

Circuit synthesize_hadamard_test(const BraidWord& braid, int k, const std::string& input_path,
                                 int part) {
    if (static_cast<int>(input_path.size()) != braid.strands)
        throw std::invalid_argument("hadamard test circuit: input path length must equal n");
    Circuit out = synthesize_braid(braid, k);
    out.ancilla = 1;
    out.input_path = input_path;
    const int anc = out.ancilla_qubit();
    for (auto& g : out.gates)
        g.controls.push_back(anc);

    Gate prep;
    prep.kind = GateKind::phase_prep;
    prep.part = part;
    prep.targets.push_back(anc);
    prep.matrix_id = intern_matrix(out, phase_prep_matrix(part));
    out.gates.insert(out.gates.begin(), std::move(prep));

    Gate had;
    had.kind = GateKind::hadamard;
    had.targets.push_back(anc);
    had.matrix_id = intern_matrix(out, hadamard_matrix());
    out.gates.push_back(std::move(had));

    Gate meas;
    meas.kind = GateKind::measure;
    meas.targets.push_back(anc);
    out.gates.push_back(std::move(meas));
    return out;
}

namespace {

// Plain statevector simulator over path + counter (+ ancilla) qubits.
struct StateSim {
    int qubits;
    std::vector<Complex> amp;

    explicit StateSim(int q) : qubits(q), amp(std::size_t{1} << q) {}

    void set_basis(std::uint64_t idx) {
        std::fill(amp.begin(), amp.end(), Complex{});
        amp[idx] = 1.0;
    }

    void apply(const Gate& g, const Circuit& c) {
        if (g.kind == GateKind::measure)
            return;
        std::uint64_t cmask = 0;
        for (int q : g.controls)
            cmask |= std::uint64_t{1} << q;
        if (g.kind == GateKind::counter_update) {
            apply_counter(g, cmask);
            return;
        }
        apply_matrix(c.matrices[g.matrix_id], g.targets, cmask);
    }

    void apply_counter(const Gate& g, std::uint64_t cmask) {
        const int bq = g.targets[0];
        const int cq0 = g.targets[1];
        const int cbits = static_cast<int>(g.targets.size()) - 1;
        const std::uint64_t csel = ((std::uint64_t{1} << cbits) - 1) << cq0;
        std::vector<Complex> out(amp.size());
        for (std::uint64_t idx = 0; idx < amp.size(); ++idx) {
            std::uint64_t to = idx;
            if ((idx & cmask) == cmask) {
                const int l = static_cast<int>((idx & csel) >> cq0);
                if (l < g.modulus) {
                    // a set bit is a step right, so it increments the position
                    const int delta = ((idx >> bq) & 1) ? g.step : -g.step;
                    const int l2 = ((l + delta) % g.modulus + g.modulus) % g.modulus;
                    to = (idx & ~csel) | (static_cast<std::uint64_t>(l2) << cq0);
                }
            }
            out[to] = amp[idx];
        }
        amp.swap(out);
    }

    void apply_matrix(const Matrix& m, const std::vector<int>& targets, std::uint64_t cmask) {
        const int r = static_cast<int>(targets.size());
        const int dim = 1 << r;
        std::uint64_t tmask = 0;
        for (int t : targets)
            tmask |= std::uint64_t{1} << t;
        std::vector<std::uint64_t> spread(dim, 0);
        for (int pat = 0; pat < dim; ++pat)
            for (int j = 0; j < r; ++j)
                if (pat >> j & 1)
                    spread[pat] |= std::uint64_t{1} << targets[j];
        std::vector<Complex> in(dim), v(dim);
        for (std::uint64_t base = 0; base < amp.size(); ++base) {
            if (base & tmask)
                continue;
            if ((base & cmask) != cmask)
                continue;
            for (int pat = 0; pat < dim; ++pat)
                in[pat] = amp[base | spread[pat]];
            for (int row = 0; row < dim; ++row) {
                Complex acc{};
                for (int col = 0; col < dim; ++col)
                    acc += m.at(row, col) * in[col];
                v[row] = acc;
            }
            for (int pat = 0; pat < dim; ++pat)
                amp[base | spread[pat]] = v[pat];
        }
    }
};

std::uint64_t initial_index(const Circuit& c, std::uint32_t path_bits) {
    return static_cast<std::uint64_t>(path_bits) |
           (static_cast<std::uint64_t>(c.counter_init) << c.path_qubits);
}

void check_sim_size(const Circuit& c) {
    if (c.total_qubits() > 22)
        throw limit_error("circuit simulation capped at 22 qubits, got " +
                          std::to_string(c.total_qubits()));
}

} // namespace

CircuitMatrixResult circuit_to_matrix(const Circuit& c, const PathBasis& basis) {
    check_sim_size(c);
    if (basis.n() != c.path_qubits || 2 * basis.k() != c.modulus)
        throw std::invalid_argument("circuit_to_matrix: basis does not match circuit registers");
    CircuitMatrixResult res;
    res.op = BlockOperator::zero(basis);
    std::vector<bool> in_space(std::size_t{1} << c.total_qubits(), false);
    for (int row = 0; row < basis.dim(); ++row)
        in_space[initial_index(c, basis.path(row))] = true;
    StateSim sim(c.total_qubits());
    for (int col = 0; col < basis.dim(); ++col) {
        sim.set_basis(initial_index(c, basis.path(col)));
        for (const auto& g : c.gates)
            sim.apply(g, c);
        for (int row = 0; row < basis.dim(); ++row) {
            const Complex v = sim.amp[initial_index(c, basis.path(row))];
            if (basis.block_of(row) == basis.block_of(col))
                res.op.block[basis.block_of(row)].at(basis.offset_of(row), basis.offset_of(col)) = v;
            else
                res.max_offblock = std::max(res.max_offblock, std::abs(v));
        }
        for (std::size_t idx = 0; idx < sim.amp.size(); ++idx)
            if (!in_space[idx])
                res.max_leak = std::max(res.max_leak, std::abs(sim.amp[idx]));
    }
    return res;
}

double circuit_expectation(const Circuit& c) {
    check_sim_size(c);
    if (c.ancilla != 1 || c.input_path.empty())
        throw std::invalid_argument("circuit_expectation: needs a Hadamard-test circuit");
    StateSim sim(c.total_qubits());
    sim.set_basis(initial_index(c, PathBasis::parse_bits(c.input_path)));
    for (const auto& g : c.gates)
        sim.apply(g, c);
    const std::uint64_t abit = std::uint64_t{1} << c.ancilla_qubit();
    double e = 0;
    for (std::uint64_t idx = 0; idx < sim.amp.size(); ++idx)
        e += (idx & abit ? -1.0 : 1.0) * std::norm(sim.amp[idx]);
    return e;
}

double counter_cleanliness(const Circuit& c, const PathBasis& basis) {
    check_sim_size(c);
    if (c.ancilla != 0)
        throw std::invalid_argument("counter_cleanliness: expects a plain braid circuit");
    const std::uint64_t csel = ((std::uint64_t{1} << c.counter_qubits) - 1) << c.path_qubits;
    const std::uint64_t cinit = static_cast<std::uint64_t>(c.counter_init) << c.path_qubits;
    double worst = 0;
    StateSim sim(c.total_qubits());
    for (int col = 0; col < basis.dim(); ++col) {
        sim.set_basis(initial_index(c, basis.path(col)));
        // consume one crossing block at a time: compute walk, local gate,
        // uncompute walk; the counter must be back on init at each boundary
        size_t gi = 0;
        while (gi < c.gates.size()) {
            while (gi < c.gates.size() && c.gates[gi].kind == GateKind::counter_update &&
                   c.gates[gi].step > 0)
                sim.apply(c.gates[gi++], c);
            if (gi < c.gates.size())
                sim.apply(c.gates[gi++], c); // local crossing
            while (gi < c.gates.size() && c.gates[gi].kind == GateKind::counter_update &&
                   c.gates[gi].step < 0)
                sim.apply(c.gates[gi++], c);
            for (std::uint64_t idx = 0; idx < sim.amp.size(); ++idx)
                if ((idx & csel) != cinit)
                    worst = std::max(worst, std::abs(sim.amp[idx]));
        }
    }
    return worst;
}

std::string emit_text(const Circuit& c) {
    std::ostringstream os;
    os << "jonescirc v1\n";
    os << "registers path=" << c.path_qubits << " counter=" << c.counter_qubits
       << " ancilla=" << c.ancilla << "\n";
    os << "counter init=" << c.counter_init << " mod=" << c.modulus << "\n";
    if (!c.input_path.empty())
        os << "input " << c.input_path << "\n";
    os << "gates " << c.gates.size() << "\n";
    auto list = [&os](const std::vector<int>& v) {
        if (v.empty()) {
            os << "-";
            return;
        }
        for (size_t i = 0; i < v.size(); ++i)
            os << (i ? "," : "") << v[i];
    };
    for (const auto& g : c.gates) {
        os << "gate " << gate_kind_name(g.kind) << " targets=";
        list(g.targets);
        os << " controls=";
        list(g.controls);
        switch (g.kind) {
        case GateKind::counter_update:
            os << " step=" << (g.step > 0 ? "+1" : "-1") << " mod=" << g.modulus;
            break;
        case GateKind::local_crossing:
            os << " i=" << g.gen_index << " sign=" << (g.sign > 0 ? "+1" : "-1")
               << " matrix=" << g.matrix_id;
            break;
        case GateKind::phase_prep:
            os << " part=" << (g.part == 0 ? "re" : "im") << " matrix=" << g.matrix_id;
            break;
        case GateKind::hadamard:
            os << " matrix=" << g.matrix_id;
            break;
        case GateKind::measure:
            break;
        }
        os << "\n";
    }
    os << "matrices " << c.matrices.size() << "\n";
    char buf[128];
    for (size_t mi = 0; mi < c.matrices.size(); ++mi) {
        const Matrix& m = c.matrices[mi];
        int nnz = 0;
        for (const auto& v : m.a)
            if (v != Complex{})
                ++nnz;
        os << "matrix " << mi << " dim=" << m.rows << " nnz=" << nnz << "\n";
        for (int r = 0; r < m.rows; ++r)
            for (int col = 0; col < m.cols; ++col) {
                const Complex v = m.at(r, col);
                if (v == Complex{})
                    continue;
                std::snprintf(buf, sizeof buf, "%d %d %.16e %.16e", r, col, v.real(), v.imag());
                os << buf << "\n";
            }
    }
    os << "end\n";
    return os.str();
}

namespace {

std::vector<int> parse_list(const std::string& s) {
    std::vector<int> out;
    if (s == "-")
        return out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ','))
        out.push_back(std::stoi(tok));
    return out;
}

std::string field(const std::string& line, const std::string& key) {
    const std::string pat = key + "=";
    const size_t at = line.find(pat);
    if (at == std::string::npos)
        throw std::invalid_argument("circuit parse: missing field '" + key + "' in: " + line);
    const size_t start = at + pat.size();
    size_t end = line.find(' ', start);
    if (end == std::string::npos)
        end = line.size();
    return line.substr(start, end - start);
}

} // namespace

Circuit parse_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    Circuit c;
    if (!std::getline(is, line) || line != "jonescirc v1")
        throw std::invalid_argument("circuit parse: bad header");
    if (!std::getline(is, line) || line.rfind("registers ", 0) != 0)
        throw std::invalid_argument("circuit parse: missing registers line");
    c.path_qubits = std::stoi(field(line, "path"));
    c.counter_qubits = std::stoi(field(line, "counter"));
    c.ancilla = std::stoi(field(line, "ancilla"));
    if (!std::getline(is, line) || line.rfind("counter ", 0) != 0)
        throw std::invalid_argument("circuit parse: missing counter line");
    c.counter_init = std::stoi(field(line, "init"));
    c.modulus = std::stoi(field(line, "mod"));
    if (!std::getline(is, line))
        throw std::invalid_argument("circuit parse: truncated");
    if (line.rfind("input ", 0) == 0) {
        c.input_path = line.substr(6);
        if (!std::getline(is, line))
            throw std::invalid_argument("circuit parse: truncated");
    }
    if (line.rfind("gates ", 0) != 0)
        throw std::invalid_argument("circuit parse: missing gates line");
    const int ngates = std::stoi(line.substr(6));
    for (int i = 0; i < ngates; ++i) {
        if (!std::getline(is, line) || line.rfind("gate ", 0) != 0)
            throw std::invalid_argument("circuit parse: expected gate line");
        std::istringstream ls(line);
        std::string word, kind;
        ls >> word >> kind;
        Gate g;
        if (kind == "counter-update") {
            g.kind = GateKind::counter_update;
            g.step = std::stoi(field(line, "step"));
            g.modulus = std::stoi(field(line, "mod"));
        } else if (kind == "local-crossing") {
            g.kind = GateKind::local_crossing;
            g.gen_index = std::stoi(field(line, "i"));
            g.sign = std::stoi(field(line, "sign"));
            g.matrix_id = std::stoi(field(line, "matrix"));
        } else if (kind == "phase-prep") {
            g.kind = GateKind::phase_prep;
            g.part = field(line, "part") == "im" ? 1 : 0;
            g.matrix_id = std::stoi(field(line, "matrix"));
        } else if (kind == "hadamard") {
            g.kind = GateKind::hadamard;
            g.matrix_id = std::stoi(field(line, "matrix"));
        } else if (kind == "measure") {
            g.kind = GateKind::measure;
        } else {
            throw std::invalid_argument("circuit parse: unknown gate kind '" + kind + "'");
        }
        g.targets = parse_list(field(line, "targets"));
        g.controls = parse_list(field(line, "controls"));
        c.gates.push_back(std::move(g));
    }
    if (!std::getline(is, line) || line.rfind("matrices ", 0) != 0)
        throw std::invalid_argument("circuit parse: missing matrices line");
    const int nmat = std::stoi(line.substr(9));
    for (int mi = 0; mi < nmat; ++mi) {
        if (!std::getline(is, line) || line.rfind("matrix ", 0) != 0)
            throw std::invalid_argument("circuit parse: expected matrix header");
        const int dim = std::stoi(field(line, "dim"));
        const int nnz = std::stoi(field(line, "nnz"));
        Matrix m(dim, dim);
        for (int e = 0; e < nnz; ++e) {
            if (!std::getline(is, line))
                throw std::invalid_argument("circuit parse: truncated matrix");
            std::istringstream es(line);
            int r, col;
            double re, im;
            if (!(es >> r >> col >> re >> im))
                throw std::invalid_argument("circuit parse: bad matrix entry");
            m.at(r, col) = Complex(re, im);
        }
        c.matrices.push_back(std::move(m));
    }
    if (!std::getline(is, line) || line != "end")
        throw std::invalid_argument("circuit parse: missing end marker");
    return c;
}

} // namespace jones
