#include "tl_diagram.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace jones {

KauffmanDiagram::KauffmanDiagram(std::vector<int> match) : match_(std::move(match)) {}

KauffmanDiagram KauffmanDiagram::identity(int n) {
    if (n < 1)
        throw std::invalid_argument("KauffmanDiagram: n must be >= 1");
    std::vector<int> match(2 * n);
    for (int j = 0; j < n; ++j) {
        match[j] = 2 * n - 1 - j;
        match[2 * n - 1 - j] = j;
    }
    return KauffmanDiagram(std::move(match));
}

KauffmanDiagram KauffmanDiagram::generator(int i, int n) {
    if (i < 1 || i > n - 1)
        throw std::invalid_argument("E_i: index must satisfy 1 <= i <= n-1");
    KauffmanDiagram d = identity(n);
    const int t1 = d.top_point(i - 1), t2 = d.top_point(i);
    const int b1 = d.bottom_point(i - 1), b2 = d.bottom_point(i);
    d.match_[t1] = t2;
    d.match_[t2] = t1;
    d.match_[b1] = b2;
    d.match_[b2] = b1;
    return d;
}

KauffmanDiagram KauffmanDiagram::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    if (static_cast<int>(pairs.size()) != n)
        throw std::invalid_argument("from_pairs: expected n pairs");
    std::vector<int> match(2 * n, -1);
    for (auto [a, b] : pairs) {
        if (a < 0 || b < 0 || a >= 2 * n || b >= 2 * n || a == b || match[a] != -1 || match[b] != -1)
            throw std::invalid_argument("from_pairs: not a perfect matching");
        match[a] = b;
        match[b] = a;
    }
    KauffmanDiagram d{std::move(match)};
    if (!d.non_crossing())
        throw std::invalid_argument("from_pairs: matching is not planar");
    return d;
}

bool KauffmanDiagram::non_crossing() const {
    // Balanced-parenthesis scan in the circular numbering.
    std::vector<int> stack;
    for (int p = 0; p < 2 * n(); ++p) {
        if (match_[p] > p) {
            stack.push_back(p);
        } else {
            if (stack.empty() || stack.back() != match_[p])
                return false;
            stack.pop_back();
        }
    }
    return stack.empty();
}

std::vector<std::pair<int, int>> KauffmanDiagram::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int p = 0; p < 2 * n(); ++p)
        if (match_[p] > p)
            out.emplace_back(p, match_[p]);
    return out;
}

std::string KauffmanDiagram::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto [a, b] : pairs()) {
        if (!first)
            os << " ";
        first = false;
        os << "(" << a + 1 << "," << b + 1 << ")";
    }
    os << "}";
    return os.str();
}

std::pair<KauffmanDiagram, int> KauffmanDiagram::mul(const KauffmanDiagram& a,
                                                     const KauffmanDiagram& b) {
    const int n = a.n();
    if (b.n() != n)
        throw std::invalid_argument("diagram product: strand counts differ");

    // Global nodes: a's points are 0..2n-1, b's are 2n..4n-1. a's bottom
    // column j fuses with b's top column j.
    const int total = 4 * n;
    auto a_bottom = [&](int col) { return 2 * n - 1 - col; };
    auto b_top = [&](int col) { return 2 * n + col; };
    auto b_bottom = [&](int col) { return 2 * n + (2 * n - 1 - col); };
    auto match_of = [&](int v) { return v < 2 * n ? a.match_[v] : 2 * n + b.match_[v - 2 * n]; };

    std::vector<int> fuse(total, -1);
    for (int col = 0; col < n; ++col) {
        fuse[a_bottom(col)] = b_top(col);
        fuse[b_top(col)] = a_bottom(col);
    }

    std::vector<bool> seen(total, false);
    std::vector<int> result(2 * n, -1);

    // Result boundary points in global terms: top col j -> a's top j, bottom
    // col j -> b's bottom j = 4n-1-j.
    auto global_to_result = [&](int v) -> int {
        if (v < n)
            return v;
        const int col = 4 * n - 1 - v;
        return 2 * n - 1 - col;
    };

    for (int start = 0; start < n; ++start) {
        if (seen[start])
            continue;
        // Walk: match edge, then fuse edge, until another boundary point.
        int v = start;
        while (true) {
            seen[v] = true;
            int w = match_of(v);
            seen[w] = true;
            if (fuse[w] == -1) {
                result[global_to_result(start)] = global_to_result(w);
                result[global_to_result(w)] = global_to_result(start);
                break;
            }
            v = fuse[w];
        }
    }
    for (int col = 0; col < n; ++col) {
        const int start = b_bottom(col);
        if (seen[start])
            continue;
        int v = start;
        while (true) {
            seen[v] = true;
            int w = match_of(v);
            seen[w] = true;
            if (fuse[w] == -1) {
                result[global_to_result(start)] = global_to_result(w);
                result[global_to_result(w)] = global_to_result(start);
                break;
            }
            v = fuse[w];
        }
    }

    // Remaining unvisited interior nodes lie on closed loops.
    int loops = 0;
    for (int v0 = 0; v0 < total; ++v0) {
        if (seen[v0] || fuse[v0] == -1)
            continue;
        ++loops;
        int v = v0;
        while (!seen[v]) {
            seen[v] = true;
            int w = match_of(v);
            seen[w] = true;
            v = fuse[w];
        }
    }
    return {KauffmanDiagram(std::move(result)), loops};
}

int KauffmanDiagram::closure_loops() const {
    const int total = 2 * n();
    std::vector<int> closure(total);
    for (int col = 0; col < n(); ++col) {
        closure[top_point(col)] = bottom_point(col);
        closure[bottom_point(col)] = top_point(col);
    }
    std::vector<bool> seen(total, false);
    int loops = 0;
    for (int v0 = 0; v0 < total; ++v0) {
        if (seen[v0])
            continue;
        ++loops;
        int v = v0;
        while (!seen[v]) {
            seen[v] = true;
            const int w = match_[v];
            seen[w] = true;
            v = closure[w];
        }
    }
    return loops;
}

KauffmanDiagram KauffmanDiagram::embed_right() const {
    const int m = n() + 1;
    std::vector<std::pair<int, int>> out;
    auto remap = [&](int p) {
        return p < n() ? p : p + 2; // bottom point 2n-1-col becomes 2m-1-col
    };
    for (auto [a, b] : pairs())
        out.emplace_back(remap(a), remap(b));
    out.emplace_back(m - 1, m); // new vertical strand: top col m-1 to bottom col m-1
    return from_pairs(m, out);
}

TLElement TLElement::identity(int n) {
    return single(KauffmanDiagram::identity(n));
}

TLElement TLElement::generator(int i, int n) {
    return single(KauffmanDiagram::generator(i, n));
}

TLElement TLElement::single(const KauffmanDiagram& d, LaurentPoly c) {
    TLElement x(d.n());
    x.add(d, c);
    return x;
}

LaurentPoly TLElement::coeff(const KauffmanDiagram& d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? LaurentPoly::zero() : it->second;
}

TLElement& TLElement::add(const KauffmanDiagram& d, const LaurentPoly& c) {
    if (d.n() != n_)
        throw std::invalid_argument("TLElement: diagram strand count mismatch");
    if (c.is_zero())
        return *this;
    auto [it, inserted] = terms_.emplace(d, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
    return *this;
}

TLElement& TLElement::operator+=(const TLElement& rhs) {
    if (rhs.n_ != n_)
        throw std::invalid_argument("TLElement: strand count mismatch");
    for (const auto& [d, c] : rhs.terms_)
        add(d, c);
    return *this;
}

TLElement operator*(const TLElement& a, const TLElement& b) {
    if (a.n_ != b.n_)
        throw std::invalid_argument("TLElement: strand count mismatch");
    const LaurentPoly d = LaurentPoly::d_poly();
    TLElement out(a.n_);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            auto [kd, loops] = KauffmanDiagram::mul(ka, kb);
            LaurentPoly c = ca * cb;
            for (int j = 0; j < loops; ++j)
                c = c * d;
            out.add(kd, c);
        }
    }
    return out;
}

TLElement TLElement::scaled(const LaurentPoly& c) const {
    TLElement out(n_);
    if (c.is_zero())
        return out;
    for (const auto& [d, t] : terms_)
        out.add(d, t * c);
    return out;
}

Tangle Tangle::from_braid(const BraidWord& b) {
    b.validate();
    Tangle t;
    t.strands = b.strands;
    for (int g : b.word)
        t.word.push_back({std::abs(g), g > 0 ? 1 : -1});
    return t;
}

Tangle Tangle::plat_tangle(const BraidWord& b) {
    b.validate();
    if (b.strands % 2 != 0)
        throw std::invalid_argument("plat tangle requires an even strand count");
    Tangle t;
    t.strands = b.strands;
    for (int i = 1; i < b.strands; i += 2)
        t.word.push_back({i, 0});
    for (int g : b.word)
        t.word.push_back({std::abs(g), g > 0 ? 1 : -1});
    return t;
}

void Tangle::validate() const {
    if (strands < 1)
        throw std::invalid_argument("tangle: strand count must be >= 1");
    for (const auto& l : word)
        if (l.index < 1 || l.index > strands - 1)
            throw std::invalid_argument("tangle: letter index out of range");
}

TLElement rho_A(const Tangle& t) {
    t.validate();
    const LaurentPoly a = LaurentPoly::monomial(1);
    const LaurentPoly a_inv = LaurentPoly::monomial(-1);
    TLElement acc = TLElement::identity(t.strands);
    for (const auto& l : t.word) {
        TLElement factor(t.strands);
        if (l.kind == 0) {
            factor = TLElement::generator(l.index, t.strands);
        } else {
            const LaurentPoly& ce = l.kind > 0 ? a : a_inv;
            const LaurentPoly& ci = l.kind > 0 ? a_inv : a;
            factor = TLElement::generator(l.index, t.strands).scaled(ce);
            factor += TLElement::identity(t.strands).scaled(ci);
        }
        acc = acc * factor;
    }
    return acc;
}

TLElement rho_A(const BraidWord& b) {
    return rho_A(Tangle::from_braid(b));
}

LaurentPoly markov_trace_scaled(const TLElement& x) {
    LaurentPoly out;
    for (const auto& [d, c] : x.terms()) {
        const int a = d.closure_loops();
        out += c * LaurentPoly::d_poly().pow(static_cast<unsigned>(a - 1));
    }
    return out;
}

Complex markov_trace_value(const TLElement& x, Complex a) {
    const Complex d = LaurentPoly::d_poly().eval(a);
    return markov_trace_scaled(x).eval(a) / cpow_int(d, x.n() - 1);
}

LaurentPoly jones_via_trace(const Tangle& t, int writhe, int max_strands) {
    if (t.strands > max_strands)
        throw limit_error("jones_via_trace: " + std::to_string(t.strands) +
                          " strands exceeds cap of " + std::to_string(max_strands));
    return LaurentPoly::neg_A_pow(3L * writhe) * markov_trace_scaled(rho_A(t));
}

LaurentPoly jones_via_trace(const BraidWord& b, Closure kind, int max_strands) {
    if (kind == Closure::trace)
        return jones_via_trace(Tangle::from_braid(b), b.exponent_sum(), max_strands);
    const int w = LinkDiagram(b, Closure::plat).writhe();
    return jones_via_trace(Tangle::plat_tangle(b), w, max_strands);
}

} // namespace jones
