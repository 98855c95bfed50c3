#pragma once

#include "braid.hpp"
#include "laurent.hpp"

#include <map>
#include <utility>
#include <vector>

namespace jones {

inline constexpr int kDefaultTlStrandCap = 10;

// A Kauffman n-diagram: a non-crossing perfect matching on 2n boundary points
// numbered circularly, top row left to right as 0..n-1 and bottom row right to
// left as n..2n-1 (so bottom column j is point 2n-1-j). Non-crossing in this
// order is exactly balanced parenthesization.
class KauffmanDiagram {
  public:
    static KauffmanDiagram identity(int n);
    static KauffmanDiagram generator(int i, int n); // E_i, 1 <= i <= n-1
    static KauffmanDiagram from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);

    int n() const { return static_cast<int>(match_.size()) / 2; }
    int partner(int p) const { return match_[p]; }
    int top_point(int col) const { return col; }                // col 0..n-1
    int bottom_point(int col) const { return 2 * n() - 1 - col; }

    bool non_crossing() const;
    std::vector<std::pair<int, int>> pairs() const; // sorted (lo, hi) list
    std::string str() const;

    bool operator==(const KauffmanDiagram& rhs) const { return match_ == rhs.match_; }
    bool operator<(const KauffmanDiagram& rhs) const { return match_ < rhs.match_; }

    // Stack a on top of b, fuse, and drop closed loops; returns the fused
    // diagram and the number of loops dropped (the product is d^loops * k3).
    static std::pair<KauffmanDiagram, int> mul(const KauffmanDiagram& a, const KauffmanDiagram& b);

    // Loop count of the trace closure (top col j joined to bottom col j).
    int closure_loops() const;

    // View a diagram on n strands inside n+1 strands (new vertical strand on
    // the right).
    KauffmanDiagram embed_right() const;

  private:
    explicit KauffmanDiagram(std::vector<int> match);
    std::vector<int> match_; // involution without fixed points
};

// Formal linear combination of Kauffman diagrams with LaurentPoly coefficients.
class TLElement {
  public:
    explicit TLElement(int n) : n_(n) {}
    static TLElement zero(int n) { return TLElement(n); }
    static TLElement identity(int n);
    static TLElement generator(int i, int n);
    static TLElement single(const KauffmanDiagram& d, LaurentPoly c = LaurentPoly::one());

    int n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<KauffmanDiagram, LaurentPoly>& terms() const { return terms_; }
    LaurentPoly coeff(const KauffmanDiagram& d) const;

    TLElement& add(const KauffmanDiagram& d, const LaurentPoly& c);
    TLElement& operator+=(const TLElement& rhs);
    friend TLElement operator+(TLElement a, const TLElement& b) { return a += b; }
    friend TLElement operator*(const TLElement& a, const TLElement& b); // throws on mismatched n
    TLElement scaled(const LaurentPoly& c) const;

    bool operator==(const TLElement& rhs) const { return n_ == rhs.n_ && terms_ == rhs.terms_; }

  private:
    int n_;
    std::map<KauffmanDiagram, LaurentPoly> terms_;
};

// A braid in which some crossings have been replaced by capcups.
struct Tangle {
    struct Letter {
        int index; // 1..n-1
        int kind;  // +1 positive crossing, -1 negative crossing, 0 capcup
    };
    int strands = 1;
    std::vector<Letter> word;

    static Tangle from_braid(const BraidWord& b);
    // Capcups at 1,3,...,n-1 followed by the braid letters; its trace closure
    // is isotopic to the braid's plat closure.
    static Tangle plat_tangle(const BraidWord& b);

    void validate() const;
};

// rho_A(sigma_i) = A E_i + A^{-1} 1, rho_A(sigma_i^{-1}) = A^{-1} E_i + A 1,
// capcups map to E_i; letters multiply left to right (top to bottom).
TLElement rho_A(const Tangle& t);
TLElement rho_A(const BraidWord& b);

// The Markov trace in scaled form: returns d^{n-1} tr(x) = sum of
// coeff_K * d^{a_K - 1}, which is always a Laurent polynomial.
LaurentPoly markov_trace_scaled(const TLElement& x);

// Numeric tr(x) at the given A (divides out d^{n-1}).
Complex markov_trace_value(const TLElement& x, Complex a);

// (-A)^{3w} d^{n-1} tr(rho_A(.)), the Jones polynomial of the trace closure of
// a tangle with closure writhe w.
LaurentPoly jones_via_trace(const Tangle& t, int writhe, int max_strands = kDefaultTlStrandCap);
LaurentPoly jones_via_trace(const BraidWord& b, Closure kind, int max_strands = kDefaultTlStrandCap);

} // namespace jones
