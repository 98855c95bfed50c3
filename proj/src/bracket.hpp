#pragma once

#include "braid.hpp"
#include "laurent.hpp"

namespace jones {

// Hard ceiling on brute-force state enumeration; the state sum walks all 2^m
// resolutions, so this oracle is desk-scale by design.
inline constexpr int kDefaultBracketCap = 24;

// Bracket state sum <L> = sum over all 2^m resolutions of A^{s+ - s-} d^{|s|-1}.
// A capcup smoothing at a positive crossing carries weight A (identity carries
// A^{-1}); signs swap at negative crossings.
LaurentPoly bracket(const LinkDiagram& diagram, int max_crossings = kDefaultBracketCap);

// (-A)^{3w} <L> with w the canonical-orientation writhe.
LaurentPoly jones_exact(const LinkDiagram& diagram, int max_crossings = kDefaultBracketCap);

// jones_exact evaluated at A = unit_A(k), i.e. V_L at t = exp(2*pi*i/k).
Complex jones_value(const BraidWord& braid, Closure kind, int k,
                    int max_crossings = kDefaultBracketCap);

} // namespace jones
