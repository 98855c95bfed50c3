#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jones {

enum class Closure { trace, plat };

Closure closure_from_string(const std::string& s); // "trace" | "plat"
const char* closure_name(Closure c);

// A word in the Artin generators of the braid group on `strands` strands.
// Letter g > 0 is the generator with index g (strand g over strand g+1);
// g < 0 is its inverse. The empty word is the identity braid.
struct BraidWord {
    int strands = 1;
    std::vector<int> word;

    // Accepts "n: g1 g2 ... gm" or a JSON object {"strands": n, "word": [...]}.
    static BraidWord parse(const std::string& text);

    void validate() const; // throws std::invalid_argument

    int crossings() const { return static_cast<int>(word.size()); }
    int exponent_sum() const;
    BraidWord inverse() const;   // reversed word with negated letters
    std::string str() const;     // "n: g1 g2 ... gm"
};

// Per-crossing sign and the writhe of a diagram under the canonical
// orientation (each component oriented so its leftmost top port is traversed
// downward).
struct OrientedLinkDiagram {
    int components = 0;
    std::vector<int> crossing_signs; // +1/-1 per crossing
    int writhe = 0;
};

// A braid-closure diagram: the braid's crossings plus closure arcs, carrying
// the 4-port strand connectivity needed for loop counting, component
// decomposition and writhe.
class LinkDiagram {
  public:
    LinkDiagram(BraidWord braid, Closure kind); // throws on plat with odd n

    const BraidWord& braid() const { return braid_; }
    Closure closure() const { return kind_; }
    int strands() const { return braid_.strands; }
    int crossings() const { return braid_.crossings(); }

    // Number of closed curves in the link.
    int component_count() const;

    // Number of closed loops after replacing each crossing per the mask:
    // bit c set = capcup smoothing, clear = identity smoothing.
    int resolution_loops(std::uint64_t mask) const;

    OrientedLinkDiagram orient() const;
    int writhe() const { return orient().writhe; }

    // Structural check: every node of the arc graph has degree exactly 2.
    bool arc_graph_is_two_regular() const;

  private:
    // Node ids: top boundary j -> j, bottom boundary j -> n+j,
    // crossing c port s -> 2n + 4c + s with s in {NW=0, NE=1, SW=2, SE=3}.
    int top_node(int j) const { return j; }
    int bottom_node(int j) const { return braid_.strands + j; }
    int port_node(int c, int s) const { return 2 * braid_.strands + 4 * c + s; }
    int node_count() const { return 2 * braid_.strands + 4 * braid_.crossings(); }
    long node_y(int v) const;
    int node_x(int v) const;

    BraidWord braid_;
    Closure kind_;
    std::vector<std::pair<int, int>> strand_edges_;  // vertical segments
    std::vector<std::pair<int, int>> closure_edges_; // side arcs / caps / cups
    std::vector<int> base_parent_;                   // DSU over strand+closure edges
};

} // namespace jones
