#include "braid.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace jones {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    explicit Dsu(std::vector<int> p) : parent(std::move(p)) {}
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    int roots() {
        int r = 0;
        for (int v = 0; v < static_cast<int>(parent.size()); ++v)
            if (find(v) == v)
                ++r;
        return r;
    }
};

int parse_int(const std::string& tok, const char* what) {
    size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("braid parse: bad ") + what + " '" + tok + "'");
    }
    if (pos != tok.size())
        throw std::invalid_argument(std::string("braid parse: bad ") + what + " '" + tok + "'");
    return v;
}

} // namespace

Closure closure_from_string(const std::string& s) {
    if (s == "trace")
        return Closure::trace;
    if (s == "plat")
        return Closure::plat;
    throw std::invalid_argument("closure must be 'trace' or 'plat', got '" + s + "'");
}

const char* closure_name(Closure c) {
    return c == Closure::trace ? "trace" : "plat";
}

BraidWord BraidWord::parse(const std::string& text) {
    BraidWord b;
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        throw std::invalid_argument("braid parse: empty input");
    if (text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(std::string("braid parse: invalid JSON: ") + e.what());
        }
        if (!j.contains("strands") || !j["strands"].is_number_integer())
            throw std::invalid_argument("braid parse: JSON object needs integer 'strands'");
        if (!j.contains("word") || !j["word"].is_array())
            throw std::invalid_argument("braid parse: JSON object needs array 'word'");
        b.strands = j["strands"].get<int>();
        for (const auto& g : j["word"]) {
            if (!g.is_number_integer())
                throw std::invalid_argument("braid parse: word entries must be integers");
            b.word.push_back(g.get<int>());
        }
    } else {
        size_t colon = text.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("braid parse: expected 'n: g1 g2 ...'");
        std::string head = text.substr(0, colon);
        std::istringstream hs(head);
        std::string tok;
        if (!(hs >> tok))
            throw std::invalid_argument("braid parse: missing strand count");
        std::string extra;
        if (hs >> extra)
            throw std::invalid_argument("braid parse: malformed strand count");
        b.strands = parse_int(tok, "strand count");
        std::istringstream ws(text.substr(colon + 1));
        while (ws >> tok)
            b.word.push_back(parse_int(tok, "letter"));
    }
    b.validate();
    return b;
}

void BraidWord::validate() const {
    if (strands < 1)
        throw std::invalid_argument("braid: strand count must be >= 1");
    for (int g : word) {
        if (g == 0)
            throw std::invalid_argument("braid: letter 0 is not a generator");
        if (std::abs(g) > strands - 1)
            throw std::invalid_argument("braid: generator index " + std::to_string(std::abs(g)) +
                                        " exceeds n-1=" + std::to_string(strands - 1));
    }
}

int BraidWord::exponent_sum() const {
    int s = 0;
    for (int g : word)
        s += g > 0 ? 1 : -1;
    return s;
}

BraidWord BraidWord::inverse() const {
    BraidWord inv;
    inv.strands = strands;
    inv.word.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        inv.word.push_back(-*it);
    return inv;
}

std::string BraidWord::str() const {
    std::ostringstream os;
    os << strands << ":";
    for (int g : word)
        os << " " << g;
    return os.str();
}

LinkDiagram::LinkDiagram(BraidWord braid, Closure kind) : braid_(std::move(braid)), kind_(kind) {
    braid_.validate();
    const int n = braid_.strands;
    const int m = braid_.crossings();
    if (kind_ == Closure::plat && n % 2 != 0)
        throw std::invalid_argument("plat closure requires an even strand count");

    // Sweep top to bottom, threading strand segments through crossing ports.
    std::vector<int> cur(n);
    for (int j = 0; j < n; ++j)
        cur[j] = top_node(j);
    for (int c = 0; c < m; ++c) {
        const int pos = std::abs(braid_.word[c]) - 1;
        strand_edges_.emplace_back(cur[pos], port_node(c, 0));      // down to NW
        strand_edges_.emplace_back(cur[pos + 1], port_node(c, 1));  // down to NE
        cur[pos] = port_node(c, 2);                                 // continue from SW
        cur[pos + 1] = port_node(c, 3);                             // continue from SE
    }
    for (int j = 0; j < n; ++j)
        strand_edges_.emplace_back(cur[j], bottom_node(j));

    if (kind_ == Closure::trace) {
        for (int j = 0; j < n; ++j)
            closure_edges_.emplace_back(top_node(j), bottom_node(j));
    } else {
        for (int j = 0; j < n; j += 2) {
            closure_edges_.emplace_back(top_node(j), top_node(j + 1));
            closure_edges_.emplace_back(bottom_node(j), bottom_node(j + 1));
        }
    }

    Dsu base(node_count());
    for (auto [a, b] : strand_edges_)
        base.unite(a, b);
    for (auto [a, b] : closure_edges_)
        base.unite(a, b);
    for (int v = 0; v < node_count(); ++v)
        base.find(v); // full path compression so copies start flat
    base_parent_ = std::move(base.parent);
}

long LinkDiagram::node_y(int v) const {
    const int n = braid_.strands;
    if (v < n)
        return 0;
    if (v < 2 * n)
        return 2L * braid_.crossings() + 1;
    const int s = (v - 2 * n) % 4;
    const int c = (v - 2 * n) / 4;
    return 2L * c + (s < 2 ? 1 : 2);
}

int LinkDiagram::node_x(int v) const {
    const int n = braid_.strands;
    if (v < n)
        return v;
    if (v < 2 * n)
        return v - n;
    const int s = (v - 2 * n) % 4;
    const int c = (v - 2 * n) / 4;
    const int pos = std::abs(braid_.word[c]) - 1;
    return pos + (s % 2);
}

int LinkDiagram::component_count() const {
    Dsu dsu(base_parent_);
    for (int c = 0; c < braid_.crossings(); ++c) {
        dsu.unite(port_node(c, 0), port_node(c, 3)); // NW through to SE
        dsu.unite(port_node(c, 1), port_node(c, 2)); // NE through to SW
    }
    return dsu.roots();
}

int LinkDiagram::resolution_loops(std::uint64_t mask) const {
    Dsu dsu(base_parent_);
    for (int c = 0; c < braid_.crossings(); ++c) {
        if (mask >> c & 1) {
            dsu.unite(port_node(c, 0), port_node(c, 1)); // capcup: NW-NE, SW-SE
            dsu.unite(port_node(c, 2), port_node(c, 3));
        } else {
            dsu.unite(port_node(c, 0), port_node(c, 2)); // identity: NW-SW, NE-SE
            dsu.unite(port_node(c, 1), port_node(c, 3));
        }
    }
    return dsu.roots();
}

bool LinkDiagram::arc_graph_is_two_regular() const {
    std::vector<int> deg(node_count(), 0);
    for (auto [a, b] : strand_edges_) {
        ++deg[a];
        ++deg[b];
    }
    for (auto [a, b] : closure_edges_) {
        ++deg[a];
        ++deg[b];
    }
    for (int c = 0; c < braid_.crossings(); ++c) {
        deg[port_node(c, 0)] += 1;
        deg[port_node(c, 1)] += 1;
        deg[port_node(c, 2)] += 1;
        deg[port_node(c, 3)] += 1;
    }
    return std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; });
}

OrientedLinkDiagram LinkDiagram::orient() const {
    const int n = braid_.strands;
    const int m = braid_.crossings();
    OrientedLinkDiagram out;
    out.crossing_signs.assign(m, 0);

    // Edge list: strand segments, closure arcs, then the two through-strands
    // of each crossing. Walking a component alternates along these edges;
    // every node has exactly two incident edges.
    struct Edge {
        int a, b;
        int crossing; // -1 unless a through-strand
        int slot;     // 0 = NW-SE strand, 1 = NE-SW strand
    };
    std::vector<Edge> edges;
    for (auto [a, b] : strand_edges_)
        edges.push_back({a, b, -1, 0});
    for (auto [a, b] : closure_edges_)
        edges.push_back({a, b, -1, 0});
    for (int c = 0; c < m; ++c) {
        edges.push_back({port_node(c, 0), port_node(c, 3), c, 0});
        edges.push_back({port_node(c, 1), port_node(c, 2), c, 1});
    }

    std::vector<std::vector<int>> inc(node_count());
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        inc[edges[e].a].push_back(e);
        inc[edges[e].b].push_back(e);
    }

    // dir[c][slot]: +1 traversed downward, -1 upward
    std::vector<std::array<int, 2>> dir(m, {0, 0});
    std::vector<bool> node_seen(node_count(), false);

    // Every component contains at least one full top-to-bottom strand, so its
    // canonical node (minimal (y, x)) is a top boundary node; start there and
    // head down the incident strand segment.
    for (int start = 0; start < n; ++start) {
        if (node_seen[start])
            continue;
        ++out.components;
        int first_edge = -1;
        for (int e : inc[start])
            if (edges[e].crossing == -1 && e < static_cast<int>(strand_edges_.size()))
                first_edge = e;
        int v = start;
        int via = first_edge;
        do {
            node_seen[v] = true;
            const Edge& ed = edges[via];
            int w = ed.a == v ? ed.b : ed.a;
            if (ed.crossing >= 0)
                dir[ed.crossing][ed.slot] = node_y(w) > node_y(v) ? +1 : -1;
            // leave w by its other incident edge
            int next = inc[w][0] == via ? inc[w][1] : inc[w][0];
            v = w;
            via = next;
        } while (v != start);
    }

    // Chirality lookup: positive letter puts the NW-SE strand over; the sign
    // flips when exactly one of the two strands is traversed upward.
    static constexpr int kSignTable[2][2][2] = {
        // [letter>0][slot0 down][slot1 down]
        {{-1, +1}, {+1, -1}}, // negative letter
        {{+1, -1}, {-1, +1}}, // positive letter
    };
    for (int c = 0; c < m; ++c) {
        const int pos_letter = braid_.word[c] > 0 ? 1 : 0;
        const int d0 = dir[c][0] > 0 ? 1 : 0;
        const int d1 = dir[c][1] > 0 ? 1 : 0;
        out.crossing_signs[c] = kSignTable[pos_letter][d0][d1];
        out.writhe += out.crossing_signs[c];
    }
    return out;
}

} // namespace jones
