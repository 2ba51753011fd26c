#include "chromathresh/graph.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace chromathresh {

EdgeIndex edge_index(Vertex u, Vertex v, Vertex n) {
    if (u >= v || v >= n)
        throw std::invalid_argument("edge_index: need 0 <= u < v < n");
    const EdgeIndex uu = u;
    return uu * (2 * static_cast<EdgeIndex>(n) - uu - 1) / 2 + (v - u - 1);
}

std::pair<Vertex, Vertex> edge_endpoints(EdgeIndex e, Vertex n) {
    if (e >= edge_count(n))
        throw std::invalid_argument("edge_endpoints: edge index out of range");
    // Row u starts at offset u*(2n-u-1)/2; invert with a float guess and
    // correct by at most one step in either direction.
    const double nd = static_cast<double>(n);
    const double disc = (nd - 0.5) * (nd - 0.5) - 2.0 * static_cast<double>(e);
    auto row_start = [n](EdgeIndex u) {
        return u * (2 * static_cast<EdgeIndex>(n) - u - 1) / 2;
    };
    EdgeIndex u = static_cast<EdgeIndex>(std::max(0.0, nd - 0.5 - std::sqrt(std::max(0.0, disc))));
    if (u >= n) u = n - 1;
    while (u > 0 && row_start(u) > e) --u;
    while (u + 1 < n && row_start(u + 1) <= e) ++u;
    const Vertex v = static_cast<Vertex>(u + 1 + (e - row_start(u)));
    return {static_cast<Vertex>(u), v};
}

bool ColoredGraph::valid() const {
    if (n < 1 || r < 1) return false;
    if (colors.size() != edge_count(n)) return false;
    for (Color c : colors)
        if (c >= r) return false;
    return true;
}

ColoredGraph sample_coloring(Vertex n, Color r, const SeedSpec& seed) {
    if (n == 0) throw std::invalid_argument("sample_coloring: n must be >= 1");
    if (r == 0) throw std::invalid_argument("sample_coloring: r must be >= 1");
    ColoredGraph g;
    g.n = n;
    g.r = r;
    g.colors.resize(edge_count(n));
    SplitMix64 rng(seed);
    for (auto& c : g.colors) c = rng.next_below(r);
    return g;
}

std::vector<EdgeIndex> color_class(const ColoredGraph& g, Color c) {
    if (c >= g.r) throw std::invalid_argument("color_class: color out of range");
    std::vector<EdgeIndex> out;
    for (EdgeIndex e = 0; e < g.colors.size(); ++e)
        if (g.colors[e] == c) out.push_back(e);
    return out;
}

std::string to_text(const ColoredGraph& g) {
    std::ostringstream os;
    os << g.n << ' ' << g.r << '\n';
    for (std::size_t e = 0; e < g.colors.size(); ++e) {
        if (e) os << ' ';
        os << g.colors[e];
    }
    os << '\n';
    return os.str();
}

ColoredGraph from_text(const std::string& text) {
    std::istringstream is(text);
    std::uint64_t n = 0, r = 0;
    if (!(is >> n >> r)) throw std::invalid_argument("coloring text: missing 'n r' header");
    if (n == 0 || r == 0) throw std::invalid_argument("coloring text: n and r must be >= 1");
    ColoredGraph g;
    g.n = static_cast<Vertex>(n);
    g.r = r;
    g.colors.resize(edge_count(g.n));
    for (auto& c : g.colors) {
        if (!(is >> c)) throw std::invalid_argument("coloring text: too few colors");
        if (c >= r) throw std::invalid_argument("coloring text: color out of range");
    }
    std::uint64_t extra;
    if (is >> extra) throw std::invalid_argument("coloring text: too many colors");
    return g;
}

std::string to_json_string(const ColoredGraph& g, const SeedSpec* seed) {
    nlohmann::json j;
    j["n"] = g.n;
    j["r"] = g.r;
    j["colors"] = g.colors;
    if (seed) {
        j["seed"] = {{"master_seed", seed->master_seed}, {"trial_index", seed->trial_index}};
    }
    return j.dump();
}

} // namespace chromathresh
