#include "chromathresh/detect.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "chromathresh/errors.hpp"
#include "chromathresh/matching.hpp"

namespace chromathresh {

namespace {

struct SearchBudget {
    std::uint64_t remaining;
    void tick() {
        if (remaining == 0)
            throw ResourceError("detect: search budget exhausted without a definitive answer");
        --remaining;
    }
};

// Nonempty color classes in ascending color order, edges ascending within.
std::vector<std::pair<Color, std::vector<EdgeIndex>>> classes_present(const ColoredGraph& g) {
    std::map<Color, std::vector<EdgeIndex>> by_color;
    for (EdgeIndex e = 0; e < g.colors.size(); ++e) by_color[g.colors[e]].push_back(e);
    return {by_color.begin(), by_color.end()};
}

std::vector<Vertex> endpoint_union(const ColoredGraph& g, const std::vector<EdgeIndex>& edges) {
    std::vector<Vertex> verts;
    for (EdgeIndex e : edges) {
        const auto [u, v] = edge_endpoints(e, g.n);
        verts.push_back(u);
        verts.push_back(v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts;
}

DetectResult found(const ColoredGraph& g, std::vector<EdgeIndex> edges) {
    std::sort(edges.begin(), edges.end());
    Witness w;
    w.vertices = endpoint_union(g, edges);
    w.edges = std::move(edges);
    return {true, std::move(w)};
}

DetectResult found_vertices(const ColoredGraph&, std::vector<EdgeIndex> edges,
                            std::vector<Vertex> vertices) {
    std::sort(edges.begin(), edges.end());
    std::sort(vertices.begin(), vertices.end());
    return {true, Witness{std::move(edges), std::move(vertices)}};
}

// ---------------------------------------------------------------- matching

DetectResult detect_mono_matching(const ColoredGraph& g, std::uint32_t k) {
    for (const auto& [color, edges] : classes_present(g)) {
        if (edges.size() < k) continue;
        std::vector<VertexPair> pairs;
        pairs.reserve(edges.size());
        for (EdgeIndex e : edges) pairs.push_back(edge_endpoints(e, g.n));

        // greedy fast path; blossom only when the bound is inconclusive
        std::vector<Vertex> mate;
        if (greedy_matching(pairs, g.n) < k) {
            mate = maximum_matching(pairs, g.n);
            std::size_t size = 0;
            for (Vertex v = 0; v < g.n; ++v)
                if (mate[v] != kNoMate && mate[v] > v) ++size;
            if (size < k) continue;
        } else {
            mate.assign(g.n, kNoMate);
            std::vector<char> used(g.n, 0);
            for (auto [u, v] : pairs) {
                if (used[u] || used[v]) continue;
                used[u] = used[v] = 1;
                mate[u] = v;
                mate[v] = u;
            }
        }
        std::vector<EdgeIndex> chosen;
        for (Vertex v = 0; v < g.n && chosen.size() < k; ++v)
            if (mate[v] != kNoMate && mate[v] > v) chosen.push_back(edge_index(v, mate[v], g.n));
        return found(g, std::move(chosen));
    }
    return {false, std::nullopt};
}

// Rainbow matching: DFS over color classes ordered scarcest first; a class
// contributes at most one edge. Prunes: (a) selected + remaining classes
// < k, (b) selected + floor(free vertices / 2) < k.
DetectResult detect_hetero_matching(const ColoredGraph& g, std::uint32_t k, SearchBudget& budget) {
    auto classes = classes_present(g);
    if (classes.size() < k) return {false, std::nullopt};
    std::stable_sort(classes.begin(), classes.end(),
                     [](const auto& a, const auto& b) { return a.second.size() < b.second.size(); });

    std::vector<char> used(g.n, 0);
    std::vector<EdgeIndex> chosen;
    Vertex free_vertices = g.n;

    auto rec = [&](auto&& self, std::size_t pos) -> bool {
        if (chosen.size() == k) return true;
        const std::uint32_t need = k - static_cast<std::uint32_t>(chosen.size());
        if (pos + need > classes.size()) return false;
        if (free_vertices / 2 < need) return false;
        budget.tick();

        for (EdgeIndex e : classes[pos].second) {
            const auto [u, v] = edge_endpoints(e, g.n);
            if (used[u] || used[v]) continue;
            used[u] = used[v] = 1;
            free_vertices -= 2;
            chosen.push_back(e);
            if (self(self, pos + 1)) return true;
            chosen.pop_back();
            used[u] = used[v] = 0;
            free_vertices += 2;
        }
        return self(self, pos + 1); // skip this color
    };
    if (rec(rec, 0)) return found(g, std::move(chosen));
    return {false, std::nullopt};
}

// ------------------------------------------------------------------ clique

// Adjacency over one color class as bitset rows.
struct BitGraph {
    Vertex n = 0;
    std::size_t words = 0;
    std::vector<std::uint64_t> rows;

    explicit BitGraph(Vertex n_) : n(n_), words((n_ + 63) / 64), rows(words * n_, 0) {}
    std::uint64_t* row(Vertex v) { return rows.data() + words * v; }
    const std::uint64_t* row(Vertex v) const { return rows.data() + words * v; }
    void add_edge(Vertex u, Vertex v) {
        row(u)[v / 64] |= 1ull << (v % 64);
        row(v)[u / 64] |= 1ull << (u % 64);
    }
    bool adjacent(Vertex u, Vertex v) const { return (row(u)[v / 64] >> (v % 64)) & 1; }
};

// Bounded clique decision on one class: branch and bound in the style of
// pivot/color searches, with a greedy coloring bound on the candidate set.
class CliqueSearch {
public:
    CliqueSearch(const BitGraph& graph, std::uint32_t k, SearchBudget& budget)
        : g_(graph), k_(k), budget_(budget) {}

    bool run(std::vector<Vertex>& out_clique) {
        std::vector<Vertex> cand;
        for (Vertex v = 0; v < g_.n; ++v) {
            std::size_t deg = 0;
            for (std::size_t w = 0; w < g_.words; ++w) deg += std::popcount(g_.row(v)[w]);
            if (deg + 1 >= k_) cand.push_back(v);
        }
        if (cand.size() < k_) return false;
        if (expand(cand)) {
            out_clique = clique_;
            return true;
        }
        return false;
    }

private:
    // Greedy coloring of cand; returns vertices reordered by class with
    // their 1-based class numbers (ascending).
    void color_sort(const std::vector<Vertex>& cand, std::vector<Vertex>& ordered,
                    std::vector<std::uint32_t>& num) {
        class_masks_.assign(1, std::vector<std::uint64_t>(g_.words, 0));
        class_members_.assign(1, {});
        for (Vertex v : cand) {
            std::size_t c = 0;
            for (;; ++c) {
                if (c == class_masks_.size()) {
                    class_masks_.emplace_back(g_.words, 0);
                    class_members_.emplace_back();
                    break;
                }
                bool conflict = false;
                const std::uint64_t* rv = g_.row(v);
                for (std::size_t w = 0; w < g_.words; ++w)
                    if (class_masks_[c][w] & rv[w]) {
                        conflict = true;
                        break;
                    }
                if (!conflict) break;
            }
            class_masks_[c][v / 64] |= 1ull << (v % 64);
            class_members_[c].push_back(v);
        }
        ordered.clear();
        num.clear();
        for (std::size_t c = 0; c < class_members_.size(); ++c)
            for (Vertex v : class_members_[c]) {
                ordered.push_back(v);
                num.push_back(static_cast<std::uint32_t>(c) + 1);
            }
    }

    bool expand(const std::vector<Vertex>& cand) {
        budget_.tick();
        if (clique_.size() + cand.size() < k_) return false;

        std::vector<Vertex> ordered;
        std::vector<std::uint32_t> num;
        color_sort(cand, ordered, num);

        for (std::size_t idx = ordered.size(); idx-- > 0;) {
            if (clique_.size() + num[idx] < k_) return false; // class numbers ascend
            const Vertex v = ordered[idx];
            clique_.push_back(v);
            if (clique_.size() == k_) return true;
            std::vector<Vertex> next;
            for (std::size_t j = 0; j < idx; ++j)
                if (g_.adjacent(ordered[j], v)) next.push_back(ordered[j]);
            if (expand(next)) return true;
            clique_.pop_back();
        }
        return false;
    }

    const BitGraph& g_;
    std::uint32_t k_;
    SearchBudget& budget_;
    std::vector<Vertex> clique_;
    std::vector<std::vector<std::uint64_t>> class_masks_;
    std::vector<std::vector<Vertex>> class_members_;
};

DetectResult detect_mono_clique(const ColoredGraph& g, std::uint32_t k, SearchBudget& budget) {
    const EdgeIndex needed = static_cast<EdgeIndex>(k) * (k - 1) / 2;
    for (const auto& [color, edges] : classes_present(g)) {
        if (edges.size() < needed) continue;
        BitGraph bg(g.n);
        for (EdgeIndex e : edges) {
            const auto [u, v] = edge_endpoints(e, g.n);
            bg.add_edge(u, v);
        }
        CliqueSearch search(bg, k, budget);
        std::vector<Vertex> clique;
        if (search.run(clique)) {
            std::vector<EdgeIndex> ce;
            for (std::size_t i = 0; i < clique.size(); ++i)
                for (std::size_t j = i + 1; j < clique.size(); ++j) {
                    auto [a, b] = std::minmax(clique[i], clique[j]);
                    ce.push_back(edge_index(a, b, g.n));
                }
            return found_vertices(g, std::move(ce), std::move(clique));
        }
    }
    return {false, std::nullopt};
}

// Vertex-growth backtracking over ascending vertex indices, keeping the set
// of used colors; adding a vertex must bring |R| fresh pairwise-new colors.
DetectResult detect_hetero_clique(const ColoredGraph& g, std::uint32_t k, SearchBudget& budget) {
    const std::uint64_t needed = static_cast<std::uint64_t>(k) * (k - 1) / 2;
    if (g.r < needed) return {false, std::nullopt};

    std::vector<Vertex> r_set;
    std::vector<Color> used; // sorted small set
    auto color_used = [&](Color c) {
        return std::binary_search(used.begin(), used.end(), c);
    };

    auto rec = [&](auto&& self, Vertex next) -> bool {
        if (r_set.size() == k) return true;
        budget.tick();
        const std::uint32_t need = k - static_cast<std::uint32_t>(r_set.size());
        for (Vertex v = next; v + need <= g.n; ++v) {
            std::vector<Color> fresh;
            bool ok = true;
            for (Vertex u : r_set) {
                const Color c = g.color_of(std::min(u, v), std::max(u, v));
                if (color_used(c) || std::find(fresh.begin(), fresh.end(), c) != fresh.end()) {
                    ok = false;
                    break;
                }
                fresh.push_back(c);
            }
            if (!ok) continue;
            r_set.push_back(v);
            for (Color c : fresh) used.insert(std::upper_bound(used.begin(), used.end(), c), c);
            if (self(self, v + 1)) return true;
            r_set.pop_back();
            for (Color c : fresh) used.erase(std::find(used.begin(), used.end(), c));
        }
        return false;
    };

    if (rec(rec, 0)) {
        std::vector<EdgeIndex> ce;
        for (std::size_t i = 0; i < r_set.size(); ++i)
            for (std::size_t j = i + 1; j < r_set.size(); ++j)
                ce.push_back(edge_index(r_set[i], r_set[j], g.n));
        return found_vertices(g, std::move(ce), std::move(r_set));
    }
    return {false, std::nullopt};
}

// -------------------------------------------------------------------- tree

struct Dsu {
    std::vector<Vertex> parent;
    std::vector<Vertex> size;
    explicit Dsu(Vertex n) : parent(n), size(n, 1) {
        for (Vertex i = 0; i < n; ++i) parent[i] = i;
    }
    Vertex find(Vertex x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(Vertex a, Vertex b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        return true;
    }
};

DetectResult detect_mono_tree(const ColoredGraph& g, std::uint32_t k) {
    if (k == 1) return found_vertices(g, {}, {0});
    const auto best = max_color_component(g);
    if (best.size < k) return {false, std::nullopt};

    // BFS a k-vertex subtree out of the winning component.
    const auto edges = color_class(g, best.color);
    std::vector<std::vector<std::pair<Vertex, EdgeIndex>>> adj(g.n);
    for (EdgeIndex e : edges) {
        const auto [u, v] = edge_endpoints(e, g.n);
        adj[u].push_back({v, e});
        adj[v].push_back({u, e});
    }
    Dsu dsu(g.n);
    for (EdgeIndex e : edges) {
        const auto [u, v] = edge_endpoints(e, g.n);
        dsu.unite(u, v);
    }
    Vertex root = g.n;
    for (Vertex v = 0; v < g.n; ++v)
        if (dsu.size[dsu.find(v)] >= k) {
            root = v;
            break;
        }

    std::vector<char> seen(g.n, 0);
    std::vector<Vertex> verts{root};
    std::vector<EdgeIndex> tree_edges;
    seen[root] = 1;
    std::queue<Vertex> bfs;
    bfs.push(root);
    while (!bfs.empty() && verts.size() < k) {
        const Vertex v = bfs.front();
        bfs.pop();
        for (auto [to, e] : adj[v]) {
            if (seen[to]) continue;
            seen[to] = 1;
            verts.push_back(to);
            tree_edges.push_back(e);
            bfs.push(to);
            if (verts.size() == k) break;
        }
    }
    return found_vertices(g, std::move(tree_edges), std::move(verts));
}

// Grow a connected rainbow subtree from each possible minimum vertex.
DetectResult detect_hetero_tree_grow(const ColoredGraph& g, std::uint32_t k, SearchBudget& budget) {
    if (g.r < static_cast<std::uint64_t>(k) - 1) return {false, std::nullopt};

    std::vector<Vertex> verts;
    std::vector<EdgeIndex> tree_edges;
    std::vector<Color> used;
    std::vector<char> in_tree(g.n, 0);
    auto color_used = [&](Color c) {
        return std::binary_search(used.begin(), used.end(), c);
    };

    auto rec = [&](auto&& self, Vertex start) -> bool {
        if (verts.size() == k) return true;
        budget.tick();
        const std::size_t tree_size = verts.size();
        for (Vertex v = start; v < g.n; ++v) {
            if (in_tree[v]) continue;
            for (std::size_t ui = 0; ui < tree_size; ++ui) {
                const Vertex u = verts[ui];
                const Color c = g.color_of(std::min(u, v), std::max(u, v));
                if (color_used(c)) continue;
                in_tree[v] = 1;
                verts.push_back(v);
                tree_edges.push_back(edge_index(std::min(u, v), std::max(u, v), g.n));
                used.insert(std::upper_bound(used.begin(), used.end(), c), c);
                if (self(self, start)) return true;
                used.erase(std::find(used.begin(), used.end(), c));
                tree_edges.pop_back();
                verts.pop_back();
                in_tree[v] = 0;
            }
        }
        return false;
    };

    for (Vertex s = 0; s + k <= g.n; ++s) {
        verts.assign(1, s);
        tree_edges.clear();
        used.clear();
        std::fill(in_tree.begin(), in_tree.end(), 0);
        in_tree[s] = 1;
        // the minimum tree vertex is s, so candidates stay above s
        if (rec(rec, s + 1)) return found_vertices(g, std::move(tree_edges), std::move(verts));
    }
    return {false, std::nullopt};
}

// ------------------------------------------------ rainbow spanning tree

DetectResult rainbow_spanning_tree_impl(const ColoredGraph& g) {
    const Vertex n = g.n;
    if (n <= 1) return found_vertices(g, {}, n == 1 ? std::vector<Vertex>{0} : std::vector<Vertex>{});
    const EdgeIndex m = edge_count(n);
    std::vector<char> in_set(m, 0);
    std::size_t set_size = 0;

    // Greedy start: take edges that keep both matroids independent.
    {
        Dsu dsu(n);
        std::unordered_map<Color, EdgeIndex> color_used;
        for (EdgeIndex e = 0; e < m && set_size + 1 < static_cast<std::size_t>(n); ++e) {
            const auto [u, v] = edge_endpoints(e, n);
            if (color_used.count(g.colors[e])) continue;
            if (!dsu.unite(u, v)) continue;
            color_used.emplace(g.colors[e], e);
            in_set[e] = 1;
            ++set_size;
        }
    }

    std::vector<Vertex> parent_vertex(n), depth(n);
    std::vector<EdgeIndex> parent_edge(n);
    std::vector<std::uint32_t> comp(n);

    while (set_size < static_cast<std::size_t>(n) - 1) {
        // Forest structures for the current common independent set.
        std::vector<std::vector<std::pair<Vertex, EdgeIndex>>> adj(n);
        for (EdgeIndex e = 0; e < m; ++e)
            if (in_set[e]) {
                const auto [u, v] = edge_endpoints(e, n);
                adj[u].push_back({v, e});
                adj[v].push_back({u, e});
            }
        std::fill(comp.begin(), comp.end(), n);
        std::uint32_t comp_count = 0;
        for (Vertex s = 0; s < n; ++s) {
            if (comp[s] != n) continue;
            comp[s] = comp_count;
            parent_vertex[s] = s;
            parent_edge[s] = m;
            depth[s] = 0;
            std::queue<Vertex> bfs;
            bfs.push(s);
            while (!bfs.empty()) {
                const Vertex v = bfs.front();
                bfs.pop();
                for (auto [to, e] : adj[v]) {
                    if (comp[to] != n) continue;
                    comp[to] = comp_count;
                    parent_vertex[to] = v;
                    parent_edge[to] = e;
                    depth[to] = depth[v] + 1;
                    bfs.push(to);
                }
            }
            ++comp_count;
        }
        std::unordered_map<Color, EdgeIndex> color_holder;
        for (EdgeIndex e = 0; e < m; ++e)
            if (in_set[e]) color_holder[g.colors[e]] = e;

        // Exchange-graph arcs x in I -> y not in I exist when x lies on the
        // tree path between y's endpoints; collect them per x up front.
        std::vector<std::vector<EdgeIndex>> arcs_from_tree_edge(m);
        constexpr EdgeIndex kUnset = static_cast<EdgeIndex>(-1);
        std::vector<EdgeIndex> bfs_parent(m, kUnset);
        std::vector<char> visited(m, 0);
        std::queue<EdgeIndex> q;
        EdgeIndex goal = kUnset;

        auto push = [&](EdgeIndex y, EdgeIndex from) {
            if (visited[y]) return;
            visited[y] = 1;
            bfs_parent[y] = from;
            if (!in_set[y] && !color_holder.count(g.colors[y])) {
                goal = y; // sink: adding y keeps colors independent
                return;
            }
            q.push(y);
        };

        for (EdgeIndex y = 0; y < m && goal == kUnset; ++y) {
            if (in_set[y]) continue;
            const auto [a, b] = edge_endpoints(y, n);
            if (comp[a] != comp[b]) push(y, kUnset); // source: no cycle in forest
        }

        if (goal == kUnset) {
            for (EdgeIndex y = 0; y < m; ++y) {
                if (in_set[y] || visited[y]) continue;
                const auto [a, b] = edge_endpoints(y, n);
                if (comp[a] != comp[b]) continue;
                // tree path a..b: arcs from each path edge to y
                Vertex x = a, z = b;
                while (x != z) {
                    if (depth[x] < depth[z]) std::swap(x, z);
                    arcs_from_tree_edge[parent_edge[x]].push_back(y);
                    x = parent_vertex[x];
                }
            }
        }

        while (goal == kUnset && !q.empty()) {
            const EdgeIndex z = q.front();
            q.pop();
            if (in_set[z]) {
                for (EdgeIndex y : arcs_from_tree_edge[z]) {
                    push(y, z);
                    if (goal != kUnset) break;
                }
            } else {
                // color(z) is held by a unique tree edge; swapping it out
                // keeps the partition matroid independent
                const auto it = color_holder.find(g.colors[z]);
                if (it != color_holder.end()) push(it->second, z);
            }
        }

        if (goal == kUnset) break; // maximum common independent set found

        for (EdgeIndex e = goal; e != kUnset; e = bfs_parent[e]) {
            in_set[e] = !in_set[e];
        }
        ++set_size;
    }

    if (set_size < static_cast<std::size_t>(n) - 1) return {false, std::nullopt};
    std::vector<EdgeIndex> tree;
    for (EdgeIndex e = 0; e < m; ++e)
        if (in_set[e]) tree.push_back(e);
    std::vector<Vertex> verts(n);
    for (Vertex v = 0; v < n; ++v) verts[v] = v;
    return found_vertices(g, std::move(tree), std::move(verts));
}

} // namespace

ColorComponent max_color_component(const ColoredGraph& g) {
    ColorComponent best{0, g.n >= 1 ? 1u : 0u};
    for (const auto& [color, edges] : classes_present(g)) {
        Dsu dsu(g.n);
        for (EdgeIndex e : edges) {
            const auto [u, v] = edge_endpoints(e, g.n);
            dsu.unite(u, v);
        }
        Vertex largest = 0;
        for (Vertex v = 0; v < g.n; ++v) largest = std::max(largest, dsu.size[dsu.find(v)]);
        if (largest > best.size) best = {color, largest};
    }
    return best;
}

DetectResult rainbow_spanning_tree(const ColoredGraph& g) {
    return rainbow_spanning_tree_impl(g);
}

DetectResult detect(const ColoredGraph& g, const PropertyQuery& q, const DetectOptions& opts) {
    validate_query(q, g.n);
    SearchBudget budget{opts.budget};

    // degenerate sizes shared by several dispatch arms
    if (q.kind != SubgraphKind::Matching && q.k == 1) return found_vertices(g, {}, {0});
    if (q.k == 1 && q.kind == SubgraphKind::Matching) return found(g, {0});
    if (q.k == 2 && q.kind != SubgraphKind::Matching) return found(g, {0});

    switch (q.kind) {
        case SubgraphKind::Matching:
            return q.chromatic == Chromatic::Mono ? detect_mono_matching(g, q.k)
                                                  : detect_hetero_matching(g, q.k, budget);
        case SubgraphKind::Clique:
            return q.chromatic == Chromatic::Mono ? detect_mono_clique(g, q.k, budget)
                                                  : detect_hetero_clique(g, q.k, budget);
        case SubgraphKind::Tree:
            if (q.chromatic == Chromatic::Mono) return detect_mono_tree(g, q.k);
            if (q.k == g.n) return rainbow_spanning_tree_impl(g);
            return detect_hetero_tree_grow(g, q.k, budget);
    }
    throw InternalError("detect: unreachable dispatch");
}

std::string witness_to_json(const ColoredGraph& g, const PropertyQuery& q, const Witness& w) {
    nlohmann::json j;
    j["kind"] = kind_name(q.kind);
    j["chromatic"] = chromatic_name(q.chromatic);
    j["k"] = q.k;
    auto edges = nlohmann::json::array();
    for (EdgeIndex e : w.edges) {
        const auto [u, v] = edge_endpoints(e, g.n);
        edges.push_back({u, v, g.colors[e]});
    }
    j["edges"] = edges;
    return j.dump();
}

} // namespace chromathresh
