#include "chromathresh/matching.hpp"

#include <queue>

namespace chromathresh {

namespace {

// Edmonds' blossom algorithm with blossom contraction tracked through base
// pointers; augments one exposed vertex at a time.
class Blossom {
public:
    Blossom(const std::vector<VertexPair>& edges, Vertex n)
        : n_(n), adj_(n), mate_(n, kNoMate), parent_(n), base_(n), in_queue_(n), in_blossom_(n) {
        for (auto [u, v] : edges) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
    }

    std::vector<Vertex> run() {
        for (Vertex v = 0; v < n_; ++v) {
            if (mate_[v] != kNoMate) continue;
            const Vertex w = find_augmenting_path(v);
            if (w != kNoMate) augment(w);
        }
        return mate_;
    }

private:
    Vertex lowest_common_base(Vertex a, Vertex b) {
        std::vector<char> seen(n_, 0);
        for (;;) {
            a = base_[a];
            seen[a] = 1;
            if (mate_[a] == kNoMate) break;
            a = parent_[mate_[a]];
        }
        for (;;) {
            b = base_[b];
            if (seen[b]) return b;
            b = parent_[mate_[b]];
        }
    }

    void mark_blossom_path(Vertex v, Vertex stem, Vertex child) {
        while (base_[v] != stem) {
            in_blossom_[base_[v]] = 1;
            in_blossom_[base_[mate_[v]]] = 1;
            parent_[v] = child;
            child = mate_[v];
            v = parent_[mate_[v]];
        }
    }

    void contract(Vertex v, Vertex to, std::queue<Vertex>& bfs) {
        const Vertex stem = lowest_common_base(v, to);
        std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
        mark_blossom_path(v, stem, to);
        mark_blossom_path(to, stem, v);
        for (Vertex i = 0; i < n_; ++i) {
            if (!in_blossom_[base_[i]]) continue;
            base_[i] = stem;
            if (!in_queue_[i]) {
                in_queue_[i] = 1;
                bfs.push(i);
            }
        }
    }

    Vertex find_augmenting_path(Vertex root) {
        std::fill(in_queue_.begin(), in_queue_.end(), 0);
        std::fill(parent_.begin(), parent_.end(), kNoMate);
        for (Vertex i = 0; i < n_; ++i) base_[i] = i;

        std::queue<Vertex> bfs;
        bfs.push(root);
        in_queue_[root] = 1;
        while (!bfs.empty()) {
            const Vertex v = bfs.front();
            bfs.pop();
            for (const Vertex to : adj_[v]) {
                if (base_[v] == base_[to] || mate_[v] == to) continue;
                if (to == root || (mate_[to] != kNoMate && parent_[mate_[to]] != kNoMate)) {
                    // odd cycle: contract the blossom to its stem
                    contract(v, to, bfs);
                } else if (parent_[to] == kNoMate) {
                    parent_[to] = v;
                    if (mate_[to] == kNoMate) return to; // exposed: augmenting path found
                    in_queue_[mate_[to]] = 1;
                    bfs.push(mate_[to]);
                }
            }
        }
        return kNoMate;
    }

    void augment(Vertex v) {
        while (v != kNoMate) {
            const Vertex pv = parent_[v];
            const Vertex next = mate_[pv];
            mate_[v] = pv;
            mate_[pv] = v;
            v = next;
        }
    }

    Vertex n_;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<Vertex> mate_, parent_, base_;
    std::vector<char> in_queue_, in_blossom_;
};

} // namespace

std::vector<Vertex> maximum_matching(const std::vector<VertexPair>& edges, Vertex n) {
    return Blossom(edges, n).run();
}

std::size_t max_matching(const std::vector<VertexPair>& edges, Vertex n) {
    const auto mate = maximum_matching(edges, n);
    std::size_t size = 0;
    for (Vertex v = 0; v < n; ++v)
        if (mate[v] != kNoMate && mate[v] > v) ++size;
    return size;
}

std::size_t greedy_matching(const std::vector<VertexPair>& edges, Vertex n) {
    std::vector<char> used(n, 0);
    std::size_t size = 0;
    for (auto [u, v] : edges) {
        if (used[u] || used[v]) continue;
        used[u] = used[v] = 1;
        ++size;
    }
    return size;
}

} // namespace chromathresh
