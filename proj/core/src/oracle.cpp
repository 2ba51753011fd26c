#include "chromathresh/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "chromathresh/errors.hpp"

namespace chromathresh {

namespace {

// Number of labeled trees on k vertices (Cayley): k^(k-2), with the
// degenerate cases k=1 -> 1 (a bare vertex) and k=2 -> 1.
BigInt labeled_tree_count(std::uint32_t k) {
    if (k <= 2) return 1;
    return pow_big(BigInt(k), k - 2);
}

void check_work_cap(const BigInt& candidates, std::uint64_t cap) {
    if (candidates > cap)
        throw ResourceError("oracle: " + candidates.str() + " candidate subgraphs exceed the work cap of " +
                            std::to_string(cap));
}

// All k-matchings: k disjoint edges chosen in increasing edge-index order.
void enumerate_matchings(Vertex n, std::uint32_t k,
                         const std::function<void(const std::vector<EdgeIndex>&)>& fn) {
    const EdgeIndex m = edge_count(n);
    std::vector<std::pair<Vertex, Vertex>> ends(m);
    for (EdgeIndex e = 0; e < m; ++e) ends[e] = edge_endpoints(e, n);

    std::vector<EdgeIndex> chosen;
    std::vector<char> used(n, 0);
    Vertex free_vertices = n;

    auto rec = [&](auto&& self, EdgeIndex start) -> void {
        if (chosen.size() == k) {
            fn(chosen);
            return;
        }
        const std::uint32_t need = k - static_cast<std::uint32_t>(chosen.size());
        if (free_vertices / 2 < need) return;
        for (EdgeIndex e = start; e < m; ++e) {
            const auto [u, v] = ends[e];
            if (used[u] || used[v]) continue;
            used[u] = used[v] = 1;
            free_vertices -= 2;
            chosen.push_back(e);
            self(self, e + 1);
            chosen.pop_back();
            used[u] = used[v] = 0;
            free_vertices += 2;
        }
    };
    rec(rec, 0);
}

void enumerate_vertex_subsets(Vertex n, std::uint32_t k,
                              const std::function<void(const std::vector<Vertex>&)>& fn) {
    std::vector<Vertex> sel(k);
    for (std::uint32_t i = 0; i < k; ++i) sel[i] = i;
    if (k > n) return;
    for (;;) {
        fn(sel);
        // next combination
        std::int64_t i = static_cast<std::int64_t>(k) - 1;
        while (i >= 0 && sel[i] == n - k + i) --i;
        if (i < 0) break;
        ++sel[i];
        for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
    }
}

// Decode a Pruefer sequence over local labels 0..k-1 into k-1 edges.
void pruefer_decode(const std::vector<std::uint32_t>& seq, std::uint32_t k,
                    std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges_out,
                    std::vector<std::uint32_t>& degree_scratch) {
    edges_out.clear();
    auto& deg = degree_scratch;
    deg.assign(k, 1);
    for (auto x : seq) ++deg[x];
    for (auto s : seq) {
        for (std::uint32_t l = 0; l < k; ++l) {
            if (deg[l] == 1) {
                edges_out.emplace_back(l, s);
                --deg[l];
                --deg[s];
                break;
            }
        }
    }
    std::uint32_t a = k, b = k;
    for (std::uint32_t l = 0; l < k; ++l) {
        if (deg[l] == 1) {
            if (a == k) a = l;
            else b = l;
        }
    }
    edges_out.emplace_back(a, b);
}

void enumerate_trees(Vertex n, std::uint32_t k,
                     const std::function<void(const std::vector<EdgeIndex>&)>& fn) {
    std::vector<EdgeIndex> placement;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> local_edges;
    std::vector<std::uint32_t> deg_scratch;

    enumerate_vertex_subsets(n, k, [&](const std::vector<Vertex>& verts) {
        if (k == 1) {
            placement.clear(); // a bare vertex: zero edges, vacuously mono and hetero
            fn(placement);
            return;
        }
        std::vector<std::uint32_t> seq(k >= 2 ? k - 2 : 0, 0);
        for (;;) {
            pruefer_decode(seq, k, local_edges, deg_scratch);
            placement.clear();
            for (auto [a, b] : local_edges) {
                Vertex u = verts[a], v = verts[b];
                if (u > v) std::swap(u, v);
                placement.push_back(edge_index(u, v, n));
            }
            std::sort(placement.begin(), placement.end());
            fn(placement);
            // next Pruefer sequence (odometer over k symbols)
            std::size_t i = 0;
            while (i < seq.size() && seq[i] == k - 1) seq[i++] = 0;
            if (i == seq.size()) break;
            ++seq[i];
        }
    });
}

bool placement_satisfies(const std::vector<Color>& colors, const EdgeIndex* edges,
                         std::size_t count, Chromatic chromatic) {
    if (count <= 1) return true;
    if (chromatic == Chromatic::Mono) {
        const Color c0 = colors[edges[0]];
        for (std::size_t i = 1; i < count; ++i)
            if (colors[edges[i]] != c0) return false;
        return true;
    }
    for (std::size_t i = 1; i < count; ++i) {
        const Color ci = colors[edges[i]];
        for (std::size_t j = 0; j < i; ++j)
            if (colors[edges[j]] == ci) return false;
    }
    return true;
}

std::uint32_t shared_edges(const std::vector<EdgeIndex>& a, const std::vector<EdgeIndex>& b) {
    std::uint32_t s = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++s;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return s;
}

// Joint probability that two placements with e1 and e2 edges sharing s >= 1
// edges both satisfy the chromatic predicate. The only interaction between
// the placements is through the shared edges, so for hetero the second
// placement's unshared edges avoid the s shared colors and each other.
BigRat joint_probability(std::uint64_t e1, std::uint64_t e2, std::uint32_t s, Color r,
                         Chromatic chromatic) {
    const BigInt denom = pow_big(BigInt(r), e1 + e2 - s);
    if (chromatic == Chromatic::Mono) return BigRat(BigInt(r), denom);
    if (r < e1 || r < e2) return BigRat(0); // too few colors to rainbow either side
    const BigInt ways = falling_factorial(r, e1) * falling_factorial(r - s, e2 - s);
    return BigRat(ways, denom);
}

// Sum of joint probabilities over ordered dependent pairs of placements.
BigRat delta_over_placements(const std::vector<std::vector<EdgeIndex>>& placements, Color r,
                             Chromatic chromatic, std::uint64_t pair_cap) {
    const std::size_t p = placements.size();
    if (p > 1) {
        const BigInt ordered = BigInt(p) * (p - 1);
        if (ordered > pair_cap)
            throw ResourceError("oracle: " + ordered.str() + " ordered pairs exceed the pair cap of " +
                                std::to_string(pair_cap));
    }
    if (p == 0) return BigRat(0);
    const std::uint64_t e = placements[0].size();

    // Joint probability depends only on s; bucket unordered pairs by s.
    std::vector<std::uint64_t> count_by_s(e + 1, 0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            const std::uint32_t s = shared_edges(placements[i], placements[j]);
            if (s >= 1) ++count_by_s[s];
        }
    }
    BigRat delta(0);
    for (std::uint32_t s = 1; s <= e; ++s) {
        if (count_by_s[s] == 0) continue;
        // ordered pairs: each unordered pair contributes twice
        delta += BigRat(2 * BigInt(count_by_s[s])) * joint_probability(e, e, s, r, chromatic);
    }
    return delta;
}

std::vector<std::vector<EdgeIndex>> collect_placements(Vertex n, const PropertyQuery& q,
                                                       std::uint64_t work_cap) {
    check_work_cap(candidate_count(n, q), work_cap);
    std::vector<std::vector<EdgeIndex>> out;
    for_each_placement(n, q, [&](const std::vector<EdgeIndex>& pl) { out.push_back(pl); });
    return out;
}

} // namespace

BigInt candidate_count(Vertex n, const PropertyQuery& q) {
    switch (q.kind) {
        case SubgraphKind::Matching: return count_k_matchings(n, q.k);
        case SubgraphKind::Clique: return binomial(n, q.k);
        case SubgraphKind::Tree: return binomial(n, q.k) * labeled_tree_count(q.k);
    }
    return 0;
}

void for_each_placement(Vertex n, const PropertyQuery& q,
                        const std::function<void(const std::vector<EdgeIndex>&)>& fn) {
    validate_query(q, n);
    switch (q.kind) {
        case SubgraphKind::Matching:
            enumerate_matchings(n, q.k, fn);
            return;
        case SubgraphKind::Clique: {
            std::vector<EdgeIndex> placement;
            enumerate_vertex_subsets(n, q.k, [&](const std::vector<Vertex>& verts) {
                placement.clear();
                for (std::size_t i = 0; i < verts.size(); ++i)
                    for (std::size_t j = i + 1; j < verts.size(); ++j)
                        placement.push_back(edge_index(verts[i], verts[j], n));
                fn(placement);
            });
            return;
        }
        case SubgraphKind::Tree:
            enumerate_trees(n, q.k, fn);
            return;
    }
}

std::uint64_t count_occurrences(const ColoredGraph& g, const PropertyQuery& q,
                                std::uint64_t work_cap) {
    validate_query(q, g.n);
    check_work_cap(candidate_count(g.n, q), work_cap);
    std::uint64_t count = 0;
    for_each_placement(g.n, q, [&](const std::vector<EdgeIndex>& pl) {
        if (placement_satisfies(g.colors, pl.data(), pl.size(), q.chromatic)) ++count;
    });
    return count;
}

BigInt count_k_matchings(Vertex n, std::uint32_t k) {
    if (2ull * k > n) throw std::invalid_argument("count_k_matchings: need 2k <= n");
    BigInt q = 1;
    for (std::uint32_t i = 0; i < k; ++i) q *= binomial(n - 2ull * i, 2);
    q /= factorial(k);
    return q;
}

ExactStats exact_stats(Vertex n, Color r, const PropertyQuery& q, const OracleCaps& caps) {
    validate_query(q, n);
    if (r == 0) throw std::invalid_argument("exact_stats: r must be >= 1");

    const EdgeIndex m = edge_count(n);
    ExactStats stats;
    stats.total_colorings = pow_big(BigInt(r), static_cast<std::uint64_t>(m));
    if (stats.total_colorings > caps.coloring_cap)
        throw ResourceError("exact_stats: coloring space " + stats.total_colorings.str() +
                            " exceeds the cap " + caps.coloring_cap.str());

    const auto placements = collect_placements(n, q, caps.work_cap);

    // Flatten for the hot loop over colorings.
    const std::size_t stride = placements.empty() ? 0 : placements[0].size();
    std::vector<EdgeIndex> flat;
    flat.reserve(placements.size() * stride);
    for (const auto& pl : placements) flat.insert(flat.end(), pl.begin(), pl.end());

    std::uint64_t with_property = 0;
    std::uint64_t total_count = 0;
    std::vector<Color> colors(m, 0);

    for (;;) {
        std::uint64_t cnt = 0;
        const EdgeIndex* p = flat.data();
        for (std::size_t i = 0; i < placements.size(); ++i, p += stride)
            cnt += placement_satisfies(colors, p, stride, q.chromatic);
        with_property += (cnt > 0);
        total_count += cnt;

        // odometer order: edge 0 fastest
        EdgeIndex e = 0;
        while (e < m && colors[e] == r - 1) colors[e++] = 0;
        if (e == m) break;
        ++colors[e];
    }

    stats.colorings_with_property = with_property;
    stats.probability = BigRat(BigInt(with_property), stats.total_colorings);
    stats.expected_count = BigRat(BigInt(total_count), stats.total_colorings);
    stats.delta = delta_over_placements(placements, r, q.chromatic, caps.pair_cap);
    return stats;
}

std::vector<std::uint64_t> matching_pair_counts(Vertex n, std::uint32_t k, std::uint64_t pair_cap) {
    PropertyQuery q{SubgraphKind::Matching, Chromatic::Mono, k};
    validate_query(q, n);
    const BigInt count = count_k_matchings(n, k);
    if (count > 1 && count * (count - 1) > pair_cap)
        throw ResourceError("matching_pair_counts: ordered pair count exceeds the cap");
    const auto placements = collect_placements(n, q, pair_cap);

    std::vector<std::uint64_t> by_s(k + 1, 0);
    for (std::size_t i = 0; i < placements.size(); ++i) {
        for (std::size_t j = i + 1; j < placements.size(); ++j) {
            const std::uint32_t s = shared_edges(placements[i], placements[j]);
            if (s >= 1) by_s[s] += 2; // ordered pairs
        }
    }
    return by_s;
}

BigRat exact_delta(Vertex n, std::uint32_t k, Color r, Chromatic chromatic,
                   std::uint64_t pair_cap) {
    if (2ull * k > n) throw std::invalid_argument("exact_delta: need 2k <= n");
    if (r == 0) throw std::invalid_argument("exact_delta: r must be >= 1");
    const auto by_s = matching_pair_counts(n, k, pair_cap);
    BigRat delta(0);
    for (std::uint32_t s = 1; s < k; ++s) {
        if (by_s[s] == 0) continue;
        delta += BigRat(BigInt(by_s[s])) * joint_probability(k, k, s, r, chromatic);
    }
    return delta;
}

} // namespace chromathresh
