#include "soficlab/canonical.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace soficlab {

namespace {

void put_u32(std::string& out, std::uint32_t x) {
    out.push_back((char)(x & 0xff));
    out.push_back((char)((x >> 8) & 0xff));
    out.push_back((char)((x >> 16) & 0xff));
    out.push_back((char)((x >> 24) & 0xff));
}

void put_str(std::string& out, const std::string& s) {
    put_u32(out, (std::uint32_t)s.size());
    out += s;
}

struct Canonicalizer {
    const LabeledDigraph& g;
    std::optional<std::uint32_t> root;
    bool use_vlabels;
    std::uint32_t n;

    // Neighborhood signature of v under a coloring: the old color plus the
    // sorted multisets of (label, neighbor color) seen along outgoing and
    // incoming edges.
    using Sig = std::tuple<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>,
                           std::vector<std::pair<std::uint32_t, std::uint32_t>>>;

    std::vector<std::uint32_t> initial_coloring() const {
        std::vector<std::pair<std::pair<int, std::string>, std::uint32_t>> keys;
        keys.reserve(n);
        for (std::uint32_t v = 0; v < n; ++v) {
            int root_rank = (root && *root == v) ? 0 : 1;
            std::string vl = (use_vlabels && g.has_vertex_labels()) ? (*g.vertex_labels())[v] : "";
            keys.push_back({{root_rank, vl}, v});
        }
        return rank_by_key(keys);
    }

    template <typename Key>
    std::vector<std::uint32_t> rank_by_key(std::vector<std::pair<Key, std::uint32_t>>& keys) const {
        std::sort(keys.begin(), keys.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::uint32_t> colors(n);
        std::uint32_t rank = 0;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (i > 0 && keys[i].first != keys[i - 1].first) ++rank;
            colors[keys[i].second] = rank;
        }
        return colors;
    }

    std::uint32_t color_count(const std::vector<std::uint32_t>& colors) const {
        return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
    }

    std::vector<std::uint32_t> refine(std::vector<std::uint32_t> colors) const {
        std::uint32_t count = color_count(colors);
        for (;;) {
            std::vector<std::pair<Sig, std::uint32_t>> keys;
            keys.reserve(n);
            for (std::uint32_t v = 0; v < n; ++v) {
                std::vector<std::pair<std::uint32_t, std::uint32_t>> out, in;
                for (const auto& [label, dst] : g.out_edges(v)) out.emplace_back(label, colors[dst]);
                for (const auto& [label, src] : g.in_edges(v)) in.emplace_back(label, colors[src]);
                std::sort(out.begin(), out.end());
                std::sort(in.begin(), in.end());
                keys.push_back({{colors[v], std::move(out), std::move(in)}, v});
            }
            auto next = rank_by_key(keys);
            std::uint32_t next_count = color_count(next);
            if (next_count == count) return next;
            colors = std::move(next);
            count = next_count;
        }
    }

    std::string serialize(const std::vector<std::uint32_t>& colors) const {
        // colors is discrete: vertex -> canonical position.
        std::string out = "SOFC1";
        put_u32(out, n);
        put_u32(out, root ? colors[*root] : UINT32_MAX);
        bool vlabels = use_vlabels && g.has_vertex_labels();
        out.push_back(vlabels ? (char)1 : (char)0);
        put_u32(out, (std::uint32_t)g.labels().size());
        for (const auto& label : g.labels()) put_str(out, label);
        if (vlabels) {
            std::vector<std::string> ordered(n);
            for (std::uint32_t v = 0; v < n; ++v) ordered[colors[v]] = (*g.vertex_labels())[v];
            for (const auto& vl : ordered) put_str(out, vl);
        }
        std::vector<LabeledDigraph::Edge> edges;
        edges.reserve(g.edges().size());
        for (const auto& e : g.edges()) edges.push_back({colors[e.src], e.label, colors[e.dst]});
        std::sort(edges.begin(), edges.end());
        put_u32(out, (std::uint32_t)edges.size());
        for (const auto& e : edges) {
            put_u32(out, e.src);
            put_u32(out, e.label);
            put_u32(out, e.dst);
        }
        return out;
    }

    std::string search(std::vector<std::uint32_t> colors) const {
        colors = refine(std::move(colors));
        std::uint32_t count = color_count(colors);
        if (count == n) return serialize(colors);

        // First non-singleton cell, by color.
        std::uint32_t target = 0;
        {
            std::vector<std::uint32_t> sizes(count, 0);
            for (auto c : colors) ++sizes[c];
            while (sizes[target] < 2) ++target;
        }
        std::string best;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (colors[v] != target) continue;
            // Individualize v within its cell, then re-rank.
            std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t>> keys;
            keys.reserve(n);
            for (std::uint32_t u = 0; u < n; ++u) {
                keys.push_back({{colors[u], (u == v) ? 0u : 1u}, u});
            }
            auto candidate = search(rank_by_key(keys));
            if (best.empty() || candidate < best) best = std::move(candidate);
        }
        return best;
    }
};

// ---------------------------------------------------------------------------

struct IsoMatcher {
    const LabeledDigraph& g1;
    const LabeledDigraph& g2;
    bool use_vlabels = false;
    std::vector<std::uint32_t> lmap = {};  // g1 label id -> g2 label id
    std::vector<std::int64_t> m12 = {}, m21 = {};
    std::vector<std::pair<std::uint32_t, std::uint32_t>> trail = {};
    std::vector<std::string> sig1 = {}, sig2 = {};  // per-vertex local degree signature

    bool init() {
        if (g1.n() != g2.n()) return false;
        if (g1.edges().size() != g2.edges().size()) return false;
        lmap.assign(g1.labels().size(), 0);
        for (std::uint32_t i = 0; i < g1.labels().size(); ++i) {
            auto it = std::find(g2.labels().begin(), g2.labels().end(), g1.label(i));
            if (it == g2.labels().end()) return false;
            lmap[i] = (std::uint32_t)(it - g2.labels().begin());
        }
        m12.assign(g1.n(), -1);
        m21.assign(g2.n(), -1);
        sig1 = signatures(g1, &lmap);
        sig2 = signatures(g2, nullptr);
        return true;
    }

    // Signature: vertex label (when compared) plus per-label out/in degrees,
    // expressed in g2's label numbering so the two sides align.
    std::vector<std::string> signatures(const LabeledDigraph& g,
                                        const std::vector<std::uint32_t>* map) const {
        bool vlabels = use_vlabels && g1.has_vertex_labels() && g2.has_vertex_labels();
        std::vector<std::string> sigs(g.n());
        for (std::uint32_t v = 0; v < g.n(); ++v) {
            std::vector<std::tuple<std::uint32_t, int, int>> deg;
            auto touch = [&](std::uint32_t label, bool out) {
                std::uint32_t key = map ? (*map)[label] : label;
                for (auto& [l, o, i] : deg) {
                    if (l == key) {
                        (out ? o : i)++;
                        return;
                    }
                }
                deg.emplace_back(key, out ? 1 : 0, out ? 0 : 1);
            };
            for (const auto& [label, dst] : g.out_edges(v)) {
                (void)dst;
                touch(label, true);
            }
            for (const auto& [label, src] : g.in_edges(v)) {
                (void)src;
                touch(label, false);
            }
            std::sort(deg.begin(), deg.end());
            std::string s;
            if (vlabels) put_str(s, (*g.vertex_labels())[v]);
            for (const auto& [l, o, i] : deg) {
                put_u32(s, l);
                put_u32(s, (std::uint32_t)o);
                put_u32(s, (std::uint32_t)i);
            }
            sigs[v] = std::move(s);
        }
        return sigs;
    }

    bool assign(std::uint32_t u, std::uint32_t v) {
        if (m12[u] >= 0) return m12[u] == (std::int64_t)v;
        if (m21[v] >= 0) return false;
        if (sig1[u] != sig2[v]) return false;
        m12[u] = v;
        m21[v] = u;
        trail.emplace_back(u, v);
        // Out-edges are functional per label, so each match forces the match
        // of every out-neighbor.
        for (const auto& [label, dst] : g1.out_edges(u)) {
            std::uint32_t want = lmap[label];
            bool found = false;
            for (const auto& [label2, dst2] : g2.out_edges(v)) {
                if (label2 == want) {
                    found = true;
                    if (!assign(dst, dst2)) return false;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    }

    void undo_to(std::size_t mark) {
        while (trail.size() > mark) {
            auto [u, v] = trail.back();
            trail.pop_back();
            m12[u] = -1;
            m21[v] = -1;
        }
    }

    bool extend() {
        std::uint32_t u = g1.n();
        for (std::uint32_t i = 0; i < g1.n(); ++i) {
            if (m12[i] < 0) {
                u = i;
                break;
            }
        }
        if (u == g1.n()) return verify();
        for (std::uint32_t v = 0; v < g2.n(); ++v) {
            if (m21[v] >= 0 || sig1[u] != sig2[v]) continue;
            std::size_t mark = trail.size();
            if (assign(u, v) && extend()) return true;
            undo_to(mark);
        }
        return false;
    }

    bool verify() const {
        for (const auto& e : g1.edges()) {
            std::uint32_t want = lmap[e.label];
            bool found = false;
            for (const auto& [label2, dst2] : g2.out_edges((std::uint32_t)m12[e.src])) {
                if (label2 == want && dst2 == (std::uint32_t)m12[e.dst]) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;  // equal edge counts make the edge map a bijection
    }

    bool run(std::uint32_t root1, std::uint32_t root2) {
        if (!init()) return false;
        if (!assign(root1, root2)) return false;
        return extend();
    }
};

}  // namespace

std::string canonical_form_graph(const LabeledDigraph& g, std::optional<std::uint32_t> root,
                                 bool use_vertex_labels) {
    if (root && *root >= g.n()) throw DomainError("canonical_form: root out of range");
    Canonicalizer canon{g, root, use_vertex_labels, g.n()};
    if (g.n() == 0) return canon.serialize({});
    return canon.search(canon.initial_coloring());
}

std::string canonical_form(const RootedBall& b, bool use_vertex_labels) {
    return canonical_form_graph(b.graph, b.root, use_vertex_labels);
}

bool rooted_isomorphic_graphs(const LabeledDigraph& g1, std::uint32_t root1,
                              const LabeledDigraph& g2, std::uint32_t root2) {
    if (root1 >= g1.n() || root2 >= g2.n()) throw DomainError("rooted_isomorphic: root out of range");
    bool use_vlabels = g1.has_vertex_labels() && g2.has_vertex_labels();
    IsoMatcher matcher{g1, g2, use_vlabels};
    return matcher.run(root1, root2);
}

bool rooted_isomorphic(const RootedBall& b1, const RootedBall& b2) {
    return rooted_isomorphic_graphs(b1.graph, b1.root, b2.graph, b2.root);
}

bool is_group_cayley(const LabeledDigraph& g) {
    if (g.n() == 0) return false;

    for (std::uint32_t v = 0; v < g.n(); ++v) {
        std::vector<std::uint32_t> out_count(g.labels().size(), 0);
        std::vector<std::uint32_t> in_count(g.labels().size(), 0);
        for (const auto& [label, dst] : g.out_edges(v)) {
            (void)dst;
            ++out_count[label];
        }
        for (const auto& [label, src] : g.in_edges(v)) {
            (void)src;
            ++in_count[label];
        }
        for (std::size_t l = 0; l < g.labels().size(); ++l) {
            if (out_count[l] != 1 || in_count[l] != 1) return false;
        }
    }

    // Connectivity, undirected sense.
    std::vector<bool> seen(g.n(), false);
    std::queue<std::uint32_t> bfs;
    bfs.push(0);
    seen[0] = true;
    std::uint32_t reached = 1;
    while (!bfs.empty()) {
        std::uint32_t u = bfs.front();
        bfs.pop();
        auto visit = [&](std::uint32_t w) {
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                bfs.push(w);
            }
        };
        for (const auto& [label, dst] : g.out_edges(u)) {
            (void)label;
            visit(dst);
        }
        for (const auto& [label, src] : g.in_edges(u)) {
            (void)label;
            visit(src);
        }
    }
    if (reached != g.n()) return false;

    std::string first = canonical_form_graph(g, 0, /*use_vertex_labels=*/false);
    for (std::uint32_t v = 1; v < g.n(); ++v) {
        if (canonical_form_graph(g, v, false) != first) return false;
    }
    return true;
}

}  // namespace soficlab
