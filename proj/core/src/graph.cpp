#include "soficlab/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <unordered_map>

namespace soficlab {

LabeledDigraph::LabeledDigraph(std::uint32_t n, const std::vector<EdgeTriple>& edges,
                               std::optional<std::vector<std::string>> vertex_labels)
    : n_(n), vertex_labels_(std::move(vertex_labels)) {
    if (vertex_labels_ && vertex_labels_->size() != n_) {
        throw DomainError("vertex label count does not match vertex count");
    }

    std::map<std::string, std::uint32_t> intern;
    for (const auto& [src, label, dst] : edges) {
        (void)src;
        (void)dst;
        intern.emplace(label, 0);
    }
    labels_.reserve(intern.size());
    for (auto& [label, id] : intern) {
        id = (std::uint32_t)labels_.size();
        labels_.push_back(label);
    }

    edges_.reserve(edges.size());
    for (const auto& [src, label, dst] : edges) {
        if (src >= n_ || dst >= n_) throw DomainError("edge endpoint out of range");
        edges_.push_back({src, intern.at(label), dst});
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    out_adj_.resize(n_);
    in_adj_.resize(n_);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (i > 0 && edges_[i - 1].src == e.src && edges_[i - 1].label == e.label) {
            throw DomainError("out-determinism violated: vertex " + std::to_string(e.src) +
                              " has two outgoing '" + labels_[e.label] + "' edges");
        }
        out_adj_[e.src].emplace_back(e.label, e.dst);
        in_adj_[e.dst].emplace_back(e.label, e.src);
    }
    for (auto& adj : in_adj_) std::sort(adj.begin(), adj.end());
}

LabeledDigraph LabeledDigraph::without_vertex_labels() const {
    LabeledDigraph g = *this;
    g.vertex_labels_.reset();
    return g;
}

std::string to_string(MetricMode mode) {
    return mode == MetricMode::directed ? "directed" : "undirected";
}

MetricMode metric_mode_from_string(const std::string& s) {
    if (s == "directed") return MetricMode::directed;
    if (s == "undirected") return MetricMode::undirected;
    throw DomainError("unknown metric mode '" + s + "'");
}

RootedBall ball_at(const LabeledDigraph& g, std::uint32_t v, std::uint32_t r, MetricMode mode) {
    if (v >= g.n()) throw DomainError("ball center out of range");

    constexpr std::uint32_t kUnseen = UINT32_MAX;
    std::vector<std::uint32_t> dist(g.n(), kUnseen);
    std::vector<std::uint32_t> order;
    dist[v] = 0;
    order.push_back(v);
    std::queue<std::uint32_t> frontier;
    frontier.push(v);
    while (!frontier.empty()) {
        std::uint32_t u = frontier.front();
        frontier.pop();
        if (dist[u] == r) continue;
        auto visit = [&](std::uint32_t w) {
            if (dist[w] == kUnseen) {
                dist[w] = dist[u] + 1;
                order.push_back(w);
                frontier.push(w);
            }
        };
        for (const auto& [label, dst] : g.out_edges(u)) {
            (void)label;
            visit(dst);
        }
        if (mode == MetricMode::undirected) {
            for (const auto& [label, src] : g.in_edges(u)) {
                (void)label;
                visit(src);
            }
        }
    }

    // Re-index by (distance, original index); BFS discovery is not quite that
    // order, so sort explicitly.
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::make_pair(dist[a], a) < std::make_pair(dist[b], b);
    });
    std::unordered_map<std::uint32_t, std::uint32_t> index;
    for (std::uint32_t i = 0; i < order.size(); ++i) index[order[i]] = i;

    std::vector<LabeledDigraph::EdgeTriple> edges;
    for (std::uint32_t u : order) {
        for (const auto& [label, dst] : g.out_edges(u)) {
            auto it = index.find(dst);
            if (it != index.end()) {
                edges.emplace_back(index[u], g.label(label), it->second);
            }
        }
    }
    std::optional<std::vector<std::string>> vlabels;
    if (g.has_vertex_labels()) {
        std::vector<std::string> out;
        out.reserve(order.size());
        for (std::uint32_t u : order) out.push_back((*g.vertex_labels())[u]);
        vlabels = std::move(out);
    }
    LabeledDigraph sub((std::uint32_t)order.size(), edges, std::move(vlabels));
    return RootedBall{std::move(sub), 0, r, mode};
}

RootedBall cayley_ball(const MonoidSpec& m, std::uint32_t r) {
    if (!m.has_identity()) {
        throw DomainError("cayley_ball requires a monoid with identity");
    }

    std::unordered_map<Word, std::uint32_t, WordHash> index;
    std::vector<Word> elements;
    auto intern = [&](const Word& w) -> std::pair<std::uint32_t, bool> {
        auto it = index.find(w);
        if (it != index.end()) return {it->second, false};
        std::uint32_t id = (std::uint32_t)elements.size();
        index.emplace(w, id);
        elements.push_back(w);
        return {id, true};
    };

    // Layered BFS by left multiplication s -> a.s.
    intern(m.identity_word());
    std::vector<std::uint32_t> frontier = {0};
    for (std::uint32_t d = 0; d < r && !frontier.empty(); ++d) {
        std::vector<std::uint32_t> next;
        for (std::uint32_t v : frontier) {
            for (std::uint32_t a = 0; a < m.generators().size(); ++a) {
                Word product = m.multiply(Word({a}), elements[v]);
                auto [id, fresh] = intern(product);
                if (fresh) next.push_back(id);
            }
        }
        frontier = std::move(next);
    }

    std::vector<LabeledDigraph::EdgeTriple> edges;
    std::vector<std::string> vlabels;
    vlabels.reserve(elements.size());
    for (std::uint32_t v = 0; v < elements.size(); ++v) {
        vlabels.push_back(m.word_to_string(elements[v]));
        for (std::uint32_t a = 0; a < m.generators().size(); ++a) {
            Word product = m.multiply(Word({a}), elements[v]);
            auto it = index.find(product);
            if (it != index.end()) {
                edges.emplace_back(v, m.generators()[a], it->second);
            }
        }
    }
    LabeledDigraph g((std::uint32_t)elements.size(), edges, std::move(vlabels));
    return RootedBall{std::move(g), 0, r, MetricMode::directed};
}

std::vector<Word> enumerate_elements_by_rewriting(const MonoidSpec& m, std::uint32_t r) {
    std::unordered_map<Word, std::uint32_t, WordHash> seen;
    std::vector<Word> elements;
    // All words of length <= r, normalized by the generic engine.
    std::vector<Word> layer = {Word{}};
    Word empty_nf = m.normalize_by_rewriting(Word{});
    seen.emplace(empty_nf, 0);
    elements.push_back(empty_nf);
    for (std::uint32_t d = 0; d < r; ++d) {
        std::vector<Word> next;
        for (const Word& w : layer) {
            for (std::uint32_t a = 0; a < m.generators().size(); ++a) {
                Word longer = w;
                longer.letters.push_back(a);
                next.push_back(longer);
                Word nf = m.normalize_by_rewriting(longer);
                if (seen.emplace(nf, (std::uint32_t)elements.size()).second) {
                    elements.push_back(nf);
                }
            }
        }
        layer = std::move(next);
    }
    return elements;
}

}  // namespace soficlab
