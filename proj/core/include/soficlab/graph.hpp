#ifndef SOFICLAB_GRAPH_HPP
#define SOFICLAB_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "soficlab/monoid.hpp"

namespace soficlab {

// A finite directed graph with string edge labels and optional string vertex
// labels. Out-deterministic: at most one outgoing edge per (vertex, label).
// Multiple incoming edges per label are allowed. Immutable after
// construction; the edge list is kept sorted by (src, label, dst) and the
// label alphabet is the sorted set of labels that actually occur.
class LabeledDigraph {
public:
    struct Edge {
        std::uint32_t src;
        std::uint32_t label;  // index into labels()
        std::uint32_t dst;

        auto operator<=>(const Edge&) const = default;
    };

    using EdgeTriple = std::tuple<std::uint32_t, std::string, std::uint32_t>;

    LabeledDigraph() = default;  // the empty graph
    LabeledDigraph(std::uint32_t n, const std::vector<EdgeTriple>& edges,
                   std::optional<std::vector<std::string>> vertex_labels = std::nullopt);

    std::uint32_t n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::uint32_t id) const { return labels_.at(id); }
    bool has_vertex_labels() const { return vertex_labels_.has_value(); }
    const std::optional<std::vector<std::string>>& vertex_labels() const { return vertex_labels_; }

    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& out_edges(std::uint32_t v) const {
        return out_adj_.at(v);
    }
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& in_edges(std::uint32_t v) const {
        return in_adj_.at(v);
    }

    LabeledDigraph without_vertex_labels() const;

    bool operator==(const LabeledDigraph& o) const {
        return n_ == o.n_ && labels_ == o.labels_ && edges_ == o.edges_ &&
               vertex_labels_ == o.vertex_labels_;
    }

private:
    std::uint32_t n_ = 0;
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::optional<std::vector<std::string>> vertex_labels_;
    // adjacency: (label, other endpoint), sorted
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> out_adj_;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> in_adj_;
};

enum class MetricMode { directed, undirected };

std::string to_string(MetricMode mode);
MetricMode metric_mode_from_string(const std::string& s);

// A ball: the subgraph induced on the vertices within `radius` of `root`
// under the chosen metric, rooted at `root` (re-indexed so vertices are
// 0..n-1 in (distance, original index) order).
struct RootedBall {
    LabeledDigraph graph;
    std::uint32_t root;
    std::uint32_t radius;
    MetricMode metric_mode;
};

// Induced subgraph on the vertices within distance r of v. Directed mode
// follows edges forward only (the directed-path distance of left Cayley
// graphs); undirected mode follows edges both ways.
RootedBall ball_at(const LabeledDigraph& g, std::uint32_t v, std::uint32_t r, MetricMode mode);

// Ball of radius r centered at the identity in the left Cayley graph of m:
// vertices are the normal forms of words of length <= r, labeled by their
// element strings; edges are all (s, a, a.s) with both endpoints inside.
RootedBall cayley_ball(const MonoidSpec& m, std::uint32_t r);

// Enumerate the distinct elements spelled by words of length <= r, via the
// generic rewriting engine. Returned in discovery (BFS) order.
std::vector<Word> enumerate_elements_by_rewriting(const MonoidSpec& m, std::uint32_t r);

}  // namespace soficlab

#endif
