#ifndef SOFICLAB_CANONICAL_HPP
#define SOFICLAB_CANONICAL_HPP

#include <optional>
#include <string>

#include "soficlab/graph.hpp"

namespace soficlab {

// Canonical byte string for a rooted labeled digraph:
//   canonical_form(b1) == canonical_form(b2)  iff  rooted_isomorphic(b1, b2).
// Deterministic across runs and platforms (fixed little-endian layout, label
// strings compared as bytes). Computed by iterated partition refinement over
// (vertex label, incident direction/edge-label/neighbor-class) signatures
// seeded by the root, with exhaustive individualization branching for cells
// the refinement cannot split.
std::string canonical_form(const RootedBall& b, bool use_vertex_labels = true);

std::string canonical_form_graph(const LabeledDigraph& g, std::optional<std::uint32_t> root,
                                 bool use_vertex_labels = true);

// True iff a root-preserving, direction-preserving, edge-label-preserving
// bijection exists. Vertex labels are compared only when both graphs carry
// them. Independent of canonical_form: synchronized forward propagation from
// the root (out-edges are forced by out-determinism), then backtracking over
// the rest.
bool rooted_isomorphic(const RootedBall& b1, const RootedBall& b2);

bool rooted_isomorphic_graphs(const LabeledDigraph& g1, std::uint32_t root1,
                              const LabeledDigraph& g2, std::uint32_t root2);

// True iff g is connected (undirected sense), every vertex has exactly one
// outgoing and one incoming edge per label of g's alphabet, and every choice
// of root yields the same rooted graph up to isomorphism (vertex labels
// ignored). Finite labeled graphs with these properties are exactly the
// Cayley graphs of groups.
bool is_group_cayley(const LabeledDigraph& g);

}  // namespace soficlab

#endif
