#ifndef SOFICLAB_ACTION_HPP
#define SOFICLAB_ACTION_HPP

#include <cstdint>
#include <vector>

#include "soficlab/graph.hpp"
#include "soficlab/measure.hpp"
#include "soficlab/monoid.hpp"
#include "soficlab/rational.hpp"

namespace soficlab {

// A finite model of a monoid action: each element of the finite subset K is
// assigned a total self-map of {0,...,n-1}. How far the assignment is from a
// genuine free action is measured by defects().
class FiniteAction {
public:
    FiniteAction(MonoidSpec monoid, std::uint32_t n, std::vector<Word> K,
                 std::vector<Table> tables);

    const MonoidSpec& monoid() const { return monoid_; }
    std::uint32_t n() const { return n_; }
    const std::vector<Word>& K() const { return K_; }
    const std::vector<Table>& tables() const { return tables_; }
    const Table& table(std::size_t k_index) const { return tables_.at(k_index); }

    // Index of w in K, or -1.
    std::int64_t k_index(const Word& w) const;

private:
    MonoidSpec monoid_;
    std::uint32_t n_;
    std::vector<Word> K_;
    std::vector<Table> tables_;
};

// Normalized Hamming distance |{x : f(x) != g(x)}| / n.
Rational hamming(const Table& f, const Table& g);

// The three defect quantities of an approximate action, each in [0, 1]:
//   eps_mult       max over s,t in K with s.t in K of
//                  d_Ham(psi(st), psi(s) o psi(t))
//   eps_identity   d_Ham(psi(e), Id) when the identity lies in K, else 0
//   eps_separation max over distinct s,t in K of max(0, 1 - d_Ham(psi(s), psi(t)))
// The action is a (K,eps)-action exactly when eps >= eps_overall.
struct DefectReport {
    Rational eps_mult;
    Rational eps_identity;
    Rational eps_separation;
    Rational eps_overall;
};

DefectReport defects(const FiniteAction& a);

bool is_keps_action(const FiniteAction& a, const Rational& eps);

// max over s in K of total_variation(mu, psi(s)_* mu).
Rational invariance_defect(const FiniteAction& a, const DiscreteMeasure& mu);

// For each s in K, the fraction of points whose psi(s)-preimage does not
// have size exactly 1. Returned in K order.
std::vector<std::pair<Word, Rational>> invertibility_defect(const FiniteAction& a);

// The graph on {0,...,n-1} whose edges are (x, s, psi_s(x)) for s in the
// chosen label set (a subset of K, given as indices into K). Out-
// deterministic by construction; edge labels are the element strings.
LabeledDigraph graph_from_action(const FiniteAction& a, const std::vector<std::size_t>& label_indices);

// The generator-labeled graph of the action: one edge (x, g, psi(g)(x)) per
// monoid generator g, where psi(g) is the table of g's normal form. Every
// generator's normal form must lie in K. This is the graph the Weiss
// fraction compares against Cayley balls, whose edges carry generator names.
LabeledDigraph weiss_graph(const FiniteAction& a);

// Fraction of vertices whose directed radius-r ball is isomorphic to the
// model ball, ignoring vertex labels. The model must be a directed ball of
// radius exactly r.
Rational weiss_fraction(const LabeledDigraph& g, const RootedBall& model, std::uint32_t r);

}  // namespace soficlab

#endif
