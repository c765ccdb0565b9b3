#ifndef SOFICLAB_DYNSYS_HPP
#define SOFICLAB_DYNSYS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "soficlab/action.hpp"
#include "soficlab/canonical.hpp"
#include "soficlab/graph.hpp"
#include "soficlab/measure.hpp"
#include "soficlab/rational.hpp"

namespace soficlab {

// The full shift on infinite base-b digit strings (b = 2 is the symbolic
// form of the angle-doubling map), acted on by the iterates of the shift.
// K is the set {f, f^2, ..., f^n_powers}.
struct ShiftSystem {
    int branching;
    int n_powers;

    ShiftSystem(int branching_, int n_powers_);
};

// A finite approximation of depth parameters (r, k): the disjoint union over
// all base-b cylinders w of length r of the depth-k preimage tree of w.
//
// Vertices are indexed by (component c, level l, offset t); the digit string
// of a vertex is digits(t, l) ++ digits(c, r), most significant digit first,
// so the string has length r + l and its level-(l-1) parent drops the leading
// digit. The shift map psi_f sends a level >= 1 vertex to its parent and the
// root of component w to the root of component (w shifted left, '0'
// appended). Higher powers are exact compositions of psi_f.
//
// The vertex measure gives each level-l vertex of component w the mass
// b^(-l) * b^(-r) / (k+1): every level of every component carries the
// cylinder mass of w, and the k+1 levels are averaged.
class ShiftApproximation {
public:
    ShiftApproximation(ShiftSystem system, int r, int k);

    const ShiftSystem& system() const { return system_; }
    int r() const { return r_; }
    int k() const { return k_; }
    std::uint32_t size() const { return size_; }

    std::uint32_t component(std::uint32_t v) const;
    int level(std::uint32_t v) const;
    // Full digit string, length r + level(v).
    std::string label(std::uint32_t v) const;
    // First `len` digits of label(v); len <= r + level(v) required.
    std::string label_prefix(std::uint32_t v, int len) const;
    std::uint32_t index_of(std::uint32_t component, int level, std::uint64_t offset) const;

    std::uint32_t apply_shift(std::uint32_t v) const;

    const FiniteAction& action() const { return action_; }
    const DiscreteMeasure& vertex_measure() const { return measure_; }
    // Measure numerator over common denominator b^(r+k) * (k+1).
    std::int64_t mass_numerator(std::uint32_t v) const;
    std::int64_t mass_denominator() const { return common_den_; }

private:
    ShiftSystem system_;
    int r_;
    int k_;
    std::uint32_t size_;
    std::uint64_t comp_size_;
    std::vector<std::uint64_t> level_offset_;  // (b^l - 1)/(b - 1)
    std::int64_t common_den_;
    FiniteAction action_;
    DiscreteMeasure measure_;
};

ShiftApproximation build_approximation(const ShiftSystem& system, int r, int k);

// The depth-k preimage tree of the cylinder string omega: level l holds the
// b^l strings obtained by prepending l digits, each with an f-labeled edge to
// its parent. Vertex 0 is the root omega.
LabeledDigraph preimage_tree(const ShiftSystem& system, const std::string& omega, int k);

// A truncated Schreier-graph neighborhood: the radius-`radius` ball (usual
// undirected graph metric) around a point in the graph whose edges are
// x -> f^i(x) for i <= radius, with vertex labels truncated to the first
// `radius` digits. Patterns compare by canonical form including labels.
struct SchreierPattern {
    RootedBall ball;
    std::string canon;
};

SchreierPattern schreier_pattern_at(const ShiftApproximation& a, std::uint32_t v, int radius);

// A finitely supported measure on patterns of a fixed radius, keyed by
// canonical form.
struct PatternMeasure {
    struct Entry {
        RootedBall pretty;
        Rational mass;
    };

    int radius = 0;
    std::map<std::string, Entry> entries;  // canonical form -> entry

    Rational mass_of(const std::string& canon) const {
        auto it = entries.find(canon);
        return it == entries.end() ? Rational(0) : it->second.mass;
    }
};

// Exact law of the radius-`radius` pattern at a Bernoulli-uniform random
// point of the full shift. Computed by enumerating the finitely many digits
// that determine the pattern: grand-orbit points reachable within `radius`
// steps are represented by finite digit windows, equal windows denoting
// equal points; the enumeration is exact up to a null set of the shift.
// Enforced bound: radius <= 3.
PatternMeasure shift_pattern_measure(const ShiftSystem& system, int radius);

// The measure the approximation induces on patterns: each vertex contributes
// its mass to the class of its radius-`radius` pattern. Vertex ranges may be
// censused by parallel workers; exact-rational merging makes the result
// independent of the worker count.
PatternMeasure census_pattern_measure(const ShiftApproximation& a, int radius,
                                      unsigned workers = 1);

// max over the union of supports of |p(U) - q(U)|; radii must agree.
Rational weak_discrepancy(const PatternMeasure& p, const PatternMeasure& q);

struct ApproximationReport {
    DefectReport action_defects;
    Rational invariance;     // max_s TV(mu', psi_s_* mu')
    Rational discrepancy;    // weak discrepancy of the two pattern measures
    bool accepted = false;   // all three bounded by eps
};

// True iff the action defects, the invariance defect of the vertex measure,
// and the pattern-measure discrepancy at `radius` are all at most eps.
ApproximationReport is_keps_approximation(const ShiftApproximation& a, const Rational& eps,
                                          int radius, unsigned workers = 1);

}  // namespace soficlab

#endif
