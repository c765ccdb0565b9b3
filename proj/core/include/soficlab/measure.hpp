#ifndef SOFICLAB_MEASURE_HPP
#define SOFICLAB_MEASURE_HPP

#include <cstdint>
#include <vector>

#include "soficlab/rational.hpp"

namespace soficlab {

using Table = std::vector<std::uint32_t>;  // total self-map of {0,...,n-1}

// A probability measure on a finite set: nonnegative exact rational weights
// summing to exactly 1.
struct DiscreteMeasure {
    std::vector<Rational> weights;

    explicit DiscreteMeasure(std::vector<Rational> w);
    static DiscreteMeasure uniform(std::size_t n);

    std::size_t size() const { return weights.size(); }
};

// (f_* mu)(y) = sum of mu(x) over x with f(x) = y. Mass preserved exactly.
DiscreteMeasure pushforward(const DiscreteMeasure& mu, const Table& f);

// max_E |mu(E) - nu(E)| over subsets E, equal to half the L1 distance.
Rational total_variation(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace soficlab

#endif
