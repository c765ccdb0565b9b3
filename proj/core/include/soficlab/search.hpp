#ifndef SOFICLAB_SEARCH_HPP
#define SOFICLAB_SEARCH_HPP

#include <cstdint>
#include <vector>

#include "soficlab/action.hpp"

namespace soficlab {

struct SearchResult {
    Rational best_eps;                // minimal eps_overall found
    std::vector<Table> witness;       // tables in K order attaining best_eps
    bool partial = false;             // node budget ran out before completion
    std::uint64_t leaves_evaluated = 0;

    FiniteAction witness_action(const MonoidSpec& m, const std::vector<Word>& K) const {
        return FiniteAction(m, (std::uint32_t)witness.front().size(), K, witness);
    }
};

// Minimum of defects(a).eps_overall over every assignment of tables to K
// (all n^n per element; `normalized` instead pins psi(e) = Id when the
// identity lies in K). The witness is the lexicographically least minimizer
// under the ordering of concatenated tables in K order. Enumeration prunes
// on partial lower bounds from already-placed tables. If the leaf budget is
// exhausted the best-so-far is returned with partial = true (it is then an
// upper bound on the true minimum, nothing more). The candidate space is
// partitioned across `workers` threads; the result does not depend on the
// worker count for runs that complete within budget.
SearchResult search_exhaustive(const MonoidSpec& m, const std::vector<Word>& K, std::uint32_t n,
                               std::uint64_t budget, bool normalized = false,
                               unsigned workers = 1);

// Seeded random restarts followed by greedy single-entry descent on the
// objective (eps_overall, total defect mass). With zero iterations, reports
// the seeded initial candidate unimproved. Reproducible given the seed.
SearchResult search_random(const MonoidSpec& m, const std::vector<Word>& K, std::uint32_t n,
                           std::uint64_t iterations, std::uint64_t seed);

}  // namespace soficlab

#endif
