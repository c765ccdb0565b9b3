#include "soficlab/search.hpp"

#include <algorithm>
#include <random>
#include <thread>

namespace soficlab {

namespace {

// Shared, read-only context: K's multiplication closure and the component
// schedule (which defect terms become computable once table d is placed).
struct SearchContext {
    const MonoidSpec& m;
    std::vector<Word> K;
    std::uint32_t n = 0;
    std::int64_t e_index = -1;
    std::vector<std::vector<std::int64_t>> prod;        // k x k -> index in K or -1
    std::vector<std::vector<std::array<std::size_t, 3>>> triples_at;  // per depth: (s,t,st)
    std::uint64_t table_space = 0;                      // n^n

    SearchContext(const MonoidSpec& monoid, const std::vector<Word>& k_elems, std::uint32_t size)
        : m(monoid), n(size) {
        if (n == 0) throw DomainError("search: n must be positive");
        K.reserve(k_elems.size());
        for (const auto& w : k_elems) K.push_back(m.normalize(w));
        if (K.empty()) throw DomainError("search: K must be nonempty");
        for (std::size_t i = 0; i < K.size(); ++i) {
            for (std::size_t j = i + 1; j < K.size(); ++j) {
                if (K[i] == K[j]) throw DomainError("search: K elements must be distinct");
            }
        }
        if (m.has_identity()) {
            Word e = m.identity_word();
            for (std::size_t i = 0; i < K.size(); ++i) {
                if (K[i] == e) e_index = (std::int64_t)i;
            }
        }
        prod.assign(K.size(), std::vector<std::int64_t>(K.size(), -1));
        triples_at.assign(K.size(), {});
        for (std::size_t s = 0; s < K.size(); ++s) {
            for (std::size_t t = 0; t < K.size(); ++t) {
                Word st = m.multiply(K[s], K[t]);
                for (std::size_t p = 0; p < K.size(); ++p) {
                    if (K[p] == st) {
                        prod[s][t] = (std::int64_t)p;
                        triples_at[std::max({s, t, p})].push_back({s, t, p});
                        break;
                    }
                }
            }
        }
        table_space = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (table_space > UINT64_MAX / n) throw DomainError("search: n^n overflows");
            table_space *= n;
        }
    }

    // Decode v in [0, n^n) into a table; the first entry is the most
    // significant digit so ascending v is ascending lexicographic order.
    void decode(std::uint64_t v, Table& out) const {
        out.resize(n);
        for (std::uint32_t pos = n; pos-- > 0;) {
            out[pos] = (std::uint32_t)(v % n);
            v /= n;
        }
    }

    std::int64_t mult_count(const std::vector<Table>& tables, std::size_t s, std::size_t t,
                            std::size_t p) const {
        const Table& fs = tables[s];
        const Table& ft = tables[t];
        const Table& fp = tables[p];
        std::int64_t differ = 0;
        for (std::uint32_t x = 0; x < n; ++x) {
            if (fp[x] != fs[ft[x]]) ++differ;
        }
        return differ;
    }

    std::int64_t agree_count(const Table& f, const Table& g) const {
        std::int64_t agree = 0;
        for (std::uint32_t x = 0; x < n; ++x) {
            if (f[x] == g[x]) ++agree;
        }
        return agree;
    }

    std::int64_t identity_count(const Table& f) const {
        std::int64_t differ = 0;
        for (std::uint32_t x = 0; x < n; ++x) {
            if (f[x] != x) ++differ;
        }
        return differ;
    }

    // Defect components, in disagreement counts, that become available once
    // tables 0..d are placed and table d is the newest.
    std::int64_t new_components_at(const std::vector<Table>& tables, std::size_t d) const {
        std::int64_t worst = 0;
        if ((std::int64_t)d == e_index) {
            worst = std::max(worst, identity_count(tables[d]));
        }
        for (std::size_t i = 0; i < d; ++i) {
            worst = std::max(worst, agree_count(tables[i], tables[d]));
        }
        for (const auto& [s, t, p] : triples_at[d]) {
            worst = std::max(worst, mult_count(tables, s, t, p));
        }
        return worst;
    }

    // Full objective of a complete assignment: (eps_overall count, total count).
    std::pair<std::int64_t, std::int64_t> objective(const std::vector<Table>& tables) const {
        std::int64_t worst = 0, total = 0;
        for (std::size_t d = 0; d < K.size(); ++d) {
            if ((std::int64_t)d == e_index) {
                std::int64_t c = identity_count(tables[d]);
                worst = std::max(worst, c);
                total += c;
            }
            for (std::size_t i = 0; i < d; ++i) {
                std::int64_t c = agree_count(tables[i], tables[d]);
                worst = std::max(worst, c);
                total += c;
            }
            for (const auto& [s, t, p] : triples_at[d]) {
                std::int64_t c = mult_count(tables, s, t, p);
                worst = std::max(worst, c);
                total += c;
            }
        }
        return {worst, total};
    }
};

struct WorkerState {
    std::int64_t best_count = -1;  // -1: nothing found yet
    std::vector<Table> best_tables;
    std::uint64_t leaves = 0;
    std::uint64_t leaf_budget = 0;
    bool partial = false;
};

struct Enumerator {
    const SearchContext& ctx;
    bool normalized;
    WorkerState& state;
    std::vector<Table> tables;
    std::vector<std::int64_t> bound;  // running max of components by depth

    Enumerator(const SearchContext& c, bool norm, WorkerState& st)
        : ctx(c), normalized(norm), state(st) {
        tables.assign(ctx.K.size(), Table(ctx.n, 0));
        bound.assign(ctx.K.size() + 1, 0);
    }

    bool fixed_depth(std::size_t d) const {
        return normalized && (std::int64_t)d == ctx.e_index;
    }

    // Returns false when the budget has run out and enumeration must stop.
    bool place(std::size_t d) {
        if (d == ctx.K.size()) {
            if (state.leaves >= state.leaf_budget) {
                state.partial = true;
                return false;
            }
            ++state.leaves;
            std::int64_t eps = bound[d];
            if (state.best_count < 0 || eps < state.best_count) {
                state.best_count = eps;
                state.best_tables = tables;
            }
            return true;
        }
        if (fixed_depth(d)) {
            for (std::uint32_t x = 0; x < ctx.n; ++x) tables[d][x] = x;
            return place_rest(d);
        }
        for (std::uint64_t v = 0; v < ctx.table_space; ++v) {
            ctx.decode(v, tables[d]);
            if (!place_rest(d)) return false;
        }
        return true;
    }

    bool place_rest(std::size_t d) {
        std::int64_t here = std::max(bound[d], ctx.new_components_at(tables, d));
        // Equal-eps leaves further on are lexicographically later, so >= is
        // safe to prune on.
        if (state.best_count >= 0 && here >= state.best_count) return true;
        bound[d + 1] = here;
        return place(d + 1);
    }

    // Entry point restricted to a chunk [lo, hi) of the outermost free depth.
    bool run_chunk(std::size_t outer_depth, std::uint64_t lo, std::uint64_t hi) {
        // Place fixed depths before outer_depth.
        for (std::size_t d = 0; d < outer_depth; ++d) {
            for (std::uint32_t x = 0; x < ctx.n; ++x) tables[d][x] = x;
            std::int64_t here = std::max(bound[d], ctx.new_components_at(tables, d));
            bound[d + 1] = here;
        }
        for (std::uint64_t v = lo; v < hi; ++v) {
            ctx.decode(v, tables[outer_depth]);
            std::int64_t here =
                std::max(bound[outer_depth], ctx.new_components_at(tables, outer_depth));
            if (state.best_count >= 0 && here >= state.best_count) continue;
            bound[outer_depth + 1] = here;
            if (!place(outer_depth + 1)) return false;
        }
        return true;
    }
};

}  // namespace

SearchResult search_exhaustive(const MonoidSpec& m, const std::vector<Word>& K, std::uint32_t n,
                               std::uint64_t budget, bool normalized, unsigned workers) {
    SearchContext ctx(m, K, n);
    if (budget == 0) throw DomainError("search: budget must be positive");
    if (workers == 0) workers = 1;

    // Outermost depth whose table is actually enumerated.
    std::size_t outer = 0;
    bool all_fixed = false;
    while (normalized && (std::int64_t)outer == ctx.e_index) {
        ++outer;
        if (outer == ctx.K.size()) {
            all_fixed = true;
            break;
        }
    }

    std::vector<WorkerState> states;
    if (all_fixed) {
        // |K| == 1 and the single element is the pinned identity: exactly one
        // forced assignment.
        WorkerState st;
        st.leaf_budget = budget;
        st.leaves = 1;
        std::vector<Table> forced(ctx.K.size(), Table(ctx.n, 0));
        for (auto& t : forced) {
            for (std::uint32_t x = 0; x < ctx.n; ++x) t[x] = x;
        }
        st.best_count = ctx.objective(forced).first;
        st.best_tables = std::move(forced);
        states.push_back(std::move(st));
    } else {
        std::uint64_t space = ctx.table_space;
        unsigned used = (unsigned)std::min<std::uint64_t>(workers, space);
        states.resize(used);
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < used; ++w) {
            std::uint64_t lo = space * w / used;
            std::uint64_t hi = space * (w + 1) / used;
            states[w].leaf_budget = std::max<std::uint64_t>(1, budget / used);
            threads.emplace_back([&ctx, normalized, &states, w, outer, lo, hi]() {
                Enumerator e(ctx, normalized, states[w]);
                e.run_chunk(outer, lo, hi);
            });
        }
        for (auto& t : threads) t.join();
    }

    SearchResult result;
    result.partial = false;
    std::int64_t best = -1;
    for (const auto& st : states) {
        result.leaves_evaluated += st.leaves;
        result.partial = result.partial || st.partial;
        if (st.best_count < 0) continue;
        if (best < 0 || st.best_count < best ||
            (st.best_count == best && st.best_tables < result.witness)) {
            best = st.best_count;
            result.witness = st.best_tables;
        }
    }
    if (best < 0) throw DomainError("search: no candidate evaluated within budget");
    result.best_eps = Rational(best, (std::int64_t)n);
    return result;
}

SearchResult search_random(const MonoidSpec& m, const std::vector<Word>& K, std::uint32_t n,
                           std::uint64_t iterations, std::uint64_t seed) {
    SearchContext ctx(m, K, n);
    std::mt19937_64 rng(seed);
    auto uniform_below = [&rng](std::uint64_t k) -> std::uint64_t {
        // Rejection sampling keeps the draw unbiased and the stream portable.
        std::uint64_t bound = UINT64_MAX - UINT64_MAX % k;
        std::uint64_t x;
        do {
            x = rng();
        } while (x >= bound);
        return x % k;
    };
    auto random_tables = [&]() {
        std::vector<Table> tables(ctx.K.size(), Table(ctx.n));
        for (auto& t : tables) {
            for (std::uint32_t x = 0; x < ctx.n; ++x) t[x] = (std::uint32_t)uniform_below(ctx.n);
        }
        return tables;
    };

    auto descend = [&](std::vector<Table>& tables) {
        auto current = ctx.objective(tables);
        for (;;) {
            auto best_obj = current;
            std::size_t best_k = 0;
            std::uint32_t best_pos = 0, best_val = 0;
            bool improved = false;
            for (std::size_t k = 0; k < tables.size(); ++k) {
                for (std::uint32_t pos = 0; pos < ctx.n; ++pos) {
                    std::uint32_t original = tables[k][pos];
                    for (std::uint32_t val = 0; val < ctx.n; ++val) {
                        if (val == original) continue;
                        tables[k][pos] = val;
                        auto obj = ctx.objective(tables);
                        if (obj < best_obj) {
                            best_obj = obj;
                            best_k = k;
                            best_pos = pos;
                            best_val = val;
                            improved = true;
                        }
                    }
                    tables[k][pos] = original;
                }
            }
            if (!improved) return current;
            tables[best_k][best_pos] = best_val;
            current = best_obj;
        }
    };

    SearchResult result;
    std::vector<Table> initial = random_tables();
    auto initial_obj = ctx.objective(initial);
    std::int64_t best = initial_obj.first;
    result.witness = initial;
    result.leaves_evaluated = 1;

    for (std::uint64_t it = 0; it < iterations; ++it) {
        std::vector<Table> tables = (it == 0) ? initial : random_tables();
        auto obj = descend(tables);
        ++result.leaves_evaluated;
        if (obj.first < best) {
            best = obj.first;
            result.witness = tables;
        }
    }
    result.best_eps = Rational(best, (std::int64_t)n);
    return result;
}

}  // namespace soficlab
