#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "soficlab/action.hpp"
#include "soficlab/canonical.hpp"

using namespace soficlab;

namespace {

// Rotation action of cyclic(n): K = {e, a, a^2} truncated to distinct
// normal forms.
FiniteAction rotation_action(int n) {
    MonoidSpec m = MonoidSpec::cyclic(n);
    std::vector<Word> K = {Word{}};
    std::vector<Table> tables;
    Table id((std::size_t)n), rot((std::size_t)n), rot2((std::size_t)n);
    for (int x = 0; x < n; ++x) {
        id[(std::size_t)x] = (std::uint32_t)x;
        rot[(std::size_t)x] = (std::uint32_t)((x + 1) % n);
        rot2[(std::size_t)x] = (std::uint32_t)((x + 2) % n);
    }
    tables.push_back(id);
    if (n >= 2) {
        K.push_back(m.parse_word("a"));
        tables.push_back(rot);
    }
    if (n >= 3) {
        K.push_back(m.normalize(m.parse_word("aa")));
        tables.push_back(rot2);
    }
    return FiniteAction(m, (std::uint32_t)n, K, tables);
}

// free_comm(2) acting by translations on the w x w torus grid.
FiniteAction torus_action(int w) {
    MonoidSpec m = MonoidSpec::free_comm(2);
    int n = w * w;
    auto idx = [w](int i, int j) { return (std::uint32_t)(i * w + j); };
    Table id((std::size_t)n), tx((std::size_t)n), ty((std::size_t)n), txy((std::size_t)n);
    for (int i = 0; i < w; ++i) {
        for (int j = 0; j < w; ++j) {
            id[idx(i, j)] = idx(i, j);
            tx[idx(i, j)] = idx((i + 1) % w, j);
            ty[idx(i, j)] = idx(i, (j + 1) % w);
            txy[idx(i, j)] = idx((i + 1) % w, (j + 1) % w);
        }
    }
    return FiniteAction(m, (std::uint32_t)n,
                        {Word{}, m.parse_word("x"), m.parse_word("y"), m.parse_word("xy")},
                        {id, tx, ty, txy});
}

FiniteAction constant_map_action(int n) {
    MonoidSpec m = MonoidSpec::free_monoid(1);
    return FiniteAction(m, (std::uint32_t)n, {m.parse_word("a")},
                        {Table((std::size_t)n, 0)});
}

}  // namespace

TEST_CASE("hamming") {
    CHECK(hamming({0, 1, 2}, {0, 1, 2}) == Rational(0));
    CHECK(hamming({0, 1, 2, 3}, {1, 0, 2, 3}) == Rational(1, 2));
    CHECK(hamming({1, 2, 3, 4, 0}, {0, 1, 2, 3, 4}) == Rational(1));
    CHECK_THROWS_AS(hamming({0}, {0, 0}), DomainError);
}

TEST_CASE("hamming satisfies the metric axioms on random tables") {
    std::mt19937_64 rng(0x7777);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 1 + rng() % 6;
        auto random_table = [&]() {
            Table t(n);
            for (auto& x : t) x = (std::uint32_t)(rng() % n);
            return t;
        };
        Table f = random_table(), g = random_table(), h = random_table();
        CHECK(hamming(f, g) >= Rational(0));
        CHECK((hamming(f, g) == Rational(0)) == (f == g));
        CHECK(hamming(f, g) == hamming(g, f));
        CHECK(hamming(f, h) <= hamming(f, g) + hamming(g, h));
    }
}

TEST_CASE("defects of exact actions vanish") {
    for (int n : {1, 2, 3, 5, 8}) {
        DefectReport report = defects(rotation_action(n));
        CHECK(report.eps_mult == Rational(0));
        CHECK(report.eps_identity == Rational(0));
        CHECK(report.eps_separation == Rational(0));
        CHECK(report.eps_overall == Rational(0));
        CHECK(is_keps_action(rotation_action(n), Rational(0)));
    }
    CHECK(defects(torus_action(5)).eps_overall == Rational(0));
}

TEST_CASE("defects of the singleton bicyclic action") {
    MonoidSpec m = MonoidSpec::bicyclic();
    std::vector<Word> K = {Word{}, m.parse_word("a"), m.parse_word("b"), m.parse_word("ba")};
    FiniteAction a(m, 1, K, std::vector<Table>(4, Table{0}));
    DefectReport report = defects(a);
    CHECK(report.eps_separation == Rational(1));
    CHECK(report.eps_identity == Rational(0));
    CHECK(report.eps_mult == Rational(0));
    CHECK(report.eps_overall == Rational(1));
}

TEST_CASE("pushforward") {
    DiscreteMeasure uniform = DiscreteMeasure::uniform(4);
    CHECK(pushforward(uniform, {0, 1, 2, 3}).weights == uniform.weights);

    DiscreteMeasure point = pushforward(uniform, {2, 2, 2, 2});
    CHECK(point.weights[2] == Rational(1));
    CHECK(point.weights[0] == Rational(0));

    DiscreteMeasure shuffled = pushforward(uniform, {1, 2, 3, 0});
    CHECK(shuffled.weights == uniform.weights);

    CHECK_THROWS_AS(pushforward(uniform, {0, 1}), DomainError);
}

TEST_CASE("total variation") {
    DiscreteMeasure uniform = DiscreteMeasure::uniform(4);
    CHECK(total_variation(uniform, uniform) == Rational(0));
    DiscreteMeasure point(
        {Rational(1), Rational(0), Rational(0), Rational(0)});
    CHECK(total_variation(uniform, point) == Rational(3, 4));
}

TEST_CASE("total variation equals the subset maximum on random measures") {
    std::mt19937_64 rng(0x20c0);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + rng() % 10;
        auto random_measure = [&]() {
            std::vector<std::int64_t> w(n);
            std::int64_t total = 0;
            for (auto& x : w) {
                x = (std::int64_t)(rng() % 20);
                total += x;
            }
            if (total == 0) {
                w[0] = 1;
                total = 1;
            }
            std::vector<Rational> weights;
            for (auto x : w) weights.emplace_back(x, total);
            return DiscreteMeasure(weights);
        };
        DiscreteMeasure mu = random_measure(), nu = random_measure();
        Rational half_l1 = total_variation(mu, nu);
        Rational best(0);
        for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
            Rational diff(0);
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (1ull << i)) diff += mu.weights[i] - nu.weights[i];
            }
            best = std::max(best, diff.abs());
        }
        CHECK(half_l1 == best);
    }
}

TEST_CASE("invariance defect") {
    CHECK(invariance_defect(rotation_action(6), DiscreteMeasure::uniform(6)) == Rational(0));
    CHECK(invariance_defect(constant_map_action(4), DiscreteMeasure::uniform(4)) ==
          Rational(3, 4));
    CHECK_THROWS_AS(invariance_defect(rotation_action(5), DiscreteMeasure::uniform(4)),
                    DomainError);
}

TEST_CASE("invertibility defect") {
    for (const auto& [word, defect] : invertibility_defect(rotation_action(7))) {
        (void)word;
        CHECK(defect == Rational(0));
    }
    auto constant = invertibility_defect(constant_map_action(4));
    REQUIRE(constant.size() == 1);
    CHECK(constant[0].second == Rational(1));
}

TEST_CASE("graph_from_action") {
    FiniteAction rot = rotation_action(5);
    LabeledDigraph cycle = graph_from_action(rot, {1});  // label by a only
    CHECK(cycle.n() == 5);
    CHECK(cycle.edges().size() == 5);
    CHECK(is_group_cayley(cycle));

    // shift-with-sink on 0..3: path into a self-loop
    MonoidSpec f1 = MonoidSpec::free_monoid(1);
    FiniteAction sink(f1, 4, {f1.parse_word("a")}, {Table{1, 2, 3, 3}});
    LabeledDigraph path = graph_from_action(sink, {0});
    CHECK(path.edges().size() == 4);
    CHECK(path.out_edges(3).size() == 1);
    CHECK(path.out_edges(3)[0].second == 3);  // self-loop at the sink
    CHECK_FALSE(is_group_cayley(path));

    // out-degree one per label at every vertex, for any tables
    std::mt19937_64 rng(0x9999);
    for (int trial = 0; trial < 20; ++trial) {
        std::uint32_t n = 1 + (std::uint32_t)(rng() % 6);
        Table t(n);
        for (auto& x : t) x = (std::uint32_t)(rng() % n);
        FiniteAction a(f1, n, {f1.parse_word("a")}, {t});
        LabeledDigraph g = graph_from_action(a, {0});
        for (std::uint32_t v = 0; v < n; ++v) CHECK(g.out_edges(v).size() == 1);
    }
}

TEST_CASE("weiss fraction of exact models") {
    // cyclic(7) against its own Cayley ball; the graph carries generator
    // edges only, matching the model's alphabet
    FiniteAction rot = rotation_action(7);
    LabeledDigraph g = graph_from_action(rot, {1});
    RootedBall model = cayley_ball(MonoidSpec::cyclic(7), 2);
    CHECK(weiss_fraction(g, model, 2) == Rational(1));

    // n-cycle with +1/-1 edges against the integers' ball
    MonoidSpec z = MonoidSpec::int_monoid();
    for (std::uint32_t n : {5, 6, 9}) {
        Table plus(n), minus(n);
        for (std::uint32_t x = 0; x < n; ++x) {
            plus[x] = (x + 1) % n;
            minus[x] = (x + n - 1) % n;
        }
        FiniteAction cyc(z, n, {z.parse_word("a"), z.parse_word("b")}, {plus, minus});
        LabeledDigraph cg = graph_from_action(cyc, {0, 1});
        CHECK(weiss_fraction(cg, cayley_ball(z, 1), 1) == Rational(1));
    }

    // a single self-loop does not look like the integers
    MonoidSpec f1 = MonoidSpec::free_monoid(1);
    FiniteAction loop(z, 1, {z.parse_word("a"), z.parse_word("b")}, {Table{0}, Table{0}});
    (void)f1;
    CHECK(weiss_fraction(graph_from_action(loop, {0, 1}), cayley_ball(z, 1), 1) == Rational(0));

    // model preconditions
    RootedBall undirected = ball_at(graph_from_action(rot, {1}), 0, 1, MetricMode::undirected);
    CHECK_THROWS_AS(weiss_fraction(g, undirected, 1), DomainError);
    CHECK_THROWS_AS(weiss_fraction(g, model, 1), DomainError);  // radius mismatch
}

TEST_CASE("weiss_graph labels edges by generator name") {
    // In cyclic(1) the generator normalizes to the identity; the graph must
    // still carry an "a"-labeled edge to compare against the Cayley ball.
    FiniteAction trivial = rotation_action(1);
    LabeledDigraph g = weiss_graph(trivial);
    CHECK(g.labels() == std::vector<std::string>{"a"});
    CHECK(weiss_fraction(g, cayley_ball(MonoidSpec::cyclic(1), 1), 1) == Rational(1));

    // every generator needs a table
    MonoidSpec bi = MonoidSpec::bicyclic();
    FiniteAction missing(bi, 2, {bi.parse_word("a")}, {Table{0, 1}});
    CHECK_THROWS_AS(weiss_graph(missing), DomainError);
}

TEST_CASE("weiss fraction ignores vertex labels") {
    // graph_from_action has no vertex labels while cayley balls do; matching
    // must still succeed.
    FiniteAction rot = rotation_action(4);
    LabeledDigraph g = graph_from_action(rot, {1});
    RootedBall model = cayley_ball(MonoidSpec::cyclic(4), 1);
    CHECK(weiss_fraction(g, model, 1) == Rational(1));
}

TEST_CASE("action validation") {
    MonoidSpec m = MonoidSpec::bicyclic();
    CHECK_THROWS_AS(FiniteAction(m, 2, {m.parse_word("ab")}, {Table{0, 1}}), DomainError);
    CHECK_THROWS_AS(FiniteAction(m, 2, {Word{}, Word{}}, {Table{0, 1}, Table{0, 1}}),
                    DomainError);
    CHECK_THROWS_AS(FiniteAction(m, 2, {Word{}}, {Table{0, 5}}), DomainError);
    CHECK_THROWS_AS(FiniteAction(m, 2, {Word{}}, {Table{0}}), DomainError);
}
