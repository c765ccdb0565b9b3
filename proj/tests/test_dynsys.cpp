#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "soficlab/dynsys.hpp"

using namespace soficlab;

namespace {

const ShiftSystem kDoubling{2, 1};

Rational census_mass_where(const PatternMeasure& pm,
                           const std::function<bool(const PatternMeasure::Entry&)>& pred) {
    Rational total(0);
    for (const auto& [canon, entry] : pm.entries) {
        (void)canon;
        if (pred(entry)) total += entry.mass;
    }
    return total;
}

}  // namespace

TEST_CASE("preimage trees") {
    LabeledDigraph t0 = preimage_tree(kDoubling, "01", 0);
    CHECK(t0.n() == 1);
    CHECK((*t0.vertex_labels())[0] == "01");

    LabeledDigraph t1 = preimage_tree(kDoubling, "01", 1);
    CHECK(t1.n() == 3);
    std::set<std::string> level1((*t1.vertex_labels()).begin() + 1, (*t1.vertex_labels()).end());
    CHECK(level1 == std::set<std::string>{"001", "101"});
    CHECK(t1.in_edges(0).size() == 2);

    LabeledDigraph t2 = preimage_tree(kDoubling, "0", 2);
    CHECK(t2.n() == 7);
    std::set<std::string> leaves;
    for (std::uint32_t v = 3; v < 7; ++v) leaves.insert((*t2.vertex_labels())[v]);
    CHECK(leaves == std::set<std::string>{"000", "100", "010", "110"});

    CHECK_THROWS_AS(preimage_tree(kDoubling, "", 1), DomainError);
    CHECK_THROWS_AS(preimage_tree(kDoubling, "02", 1), DomainError);
}

TEST_CASE("approximation shape and measure") {
    ShiftApproximation a = build_approximation(kDoubling, 2, 2);
    CHECK(a.size() == 28);

    // level masses 2^-l / 12
    for (std::uint32_t v = 0; v < a.size(); ++v) {
        int l = a.level(v);
        CHECK(a.vertex_measure().weights[v] == Rational(1, 12) / Rational(1ll << l));
        CHECK((int)a.label(v).size() == 2 + l);
    }

    // |X'| = 2^r (2^(k+1) - 1)
    for (int r = 1; r <= 3; ++r) {
        for (int k = 1; k <= 5; ++k) {
            CHECK(build_approximation(kDoubling, r, k).size() ==
                  (std::uint32_t)((1u << r) * ((1u << (k + 1)) - 1)));
        }
    }
}

TEST_CASE("vertex labels and the shift map") {
    ShiftApproximation a = build_approximation(kDoubling, 2, 2);
    // roots are the four cylinders
    std::set<std::string> roots;
    for (std::uint32_t c = 0; c < 4; ++c) roots.insert(a.label(a.index_of(c, 0, 0)));
    CHECK(roots == std::set<std::string>{"00", "01", "10", "11"});

    // a level-2 vertex drops its leading digit
    std::uint32_t v = a.index_of(2, 2, 1);  // digits "01" ++ "10"
    CHECK(a.label(v) == "0110");
    CHECK(a.label(a.apply_shift(v)) == "110");
    CHECK(a.label(a.apply_shift(a.apply_shift(v))) == "10");

    // root redirection: shift left, append 0
    auto root = [&](const std::string& w) {
        for (std::uint32_t c = 0; c < 4; ++c) {
            if (a.label(a.index_of(c, 0, 0)) == w) return a.index_of(c, 0, 0);
        }
        FAIL("root not found");
        return 0u;
    };
    CHECK(a.apply_shift(root("01")) == root("10"));
    CHECK(a.apply_shift(root("11")) == root("10"));
    CHECK(a.apply_shift(root("10")) == root("00"));
    CHECK(a.apply_shift(root("00")) == root("00"));

    CHECK(a.label_prefix(v, 1) == "0");
    CHECK(a.label_prefix(v, 3) == "011");
    CHECK_THROWS_AS(a.label_prefix(v, 5), DomainError);
}

TEST_CASE("approximate invariance is exactly 1/(k+1)") {
    for (int r = 1; r <= 3; ++r) {
        for (int k = 1; k <= 8; ++k) {
            ShiftApproximation a = build_approximation(kDoubling, r, k);
            Rational tv = total_variation(a.vertex_measure(),
                                          pushforward(a.vertex_measure(), a.action().table(0)));
            CHECK(tv == Rational(1, k + 1));
        }
    }
}

TEST_CASE("mass is conserved under every power") {
    ShiftApproximation a = build_approximation(ShiftSystem{2, 3}, 2, 3);
    for (std::size_t s = 0; s < a.action().K().size(); ++s) {
        DiscreteMeasure pushed = pushforward(a.vertex_measure(), a.action().table(s));
        Rational total(0);
        for (const auto& w : pushed.weights) total += w;
        CHECK(total == Rational(1));
    }
}

TEST_CASE("interior levels balance exactly") {
    ShiftApproximation a = build_approximation(kDoubling, 2, 4);
    DiscreteMeasure pushed = pushforward(a.vertex_measure(), a.action().table(0));
    for (std::uint32_t v = 0; v < a.size(); ++v) {
        int l = a.level(v);
        if (l >= 1 && l <= a.k() - 1) {
            CHECK(pushed.weights[v] == a.vertex_measure().weights[v]);
        }
    }
}

TEST_CASE("higher powers are exact compositions") {
    ShiftApproximation a = build_approximation(ShiftSystem{2, 3}, 2, 3);
    DefectReport report = defects(a.action());
    CHECK(report.eps_mult == Rational(0));
    CHECK(report.eps_identity == Rational(0));
    // invariance defect for K = {f, f^2, f^3} is dominated by the top power
    CHECK(invariance_defect(a.action(), a.vertex_measure()) == Rational(3, 4));
}

TEST_CASE("schreier patterns at distinguished vertices") {
    ShiftApproximation a = build_approximation(kDoubling, 2, 2);
    auto root_index = [&](const std::string& w) {
        for (std::uint32_t c = 0; c < 4; ++c) {
            if (a.label(a.index_of(c, 0, 0)) == w) return a.index_of(c, 0, 0);
        }
        FAIL("root not found");
        return 0u;
    };

    // clean root: out-edge to its redirect target, in-edges from its children
    SchreierPattern clean = schreier_pattern_at(a, root_index("01"), 1);
    CHECK(clean.ball.graph.n() == 4);
    CHECK((*clean.ball.graph.vertex_labels())[clean.ball.root] == "0");
    REQUIRE(clean.ball.graph.out_edges(clean.ball.root).size() == 1);
    std::uint32_t target = clean.ball.graph.out_edges(clean.ball.root)[0].second;
    CHECK((*clean.ball.graph.vertex_labels())[target] == "1");
    std::multiset<std::string> in_labels;
    for (const auto& [label, src] : clean.ball.graph.in_edges(clean.ball.root)) {
        (void)label;
        in_labels.insert((*clean.ball.graph.vertex_labels())[src]);
    }
    CHECK(in_labels == std::multiset<std::string>{"0", "1"});

    // leaf: no incoming edges
    std::uint32_t leaf = a.index_of(1, 2, 0);
    SchreierPattern leaf_pattern = schreier_pattern_at(a, leaf, 1);
    CHECK(leaf_pattern.ball.graph.n() == 2);
    CHECK(leaf_pattern.ball.graph.in_edges(leaf_pattern.ball.root).empty());

    // radius 0: a single vertex with the empty truncation label
    SchreierPattern trivial = schreier_pattern_at(a, leaf, 0);
    CHECK(trivial.ball.graph.n() == 1);
    CHECK((*trivial.ball.graph.vertex_labels())[0] == "");

    CHECK_THROWS_AS(schreier_pattern_at(a, 0, 3), DomainError);       // radius > r
    CHECK_THROWS_AS(schreier_pattern_at(a, a.size(), 1), DomainError);
    ShiftApproximation p1 = build_approximation(ShiftSystem{2, 1}, 3, 2);
    CHECK_THROWS_AS(schreier_pattern_at(p1, 0, 2), DomainError);      // radius > n_powers
}

TEST_CASE("exact pattern law of the binary shift") {
    PatternMeasure law1 = shift_pattern_measure(kDoubling, 1);
    CHECK(law1.entries.size() == 4);
    for (const auto& [canon, entry] : law1.entries) {
        (void)canon;
        CHECK(entry.mass == Rational(1, 4));
        CHECK(entry.pretty.graph.n() == 4);
        // exactly two incoming f-edges at the root, labeled 0 and 1
        std::multiset<std::string> ins;
        for (const auto& [label, src] : entry.pretty.graph.in_edges(entry.pretty.root)) {
            (void)label;
            ins.insert((*entry.pretty.graph.vertex_labels())[src]);
        }
        CHECK(ins == std::multiset<std::string>{"0", "1"});
    }

    // radius 0 is the trivial pattern
    PatternMeasure law0 = shift_pattern_measure(kDoubling, 0);
    CHECK(law0.entries.size() == 1);
    CHECK(law0.entries.begin()->second.mass == Rational(1));

    // masses sum to 1 for every supported radius
    for (int radius = 0; radius <= 3; ++radius) {
        PatternMeasure law = shift_pattern_measure(kDoubling, radius);
        Rational total(0);
        for (const auto& [canon, entry] : law.entries) {
            (void)canon;
            total += entry.mass;
        }
        CHECK(total == Rational(1));
    }

    // root f-in-degree is exactly two on the whole support at radius 2
    PatternMeasure law2 = shift_pattern_measure(kDoubling, 2);
    for (const auto& [canon, entry] : law2.entries) {
        (void)canon;
        int f_ins = 0;
        for (const auto& [label, src] : entry.pretty.graph.in_edges(entry.pretty.root)) {
            (void)src;
            if (entry.pretty.graph.label(label) == "f") ++f_ins;
        }
        CHECK(f_ins == 2);
    }

    CHECK_THROWS_AS(shift_pattern_measure(kDoubling, 4), RadiusTooLargeError);
}

TEST_CASE("census masses at r=2, radius 1") {
    // Frozen from the construction: true patterns whose forward digit is 1
    // carry k/(4(k+1)); the other two lose mass to the self-loop variants of
    // component 00 and carry (2k-3)/(8(k+1)); two-vertex leaf patterns carry
    // 1/(4(k+1)) each; the redirected roots contribute their own classes.
    for (int k : {2, 3, 5}) {
        ShiftApproximation a = build_approximation(kDoubling, 2, k);
        PatternMeasure census = census_pattern_measure(a, 1);
        PatternMeasure law = shift_pattern_measure(kDoubling, 1);

        std::map<std::string, Rational> true_masses;  // forward digit -> mass
        for (const auto& [canon, entry] : law.entries) {
            std::uint32_t target = entry.pretty.graph.out_edges(entry.pretty.root)[0].second;
            std::string fwd = (*entry.pretty.graph.vertex_labels())[target];
            true_masses[fwd] += census.mass_of(canon);
        }
        CHECK(true_masses["1"] == Rational(2 * k, 4 * (k + 1)));
        CHECK(true_masses["0"] == Rational(2 * (2 * k - 3), 8 * (k + 1)));

        Rational leaf_mass = census_mass_where(
            census, [](const PatternMeasure::Entry& e) { return e.pretty.graph.n() == 2; });
        CHECK(leaf_mass == Rational(1, k + 1));

        Rational total(0);
        for (const auto& [canon, entry] : census.entries) {
            (void)canon;
            total += entry.mass;
        }
        CHECK(total == Rational(1));

        // every exact-law pattern appears in the census support
        for (const auto& [canon, entry] : law.entries) {
            (void)entry;
            CHECK(census.mass_of(canon) > Rational(0));
        }
    }
}

TEST_CASE("weak discrepancy closed form at r=2, radius 1") {
    PatternMeasure law = shift_pattern_measure(kDoubling, 1);
    CHECK(weak_discrepancy(law, law) == Rational(0));

    Rational previous(1);
    for (int k = 1; k <= 6; ++k) {
        ShiftApproximation a = build_approximation(kDoubling, 2, k);
        Rational d = weak_discrepancy(law, census_pattern_measure(a, 1));
        Rational expect = k == 1 ? Rational(1, 4) : Rational(5, 8 * (k + 1));
        CHECK(d == expect);
        CHECK(d <= Rational(1, k + 1));
        CHECK(d < previous);  // non-increasing, in fact strictly decreasing
        previous = d;
    }

    PatternMeasure law0 = shift_pattern_measure(kDoubling, 0);
    CHECK_THROWS_AS(weak_discrepancy(law, law0), DomainError);
}

TEST_CASE("census is independent of the worker count") {
    ShiftApproximation a = build_approximation(kDoubling, 2, 4);
    PatternMeasure one = census_pattern_measure(a, 1, 1);
    for (unsigned workers : {2u, 3u, 8u}) {
        PatternMeasure multi = census_pattern_measure(a, 1, workers);
        REQUIRE(multi.entries.size() == one.entries.size());
        auto it = one.entries.begin();
        for (const auto& [canon, entry] : multi.entries) {
            CHECK(canon == it->first);
            CHECK(entry.mass == it->second.mass);
            CHECK(canonical_form(entry.pretty) == canonical_form(it->second.pretty));
            ++it;
        }
    }
}

TEST_CASE("acceptance verdicts") {
    // k = 1 fails at eps = 0.1: the vertex measure moves by 1/2
    ShiftApproximation small = build_approximation(kDoubling, 2, 1);
    ApproximationReport failed = is_keps_approximation(small, Rational(1, 10), 1);
    CHECK_FALSE(failed.accepted);
    CHECK(failed.invariance == Rational(1, 2));

    // eps = 1 accepts anything well-formed
    ApproximationReport loose = is_keps_approximation(small, Rational(1), 1);
    CHECK(loose.accepted);

    // moderate depth at a moderate eps
    ShiftApproximation medium = build_approximation(kDoubling, 2, 12);
    ApproximationReport ok = is_keps_approximation(medium, Rational(1, 10), 1);
    CHECK(ok.accepted);
    CHECK(ok.invariance == Rational(1, 13));
    CHECK(ok.discrepancy == Rational(5, 8 * 13));
}

TEST_CASE("ternary shift smoke test") {
    ShiftSystem ternary{3, 1};
    ShiftApproximation a = build_approximation(ternary, 1, 2);
    CHECK(a.size() == 3 * 13);
    Rational tv = total_variation(a.vertex_measure(),
                                  pushforward(a.vertex_measure(), a.action().table(0)));
    CHECK(tv == Rational(1, 3));

    PatternMeasure law = shift_pattern_measure(ternary, 1);
    Rational total(0);
    for (const auto& [canon, entry] : law.entries) {
        (void)canon;
        CHECK(entry.pretty.graph.n() == 5);  // root, image, three preimages
        total += entry.mass;
    }
    CHECK(total == Rational(1));
    CHECK(law.entries.size() == 9);
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(ShiftSystem(1, 1), DomainError);
    CHECK_THROWS_AS(ShiftSystem(2, 0), DomainError);
    CHECK_THROWS_AS(build_approximation(kDoubling, 0, 2), DomainError);
    CHECK_THROWS_AS(build_approximation(kDoubling, 2, 0), DomainError);
    CHECK_THROWS_AS(build_approximation(kDoubling, 2, 60), DomainError);
}
