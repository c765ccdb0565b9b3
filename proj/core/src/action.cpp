#include "soficlab/action.hpp"

#include <algorithm>

#include "soficlab/canonical.hpp"

namespace soficlab {

FiniteAction::FiniteAction(MonoidSpec monoid, std::uint32_t n, std::vector<Word> K,
                           std::vector<Table> tables)
    : monoid_(std::move(monoid)), n_(n), K_(std::move(K)), tables_(std::move(tables)) {
    if (n_ == 0) throw DomainError("action on empty set");
    if (K_.empty()) throw DomainError("K must be nonempty");
    if (tables_.size() != K_.size()) throw DomainError("one table per element of K required");
    for (std::size_t i = 0; i < K_.size(); ++i) {
        if (K_[i] != monoid_.normalize(K_[i])) {
            throw DomainError("K element " + monoid_.word_to_string(K_[i]) + " is not a normal form");
        }
        for (std::size_t j = i + 1; j < K_.size(); ++j) {
            if (K_[i] == K_[j]) {
                throw DomainError("K elements must be pairwise distinct normal forms");
            }
        }
        if (tables_[i].size() != n_) {
            throw DomainError("table for " + monoid_.word_to_string(K_[i]) + " has wrong length");
        }
        for (auto y : tables_[i]) {
            if (y >= n_) {
                throw DomainError("table entry out of range for " + monoid_.word_to_string(K_[i]));
            }
        }
    }
}

std::int64_t FiniteAction::k_index(const Word& w) const {
    for (std::size_t i = 0; i < K_.size(); ++i) {
        if (K_[i] == w) return (std::int64_t)i;
    }
    return -1;
}

Rational hamming(const Table& f, const Table& g) {
    if (f.size() != g.size()) throw DomainError("hamming: length mismatch");
    if (f.empty()) throw DomainError("hamming: empty tables");
    std::int64_t differ = 0;
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (f[x] != g[x]) ++differ;
    }
    return Rational(differ, (std::int64_t)f.size());
}

DefectReport defects(const FiniteAction& a) {
    const std::int64_t n = a.n();
    const auto& K = a.K();

    // Work in disagreement counts; divide by n once at the end.
    std::int64_t mult = 0, identity = 0, separation = 0;

    for (std::size_t s = 0; s < K.size(); ++s) {
        for (std::size_t t = 0; t < K.size(); ++t) {
            Word product = a.monoid().multiply(K[s], K[t]);
            std::int64_t st = a.k_index(product);
            if (st < 0) continue;
            const Table& fs = a.table(s);
            const Table& ft = a.table(t);
            const Table& fst = a.table((std::size_t)st);
            std::int64_t differ = 0;
            for (std::int64_t x = 0; x < n; ++x) {
                if (fst[(std::size_t)x] != fs[ft[(std::size_t)x]]) ++differ;
            }
            mult = std::max(mult, differ);
        }
    }

    if (a.monoid().has_identity()) {
        std::int64_t e = a.k_index(a.monoid().identity_word());
        if (e >= 0) {
            const Table& fe = a.table((std::size_t)e);
            std::int64_t differ = 0;
            for (std::int64_t x = 0; x < n; ++x) {
                if (fe[(std::size_t)x] != (std::uint32_t)x) ++differ;
            }
            identity = differ;
        }
    }

    for (std::size_t s = 0; s < K.size(); ++s) {
        for (std::size_t t = s + 1; t < K.size(); ++t) {
            std::int64_t agree = 0;
            const Table& fs = a.table(s);
            const Table& ft = a.table(t);
            for (std::int64_t x = 0; x < n; ++x) {
                if (fs[(std::size_t)x] == ft[(std::size_t)x]) ++agree;
            }
            separation = std::max(separation, agree);  // 1 - d_Ham = agree/n
        }
    }

    DefectReport report;
    report.eps_mult = Rational(mult, n);
    report.eps_identity = Rational(identity, n);
    report.eps_separation = Rational(separation, n);
    report.eps_overall =
        std::max({report.eps_mult, report.eps_identity, report.eps_separation});
    return report;
}

bool is_keps_action(const FiniteAction& a, const Rational& eps) {
    return defects(a).eps_overall <= eps;
}

Rational invariance_defect(const FiniteAction& a, const DiscreteMeasure& mu) {
    if (mu.size() != a.n()) throw DomainError("invariance_defect: size mismatch");
    Rational worst(0);
    for (std::size_t s = 0; s < a.K().size(); ++s) {
        worst = std::max(worst, total_variation(mu, pushforward(mu, a.table(s))));
    }
    return worst;
}

std::vector<std::pair<Word, Rational>> invertibility_defect(const FiniteAction& a) {
    std::vector<std::pair<Word, Rational>> out;
    out.reserve(a.K().size());
    for (std::size_t s = 0; s < a.K().size(); ++s) {
        std::vector<std::uint32_t> preimages(a.n(), 0);
        for (auto y : a.table(s)) ++preimages[y];
        std::int64_t bad = 0;
        for (auto c : preimages) {
            if (c != 1) ++bad;
        }
        out.emplace_back(a.K()[s], Rational(bad, (std::int64_t)a.n()));
    }
    return out;
}

LabeledDigraph graph_from_action(const FiniteAction& a,
                                 const std::vector<std::size_t>& label_indices) {
    std::vector<LabeledDigraph::EdgeTriple> edges;
    edges.reserve((std::size_t)a.n() * label_indices.size());
    for (std::size_t k : label_indices) {
        if (k >= a.K().size()) throw DomainError("graph_from_action: label index out of range");
        std::string label = a.monoid().word_to_string(a.K()[k]);
        const Table& f = a.table(k);
        for (std::uint32_t x = 0; x < a.n(); ++x) {
            edges.emplace_back(x, label, f[x]);
        }
    }
    return LabeledDigraph(a.n(), edges);
}

LabeledDigraph weiss_graph(const FiniteAction& a) {
    std::vector<LabeledDigraph::EdgeTriple> edges;
    edges.reserve((std::size_t)a.n() * a.monoid().generators().size());
    for (std::uint32_t g = 0; g < a.monoid().generators().size(); ++g) {
        std::int64_t k = a.k_index(a.monoid().normalize(Word({g})));
        if (k < 0) {
            throw DomainError("weiss_graph: generator '" + a.monoid().generators()[g] +
                              "' has no table in K");
        }
        const Table& f = a.table((std::size_t)k);
        for (std::uint32_t x = 0; x < a.n(); ++x) {
            edges.emplace_back(x, a.monoid().generators()[g], f[x]);
        }
    }
    return LabeledDigraph(a.n(), edges);
}

Rational weiss_fraction(const LabeledDigraph& g, const RootedBall& model, std::uint32_t r) {
    if (model.metric_mode != MetricMode::directed) {
        throw DomainError("weiss_fraction: model ball must use the directed metric");
    }
    if (model.radius != r) {
        throw DomainError("weiss_fraction: model radius does not match r");
    }
    const std::string model_canon = canonical_form_graph(model.graph, model.root,
                                                         /*use_vertex_labels=*/false);
    std::int64_t hits = 0;
    for (std::uint32_t x = 0; x < g.n(); ++x) {
        RootedBall ball = ball_at(g, x, r, MetricMode::directed);
        if (canonical_form_graph(ball.graph, ball.root, false) == model_canon) ++hits;
    }
    return Rational(hits, (std::int64_t)g.n());
}

}  // namespace soficlab
