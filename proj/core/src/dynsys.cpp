#include "soficlab/dynsys.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace soficlab {

namespace {

constexpr std::uint64_t kMaxApproximationSize = UINT64_C(1) << 26;
constexpr std::uint64_t kMaxWindowCount = UINT64_C(1) << 20;

std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

void append_digits(std::string& s, std::uint64_t value, int len, int base) {
    std::size_t at = s.size();
    s.resize(at + (std::size_t)len);
    for (int i = len - 1; i >= 0; --i) {
        s[at + (std::size_t)i] = (char)('0' + (int)(value % (std::uint64_t)base));
        value /= (std::uint64_t)base;
    }
}

MonoidSpec shift_iterates_monoid() { return MonoidSpec::free_named({"f"}, "shift"); }

std::string power_label(int i) { return std::string((std::size_t)i, 'f'); }

// Reverse adjacency of a table in CSR form; preimage lists come out sorted.
struct Csr {
    std::vector<std::uint32_t> start;
    std::vector<std::uint32_t> items;

    static Csr build(const Table& t) {
        Csr c;
        c.start.assign(t.size() + 1, 0);
        for (auto y : t) ++c.start[y + 1];
        for (std::size_t i = 1; i < c.start.size(); ++i) c.start[i] += c.start[i - 1];
        c.items.resize(t.size());
        std::vector<std::uint32_t> cursor(c.start.begin(), c.start.end() - 1);
        for (std::uint32_t x = 0; x < t.size(); ++x) c.items[cursor[t[x]]++] = x;
        return c;
    }
};

void put_u32_key(std::string& out, std::uint32_t x) {
    out.push_back((char)(x & 0xff));
    out.push_back((char)((x >> 8) & 0xff));
    out.push_back((char)((x >> 16) & 0xff));
    out.push_back((char)((x >> 24) & 0xff));
}

// A radius ball extracted around one vertex, vertices ordered by
// (distance, truncated label, tie break), root first.
struct LocalBall {
    std::vector<std::string> labels;
    std::vector<std::tuple<std::uint32_t, int, std::uint32_t>> edges;  // (u, power, w)

    // Exact content key for canon caching; equal keys mean equal balls.
    std::string key() const {
        std::string k;
        put_u32_key(k, (std::uint32_t)labels.size());
        for (const auto& l : labels) {
            put_u32_key(k, (std::uint32_t)l.size());
            k += l;
        }
        put_u32_key(k, (std::uint32_t)edges.size());
        for (const auto& [u, i, w] : edges) {
            put_u32_key(k, u);
            put_u32_key(k, (std::uint32_t)i);
            put_u32_key(k, w);
        }
        return k;
    }

    RootedBall to_ball(int radius) const {
        std::vector<LabeledDigraph::EdgeTriple> triples;
        triples.reserve(edges.size());
        for (const auto& [u, i, w] : edges) {
            triples.emplace_back(u, power_label(i), w);
        }
        LabeledDigraph g((std::uint32_t)labels.size(), triples, labels);
        return RootedBall{std::move(g), 0, (std::uint32_t)radius, MetricMode::undirected};
    }
};

// Ball extraction in the finite approximation graph with edges
// x -> psi_{f^i}(x), i = 1..radius.
struct ApproxExtractor {
    const ShiftApproximation& a;
    int radius;
    std::vector<const Table*> tables;
    std::vector<Csr> reverse;

    ApproxExtractor(const ShiftApproximation& approx, int rad) : a(approx), radius(rad) {
        for (int i = 0; i < radius; ++i) {
            tables.push_back(&a.action().table((std::size_t)i));
            reverse.push_back(Csr::build(*tables.back()));
        }
    }

    LocalBall extract(std::uint32_t v) const {
        std::unordered_map<std::uint32_t, int> dist;
        std::vector<std::uint32_t> order;
        dist.emplace(v, 0);
        order.push_back(v);
        std::size_t head = 0;
        while (head < order.size()) {
            std::uint32_t u = order[head++];
            int du = dist[u];
            if (du == radius) continue;
            auto visit = [&](std::uint32_t w) {
                if (dist.emplace(w, du + 1).second) order.push_back(w);
            };
            for (int i = 0; i < radius; ++i) {
                visit((*tables[i])[u]);
                const Csr& rev = reverse[i];
                for (std::uint32_t p = rev.start[u]; p < rev.start[u + 1]; ++p) {
                    visit(rev.items[p]);
                }
            }
        }

        std::vector<std::pair<std::pair<int, std::string>, std::uint32_t>> keyed;
        keyed.reserve(order.size());
        for (std::uint32_t u : order) {
            keyed.push_back({{dist[u], a.label_prefix(u, radius)}, u});
        }
        std::sort(keyed.begin(), keyed.end());

        std::unordered_map<std::uint32_t, std::uint32_t> local;
        LocalBall ball;
        ball.labels.reserve(keyed.size());
        for (std::uint32_t i = 0; i < keyed.size(); ++i) {
            local.emplace(keyed[i].second, i);
            ball.labels.push_back(std::move(keyed[i].first.second));
        }
        for (std::uint32_t i = 0; i < keyed.size(); ++i) {
            std::uint32_t u = keyed[i].second;
            for (int p = 0; p < radius; ++p) {
                auto it = local.find((*tables[p])[u]);
                if (it != local.end()) {
                    ball.edges.emplace_back(i, p + 1, it->second);
                }
            }
        }
        std::sort(ball.edges.begin(), ball.edges.end());
        return ball;
    }
};

struct CensusAccumulator {
    struct Slot {
        std::int64_t numerator = 0;
        std::uint32_t first_vertex = 0;
        RootedBall ball;
    };

    std::unordered_map<std::string, std::string> key_to_canon;
    std::map<std::string, Slot> by_canon;

    void add(const LocalBall& ball, int radius, std::uint32_t vertex, std::int64_t numerator) {
        std::string key = ball.key();
        auto it = key_to_canon.find(key);
        if (it == key_to_canon.end()) {
            RootedBall rooted = ball.to_ball(radius);
            std::string canon = canonical_form(rooted);
            it = key_to_canon.emplace(std::move(key), canon).first;
            auto slot = by_canon.find(canon);
            if (slot == by_canon.end()) {
                by_canon.emplace(canon, Slot{0, vertex, std::move(rooted)});
            }
        }
        by_canon[it->second].numerator += numerator;
    }
};

}  // namespace

ShiftSystem::ShiftSystem(int branching_, int n_powers_)
    : branching(branching_), n_powers(n_powers_) {
    if (branching < 2 || branching > 10) throw DomainError("shift branching must be in 2..10");
    if (n_powers < 1 || n_powers > 16) throw DomainError("n_powers must be in 1..16");
}

ShiftApproximation::ShiftApproximation(ShiftSystem system, int r, int k)
    : system_(system),
      r_(r),
      k_(k),
      size_(0),
      comp_size_(0),
      common_den_(0),
      action_(shift_iterates_monoid(), 1, {Word({0})}, {Table{0}}),
      measure_(DiscreteMeasure::uniform(1)) {
    if (r < 1) throw DomainError("approximation requires r >= 1");
    if (k < 1) throw DomainError("approximation requires k >= 1");
    const std::uint64_t b = (std::uint64_t)system_.branching;

    level_offset_.assign((std::size_t)k + 2, 0);
    for (int l = 0; l <= k; ++l) {
        level_offset_[(std::size_t)l + 1] = level_offset_[(std::size_t)l] + ipow(b, l);
    }
    comp_size_ = level_offset_[(std::size_t)k + 1];
    std::uint64_t components = ipow(b, r);
    std::uint64_t total = components * comp_size_;
    if (total > kMaxApproximationSize) {
        throw DomainError("approximation too large: " + std::to_string(total) + " vertices");
    }
    size_ = (std::uint32_t)total;

    __int128 den = (__int128)ipow(b, r + k) * (k + 1);
    if (den > (INT64_C(1) << 40)) throw DomainError("approximation measure denominator too large");
    common_den_ = (std::int64_t)den;

    // psi_f, then the higher iterates as exact compositions.
    Table shift_table(size_);
    for (std::uint32_t v = 0; v < size_; ++v) shift_table[v] = apply_shift(v);
    std::vector<Table> tables;
    std::vector<Word> K;
    tables.push_back(std::move(shift_table));
    K.push_back(Word({0}));
    for (int i = 1; i < system_.n_powers; ++i) {
        const Table& f = tables[0];
        const Table& prev = tables.back();
        Table next(size_);
        for (std::uint32_t v = 0; v < size_; ++v) next[v] = f[prev[v]];
        tables.push_back(std::move(next));
        K.push_back(Word(std::vector<std::uint32_t>((std::size_t)i + 1, 0)));
    }
    action_ = FiniteAction(shift_iterates_monoid(), size_, std::move(K), std::move(tables));

    std::vector<Rational> weights;
    weights.reserve(size_);
    for (std::uint32_t v = 0; v < size_; ++v) {
        weights.emplace_back(mass_numerator(v), common_den_);
    }
    measure_ = DiscreteMeasure(std::move(weights));
}

std::uint32_t ShiftApproximation::component(std::uint32_t v) const {
    return (std::uint32_t)(v / comp_size_);
}

int ShiftApproximation::level(std::uint32_t v) const {
    std::uint64_t within = v % comp_size_;
    int l = (int)(std::upper_bound(level_offset_.begin(), level_offset_.end(), within) -
                  level_offset_.begin()) -
            1;
    return l;
}

std::string ShiftApproximation::label(std::uint32_t v) const {
    int l = level(v);
    std::uint64_t within = v % comp_size_;
    std::uint64_t offset = within - level_offset_[(std::size_t)l];
    std::string s;
    s.reserve((std::size_t)(r_ + l));
    append_digits(s, offset, l, system_.branching);
    append_digits(s, component(v), r_, system_.branching);
    return s;
}

std::string ShiftApproximation::label_prefix(std::uint32_t v, int len) const {
    int l = level(v);
    if (len < 0 || len > r_ + l) throw DomainError("label prefix length out of range");
    std::uint64_t within = v % comp_size_;
    std::uint64_t offset = within - level_offset_[(std::size_t)l];
    std::string s;
    if (len <= l) {
        // Leading `len` digits of the offset's l-digit expansion.
        std::uint64_t tail = offset % ipow((std::uint64_t)system_.branching, l - len);
        append_digits(s, (offset - tail) / ipow((std::uint64_t)system_.branching, l - len), len,
                      system_.branching);
        return s;
    }
    append_digits(s, offset, l, system_.branching);
    std::uint64_t comp = component(v);
    int from_comp = len - l;
    std::uint64_t drop = ipow((std::uint64_t)system_.branching, r_ - from_comp);
    append_digits(s, comp / drop, from_comp, system_.branching);
    return s;
}

std::uint32_t ShiftApproximation::index_of(std::uint32_t component, int level,
                                           std::uint64_t offset) const {
    return (std::uint32_t)((std::uint64_t)component * comp_size_ +
                           level_offset_[(std::size_t)level] + offset);
}

std::uint32_t ShiftApproximation::apply_shift(std::uint32_t v) const {
    const std::uint64_t b = (std::uint64_t)system_.branching;
    int l = level(v);
    std::uint64_t within = v % comp_size_;
    std::uint32_t c = component(v);
    if (l >= 1) {
        std::uint64_t offset = within - level_offset_[(std::size_t)l];
        // Drop the most significant prepended digit: the parent.
        std::uint64_t parent_offset = offset % ipow(b, l - 1);
        return index_of(c, l - 1, parent_offset);
    }
    // Root redirection: shift the component string left, append '0'.
    std::uint64_t c_next = (c % ipow(b, r_ - 1)) * b;
    return index_of((std::uint32_t)c_next, 0, 0);
}

std::int64_t ShiftApproximation::mass_numerator(std::uint32_t v) const {
    return (std::int64_t)ipow((std::uint64_t)system_.branching, k_ - level(v));
}

ShiftApproximation build_approximation(const ShiftSystem& system, int r, int k) {
    return ShiftApproximation(system, r, k);
}

LabeledDigraph preimage_tree(const ShiftSystem& system, const std::string& omega, int k) {
    if (k < 0) throw DomainError("preimage tree depth must be nonnegative");
    if (omega.empty()) throw DomainError("cylinder string must be nonempty");
    for (char c : omega) {
        if (c < '0' || c >= '0' + system.branching) {
            throw DomainError("cylinder string digit out of range for branching");
        }
    }
    const std::uint64_t b = (std::uint64_t)system.branching;
    std::vector<std::uint64_t> offsets((std::size_t)k + 2, 0);
    for (int l = 0; l <= k; ++l) offsets[(std::size_t)l + 1] = offsets[(std::size_t)l] + ipow(b, l);
    std::uint64_t total = offsets[(std::size_t)k + 1];
    if (total > kMaxWindowCount) throw DomainError("preimage tree too large");

    std::vector<std::string> labels((std::size_t)total);
    std::vector<LabeledDigraph::EdgeTriple> edges;
    for (int l = 0; l <= k; ++l) {
        for (std::uint64_t d = 0; d < ipow(b, l); ++d) {
            std::string s;
            append_digits(s, d, l, system.branching);
            s += omega;
            std::uint64_t idx = offsets[(std::size_t)l] + d;
            labels[idx] = std::move(s);
            if (l >= 1) {
                std::uint64_t parent = offsets[(std::size_t)l - 1] + d % ipow(b, l - 1);
                edges.emplace_back((std::uint32_t)idx, "f", (std::uint32_t)parent);
            }
        }
    }
    return LabeledDigraph((std::uint32_t)total, edges, std::move(labels));
}

SchreierPattern schreier_pattern_at(const ShiftApproximation& a, std::uint32_t v, int radius) {
    if (v >= a.size()) throw DomainError("vertex out of range");
    if (radius < 0 || radius > a.r()) throw DomainError("pattern radius must be in 0..r");
    if (radius > a.system().n_powers) {
        throw DomainError("pattern radius exceeds the number of shift powers");
    }
    ApproxExtractor extractor(a, radius);
    LocalBall local = extractor.extract(v);
    RootedBall ball = local.to_ball(radius);
    std::string canon = canonical_form(ball);
    return SchreierPattern{std::move(ball), std::move(canon)};
}

PatternMeasure census_pattern_measure(const ShiftApproximation& a, int radius, unsigned workers) {
    if (radius < 0 || radius > a.r()) throw DomainError("pattern radius must be in 0..r");
    if (radius > a.system().n_powers) {
        throw DomainError("pattern radius exceeds the number of shift powers");
    }
    if (workers == 0) workers = 1;

    ApproxExtractor extractor(a, radius);
    std::uint32_t n = a.size();
    unsigned used = (unsigned)std::min<std::uint64_t>(workers, n);
    std::vector<CensusAccumulator> accs(used);
    {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < used; ++w) {
            std::uint32_t lo = (std::uint32_t)((std::uint64_t)n * w / used);
            std::uint32_t hi = (std::uint32_t)((std::uint64_t)n * (w + 1) / used);
            threads.emplace_back([&a, &extractor, &accs, w, lo, hi, radius]() {
                CensusAccumulator& acc = accs[w];
                for (std::uint32_t v = lo; v < hi; ++v) {
                    acc.add(extractor.extract(v), radius, v, a.mass_numerator(v));
                }
            });
        }
        for (auto& t : threads) t.join();
    }

    PatternMeasure out;
    out.radius = radius;
    std::map<std::string, CensusAccumulator::Slot> merged;
    for (auto& acc : accs) {
        for (auto& [canon, slot] : acc.by_canon) {
            auto it = merged.find(canon);
            if (it == merged.end()) {
                merged.emplace(canon, std::move(slot));
            } else {
                it->second.numerator += slot.numerator;
                if (slot.first_vertex < it->second.first_vertex) {
                    it->second.first_vertex = slot.first_vertex;
                    it->second.ball = std::move(slot.ball);
                }
            }
        }
    }
    for (auto& [canon, slot] : merged) {
        out.entries.emplace(
            canon, PatternMeasure::Entry{std::move(slot.ball),
                                         Rational(slot.numerator, a.mass_denominator())});
    }
    return out;
}

PatternMeasure shift_pattern_measure(const ShiftSystem& system, int radius) {
    if (radius < 0) throw DomainError("pattern radius must be nonnegative");
    if (radius > 3) throw RadiusTooLargeError("exact pattern law supported only for radius <= 3");
    const int b = system.branching;
    const int window = radius * radius + radius;
    std::uint64_t assignments = ipow((std::uint64_t)b, window);
    if (assignments > kMaxWindowCount) {
        throw RadiusTooLargeError("digit window too large for branching " + std::to_string(b));
    }

    PatternMeasure out;
    out.radius = radius;
    std::unordered_map<std::string, std::string> key_to_canon;
    std::map<std::string, std::pair<RootedBall, std::int64_t>> merged;

    for (std::uint64_t asg = 0; asg < assignments; ++asg) {
        std::string root;
        append_digits(root, asg, window, b);

        // Grand-orbit points are finite digit windows: following f^i drops i
        // leading digits, preimages under f^i prepend i digits. Equal windows
        // denote equal points, and the window is long enough that every label
        // below keeps `radius` digits.
        std::unordered_map<std::string, int> dist;
        std::vector<std::string> order;
        dist.emplace(root, 0);
        order.push_back(root);
        std::size_t head = 0;
        while (head < order.size()) {
            std::string u = order[head++];
            int du = dist[u];
            if (du == radius) continue;
            auto visit = [&](const std::string& w) {
                if (dist.emplace(w, du + 1).second) order.push_back(w);
            };
            for (int i = 1; i <= radius; ++i) {
                visit(u.substr((std::size_t)i));
                for (std::uint64_t d = 0; d < ipow((std::uint64_t)b, i); ++d) {
                    std::string pre;
                    append_digits(pre, d, i, b);
                    visit(pre + u);
                }
            }
        }

        std::vector<std::pair<std::pair<int, std::string>, std::string>> keyed;
        keyed.reserve(order.size());
        for (auto& u : order) {
            keyed.push_back({{dist[u], u.substr(0, (std::size_t)radius)}, u});
        }
        std::sort(keyed.begin(), keyed.end());
        std::unordered_map<std::string, std::uint32_t> local;
        LocalBall ball;
        for (std::uint32_t i = 0; i < keyed.size(); ++i) {
            local.emplace(keyed[i].second, i);
            ball.labels.push_back(keyed[i].first.second);
        }
        for (std::uint32_t i = 0; i < keyed.size(); ++i) {
            const std::string& u = keyed[i].second;
            for (int p = 1; p <= radius; ++p) {
                auto it = local.find(u.substr((std::size_t)p));
                if (it != local.end()) ball.edges.emplace_back(i, p, it->second);
            }
        }
        std::sort(ball.edges.begin(), ball.edges.end());

        std::string key = ball.key();
        auto it = key_to_canon.find(key);
        if (it == key_to_canon.end()) {
            RootedBall rooted = ball.to_ball(radius);
            std::string canon = canonical_form(rooted);
            it = key_to_canon.emplace(std::move(key), canon).first;
            merged.emplace(canon, std::make_pair(std::move(rooted), (std::int64_t)0));
        }
        merged.at(it->second).second += 1;
    }

    for (auto& [canon, entry] : merged) {
        out.entries.emplace(canon, PatternMeasure::Entry{std::move(entry.first),
                                                         Rational(entry.second,
                                                                  (std::int64_t)assignments)});
    }
    return out;
}

Rational weak_discrepancy(const PatternMeasure& p, const PatternMeasure& q) {
    if (p.radius != q.radius) throw DomainError("weak_discrepancy: radius mismatch");
    Rational worst(0);
    for (const auto& [canon, entry] : p.entries) {
        worst = std::max(worst, (entry.mass - q.mass_of(canon)).abs());
    }
    for (const auto& [canon, entry] : q.entries) {
        worst = std::max(worst, (entry.mass - p.mass_of(canon)).abs());
    }
    return worst;
}

ApproximationReport is_keps_approximation(const ShiftApproximation& a, const Rational& eps,
                                          int radius, unsigned workers) {
    ApproximationReport report;
    report.action_defects = defects(a.action());
    report.invariance = invariance_defect(a.action(), a.vertex_measure());
    PatternMeasure truth = shift_pattern_measure(a.system(), radius);
    PatternMeasure census = census_pattern_measure(a, radius, workers);
    report.discrepancy = weak_discrepancy(truth, census);
    report.accepted = report.action_defects.eps_overall <= eps && report.invariance <= eps &&
                      report.discrepancy <= eps;
    return report;
}

}  // namespace soficlab
