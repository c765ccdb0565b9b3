#include "soficlab/monoid.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace soficlab {

namespace {

bool valid_token(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!(std::islower((unsigned char)c) || std::isdigit((unsigned char)c) || c == '_')) {
            return false;
        }
    }
    return true;
}

std::vector<std::string> letter_names(int k) {
    if (k < 1 || k > 26) throw DomainError("free monoid rank must be in 1..26");
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) names.push_back(std::string(1, (char)('a' + i)));
    return names;
}

std::vector<std::string> comm_names(int k) {
    if (k < 1) throw DomainError("free_comm rank must be positive");
    if (k <= 3) {
        std::vector<std::string> names = {"x", "y", "z"};
        names.resize(k);
        return names;
    }
    std::vector<std::string> names;
    for (int i = 1; i <= k; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

}  // namespace

MonoidSpec::MonoidSpec(std::string name, std::vector<std::string> generators,
                       std::vector<RewriteRule> rules, bool has_identity,
                       std::uint64_t normalization_budget) {
    name_ = std::move(name);
    generators_ = std::move(generators);
    rules_ = std::move(rules);
    has_identity_ = has_identity;
    budget_ = normalization_budget;
    builtin_ = Builtin::none;
    validate();
}

void MonoidSpec::validate() const {
    if (!valid_token(name_)) throw DomainError("monoid name must be a [a-z0-9_]+ token");
    if (generators_.empty()) throw DomainError("monoid needs at least one generator");
    if (budget_ == 0) throw DomainError("normalization budget must be positive");
    std::unordered_set<std::string> seen;
    for (const auto& g : generators_) {
        if (!valid_token(g)) throw DomainError("generator name '" + g + "' is not a [a-z0-9_]+ token");
        if (!seen.insert(g).second) throw DomainError("duplicate generator name '" + g + "'");
    }
    for (const auto& rule : rules_) {
        if (rule.lhs.empty()) throw DomainError("rewrite rule with empty left-hand side");
        if (builtin_ == Builtin::none && rule.lhs.size() < rule.rhs.size()) {
            throw DomainError("rewrite rule must not increase length (|lhs| >= |rhs|)");
        }
        for (auto idx : rule.lhs.letters) {
            if (idx >= generators_.size()) throw DomainError("rule letter index out of range");
        }
        for (auto idx : rule.rhs.letters) {
            if (idx >= generators_.size()) throw DomainError("rule letter index out of range");
        }
    }
}

MonoidSpec MonoidSpec::bicyclic() {
    MonoidSpec m;
    m.name_ = "bicyclic";
    m.generators_ = {"a", "b"};
    m.rules_ = {{Word({0, 1}), Word{}}};  // ab -> e
    m.has_identity_ = true;
    m.builtin_ = Builtin::bicyclic;
    m.validate();
    return m;
}

MonoidSpec MonoidSpec::bicyclic_hat() {
    MonoidSpec m;
    m.name_ = "bicyclic_hat";
    // e0 is the demoted old identity of the bicyclic monoid: ab = e0, and e0
    // absorbs against every old element. The empty word is the new identity.
    m.generators_ = {"a", "b", "e0"};
    m.rules_ = {
        {Word({0, 1}), Word({2})},  // ab -> e0
        {Word({2, 0}), Word({0})},  // e0 a -> a
        {Word({0, 2}), Word({0})},  // a e0 -> a
        {Word({2, 1}), Word({1})},  // e0 b -> b
        {Word({1, 2}), Word({1})},  // b e0 -> b
        {Word({2, 2}), Word({2})},  // e0 e0 -> e0
    };
    m.has_identity_ = true;
    m.builtin_ = Builtin::bicyclic_hat;
    m.validate();
    return m;
}

MonoidSpec MonoidSpec::int_monoid() {
    MonoidSpec m;
    m.name_ = "int_monoid";
    m.generators_ = {"a", "b"};
    m.rules_ = {
        {Word({0, 1}), Word{}},  // ab -> e
        {Word({1, 0}), Word{}},  // ba -> e
    };
    m.has_identity_ = true;
    m.builtin_ = Builtin::int_monoid;
    m.validate();
    return m;
}

MonoidSpec MonoidSpec::free_monoid(int k) {
    MonoidSpec m;
    m.name_ = "free" + std::to_string(k);
    m.generators_ = letter_names(k);
    m.has_identity_ = true;
    m.builtin_ = Builtin::free_k;
    m.builtin_param_ = k;
    m.validate();
    return m;
}

MonoidSpec MonoidSpec::free_named(std::vector<std::string> generator_names, std::string name) {
    MonoidSpec m;
    m.name_ = std::move(name);
    m.generators_ = std::move(generator_names);
    m.has_identity_ = true;
    m.builtin_ = Builtin::free_k;
    m.builtin_param_ = (int)m.generators_.size();
    m.validate();
    return m;
}

MonoidSpec MonoidSpec::free_comm(int k) {
    MonoidSpec m;
    m.name_ = "free_comm" + std::to_string(k);
    m.generators_ = comm_names(k);
    // Sorting rules x_j x_i -> x_i x_j for j > i; length-preserving,
    // terminating under leftmost rewriting (bubble sort).
    for (std::uint32_t i = 0; i < (std::uint32_t)k; ++i) {
        for (std::uint32_t j = i + 1; j < (std::uint32_t)k; ++j) {
            m.rules_.push_back({Word({j, i}), Word({i, j})});
        }
    }
    m.has_identity_ = true;
    m.builtin_ = Builtin::free_comm_k;
    m.builtin_param_ = k;
    m.validate();
    return m;
}

MonoidSpec MonoidSpec::cyclic(int n) {
    if (n < 1) throw DomainError("cyclic order must be positive");
    MonoidSpec m;
    m.name_ = "cyclic" + std::to_string(n);
    m.generators_ = {"a"};
    m.rules_ = {{Word(std::vector<std::uint32_t>(n, 0)), Word{}}};  // a^n -> e
    m.has_identity_ = true;
    m.builtin_ = Builtin::cyclic_n;
    m.builtin_param_ = n;
    m.validate();
    return m;
}

MonoidSpec MonoidSpec::from_name(const std::string& name) {
    if (name == "bicyclic") return bicyclic();
    if (name == "bicyclic_hat") return bicyclic_hat();
    if (name == "int_monoid") return int_monoid();
    auto parse_param = [&](const std::string& prefix) -> std::optional<int> {
        if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) {
            return std::nullopt;
        }
        std::string digits = name.substr(prefix.size());
        for (char c : digits) {
            if (!std::isdigit((unsigned char)c)) return std::nullopt;
        }
        return std::stoi(digits);
    };
    if (auto k = parse_param("free_comm")) return free_comm(*k);
    if (auto k = parse_param("free")) return free_monoid(*k);
    if (auto n = parse_param("cyclic")) return cyclic(*n);
    throw DomainError("unknown built-in monoid '" + name + "'");
}

Word MonoidSpec::identity_word() const {
    if (!has_identity_) throw DomainError("semigroup '" + name_ + "' has no identity");
    return Word{};
}

Word MonoidSpec::normalize_by_rewriting(const Word& w) const {
    for (auto idx : w.letters) {
        if (idx >= generators_.size()) throw DomainError("word letter index out of range");
    }
    Word cur = w;
    std::uint64_t steps = 0;
    for (;;) {
        bool applied = false;
        for (std::size_t pos = 0; pos < cur.letters.size() && !applied; ++pos) {
            for (const auto& rule : rules_) {
                const auto& lhs = rule.lhs.letters;
                if (lhs.size() > cur.letters.size() - pos) continue;
                if (!std::equal(lhs.begin(), lhs.end(), cur.letters.begin() + (std::ptrdiff_t)pos)) continue;
                std::vector<std::uint32_t> next;
                next.reserve(cur.letters.size() - lhs.size() + rule.rhs.size());
                next.insert(next.end(), cur.letters.begin(), cur.letters.begin() + (std::ptrdiff_t)pos);
                next.insert(next.end(), rule.rhs.letters.begin(), rule.rhs.letters.end());
                next.insert(next.end(), cur.letters.begin() + (std::ptrdiff_t)(pos + lhs.size()), cur.letters.end());
                cur.letters = std::move(next);
                applied = true;
                if (++steps > budget_) {
                    throw BudgetExhaustedError("normalization budget exhausted in '" + name_ +
                                               "' after " + std::to_string(budget_) + " steps");
                }
                break;
            }
        }
        if (!applied) return cur;
    }
}

Word MonoidSpec::normalize(const Word& w) const {
    for (auto idx : w.letters) {
        if (idx >= generators_.size()) throw DomainError("word letter index out of range");
    }
    switch (builtin_) {
        case Builtin::free_k:
            return w;
        case Builtin::free_comm_k: {
            Word out = w;
            std::sort(out.letters.begin(), out.letters.end());
            return out;
        }
        case Builtin::cyclic_n: {
            std::size_t count = w.letters.size() % (std::size_t)builtin_param_;
            return Word(std::vector<std::uint32_t>(count, 0));
        }
        case Builtin::int_monoid: {
            std::int64_t balance = 0;
            for (auto idx : w.letters) balance += (idx == 0) ? 1 : -1;
            if (balance >= 0) return Word(std::vector<std::uint32_t>((std::size_t)balance, 0));
            return Word(std::vector<std::uint32_t>((std::size_t)(-balance), 1));
        }
        case Builtin::bicyclic: {
            // Fold to b^i a^j: appending a bumps j; appending b cancels one a
            // or bumps i.
            std::uint64_t i = 0, j = 0;
            for (auto idx : w.letters) {
                if (idx == 0) {
                    ++j;
                } else if (j > 0) {
                    --j;
                } else {
                    ++i;
                }
            }
            std::vector<std::uint32_t> out;
            out.insert(out.end(), (std::size_t)i, 1);
            out.insert(out.end(), (std::size_t)j, 0);
            return Word(std::move(out));
        }
        case Builtin::bicyclic_hat: {
            // States: the new identity (empty), the demoted old identity e0,
            // or an old element b^i a^j != e0. ab folds back to e0.
            enum class St { identity, e0, old_elem };
            St st = St::identity;
            std::uint64_t i = 0, j = 0;
            for (auto idx : w.letters) {
                if (idx == 2) {  // e0 absorbs unless nothing has been seen yet
                    if (st == St::identity) st = St::e0;
                    continue;
                }
                if (st != St::old_elem) {
                    st = St::old_elem;
                    i = j = 0;
                }
                if (idx == 0) {
                    ++j;
                } else if (j > 0) {
                    --j;
                } else {
                    ++i;
                }
                if (i == 0 && j == 0) st = St::e0;  // a cancelled against b
            }
            if (st == St::identity) return Word{};
            if (st == St::e0) return Word({2});
            std::vector<std::uint32_t> out;
            out.insert(out.end(), (std::size_t)i, 1);
            out.insert(out.end(), (std::size_t)j, 0);
            return Word(std::move(out));
        }
        case Builtin::none:
            return normalize_by_rewriting(w);
    }
    throw DomainError("unreachable");
}

Word MonoidSpec::multiply(const Word& x, const Word& y) const {
    Word cat;
    cat.letters.reserve(x.size() + y.size());
    cat.letters.insert(cat.letters.end(), x.letters.begin(), x.letters.end());
    cat.letters.insert(cat.letters.end(), y.letters.begin(), y.letters.end());
    return normalize(cat);
}

MonoidSpec MonoidSpec::adjoin_identity() const {
    MonoidSpec out;
    out.name_ = name_ + "_hat";
    out.generators_ = generators_;
    out.budget_ = budget_;
    out.builtin_ = Builtin::none;
    out.has_identity_ = true;

    if (!has_identity_) {
        // Semigroup case: the empty word simply becomes the fresh identity.
        out.rules_ = rules_;
        out.validate();
        return out;
    }

    // Demote the old identity to an explicit generator. It keeps absorbing
    // against every old generator (old products are unchanged), but the
    // empty word now denotes the fresh identity, a distinct element.
    std::string demoted = "e0";
    int suffix = 0;
    while (std::find(out.generators_.begin(), out.generators_.end(), demoted) != out.generators_.end()) {
        demoted = "e" + std::to_string(++suffix);
    }
    std::uint32_t e0 = (std::uint32_t)out.generators_.size();
    out.generators_.push_back(demoted);

    for (const auto& rule : rules_) {
        RewriteRule r = rule;
        if (r.rhs.empty()) r.rhs = Word({e0});
        out.rules_.push_back(std::move(r));
    }
    for (std::uint32_t g = 0; g < e0; ++g) {
        out.rules_.push_back({Word({e0, g}), Word({g})});
        out.rules_.push_back({Word({g, e0}), Word({g})});
    }
    out.rules_.push_back({Word({e0, e0}), Word({e0})});
    out.validate();
    return out;
}

bool MonoidSpec::single_char_names(const std::vector<std::string>& names) {
    return std::all_of(names.begin(), names.end(),
                       [](const std::string& n) { return n.size() == 1; });
}

std::optional<std::uint32_t> MonoidSpec::generator_index(const std::string& name) const {
    for (std::uint32_t i = 0; i < generators_.size(); ++i) {
        if (generators_[i] == name) return i;
    }
    return std::nullopt;
}

std::string MonoidSpec::word_to_string(const Word& w) const {
    if (w.empty()) return has_identity_ ? "e" : "";
    const bool compact = single_char_names(generators_);
    std::string out;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (!compact && i > 0) out += ' ';
        out += generators_.at(w.letters[i]);
    }
    return out;
}

Word MonoidSpec::parse_word(const std::string& text) const {
    if (text.empty()) return Word{};
    if (text == "e" && has_identity_ && !generator_index("e")) return Word{};

    Word w;
    if (text.find(' ') != std::string::npos) {
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t end = text.find(' ', pos);
            if (end == std::string::npos) end = text.size();
            if (end > pos) {
                std::string tok = text.substr(pos, end - pos);
                auto idx = generator_index(tok);
                if (!idx) throw DomainError("unknown generator '" + tok + "' in word '" + text + "'");
                w.letters.push_back(*idx);
            }
            pos = end + 1;
        }
        return w;
    }

    // Greedy longest-match tokenization.
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t best = 0;
        std::uint32_t best_idx = 0;
        for (std::uint32_t i = 0; i < generators_.size(); ++i) {
            const auto& g = generators_[i];
            if (g.size() > best && g.size() <= text.size() - pos &&
                text.compare(pos, g.size(), g) == 0) {
                best = g.size();
                best_idx = i;
            }
        }
        if (best == 0) {
            throw DomainError("cannot tokenize word '" + text + "' at position " + std::to_string(pos));
        }
        w.letters.push_back(best_idx);
        pos += best;
    }
    return w;
}

}  // namespace soficlab
