#ifndef SOFICLAB_MONOID_HPP
#define SOFICLAB_MONOID_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "soficlab/errors.hpp"

namespace soficlab {

// A word over the generators of a MonoidSpec, stored as generator indices.
// The empty word denotes the identity element whenever the spec has one.
struct Word {
    std::vector<std::uint32_t> letters;

    Word() = default;
    explicit Word(std::vector<std::uint32_t> ls) : letters(std::move(ls)) {}

    bool empty() const { return letters.empty(); }
    std::size_t size() const { return letters.size(); }

    bool operator==(const Word&) const = default;
    auto operator<=>(const Word&) const = default;
};

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 0xcbf29ce484222325ull;
        for (auto x : w.letters) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

struct RewriteRule {
    Word lhs;
    Word rhs;
};

// A finitely presented monoid (or semigroup, when has_identity is false)
// together with a normalization procedure.
//
// Normal forms realize element equality: two words are equal in the monoid
// iff their normal forms are identical letter sequences. Registered built-ins
// carry a closed-form normalization used as the production path; the generic
// string-rewriting engine (leftmost match, first rule in declaration order,
// repeated to fixpoint) is always available as an independent cross-check.
//
// User-supplied rule sets are TRUSTED to be confluent and normalizing; this
// is not verified (no Knuth-Bendix completion). Non-terminating systems are
// caught by the per-word rewrite-step budget, never silently.
class MonoidSpec {
public:
    enum class Builtin {
        none,        // user rewriting system; generic engine only
        free_k,      // free monoid on k generators
        free_comm_k, // free commutative monoid on k generators
        cyclic_n,    // <a | a^n = e>
        int_monoid,  // <a,b | ab = e, ba = e>, i.e. the integers
        bicyclic,    // <a,b | ab = e>
        bicyclic_hat // bicyclic with a freshly adjoined identity
    };

    static constexpr std::uint64_t kDefaultBudget = 1'000'000;

    MonoidSpec(std::string name, std::vector<std::string> generators,
               std::vector<RewriteRule> rules, bool has_identity,
               std::uint64_t normalization_budget = kDefaultBudget);

    // Registered built-ins, addressable by name ("bicyclic", "bicyclic_hat",
    // "int_monoid", "free<k>", "free_comm<k>", "cyclic<n>").
    static MonoidSpec bicyclic();
    static MonoidSpec bicyclic_hat();
    static MonoidSpec int_monoid();
    static MonoidSpec free_monoid(int k);
    static MonoidSpec free_comm(int k);
    static MonoidSpec cyclic(int n);
    static MonoidSpec from_name(const std::string& name);

    // Free monoid on explicitly named generators (e.g. {"f"} for the
    // nonnegative iterates of a single map).
    static MonoidSpec free_named(std::vector<std::string> generator_names,
                                 std::string name);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& generators() const { return generators_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    bool has_identity() const { return has_identity_; }
    std::uint64_t normalization_budget() const { return budget_; }
    Builtin builtin() const { return builtin_; }
    int builtin_param() const { return builtin_param_; }

    // Unique normal form of w. Idempotent. Uses the built-in closed form
    // when one is registered, otherwise the rewriting engine.
    Word normalize(const Word& w) const;

    // Generic rewriting path, exposed for cross-checks against closed forms.
    Word normalize_by_rewriting(const Word& w) const;

    // Normal form of the concatenation x . y.
    Word multiply(const Word& x, const Word& y) const;

    Word identity_word() const;

    // The adjoined-identity construction: a fresh generator acts as two-sided
    // identity (represented by the empty word); if this spec had an identity,
    // the old identity element becomes an explicit ordinary generator that
    // still absorbs against all old generators. Old products are unchanged.
    MonoidSpec adjoin_identity() const;

    // Word <-> string. Words print with no separator when every generator
    // name is a single character, otherwise space-separated. The empty word
    // prints as "e" for specs with an identity. Parsing accepts both forms
    // (greedy longest-match tokenization for unseparated strings) and treats
    // "e" as the identity when no generator carries that name.
    std::string word_to_string(const Word& w) const;
    Word parse_word(const std::string& text) const;

    std::optional<std::uint32_t> generator_index(const std::string& name) const;

private:
    MonoidSpec() = default;
    void validate() const;
    static bool single_char_names(const std::vector<std::string>& names);

    std::string name_;
    std::vector<std::string> generators_;
    std::vector<RewriteRule> rules_;
    bool has_identity_ = true;
    std::uint64_t budget_ = kDefaultBudget;
    Builtin builtin_ = Builtin::none;
    int builtin_param_ = 0;
};

}  // namespace soficlab

#endif
