#include "soficlab/measure.hpp"

#include <numeric>

#include "soficlab/errors.hpp"

namespace soficlab {

namespace {

// Least common denominator of all weights, or 0 when it leaves the range
// where numerator sums are still safe.
std::int64_t common_denominator(const DiscreteMeasure& mu) {
    constexpr std::int64_t kLimit = INT64_C(1) << 40;
    std::int64_t lcm = 1;
    for (const auto& w : mu.weights) {
        std::int64_t d = w.den();
        std::int64_t g = std::gcd(lcm, d);
        __int128 next = (__int128)(lcm / g) * d;
        if (next > kLimit) return 0;
        lcm = (std::int64_t)next;
    }
    return lcm;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Rational> w) : weights(std::move(w)) {
    if (weights.empty()) throw DomainError("measure on empty set");
    Rational total(0);
    for (const auto& x : weights) {
        if (x < Rational(0)) throw DomainError("negative measure weight");
        total += x;
    }
    if (total != Rational(1)) {
        throw DomainError("measure weights sum to " + total.to_string() + ", expected 1/1");
    }
}

DiscreteMeasure DiscreteMeasure::uniform(std::size_t n) {
    if (n == 0) throw DomainError("measure on empty set");
    return DiscreteMeasure(std::vector<Rational>(n, Rational(1, (std::int64_t)n)));
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const Table& f) {
    if (f.size() != mu.size()) throw DomainError("pushforward: size mismatch");
    const std::size_t n = mu.size();
    for (auto y : f) {
        if (y >= n) throw DomainError("pushforward: table entry out of range");
    }

    // Fast path: accumulate integer numerators over one common denominator.
    if (std::int64_t lcm = common_denominator(mu); lcm != 0) {
        std::vector<std::int64_t> acc(n, 0);
        for (std::size_t x = 0; x < n; ++x) {
            const auto& w = mu.weights[x];
            acc[f[x]] += w.num() * (lcm / w.den());
        }
        std::vector<Rational> out;
        out.reserve(n);
        for (std::size_t y = 0; y < n; ++y) out.emplace_back(acc[y], lcm);
        return DiscreteMeasure(std::move(out));
    }

    std::vector<Rational> out(n, Rational(0));
    for (std::size_t x = 0; x < n; ++x) out[f[x]] += mu.weights[x];
    return DiscreteMeasure(std::move(out));
}

Rational total_variation(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    if (mu.size() != nu.size()) throw DomainError("total_variation: size mismatch");

    std::int64_t lcm_mu = common_denominator(mu);
    if (lcm_mu != 0) {
        std::int64_t lcm_nu = common_denominator(nu);
        std::int64_t g = std::gcd(lcm_mu, lcm_nu);
        __int128 lcm128 = lcm_nu == 0 ? (__int128)0 : (__int128)(lcm_mu / g) * lcm_nu;
        if (lcm128 != 0 && lcm128 <= (INT64_C(1) << 40)) {
            std::int64_t lcm = (std::int64_t)lcm128;
            std::int64_t sum = 0;
            for (std::size_t i = 0; i < mu.size(); ++i) {
                const auto& a = mu.weights[i];
                const auto& b = nu.weights[i];
                std::int64_t diff = a.num() * (lcm / a.den()) - b.num() * (lcm / b.den());
                sum += diff < 0 ? -diff : diff;
            }
            return Rational(sum, 2 * lcm);
        }
    }

    Rational sum(0);
    for (std::size_t i = 0; i < mu.size(); ++i) {
        sum += (mu.weights[i] - nu.weights[i]).abs();
    }
    return sum / Rational(2);
}

}  // namespace soficlab
