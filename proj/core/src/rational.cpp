#include "soficlab/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace soficlab {

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw DomainError("empty rational literal");
    std::size_t slash = text.find('/');
    auto parse_int = [](const std::string& s) -> std::int64_t {
        if (s.empty()) throw DomainError("empty integer in rational literal");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw DomainError("bad rational literal '" + s + "'");
        for (; i < s.size(); ++i) {
            if (!std::isdigit((unsigned char)s[i])) {
                throw DomainError("bad rational literal '" + s + "'");
            }
        }
        errno = 0;
        char* end = nullptr;
        long long v = std::strtoll(s.c_str(), &end, 10);
        if (errno != 0 || end != s.c_str() + s.size()) {
            throw OverflowError("rational literal out of range: '" + s + "'");
        }
        return (std::int64_t)v;
    };
    if (slash == std::string::npos) return Rational(parse_int(text));
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

}  // namespace soficlab
