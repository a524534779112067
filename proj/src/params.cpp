#include "mlrfun/params.hpp"

#include <charconv>

namespace mlr {

RationalOrder RationalOrder::parse(const std::string& s) {
    auto slash = s.find('/');
    long l = 0, k = 1;
    auto parse_long = [&](const char* b, const char* e, long& out) {
        auto [p, ec] = std::from_chars(b, e, out);
        if (ec != std::errc() || p != e)
            throw DomainError("RationalOrder: cannot parse '" + s + "'");
    };
    if (slash == std::string::npos) {
        parse_long(s.data(), s.data() + s.size(), l);
    } else {
        parse_long(s.data(), s.data() + slash, l);
        parse_long(s.data() + slash + 1, s.data() + s.size(), k);
    }
    return {l, k};
}

std::vector<double> param_sequence(int r, double lambda) {
    if (r <= 0) throw DomainError("param_sequence: r must be positive");
    std::vector<double> out(r);
    for (int i = 0; i < r; ++i) out[i] = (lambda + i) / r;
    return out;
}

}  // namespace mlr
