#include "sbp/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace sbp {

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("rational: empty string");
    size_t pos = 0;
    if (text[pos] == '+') ++pos;
    int64_t num = 0;
    int64_t den = 1;
    int sig_digits = 0;
    int frac_digits = 0;
    bool seen_dot = false;
    bool seen_digit = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("rational: two dots in '" + text + "'");
            seen_dot = true;
            continue;
        }
        if (c < '0' || c > '9')
            throw std::invalid_argument("rational: bad character in '" + text + "'");
        seen_digit = true;
        if (num != 0 || c != '0') ++sig_digits;
        if (sig_digits > 9) throw std::invalid_argument("rational: more than 9 significant digits in '" + text + "'");
        if (seen_dot && ++frac_digits > 18) throw std::invalid_argument("rational: more than 18 fractional digits in '" + text + "'");
        num = num * 10 + (c - '0');
        if (seen_dot) den *= 10;
    }
    if (!seen_digit) throw std::invalid_argument("rational: no digits in '" + text + "'");
    const int64_t g = std::gcd(num, den);
    Rational r;
    r.num_ = num / (g == 0 ? 1 : g);
    r.den_ = den / (g == 0 ? 1 : g);
    r.text_ = text;
    return r;
}

int64_t Rational::floor_square_times(int64_t n) const {
    const __int128 top = static_cast<__int128>(num_) * num_ * n;
    const __int128 bot = static_cast<__int128>(den_) * den_;
    return static_cast<int64_t>(top / bot);
}

int64_t Rational::floor_times(int64_t n) const {
    const __int128 top = static_cast<__int128>(num_) * n;
    return static_cast<int64_t>(top / den_);
}

} // namespace sbp
