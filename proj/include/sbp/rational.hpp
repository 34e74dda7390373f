#pragma once

#include <cstdint>
#include <string>

namespace sbp {

// Nonnegative decimal rational, parsed from a string like "1", "0.9" or
// "0.6744898". Band comparisons against kappa*sqrt(n) are done in exact
// integer arithmetic (s^2 <= floor(kappa^2 * n)), so ties at the band edge
// resolve identically on every platform. At most 9 significant digits are
// accepted; that keeps every intermediate inside __int128.
class Rational {
public:
    Rational() = default;

    static Rational parse(const std::string& text);

    int64_t num() const { return num_; }
    int64_t den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    const std::string& text() const { return text_; }

    // floor(value^2 * n), exact.
    int64_t floor_square_times(int64_t n) const;

    // floor(value * n), exact.
    int64_t floor_times(int64_t n) const;

    bool positive() const { return num_ > 0; }

private:
    int64_t num_ = 0;
    int64_t den_ = 1;
    std::string text_ = "0";
};

// The SBP band threshold: a spin configuration satisfies row j iff
// row_sum^2 <= band_threshold. Kept as its own name since it shows up in
// model, theory and planted alike.
inline int64_t band_threshold(const Rational& kappa, int64_t n) {
    return kappa.floor_square_times(n);
}

} // namespace sbp
