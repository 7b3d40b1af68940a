#pragma once

#include <charconv>
#include <compare>
#include <cstdio>
#include <string>
#include <string_view>

#include "disvar/errors.hpp"

namespace disvar {

enum class Frequency { monthly, quarterly };

inline std::string to_string(Frequency f) {
    return f == Frequency::monthly ? "monthly" : "quarterly";
}

/// Calendar month (year, month 1..12). Arithmetic goes through a flat
/// month index so ranges are easy to intersect and step through.
struct YearMonth {
    int year = 0;
    int month = 1;

    int index() const { return year * 12 + (month - 1); }

    static YearMonth from_index(int idx) { return YearMonth{idx / 12, idx % 12 + 1}; }

    YearMonth plus(int months) const { return from_index(index() + months); }

    friend auto operator<=>(const YearMonth&, const YearMonth&) = default;
};

/// Signed number of months from a to b.
inline int months_between(const YearMonth& a, const YearMonth& b) {
    return b.index() - a.index();
}

inline std::string to_string(const YearMonth& ym) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", ym.year, ym.month);
    return buf;
}

namespace detail {

inline bool parse_int(std::string_view s, int& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

} // namespace detail

/// Parse "YYYY-MM".
inline YearMonth parse_year_month(std::string_view s) {
    int y = 0, m = 0;
    if (s.size() == 7 && s[4] == '-' &&
        detail::parse_int(s.substr(0, 4), y) && detail::parse_int(s.substr(5, 2), m) &&
        m >= 1 && m <= 12) {
        return YearMonth{y, m};
    }
    throw ValidationError("invalid month '" + std::string(s) + "', expected YYYY-MM");
}

struct DatedPeriod {
    YearMonth month;      // quarterly dates map to the first month of the quarter
    Frequency frequency = Frequency::monthly;
};

/// Parse "YYYY-MM" or "YYYY-Qn" (n in 1..4).
inline DatedPeriod parse_period(std::string_view s) {
    if (s.size() == 7 && s[4] == '-' && (s[5] == 'Q' || s[5] == 'q')) {
        int y = 0;
        const int q = s[6] - '0';
        if (detail::parse_int(s.substr(0, 4), y) && q >= 1 && q <= 4) {
            return DatedPeriod{YearMonth{y, 3 * (q - 1) + 1}, Frequency::quarterly};
        }
        throw ValidationError("invalid quarter '" + std::string(s) + "', expected YYYY-Qn");
    }
    return DatedPeriod{parse_year_month(s), Frequency::monthly};
}

} // namespace disvar
