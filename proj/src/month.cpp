#include "expedition/month.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace expedition {

namespace {

bool parse_int(std::string_view text, int& out) {
    if (text.empty()) return false;
    for (char c : text) {
        if (c < '0' || c > '9') return false;
    }
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

std::optional<Month> Month::parse(std::string_view text) {
    if (text.size() != 7 || text[4] != '-') return std::nullopt;
    int y = 0, m = 0;
    if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m)) return std::nullopt;
    if (m < 1 || m > 12) return std::nullopt;
    return Month(y, m);
}

std::string Month::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year(), month());
    return buf;
}

std::optional<MonthInterval> MonthInterval::parse(std::string_view text) {
    auto sep = text.find("..");
    if (sep == std::string_view::npos) return std::nullopt;
    auto a = Month::parse(text.substr(0, sep));
    auto b = Month::parse(text.substr(sep + 2));
    if (!a || !b || *b < *a) return std::nullopt;
    return MonthInterval{*a, *b};
}

std::string MonthInterval::to_string() const { return first.to_string() + ".." + last.to_string(); }

std::optional<Date> Date::parse(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    Date d;
    if (!parse_int(text.substr(0, 4), d.year) || !parse_int(text.substr(5, 2), d.month) ||
        !parse_int(text.substr(8, 2), d.day)) {
        return std::nullopt;
    }
    std::chrono::year_month_day ymd{std::chrono::year{d.year},
                                    std::chrono::month{static_cast<unsigned>(d.month)},
                                    std::chrono::day{static_cast<unsigned>(d.day)}};
    if (!ymd.ok()) return std::nullopt;
    return d;
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

}  // namespace expedition
