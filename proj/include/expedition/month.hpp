#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace expedition {

/// A calendar month, the unit of all temporal aggregation. Stored as a
/// month count since year 0 so arithmetic and ordering are trivial.
class Month {
public:
    constexpr Month() = default;
    constexpr Month(int year, int month) : index_(year * 12 + (month - 1)) {}

    static constexpr Month from_index(int index) {
        Month m;
        m.index_ = index;
        return m;
    }

    /// Parses "YYYY-MM". Returns nullopt on any deviation.
    static std::optional<Month> parse(std::string_view text);

    constexpr int index() const { return index_; }
    constexpr int year() const { return index_ / 12; }
    constexpr int month() const { return index_ % 12 + 1; }

    std::string to_string() const;

    constexpr Month operator+(int months) const { return from_index(index_ + months); }
    constexpr int operator-(Month other) const { return index_ - other.index_; }

    constexpr auto operator<=>(const Month&) const = default;

private:
    int index_ = 0;
};

/// Closed month interval [first, last].
struct MonthInterval {
    Month first;
    Month last;

    constexpr bool contains(Month m) const { return first <= m && m <= last; }
    constexpr int length() const { return last - first + 1; }

    /// Parses "YYYY-MM..YYYY-MM".
    static std::optional<MonthInterval> parse(std::string_view text);
    std::string to_string() const;

    constexpr bool operator==(const MonthInterval&) const = default;
};

/// Day-precision calendar date.
struct Date {
    int year = 0;
    int month = 1;
    int day = 1;

    /// Parses "YYYY-MM-DD", rejecting impossible dates.
    static std::optional<Date> parse(std::string_view text);
    std::string to_string() const;
    constexpr Month bucket() const { return Month(year, month); }

    constexpr auto operator<=>(const Date&) const = default;
};

}  // namespace expedition
