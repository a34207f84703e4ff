#include "esgsent/dates.hpp"

#include <cstdio>

#include "esgsent/error.hpp"

namespace esg {

namespace {

using namespace std::chrono;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

int digits(std::string_view text, std::size_t pos, std::size_t count, std::string_view whole) {
    if (pos + count > text.size()) {
        throw SchemaError("truncated date/time: '" + std::string(whole) + "'");
    }
    int value = 0;
    for (std::size_t i = pos; i < pos + count; ++i) {
        if (!is_digit(text[i])) {
            throw SchemaError("expected digit in date/time: '" + std::string(whole) + "'");
        }
        value = value * 10 + (text[i] - '0');
    }
    return value;
}

void expect(std::string_view text, std::size_t pos, char c, std::string_view whole) {
    if (pos >= text.size() || text[pos] != c) {
        throw SchemaError("malformed date/time: '" + std::string(whole) + "'");
    }
}

Date parse_date_at(std::string_view text, std::string_view whole) {
    const int y = digits(text, 0, 4, whole);
    expect(text, 4, '-', whole);
    const int m = digits(text, 5, 2, whole);
    expect(text, 7, '-', whole);
    const int d = digits(text, 8, 2, whole);
    const Date date{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!date.ok()) {
        throw SchemaError("invalid calendar date: '" + std::string(whole) + "'");
    }
    return date;
}

}  // namespace

Date parse_date(std::string_view text) {
    if (text.size() != 10) {
        throw SchemaError("expected YYYY-MM-DD, got '" + std::string(text) + "'");
    }
    return parse_date_at(text, text);
}

std::string format_date(Date date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

Timestamp parse_timestamp(std::string_view text) {
    const Date date = parse_date_at(text, text);
    if (text.size() < 11 || (text[10] != 'T' && text[10] != 't' && text[10] != ' ')) {
        throw SchemaError("timestamp lacks time part: '" + std::string(text) + "'");
    }
    const int hh = digits(text, 11, 2, text);
    expect(text, 13, ':', text);
    const int mm = digits(text, 14, 2, text);
    expect(text, 16, ':', text);
    const int ss = digits(text, 17, 2, text);
    if (hh > 23 || mm > 59 || ss > 60) {
        throw SchemaError("time out of range: '" + std::string(text) + "'");
    }
    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        const std::size_t frac_start = pos;
        while (pos < text.size() && is_digit(text[pos])) {
            ++pos;
        }
        if (pos == frac_start) {
            throw SchemaError("empty fractional seconds: '" + std::string(text) + "'");
        }
    }
    if (pos >= text.size()) {
        throw SchemaError("timestamp lacks UTC offset: '" + std::string(text) + "'");
    }
    seconds offset{0};
    if (text[pos] == 'Z' || text[pos] == 'z') {
        ++pos;
    } else if (text[pos] == '+' || text[pos] == '-') {
        const int sign = text[pos] == '+' ? 1 : -1;
        const int oh = digits(text, pos + 1, 2, text);
        expect(text, pos + 3, ':', text);
        const int om = digits(text, pos + 4, 2, text);
        offset = sign * (hours{oh} + minutes{om});
        pos += 6;
    } else {
        throw SchemaError("malformed UTC offset: '" + std::string(text) + "'");
    }
    if (pos != text.size()) {
        throw SchemaError("trailing characters in timestamp: '" + std::string(text) + "'");
    }
    return sys_days{date} + hours{hh} + minutes{mm} + seconds{ss} - offset;
}

std::string format_timestamp(Timestamp ts) {
    const auto day_start = floor<days>(ts);
    const hh_mm_ss<seconds> tod{ts - day_start};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", format_date(Date{day_start}).c_str(),
                  static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                  static_cast<int>(tod.seconds().count()));
    return buf;
}

TimeWindow TimeWindow::make(Date start, Date end) {
    if (!start.ok() || !end.ok()) {
        throw InvariantError("time window has an invalid date");
    }
    if (end < start) {
        throw InvariantError("time window start " + format_date(start) + " is after end " +
                             format_date(end));
    }
    return TimeWindow{start, end};
}

TimeWindow TimeWindow::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw SchemaError("window must be START:END, got '" + std::string(text) + "'");
    }
    return make(parse_date(text.substr(0, colon)), parse_date(text.substr(colon + 1)));
}

TimeWindow TimeWindow::ending_on(Date end, int n_days) {
    if (n_days < 1) {
        throw InvariantError("window length must be at least one day");
    }
    return make(Date{sys_days{end} - days{n_days - 1}}, end);
}

}  // namespace esg
