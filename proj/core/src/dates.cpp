#include "illiqnet/dates.hpp"

#include <chrono>
#include <cstdio>

namespace illiqnet {

namespace {

bool parse_ymd(const std::string& iso, int& y, unsigned& m, unsigned& d) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return false;
    for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (iso[i] < '0' || iso[i] > '9') return false;
    y = std::stoi(iso.substr(0, 4));
    m = unsigned(std::stoi(iso.substr(5, 2)));
    d = unsigned(std::stoi(iso.substr(8, 2)));
    return true;
}

std::string format_ymd(std::chrono::year_month_day ymd) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

}  // namespace

bool is_valid_date(const std::string& iso) {
    int y;
    unsigned m, d;
    if (!parse_ymd(iso, y, m, d)) return false;
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                    std::chrono::day{d}};
    return ymd.ok();
}

std::vector<std::string> weekday_sequence(const std::string& start, int n) {
    using namespace std::chrono;
    int y;
    unsigned m, d;
    if (!parse_ymd(start, y, m, d)) return {};
    sys_days cur{year_month_day{year{y}, month{m}, day{d}}};
    std::vector<std::string> out;
    out.reserve(size_t(n));
    while (int(out.size()) < n) {
        weekday wd{cur};
        if (wd != Saturday && wd != Sunday) out.push_back(format_ymd(year_month_day{cur}));
        cur += days{1};
    }
    return out;
}

uint32_t date_to_u32(const std::string& iso) {
    int y;
    unsigned m, d;
    if (!parse_ymd(iso, y, m, d)) return 0;
    return uint32_t(y) * 10000u + m * 100u + d;
}

std::string date_from_u32(uint32_t ymd) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04u-%02u-%02u", ymd / 10000u, (ymd / 100u) % 100u,
                  ymd % 100u);
    return buf;
}

}  // namespace illiqnet
