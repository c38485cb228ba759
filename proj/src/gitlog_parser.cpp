#include <array>
#include <charconv>
#include <cstdio>

#include "ccl/githist.hpp"

namespace ccl {

namespace {

constexpr std::array<std::string_view, 7> kWeekdays = {"Sun", "Mon", "Tue", "Wed",
                                                       "Thu", "Fri", "Sat"};
constexpr std::array<std::string_view, 12> kMonths = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                      "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

// Howard Hinnant's days_from_civil / civil_from_days.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct Civil {
    std::int64_t year;
    unsigned month;
    unsigned day;
};

Civil civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    return {y + (m <= 2), m, d};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    return a / b - ((a % b != 0) && ((a < 0) != (b < 0)));
}

std::vector<std::string_view> split_words(std::string_view text) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
        const auto start = i;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
        if (i > start) words.push_back(text.substr(start, i - start));
    }
    return words;
}

template <typename Int>
bool parse_int(std::string_view text, Int& out) {
    if (text.empty()) return false;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

bool is_commit_hash(std::string_view text) {
    if (text.size() != 40) return false;
    for (char c : text) {
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    }
    return true;
}

// "-a,b" or "-a" (count defaults to 1)
bool parse_range(std::string_view text, char sign, std::uint32_t& start, std::uint32_t& count) {
    if (text.empty() || text.front() != sign) return false;
    text.remove_prefix(1);
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        count = 1;
        return parse_int(text, start);
    }
    return parse_int(text.substr(0, comma), start) && parse_int(text.substr(comma + 1), count);
}

bool parse_hunk_header(std::string_view line, Hunk& hunk) {
    if (!line.starts_with("@@ ")) return false;
    const auto words = split_words(line);
    if (words.size() < 4 || words[0] != "@@" || words[3] != "@@") return false;
    return parse_range(words[1], '-', hunk.old_start, hunk.old_count) &&
           parse_range(words[2], '+', hunk.new_start, hunk.new_count);
}

class BlockParser {
public:
    BlockParser(std::span<const std::string_view> lines, std::vector<std::string>& warnings)
        : lines_(lines), warnings_(warnings) {}

    std::optional<CommitRecord> parse() {
        CommitRecord record;
        const auto header = split_words(lines_[0].substr(7));
        if (header.empty() || !is_commit_hash(header[0])) {
            warn("malformed commit line: " + std::string(lines_[0]));
            return std::nullopt;
        }
        record.hash = std::string(header[0]);

        std::size_t i = 1;
        bool have_date = false;
        for (; i < lines_.size() && !is_blank(lines_[i]); ++i) {
            const auto line = lines_[i];
            if (line.starts_with("Author:")) {
                record.author = trim(line.substr(7));
            } else if (line.starts_with("Date:")) {
                if (auto ts = parse_git_date(trim(line.substr(5)))) {
                    record.timestamp = *ts;
                    have_date = true;
                }
            } else if (line.starts_with("diff ") || line.starts_with("@@")) {
                break;
            }
        }
        if (!have_date) {
            warn("commit " + record.hash + " has no parsable Date line; skipped");
            return std::nullopt;
        }

        std::string message;
        for (; i < lines_.size(); ++i) {
            const auto line = lines_[i];
            if (line.starts_with("    ")) {
                if (!message.empty() || !is_blank(line)) {
                    message.append(line.substr(4));
                    message.push_back('\n');
                }
            } else if (!is_blank(line)) {
                break;
            } else if (!message.empty()) {
                message.push_back('\n');
            }
        }
        while (!message.empty() && (message.back() == '\n' || message.back() == ' ')) {
            message.pop_back();
        }
        record.message = std::move(message);

        while (i < lines_.size()) {
            const auto line = lines_[i];
            if (line.starts_with("@@")) {
                Hunk hunk;
                if (!parse_hunk_header(line, hunk)) {
                    warn("commit " + record.hash + ": unsupported hunk header '" +
                         std::string(line) + "'");
                    record.diff_headers.emplace_back(line);
                    ++i;
                    while (i < lines_.size() && !lines_[i].empty() &&
                           (lines_[i][0] == ' ' || lines_[i][0] == '+' || lines_[i][0] == '-')) {
                        ++i;
                    }
                    continue;
                }
                i = read_hunk_body(i + 1, hunk, record.hash);
                record.patch.push_back(std::move(hunk));
            } else {
                if (!is_blank(line)) record.diff_headers.emplace_back(line);
                ++i;
            }
        }
        if (record.patch.empty()) warn("commit " + record.hash + " carries no hunks");
        return record;
    }

private:
    static std::string trim(std::string_view text) {
        const auto b = text.find_first_not_of(" \t");
        if (b == std::string_view::npos) return {};
        const auto e = text.find_last_not_of(" \t\r");
        return std::string(text.substr(b, e - b + 1));
    }

    std::size_t read_hunk_body(std::size_t i, Hunk& hunk, const std::string& hash) {
        std::uint32_t old_left = hunk.old_count;
        std::uint32_t new_left = hunk.new_count;
        while (i < lines_.size() && (old_left > 0 || new_left > 0)) {
            const auto line = lines_[i];
            const char marker = line.empty() ? ' ' : line[0];
            const auto text = line.empty() ? std::string_view{} : line.substr(1);
            if (marker == ' ' && old_left > 0 && new_left > 0) {
                hunk.lines.push_back({LineMarker::Context, std::string(text)});
                --old_left;
                --new_left;
            } else if (marker == '-' && old_left > 0) {
                hunk.lines.push_back({LineMarker::Removed, std::string(text)});
                --old_left;
            } else if (marker == '+' && new_left > 0) {
                hunk.lines.push_back({LineMarker::Added, std::string(text)});
                --new_left;
            } else if (marker != '\\') {
                warn("commit " + hash + ": hunk body shorter than its header");
                return i;
            }
            ++i;
        }
        while (i < lines_.size() && lines_[i].starts_with("\\")) ++i;
        return i;
    }

    void warn(std::string message) { warnings_.push_back(std::move(message)); }

    std::span<const std::string_view> lines_;
    std::vector<std::string>& warnings_;
};

}  // namespace

bool Hunk::counts_consistent() const {
    std::uint32_t old_lines = 0;
    std::uint32_t new_lines = 0;
    for (const auto& l : lines) {
        if (l.marker != LineMarker::Added) ++old_lines;
        if (l.marker != LineMarker::Removed) ++new_lines;
    }
    return old_lines == old_count && new_lines == new_count;
}

std::optional<Timestamp> parse_git_date(std::string_view text) {
    const auto words = split_words(text);
    if (words.size() != 6) return std::nullopt;

    unsigned month = 0;
    for (unsigned m = 0; m < kMonths.size(); ++m) {
        if (words[1] == kMonths[m]) month = m + 1;
    }
    unsigned day = 0;
    std::int64_t year = 0;
    if (month == 0 || !parse_int(words[2], day) || !parse_int(words[4], year)) return std::nullopt;
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const unsigned month_days = kDays[month - 1] + (month == 2 && leap ? 1 : 0);
    if (day < 1 || day > month_days) return std::nullopt;

    const auto clock = words[3];
    unsigned h = 0, mi = 0, s = 0;
    if (clock.size() != 8 || clock[2] != ':' || clock[5] != ':' ||
        !parse_int(clock.substr(0, 2), h) || !parse_int(clock.substr(3, 2), mi) ||
        !parse_int(clock.substr(6, 2), s) || h > 23 || mi > 59 || s > 60) {
        return std::nullopt;
    }

    const auto zone = words[5];
    unsigned zh = 0, zm = 0;
    if (zone.size() != 5 || (zone[0] != '+' && zone[0] != '-') ||
        !parse_int(zone.substr(1, 2), zh) || !parse_int(zone.substr(3, 2), zm)) {
        return std::nullopt;
    }
    const std::int32_t offset =
        (zone[0] == '-' ? -1 : 1) * static_cast<std::int32_t>(zh * 60 + zm);

    const std::int64_t local = days_from_civil(year, month, day) * 86400 + h * 3600 + mi * 60 + s;
    return Timestamp{local - static_cast<std::int64_t>(offset) * 60, offset};
}

std::string Timestamp::to_git_string() const {
    const std::int64_t local = epoch_seconds + static_cast<std::int64_t>(offset_minutes) * 60;
    const std::int64_t days = floor_div(local, 86400);
    const std::int64_t secs = local - days * 86400;
    const auto civil = civil_from_days(days);
    const auto weekday = static_cast<std::size_t>(((days % 7) + 11) % 7);  // 1970-01-01 was a Thursday
    const int abs_offset = offset_minutes < 0 ? -offset_minutes : offset_minutes;

    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%s %s %u %02d:%02d:%02d %lld %c%02d%02d",
                  kWeekdays[weekday].data(), kMonths[civil.month - 1].data(), civil.day,
                  static_cast<int>(secs / 3600), static_cast<int>((secs / 60) % 60),
                  static_cast<int>(secs % 60), static_cast<long long>(civil.year),
                  offset_minutes < 0 ? '-' : '+', abs_offset / 60, abs_offset % 60);
    return buffer;
}

ParsedLog parse_git_log(std::string_view raw_text) {
    ParsedLog result;
    const auto lines = split_lines(raw_text);

    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].starts_with("commit ")) starts.push_back(i);
    }
    const std::size_t first = starts.empty() ? lines.size() : starts.front();
    for (std::size_t i = 0; i < first; ++i) {
        if (!is_blank(lines[i])) {
            result.warnings.push_back("ignoring text before the first commit line");
            break;
        }
    }

    for (std::size_t b = 0; b < starts.size(); ++b) {
        const auto begin = starts[b];
        const auto end = b + 1 < starts.size() ? starts[b + 1] : lines.size();
        const std::span<const std::string_view> block(lines.data() + begin, end - begin);
        BlockParser parser(block, result.warnings);
        if (auto record = parser.parse()) result.commits.push_back(std::move(*record));
    }

    if (result.commits.empty() && !is_blank(raw_text)) {
        throw GitLogParseError("no commit could be parsed from git log output");
    }
    return result;
}

}  // namespace ccl
