#include "numlaw/ingest.hpp"

#include "numlaw/error.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace numlaw {

namespace {

bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

bool is_ascii_alnum(char c) noexcept
{
    return is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool starts_with_at(std::string_view text, std::size_t pos, std::string_view needle) noexcept
{
    return !needle.empty() && text.substr(pos, needle.size()) == needle;
}

void validate_utf8(std::string_view text)
{
    std::size_t i = 0;
    const auto n = text.size();
    while (i < n)
    {
        const auto c = static_cast<unsigned char>(text[i]);
        std::size_t extra = 0;
        std::uint32_t cp = 0;
        if (c < 0x80)
        {
            ++i;
            continue;
        }
        if ((c & 0xE0) == 0xC0)
        {
            extra = 1;
            cp = c & 0x1F;
        }
        else if ((c & 0xF0) == 0xE0)
        {
            extra = 2;
            cp = c & 0x0F;
        }
        else if ((c & 0xF8) == 0xF0)
        {
            extra = 3;
            cp = c & 0x07;
        }
        else
        {
            throw ingest_error("invalid UTF-8 lead byte at offset " + std::to_string(i));
        }
        if (i + extra >= n)
            throw ingest_error("truncated UTF-8 sequence at offset " + std::to_string(i));
        for (std::size_t k = 1; k <= extra; ++k)
        {
            const auto cc = static_cast<unsigned char>(text[i + k]);
            if ((cc & 0xC0) != 0x80)
                throw ingest_error("invalid UTF-8 continuation byte at offset " + std::to_string(i + k));
            cp = (cp << 6) | (cc & 0x3F);
        }
        const bool overlong = (extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) || (extra == 3 && cp < 0x10000);
        if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
            throw ingest_error("invalid UTF-8 code point at offset " + std::to_string(i));
        i += extra + 1;
    }
}

std::string_view strip_bom(std::string_view text) noexcept
{
    if (text.substr(0, 3) == "\xEF\xBB\xBF")
        text.remove_prefix(3);
    return text;
}

std::size_t skip_digits(std::string_view text, std::size_t pos) noexcept
{
    while (pos < text.size() && is_digit(text[pos]))
        ++pos;
    return pos;
}

/// Length of the separator at `pos` that is followed by exactly three digits, or 0.
std::size_t group_separator_at(std::string_view text, std::size_t pos, const extraction_rules& rules) noexcept
{
    for (const auto& sep : rules.group_separators)
    {
        if (!starts_with_at(text, pos, sep))
            continue;
        const auto group = pos + sep.size();
        if (group + 3 > text.size())
            continue;
        if (!is_digit(text[group]) || !is_digit(text[group + 1]) || !is_digit(text[group + 2]))
            continue;
        if (group + 3 < text.size() && is_digit(text[group + 3]))
            continue;
        return sep.size();
    }
    return 0;
}

std::size_t footnote_marker_at(std::string_view text, std::size_t pos, const extraction_rules& rules) noexcept
{
    for (const auto& marker : rules.footnote_markers)
        if (starts_with_at(text, pos, marker))
            return marker.size();
    return 0;
}

void tokenize(std::string_view text, const extraction_rules& rules, std::vector<value_t>& out)
{
    std::size_t i = 0;
    const auto n = text.size();
    while (i < n)
    {
        if (!is_digit(text[i]))
        {
            ++i;
            continue;
        }

        // ".5" style fraction with no integer part
        if (i > 0 && text[i - 1] == '.')
        {
            i = skip_digits(text, i);
            continue;
        }

        const auto start = i;
        std::string digits;
        auto run_end = skip_digits(text, i);
        digits.append(text.substr(i, run_end - i));
        i = run_end;
        while (i < n)
        {
            const auto sep = group_separator_at(text, i, rules);
            if (sep == 0)
                break;
            digits.append(text.substr(i + sep, 3));
            i += sep + 3;
        }

        if (i + 1 < n && text[i] == '.' && is_digit(text[i + 1]))
        {
            i = skip_digits(text, i + 1);
            continue;
        }

        if (const auto marker = footnote_marker_at(text, i, rules); marker != 0)
        {
            i += marker;
            while (i < n)
            {
                if (is_ascii_alnum(text[i]))
                    ++i;
                else if (const auto more = footnote_marker_at(text, i, rules); more != 0)
                    i += more;
                else
                    break;
            }
            continue;
        }

        value_t value = 0;
        constexpr auto limit = std::numeric_limits<value_t>::max();
        for (const char c : digits)
        {
            const auto d = static_cast<value_t>(c - '0');
            if (value > (limit - d) / 10)
                throw ingest_error("integer token at offset " + std::to_string(start) + " exceeds 64 bits");
            value = value * 10 + d;
        }
        out.push_back(value);
    }
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text)
{
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool row_has_content = false;

    for (std::size_t i = 0; i < text.size(); ++i)
    {
        const char c = text[i];
        if (quoted)
        {
            if (c == '"')
            {
                if (i + 1 < text.size() && text[i + 1] == '"')
                {
                    field.push_back('"');
                    ++i;
                }
                else
                {
                    quoted = false;
                }
            }
            else
            {
                field.push_back(c);
            }
            continue;
        }
        switch (c)
        {
        case '"':
            quoted = true;
            row_has_content = true;
            break;
        case ',':
            row.push_back(std::move(field));
            field.clear();
            row_has_content = true;
            break;
        case '\r':
            break;
        case '\n':
            if (row_has_content || !field.empty())
            {
                row.push_back(std::move(field));
                rows.push_back(std::move(row));
            }
            field.clear();
            row.clear();
            row_has_content = false;
            break;
        default:
            field.push_back(c);
            row_has_content = true;
        }
    }
    if (quoted)
        throw ingest_error("unterminated quoted CSV field");
    if (row_has_content || !field.empty())
    {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::string number_corpus::key() const
{
    return year ? label + std::to_string(*year) : label;
}

std::vector<value_t> extract_numbers(std::string_view text, const extraction_rules& rules)
{
    validate_utf8(text);
    std::vector<value_t> values;
    tokenize(strip_bom(text), rules, values);
    if (values.empty())
        throw empty_corpus_error("no integer tokens found");
    return values;
}

std::vector<value_t> extract_csv_column(std::string_view csv, std::string_view column, const extraction_rules& rules)
{
    validate_utf8(csv);
    const auto rows = parse_csv(strip_bom(csv));
    if (rows.empty())
        throw empty_corpus_error("CSV input has no rows");

    const auto& header = rows.front();
    std::size_t index = header.size();
    for (std::size_t k = 0; k < header.size(); ++k)
        if (header[k] == column)
            index = k;
    if (index == header.size())
    {
        const bool numeric = !column.empty() && std::all_of(column.begin(), column.end(), is_digit);
        if (!numeric)
            throw ingest_error("CSV column '" + std::string(column) + "' not found in header");
        index = static_cast<std::size_t>(std::stoull(std::string(column)));
        if (index >= header.size())
            throw ingest_error("CSV column index " + std::string(column) + " out of range");
    }

    std::vector<value_t> values;
    for (std::size_t r = 1; r < rows.size(); ++r)
        if (index < rows[r].size())
            tokenize(rows[r][index], rules, values);
    if (values.empty())
        throw empty_corpus_error("no integer tokens found in CSV column '" + std::string(column) + "'");
    return values;
}

corpus_stats compute_stats(std::span<const value_t> values)
{
    if (values.empty())
        throw empty_corpus_error("cannot compute statistics of an empty corpus");

    std::vector<value_t> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    __extension__ using wide_sum = unsigned __int128;
    wide_sum sum = 0;
    for (const auto v : sorted)
        sum += v;

    corpus_stats stats;
    stats.observation_count = sorted.size();
    stats.min = sorted.front();
    stats.max = sorted.back();
    stats.mean = static_cast<double>(static_cast<long double>(sum) / static_cast<long double>(sorted.size()));

    const auto mid = sorted.size() / 2;
    if (sorted.size() % 2 == 1)
        stats.median = static_cast<double>(sorted[mid]);
    else
        stats.median = static_cast<double>((static_cast<long double>(sorted[mid - 1]) + sorted[mid]) / 2.0L);
    return stats;
}

std::optional<int> first_digit(value_t n) noexcept
{
    if (n == 0)
        return std::nullopt;
    while (n >= 10)
        n /= 10;
    return static_cast<int>(n);
}

int decimal_length(value_t n) noexcept
{
    int length = 1;
    while (n >= 10)
    {
        n /= 10;
        ++length;
    }
    return length;
}

double digit_histogram::frequency(int digit) const
{
    if (digit < 1 || digit > 9)
        throw domain_error("digit must be in 1..9");
    return total == 0 ? 0.0 : static_cast<double>(counts[digit - 1]) / static_cast<double>(total);
}

observed_series digit_histogram::observed() const
{
    observed_series s;
    for (int d = 1; d <= 9; ++d)
    {
        s.support.push_back(d);
        s.frequency.push_back(frequency(d));
    }
    return s;
}

observed_series rank_frequency_table::observed() const
{
    observed_series s;
    s.support.reserve(entries.size());
    s.frequency.reserve(entries.size());
    for (std::size_t r = 0; r < entries.size(); ++r)
    {
        s.support.push_back(static_cast<double>(r + 1));
        s.frequency.push_back(entries[r].frequency);
    }
    return s;
}

std::size_t length_histogram::distinct_lengths() const
{
    return static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }));
}

observed_series length_histogram::observed() const
{
    observed_series s;
    for (std::size_t k = 0; k < counts.size(); ++k)
    {
        s.support.push_back(static_cast<double>(k + 1));
        s.frequency.push_back(static_cast<double>(counts[k]) / static_cast<double>(total));
    }
    return s;
}

digit_histogram make_digit_histogram(std::span<const value_t> values)
{
    digit_histogram h;
    for (const auto v : values)
    {
        if (const auto d = first_digit(v))
        {
            ++h.counts[*d - 1];
            ++h.total;
        }
    }
    if (h.total == 0)
        throw empty_corpus_error("no nonzero values for first-digit analysis");
    return h;
}

rank_frequency_table make_rank_frequency(std::span<const value_t> values)
{
    if (values.empty())
        throw empty_corpus_error("cannot rank an empty corpus");

    std::map<value_t, std::uint64_t> counts;
    for (const auto v : values)
        ++counts[v];

    rank_frequency_table table;
    table.total = values.size();
    table.entries.reserve(counts.size());
    for (const auto& [value, count] : counts)
        table.entries.push_back({value, count, static_cast<double>(count) / static_cast<double>(values.size())});

    // std::map iteration is ascending by value, so a stable sort keeps that as the tie-break
    std::stable_sort(table.entries.begin(), table.entries.end(),
                     [](const rank_entry& a, const rank_entry& b) { return a.count > b.count; });
    return table;
}

length_histogram make_length_histogram(std::span<const value_t> values)
{
    if (values.empty())
        throw empty_corpus_error("cannot build a length histogram of an empty corpus");

    length_histogram h;
    for (const auto v : values)
    {
        const auto len = static_cast<std::size_t>(decimal_length(v));
        if (h.counts.size() < len)
            h.counts.resize(len, 0);
        ++h.counts[len - 1];
    }
    h.total = values.size();
    return h;
}

std::vector<value_t> merge_values(std::span<const number_corpus> corpora)
{
    std::vector<value_t> merged;
    for (const auto& c : corpora)
        merged.insert(merged.end(), c.values.begin(), c.values.end());
    return merged;
}

} // namespace numlaw
