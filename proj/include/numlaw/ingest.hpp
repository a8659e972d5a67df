#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace numlaw {

using value_t = std::uint64_t;

/// An ordered multiset of non-negative integers taken from one source document.
struct number_corpus
{
    std::string label;
    std::optional<int> year;
    std::vector<value_t> values;

    /// "label" or "label<year>", used to key reports and file names.
    std::string key() const;
};

struct corpus_stats
{
    std::size_t observation_count = 0;
    value_t max = 0;
    value_t min = 0;
    double mean = 0.0;
    double median = 0.0;
};

/// Tokenizer settings.
///
/// A digit group separator is only consumed when exactly three digits follow it,
/// so "1,2,3" yields three tokens while "1,234" yields one. A period always marks a
/// decimal fraction and the whole token is dropped. A digit run immediately followed
/// by one of the footnote markers is dropped together with the marker and any
/// alphanumeric run attached to it ("125^t", "2019¹"). Signs and parentheses are
/// punctuation, so "(1,250)" and "-1,250" both yield 1250.
struct extraction_rules
{
    // comma, thin space, narrow no-break space
    std::vector<std::string> group_separators{",", "\u2009", "\u202f"};
    std::vector<std::string> footnote_markers{"^", "*", "†", "‡", "¹", "²", "³",
                                              "⁰", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
};

/// Observed data over an integer support, ready for curve fitting.
struct observed_series
{
    std::vector<double> support;
    std::vector<double> frequency;

    std::size_t size() const noexcept { return support.size(); }
};

struct digit_histogram
{
    std::array<std::uint64_t, 9> counts{};
    std::uint64_t total = 0;

    double frequency(int digit) const;
    observed_series observed() const;
};

struct rank_entry
{
    value_t value = 0;
    std::uint64_t count = 0;
    double frequency = 0.0;
};

/// Distinct values ordered by descending count, ties by ascending value. Rank r is entries[r - 1].
struct rank_frequency_table
{
    std::vector<rank_entry> entries;
    std::uint64_t total = 0;

    observed_series observed() const;
};

/// counts[L - 1] is the number of values with L decimal digits, for L = 1..max_length().
struct length_histogram
{
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    int max_length() const noexcept { return static_cast<int>(counts.size()); }
    std::size_t distinct_lengths() const;
    observed_series observed() const;
};

/// Throws ingest_error on invalid UTF-8 or an integer that does not fit 64 bits,
/// empty_corpus_error when no integer token is found.
std::vector<value_t> extract_numbers(std::string_view text, const extraction_rules& rules = {});

/// Runs extract_numbers on one CSV column. `column` is a header name or a 0-based index;
/// the first row is always treated as the header.
std::vector<value_t> extract_csv_column(std::string_view csv, std::string_view column,
                                        const extraction_rules& rules = {});

corpus_stats compute_stats(std::span<const value_t> values);

std::optional<int> first_digit(value_t n) noexcept;
int decimal_length(value_t n) noexcept;

digit_histogram make_digit_histogram(std::span<const value_t> values);
rank_frequency_table make_rank_frequency(std::span<const value_t> values);
length_histogram make_length_histogram(std::span<const value_t> values);

/// Concatenates the values of several corpora (multiset union).
std::vector<value_t> merge_values(std::span<const number_corpus> corpora);

} // namespace numlaw
