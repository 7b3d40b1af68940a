#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "disvar/errors.hpp"
#include "disvar/month.hpp"
#include "disvar/series.hpp"
#include "disvar/shares.hpp"

namespace disvar {

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline double parse_double(std::string_view s, std::size_t line, const std::string& column) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ValidationError("malformed number '" + std::string(s) + "' in column " + column +
                              " at line " + std::to_string(line));
    }
    return v;
}

/// A delimited text table: header row plus data rows with source line numbers.
/// Fields are plain comma-separated values; quoting is not supported because
/// none of the emitted or expected columns can contain commas.
struct CsvTable {
    struct Row {
        std::size_t line = 0;
        std::vector<std::string> fields;
    };
    std::vector<std::string> header;
    std::vector<Row> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        throw ValidationError("missing required column '" + name + "'");
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(trim(std::string_view(line).substr(begin, i - begin)));
            begin = i + 1;
        }
    }
    return out;
}

} // namespace detail

inline CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        auto fields = detail::split_fields(line);
        if (table.header.empty()) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw ValidationError("malformed row at line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(table.header.size()) + " fields, got " +
                                  std::to_string(fields.size()));
        }
        table.rows.push_back({lineno, std::move(fields)});
    }
    if (table.header.empty()) throw ValidationError("empty input: no header row");
    return table;
}

enum class ShareUnit { percent, fraction };

inline std::string to_string(ShareUnit u) {
    return u == ShareUnit::percent ? "percent" : "fraction";
}

inline ShareUnit parse_share_unit(std::string_view s) {
    if (s == "percent") return ShareUnit::percent;
    if (s == "fraction") return ShareUnit::fraction;
    throw ValidationError("unknown share unit '" + std::string(s) + "'");
}

/// Column-name mapping for survey files. When `categories` is empty, every
/// header column after the four key columns is treated as a reply category,
/// in header order (the order defines the category order, positive first).
struct SurveyCsvSchema {
    std::string date = "date";
    std::string country = "country";
    std::string agent = "agent";
    std::string question = "question";
    std::vector<std::string> categories;
    ShareUnit unit = ShareUnit::percent;
    double renorm_tol = 0.02;
};

/// Parse a survey share table into validated monthly panels, one per
/// (country, agent, question). Shares are converted to fractions, lightly
/// renormalized, and checked for duplicates and coverage gaps.
inline std::vector<SurveyPanel> parse_survey_csv(std::istream& in,
                                                 const SurveyCsvSchema& schema = {}) {
    const CsvTable table = read_csv(in);
    const std::size_t date_col = table.column(schema.date);
    const std::size_t country_col = table.column(schema.country);
    const std::size_t agent_col = table.column(schema.agent);
    const std::size_t question_col = table.column(schema.question);

    std::vector<std::size_t> share_cols;
    std::vector<std::string> share_names;
    if (schema.categories.empty()) {
        for (std::size_t i = 0; i < table.header.size(); ++i) {
            if (i == date_col || i == country_col || i == agent_col || i == question_col) continue;
            share_cols.push_back(i);
            share_names.push_back(table.header[i]);
        }
    } else {
        for (const auto& name : schema.categories) {
            share_cols.push_back(table.column(name));
            share_names.push_back(name);
        }
    }
    if (share_cols.size() < 2) {
        throw ValidationError("survey file needs at least 2 category columns, found " +
                              std::to_string(share_cols.size()));
    }

    struct Obs {
        YearMonth month;
        ShareVector shares;
        std::size_t line;
    };
    using Key = std::tuple<std::string, Agent, Question>;
    std::map<Key, std::vector<Obs>> groups;

    for (const auto& row : table.rows) {
        YearMonth ym;
        Agent agent;
        Question question;
        try {
            ym = parse_year_month(row.fields[date_col]);
            agent = parse_agent(row.fields[agent_col]);
            question = parse_question(row.fields[question_col]);
        } catch (const ValidationError& e) {
            throw ValidationError(std::string(e.what()) + " at line " + std::to_string(row.line));
        }
        std::vector<double> raw(share_cols.size());
        for (std::size_t i = 0; i < share_cols.size(); ++i) {
            double v = parse_double(row.fields[share_cols[i]], row.line, share_names[i]);
            if (schema.unit == ShareUnit::percent) v /= 100.0;
            if (v < 0.0) {
                throw ValidationError("negative share at line " + std::to_string(row.line));
            }
            raw[i] = v;
        }
        ShareVector shares = [&] {
            try {
                return renormalize(raw, schema.renorm_tol);
            } catch (const ValidationError& e) {
                throw ValidationError(std::string(e.what()) + " at line " +
                                      std::to_string(row.line));
            }
        }();
        groups[Key(row.fields[country_col], agent, question)].push_back(
            Obs{ym, std::move(shares), row.line});
    }
    if (groups.empty()) throw ValidationError("survey file has no data rows");

    std::vector<SurveyPanel> panels;
    panels.reserve(groups.size());
    for (auto& [key, obs] : groups) {
        std::stable_sort(obs.begin(), obs.end(),
                         [](const Obs& a, const Obs& b) { return a.month < b.month; });
        SurveyPanel panel;
        panel.country = std::get<0>(key);
        panel.agent = std::get<1>(key);
        panel.question = std::get<2>(key);
        panel.start = obs.front().month;
        const std::string label =
            panel.country + "/" + to_string(panel.agent) + "/" + to_string(panel.question);
        for (std::size_t i = 0; i < obs.size(); ++i) {
            if (i > 0) {
                const int gap = months_between(obs[i - 1].month, obs[i].month);
                if (gap == 0) {
                    throw ValidationError("duplicate (date, country, agent, question) key for " +
                                          label + " " + to_string(obs[i].month) + " at line " +
                                          std::to_string(obs[i].line));
                }
                if (gap > 1) {
                    throw ValidationError("gap in monthly coverage for " + label + " between " +
                                          to_string(obs[i - 1].month) + " and " +
                                          to_string(obs[i].month));
                }
            }
            panel.shares.push_back(std::move(obs[i].shares));
        }
        panels.push_back(std::move(panel));
    }
    return panels;
}

/// Serialize panels back to the survey schema. All panels must share one
/// category count; column names are generic (cat1..catN) unless given.
inline void write_survey_csv(std::ostream& out, const std::vector<SurveyPanel>& panels,
                             ShareUnit unit = ShareUnit::fraction,
                             const std::vector<std::string>& category_names = {}) {
    if (panels.empty()) throw ValidationError("no panels to write");
    const int n = panels.front().categories();
    for (const auto& p : panels) {
        if (p.categories() != n) {
            throw ValidationError("panels with mixed category counts cannot share one file");
        }
    }
    std::vector<std::string> names = category_names;
    if (names.empty()) {
        for (int i = 1; i <= n; ++i) names.push_back("cat" + std::to_string(i));
    }
    if (static_cast<int>(names.size()) != n) {
        throw ValidationError("expected " + std::to_string(n) + " category names");
    }
    out << "date,country,agent,question";
    for (const auto& name : names) out << ',' << name;
    out << '\n';
    const double scale = unit == ShareUnit::percent ? 100.0 : 1.0;
    for (const auto& p : panels) {
        for (std::size_t t = 0; t < p.size(); ++t) {
            out << to_string(p.month_at(t)) << ',' << p.country << ',' << to_string(p.agent) << ','
                << to_string(p.question);
            for (double v : p.shares[t].values()) out << ',' << format_double(v * scale);
            out << '\n';
        }
    }
}

/// Parse `date,country,gdp_growth` into per-country macro series. Dates are
/// YYYY-MM or YYYY-Qn; each country must use one frequency throughout.
inline std::vector<MacroSeries> parse_macro_csv(std::istream& in) {
    const CsvTable table = read_csv(in);
    const std::size_t date_col = table.column("date");
    const std::size_t country_col = table.column("country");
    const std::size_t value_col = table.column("gdp_growth");

    struct Obs {
        YearMonth month;
        double value;
        std::size_t line;
    };
    std::map<std::string, std::pair<Frequency, std::vector<Obs>>> groups;
    for (const auto& row : table.rows) {
        DatedPeriod period = [&] {
            try {
                return parse_period(row.fields[date_col]);
            } catch (const ValidationError& e) {
                throw ValidationError(std::string(e.what()) + " at line " +
                                      std::to_string(row.line));
            }
        }();
        const double v = parse_double(row.fields[value_col], row.line, "gdp_growth");
        auto [it, inserted] = groups.try_emplace(row.fields[country_col], period.frequency,
                                                 std::vector<Obs>{});
        if (!inserted && it->second.first != period.frequency) {
            throw ValidationError("mixed monthly and quarterly dates for " +
                                  row.fields[country_col] + " at line " +
                                  std::to_string(row.line));
        }
        it->second.second.push_back(Obs{period.month, v, row.line});
    }
    if (groups.empty()) throw ValidationError("macro file has no data rows");

    std::vector<MacroSeries> series;
    for (auto& [country, group] : groups) {
        auto& [freq, obs] = group;
        std::stable_sort(obs.begin(), obs.end(),
                         [](const Obs& a, const Obs& b) { return a.month < b.month; });
        MacroSeries s;
        s.country = country;
        s.frequency = freq;
        s.start = obs.front().month;
        const int step = s.step();
        for (std::size_t i = 0; i < obs.size(); ++i) {
            if (i > 0) {
                const int gap = months_between(obs[i - 1].month, obs[i].month);
                if (gap == 0) {
                    throw ValidationError("duplicate date for " + country + " at line " +
                                          std::to_string(obs[i].line));
                }
                if (gap != step) {
                    throw ValidationError("gap in " + to_string(freq) + " coverage for " + country +
                                          " between " + to_string(obs[i - 1].month) + " and " +
                                          to_string(obs[i].month));
                }
            }
            s.values.push_back(obs[i].value);
        }
        series.push_back(std::move(s));
    }
    return series;
}

inline void write_macro_csv(std::ostream& out, const std::vector<MacroSeries>& series) {
    out << "date,country,gdp_growth\n";
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::string date;
            if (s.frequency == Frequency::monthly) {
                date = to_string(s.month_at(i));
            } else {
                const YearMonth m = s.month_at(i);
                char buf[16];
                std::snprintf(buf, sizeof(buf), "%04d-Q%d", m.year, (m.month - 1) / 3 + 1);
                date = buf;
            }
            out << date << ',' << s.country << ',' << format_double(s.values[i]) << '\n';
        }
    }
}

/// `date,country,agent,question,metric,value` rows for one indicator series.
inline void write_indicator_csv(std::ostream& out, const IndicatorSeries& s) {
    out << "date,country,agent,question,metric,value\n";
    for (std::size_t t = 0; t < s.size(); ++t) {
        out << to_string(s.month_at(t)) << ',' << s.country << ',' << to_string(s.agent) << ','
            << to_string(s.question) << ',' << to_string(s.metric) << ','
            << format_double(s.values[t]) << '\n';
    }
}

/// Same layout as write_indicator_csv with question set to "aggregate".
inline void write_aggregate_csv(std::ostream& out, const AggregateDisagreement& s) {
    out << "date,country,agent,question,metric,value\n";
    for (std::size_t t = 0; t < s.size(); ++t) {
        out << to_string(s.start.plus(static_cast<int>(t))) << ',' << s.country << ','
            << to_string(s.agent) << ",aggregate," << to_string(s.metric) << ','
            << format_double(s.values[t]) << '\n';
    }
}

} // namespace disvar
