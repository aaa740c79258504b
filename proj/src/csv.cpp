#include "fluidipa/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string_view>

#include "fluidipa/errors.hpp"

namespace fluidipa {

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    for (;;) {
        const auto comma = line.find(',', pos);
        fields.push_back(line.substr(pos, comma - pos));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return fields;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line_no) {
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw FormatError("line " + std::to_string(line_no) + ": bad field '" + std::string(field) + "'", line_no);
    }
    return value;
}

// Yields the data rows after checking the header; strips trailing '\r'.
template <typename RowFn>
void for_each_row(std::istream& in, std::string_view header, std::size_t columns, RowFn&& fn) {
    std::string line;
    std::size_t line_no = 0;
    bool seen_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!seen_header) {
            if (line != header) throw FormatError("unexpected header '" + line + "'", line_no);
            seen_header = true;
            continue;
        }
        const auto fields = split(line);
        if (fields.size() != columns) {
            throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(columns) + " fields",
                              line_no);
        }
        fn(fields, line_no);
    }
    if (!seen_header) throw FormatError("missing header", 0);
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void write_trajectory_csv(std::ostream& out, const std::vector<IterateRecord>& records) {
    out << kTrajectoryHeader << '\n';
    for (const auto& r : records) {
        out << r.i << ',' << format_double(r.theta) << ',' << r.k << ',' << format_double(r.cost) << ','
            << format_double(r.derivative) << ',' << format_double(r.displacement) << '\n';
    }
}

std::vector<IterateRecord> read_trajectory_csv(std::istream& in) {
    std::vector<IterateRecord> records;
    for_each_row(in, kTrajectoryHeader, 6, [&](const auto& f, std::size_t n) {
        records.push_back({parse_field<std::size_t>(f[0], n), parse_field<double>(f[1], n), parse_field<int>(f[2], n),
                           parse_field<double>(f[3], n), parse_field<double>(f[4], n), parse_field<double>(f[5], n)});
    });
    return records;
}

SweepRow to_sweep_row(const SweepCase& c) {
    return {c.seed,
            c.coupled.capacity,
            c.coupled.lossy_periods,
            c.coupled.lossy_after_short_idle,
            c.coupled.type1_count,
            c.coupled.delta_loss,
            c.coupled.ipa,
            c.coupled.error,
            c.coupled.bound};
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kSweepHeader << '\n';
    for (const auto& r : rows) {
        out << r.seed << ',' << r.k << ',' << r.lossy_periods << ',' << r.lossy_after_short_idle << ','
            << r.type1_count << ',' << format_double(r.delta_loss) << ',' << format_double(r.ipa) << ','
            << format_double(r.error) << ',' << format_double(r.bound) << '\n';
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
    std::vector<SweepRow> rows;
    for_each_row(in, kSweepHeader, 9, [&](const auto& f, std::size_t n) {
        rows.push_back({parse_field<std::uint64_t>(f[0], n), parse_field<int>(f[1], n), parse_field<int>(f[2], n),
                        parse_field<int>(f[3], n), parse_field<int>(f[4], n), parse_field<double>(f[5], n),
                        parse_field<double>(f[6], n), parse_field<double>(f[7], n), parse_field<double>(f[8], n)});
    });
    return rows;
}

}  // namespace fluidipa
