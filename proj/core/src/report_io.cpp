#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "evasion/errors.hpp"
#include "evasion/harness.hpp"

namespace evasion {

namespace {

// Shortest decimal that round-trips the exact double, so emitted CSVs parse
// back bit-identical.
std::string fmt(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

double parse_double_field(const std::string& s, std::size_t row) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ParseError("records csv row " + std::to_string(row) +
                         ": bad number '" + s + "'");
    return v;
}

std::uint64_t parse_u64_field(const std::string& s, std::size_t row) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ParseError("records csv row " + std::to_string(row) +
                         ": bad integer '" + s + "'");
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

constexpr const char* kRecordsHeader =
    "dataset,defender,method,run,ear,anchor_yield,surrogate_fidelity,"
    "probes_used,seed";

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << text;
    if (!out)
        throw IoError("write failed for " + path.string());
}

} // namespace

std::string records_to_csv(const std::vector<RunRecord>& records) {
    std::string out(kRecordsHeader);
    out += '\n';
    for (const auto& r : records) {
        out += r.dataset;
        out += ',';
        out += r.defender;
        out += ',';
        out += r.method;
        out += ',';
        out += std::to_string(r.run_index);
        out += ',';
        out += fmt(r.ear);
        out += ',';
        out += fmt(r.anchor_yield);
        out += ',';
        if (r.surrogate_fidelity)
            out += fmt(*r.surrogate_fidelity);
        out += ',';
        out += std::to_string(r.probes_used);
        out += ',';
        out += std::to_string(r.rng_seed);
        out += '\n';
    }
    return out;
}

std::vector<RunRecord> records_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) != split_csv_line(kRecordsHeader))
        throw SchemaError("records csv: unexpected header");

    std::vector<RunRecord> out;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        if (line.empty()) {
            ++row;
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 9)
            throw ParseError("records csv row " + std::to_string(row) +
                             ": expected 9 fields, got " + std::to_string(f.size()));
        RunRecord r;
        r.dataset = f[0];
        r.defender = f[1];
        r.method = f[2];
        r.run_index = static_cast<int>(parse_u64_field(f[3], row));
        r.ear = parse_double_field(f[4], row);
        r.anchor_yield = parse_double_field(f[5], row);
        if (!f[6].empty())
            r.surrogate_fidelity = parse_double_field(f[6], row);
        r.probes_used = parse_u64_field(f[7], row);
        r.rng_seed = parse_u64_field(f[8], row);
        out.push_back(std::move(r));
        ++row;
    }
    return out;
}

std::vector<RunRecord> load_records_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return records_from_csv(buf.str());
}

namespace {

std::string aggregates_to_csv(const AttackReport& report) {
    std::string out = "dataset,defender,method,runs,initial_accuracy,"
                      "anchor_yield_mean,surrogate_fidelity_mean,ear_mean,ear_std\n";
    for (const auto& row : report.aggregates()) {
        out += row.dataset;
        out += ',';
        out += row.defender;
        out += ',';
        out += row.method;
        out += ',';
        out += std::to_string(row.runs);
        out += ',';
        for (const auto& acc : report.initial_accuracy) {
            if (acc.dataset == row.dataset && acc.defender == row.defender) {
                out += fmt(acc.accuracy);
                break;
            }
        }
        out += ',';
        out += fmt(row.anchor_yield_mean);
        out += ',';
        if (row.fidelity_mean)
            out += fmt(*row.fidelity_mean);
        out += ',';
        out += fmt(row.ear_mean);
        out += ',';
        out += fmt(row.ear_std);
        out += '\n';
    }
    return out;
}

std::string accuracy_to_csv(const AttackReport& report) {
    std::string out = "dataset,defender,cv_accuracy\n";
    for (const auto& acc : report.initial_accuracy) {
        out += acc.dataset;
        out += ',';
        out += acc.defender;
        out += ',';
        out += fmt(acc.accuracy);
        out += '\n';
    }
    return out;
}

std::string errors_to_text(const std::vector<CellError>& errors) {
    std::string out;
    for (const auto& e : errors) {
        out += e.dataset + "," + e.defender + "," + e.method + "," +
               std::to_string(e.run) + ": " + e.message + "\n";
    }
    return out;
}

// Minimal standalone SVG line chart: axes, ticks, one polyline per series.
std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<std::pair<
                               std::string, std::vector<std::pair<double, double>>>>& series) {
    constexpr double width = 720, height = 480;
    constexpr double ml = 70, mr = 170, mt = 40, mb = 55;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double x_lo = 0, x_hi = 1;
    bool have = false;
    for (const auto& [name, pts] : series) {
        for (const auto& [x, y] : pts) {
            if (!have) {
                x_lo = x_hi = x;
                have = true;
            }
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
        }
    }
    if (x_hi <= x_lo)
        x_hi = x_lo + 1.0;
    const double y_lo = 0.0, y_hi = 1.0; // EAR scale

    auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto py = [&](double y) { return mt + (y_hi - y) / (y_hi - y_lo) * ph; };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
        << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // axes
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
        << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
        << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";

    for (int t = 0; t <= 5; ++t) {
        const double fx = x_lo + (x_hi - x_lo) * t / 5.0;
        const double fy = y_lo + (y_hi - y_lo) * t / 5.0;
        svg << "<line x1=\"" << px(fx) << "\" y1=\"" << mt + ph << "\" x2=\""
            << px(fx) << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px(fx) << "\" y=\"" << mt + ph + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">" << std::setprecision(4) << fx << "</text>\n"
            << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << ml
            << "\" y2=\"" << py(fy) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << ml - 9 << "\" y=\"" << py(fy) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">" << std::setprecision(3) << fy << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">" << x_label << "</text>\n"
        << "<text x=\"18\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">" << y_label
        << "</text>\n";

    std::size_t idx = 0;
    for (const auto& [name, pts] : series) {
        const char* color = palette[idx % 8];
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : pts)
            svg << px(x) << "," << py(y) << " ";
        svg << "\"/>\n";
        for (const auto& [x, y] : pts)
            svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        const double ly = mt + 14 + 18 * static_cast<double>(idx);
        svg << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly << "\" x2=\""
            << ml + pw + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << ml + pw + 40 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << name
            << "</text>\n";
        ++idx;
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace

std::vector<std::filesystem::path>
emit_report(const ExperimentResult& result, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    const auto records_path = out_dir / "records.csv";
    write_text(records_path, records_to_csv(result.report.records));
    written.push_back(records_path);

    const auto agg_path = out_dir / "aggregates.csv";
    write_text(agg_path, aggregates_to_csv(result.report));
    written.push_back(agg_path);

    const auto acc_path = out_dir / "accuracy.csv";
    write_text(acc_path, accuracy_to_csv(result.report));
    written.push_back(acc_path);

    if (!result.errors.empty()) {
        const auto err_path = out_dir / "errors.txt";
        write_text(err_path, errors_to_text(result.errors));
        written.push_back(err_path);
    }
    return written;
}

std::vector<std::filesystem::path>
emit_sweep(SweepParameter parameter,
           const std::vector<std::pair<double, ExperimentResult>>& results,
           const std::filesystem::path& out_dir, bool charts) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    std::string sweep_csv = "parameter,value,dataset,defender,method,runs,"
                            "ear_mean,ear_std\n";
    // series keyed by "dataset/defender/method", points in sweep order
    std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series;

    for (const auto& [value, result] : results) {
        for (const auto& row : result.report.aggregates()) {
            sweep_csv += to_string(parameter) + "," + fmt(value) + "," +
                         row.dataset + "," + row.defender + "," + row.method +
                         "," + std::to_string(row.runs) + "," +
                         fmt(row.ear_mean) + "," + fmt(row.ear_std) + "\n";
            const std::string key =
                row.dataset + "/" + row.defender + "/" + row.method;
            auto it = std::find_if(series.begin(), series.end(),
                                   [&](const auto& s) { return s.first == key; });
            if (it == series.end()) {
                series.push_back({key, {}});
                it = series.end() - 1;
            }
            it->second.emplace_back(value, row.ear_mean);
        }
        const auto sub = out_dir / ("value_" + fmt(value));
        for (auto& p : emit_report(result, sub))
            written.push_back(std::move(p));
    }

    const auto sweep_path = out_dir / "sweep.csv";
    write_text(sweep_path, sweep_csv);
    written.push_back(sweep_path);

    if (charts) {
        const auto chart_path =
            out_dir / ("ear_vs_" + to_string(parameter) + ".svg");
        write_text(chart_path,
                   line_chart_svg("EAR vs " + to_string(parameter),
                                  to_string(parameter), "EAR", series));
        written.push_back(chart_path);
    }
    return written;
}

namespace {

// Re-renders ear_vs_<param>.svg from an existing sweep.csv.
std::vector<std::filesystem::path>
regenerate_sweep_chart(const std::filesystem::path& dir) {
    const auto sweep_path = dir / "sweep.csv";
    if (!std::filesystem::exists(sweep_path))
        return {};
    std::ifstream in(sweep_path);
    std::string line;
    std::getline(in, line);
    std::string param_name;
    std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto f = split_csv_line(line);
        if (f.size() != 8)
            throw ParseError("sweep.csv row " + std::to_string(row) +
                             ": expected 8 fields");
        param_name = f[0];
        const std::string key = f[2] + "/" + f[3] + "/" + f[4];
        auto it = std::find_if(series.begin(), series.end(),
                               [&](const auto& s) { return s.first == key; });
        if (it == series.end()) {
            series.push_back({key, {}});
            it = series.end() - 1;
        }
        it->second.emplace_back(parse_double_field(f[1], row),
                                parse_double_field(f[6], row));
        ++row;
    }
    if (param_name.empty())
        return {};
    const auto chart_path = dir / ("ear_vs_" + param_name + ".svg");
    write_text(chart_path,
               line_chart_svg("EAR vs " + param_name, param_name, "EAR", series));
    return {chart_path};
}

} // namespace

std::vector<std::filesystem::path>
regenerate_report(const std::filesystem::path& dir, bool charts) {
    const auto records_path = dir / "records.csv";
    if (!std::filesystem::exists(records_path)) {
        // A sweep root has no records of its own: rebuild each value_<v>/
        // report and re-render the chart from sweep.csv.
        if (!std::filesystem::exists(dir / "sweep.csv"))
            throw IoError("no records.csv or sweep.csv under " + dir.string());
        std::vector<std::filesystem::path> written;
        std::vector<std::filesystem::path> subdirs;
        for (const auto& entry : std::filesystem::directory_iterator(dir))
            if (entry.is_directory() &&
                entry.path().filename().string().rfind("value_", 0) == 0)
                subdirs.push_back(entry.path());
        std::sort(subdirs.begin(), subdirs.end());
        for (const auto& sub : subdirs)
            for (auto& p : regenerate_report(sub, false))
                written.push_back(std::move(p));
        if (charts)
            for (auto& p : regenerate_sweep_chart(dir))
                written.push_back(std::move(p));
        return written;
    }

    AttackReport report;
    report.records = load_records_csv(records_path);

    // Keep the initial-accuracy column when a previous emission left it.
    const auto acc_path = dir / "accuracy.csv";
    if (std::filesystem::exists(acc_path)) {
        std::ifstream in(acc_path);
        std::string line;
        std::getline(in, line); // header
        std::size_t row = 1;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            const auto f = split_csv_line(line);
            if (f.size() != 3)
                throw ParseError("accuracy.csv row " + std::to_string(row) +
                                 ": expected 3 fields");
            report.initial_accuracy.push_back(
                {f[0], f[1], parse_double_field(f[2], row)});
            ++row;
        }
    }

    std::vector<std::filesystem::path> written;
    const auto agg_path = dir / "aggregates.csv";
    write_text(agg_path, aggregates_to_csv(report));
    written.push_back(agg_path);

    if (charts)
        for (auto& p : regenerate_sweep_chart(dir))
            written.push_back(std::move(p));
    return written;
}

std::string format_report_table(const AttackReport& report) {
    std::ostringstream os;
    os << std::left << std::setw(22) << "dataset" << std::setw(10) << "defender"
       << std::setw(8) << "method" << std::setw(6) << "runs" << std::setw(10)
       << "cv-acc" << std::setw(10) << "yield" << std::setw(10) << "fidelity"
       << "ear (mean +/- std)\n";
    for (const auto& row : report.aggregates()) {
        std::string acc = "-";
        for (const auto& a : report.initial_accuracy)
            if (a.dataset == row.dataset && a.defender == row.defender) {
                std::ostringstream tmp;
                tmp << std::fixed << std::setprecision(3) << a.accuracy;
                acc = tmp.str();
                break;
            }
        std::string fid = "-";
        if (row.fidelity_mean) {
            std::ostringstream tmp;
            tmp << std::fixed << std::setprecision(3) << *row.fidelity_mean;
            fid = tmp.str();
        }
        os << std::left << std::setw(22) << row.dataset << std::setw(10)
           << row.defender << std::setw(8) << row.method << std::setw(6)
           << row.runs << std::setw(10) << acc << std::setw(10) << std::fixed
           << std::setprecision(3) << row.anchor_yield_mean << std::setw(10)
           << fid << std::setprecision(3) << row.ear_mean << " +/- "
           << std::setprecision(3) << row.ear_std << "\n";
    }
    return os.str();
}

} // namespace evasion
