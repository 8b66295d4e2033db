#include "waveobs_cli/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "waveobs_cli/errors.hpp"

namespace waveobs::cli {

namespace {

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const char* header) : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot open " + path.string() + " for writing");
        out_ << header << '\n';
    }

    CsvWriter& field(const std::string& s) {
        if (!first_) out_ << ',';
        out_ << s;
        first_ = false;
        return *this;
    }
    CsvWriter& field(double v) { return field(format_double(v)); }
    CsvWriter& field(const std::optional<double>& v) { return field(v ? format_double(*v) : std::string()); }

    void end_row() {
        out_ << '\n';
        first_ = true;
    }

    void close() {
        out_.close();
        if (!out_) throw IoError("failed writing " + path_.string());
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
    bool first_ = true;
};

double parse_number(const std::string& s, const std::filesystem::path& path, std::size_t line) {
    const char* begin = s.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE)
        throw DataMismatch(path.string() + ":" + std::to_string(line) + ": not a number: '" + s + "'");
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_series(const std::filesystem::path& path, const TimeSeries& y) {
    CsvWriter w(path, "t,y");
    for (std::size_t n = 0; n < y.size(); ++n) {
        w.field(static_cast<double>(n) * y.dt).field(y[n]);
        w.end_row();
    }
    w.close();
}

TimeSeries read_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataMismatch(path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,y") throw DataMismatch(path.string() + ": expected header 't,y', got '" + line + "'");

    std::vector<double> t, y;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw DataMismatch(path.string() + ":" + std::to_string(lineno) + ": expected two columns");
        t.push_back(parse_number(line.substr(0, comma), path, lineno));
        y.push_back(parse_number(line.substr(comma + 1), path, lineno));
    }
    if (y.size() < 2) throw DataMismatch(path.string() + ": need at least two samples");

    TimeSeries s;
    s.dt = t[1] - t[0];
    if (!(s.dt > 0.0) || t[0] != 0.0) throw DataMismatch(path.string() + ": time column must start at 0 and increase");
    for (std::size_t n = 0; n < t.size(); ++n) {
        const double expected = static_cast<double>(n) * s.dt;
        if (std::abs(t[n] - expected) > 1e-9 * std::max(1.0, expected))
            throw DataMismatch(path.string() + ": non-uniform sampling at row " + std::to_string(n));
    }
    s.values = std::move(y);
    return s;
}

void write_estimate(const std::filesystem::path& path, const Grid1D& g, const ScalarField& q_hat,
                    const std::optional<ScalarField>& q_true) {
    CsvWriter w(path, q_true ? "x,q_hat,q_true" : "x,q_hat");
    for (int j = 0; j < g.nodes(); ++j) {
        w.field(g.x(j)).field(q_hat[j]);
        if (q_true) w.field((*q_true)[j]);
        w.end_row();
    }
    w.close();
}

void write_iterations(const std::filesystem::path& path, std::span<const IterationReport> reports, bool timing) {
    CsvWriter w(path, "iter,l2_err,h1_err,lyapunov,energy_residual,seconds");
    for (const auto& r : reports) {
        w.field(std::to_string(r.iteration)).field(r.l2_err).field(r.h1_err).field(r.lyapunov).field(r.energy_residual);
        w.field(timing ? format_double(r.seconds) : std::string());
        w.end_row();
    }
    w.close();
}

void write_checks(const std::filesystem::path& path, std::span<const DiagnosticEntry> entries) {
    CsvWriter w(path, "check,value,threshold,pass");
    for (const auto& e : entries) {
        w.field(e.check).field(e.value).field(e.threshold).field(std::string(e.pass ? "true" : "false"));
        w.end_row();
    }
    w.close();
}

void write_lyapunov(const std::filesystem::path& path, std::span<const IterationReport> reports) {
    CsvWriter w(path, "iter,V");
    for (const auto& r : reports) {
        if (!r.lyapunov) continue;
        w.field(std::to_string(r.iteration)).field(*r.lyapunov);
        w.end_row();
    }
    w.close();
}

}  // namespace waveobs::cli
