#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "waveobs/cascade_observer.hpp"
#include "waveobs/diagnostics.hpp"

namespace waveobs::cli {

/// %.17g, which strtod reads back to the identical double.
std::string format_double(double v);

/// `t,y` with t_n = n dt.
void write_series(const std::filesystem::path& path, const TimeSeries& y);

/// Reads a `t,y` file. dt is taken from the first two rows; rows whose time
/// stamp departs from n dt raise DataMismatch, as do malformed lines.
TimeSeries read_series(const std::filesystem::path& path);

/// `x,q_hat[,q_true]`.
void write_estimate(const std::filesystem::path& path, const Grid1D& g, const ScalarField& q_hat,
                    const std::optional<ScalarField>& q_true);

/// `iter,l2_err,h1_err,lyapunov,energy_residual,seconds`; absent values and,
/// unless `timing`, the seconds column are left empty.
void write_iterations(const std::filesystem::path& path, std::span<const IterationReport> reports, bool timing);

/// `check,value,threshold,pass`.
void write_checks(const std::filesystem::path& path, std::span<const DiagnosticEntry> entries);

/// `iter,V`.
void write_lyapunov(const std::filesystem::path& path, std::span<const IterationReport> reports);

}  // namespace waveobs::cli
