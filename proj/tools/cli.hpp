#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace airywell::cli {

enum ExitCode : int { exit_ok = 0, exit_usage = 2, exit_nonconvergence = 3 };

/// key=value lines; blank lines and lines starting with '#' are ignored.
/// Keys are normalized to use '_' (so "delta-z" and "delta_z" are the same).
/// Throws ConfigError on a malformed line or an unreadable file.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// 17 significant digits, shortest form that survives a text round trip.
std::string format_real(double v);

/// Fixed notation with `digits` decimals (tables).
std::string format_fixed(double v, int digits);

/// Comma list ("4,9,16") or range "start:stop:step" (inclusive).
std::vector<double> parse_real_list(const std::string& text);

/// Entry point without the program name. Writes results to `out` (or the
/// --out file) and diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace airywell::cli
