#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "wrinkle/lemma1.hpp"
#include "wrinkle/params.hpp"
#include "wrinkle/scaling.hpp"

namespace wrinkle {

// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

// Header row plus one row per record; runtime_s is the last column.
std::string sweep_csv(std::span<const SweepRecord> records);
std::vector<SweepRecord> parse_sweep_csv(const std::string& text);

// Fitted slopes, epsilon/h range and the fitted c0, c1 as a JSON document.
std::string summary_json(const SheetParams& p, std::span<const SweepRecord> records,
                         std::span<const Lemma1Case> lemma1 = {});

// Log-log plot of epsilon against h with the fitted line and the fitted
// kappa(1/h) h envelope, as a standalone SVG 1.1 document.
std::string epsilon_svg(std::span<const SweepRecord> records);

// Breakdown, decomposition and excess energy of one deformation, with the
// five remainder terms itemized.
std::string energy_json(const Decomposition& dec, Reference reference, double reference_value);

std::string lemma1_csv(std::span<const Lemma1Case> cases);

// Columns of equal length under the given header names.
std::string columns_csv(std::span<const std::string> header,
                        std::span<const std::vector<double>> columns);

// Writes `text` to `path`, creating parent directories; throws
// ValidationError (code io.write) on failure.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace wrinkle
