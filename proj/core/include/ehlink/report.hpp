#pragma once

#include "ehlink/engine.hpp"
#include "ehlink/metrics.hpp"
#include "ehlink/trace.hpp"

#include <ostream>
#include <string>
#include <string_view>

namespace ehlink {

/// Stable CSV schema for run results. Numbers are written with 12
/// significant digits and '.' as the decimal separator, so identical
/// configurations produce byte-identical files.
std::string csv_header();
std::string csv_row(std::string_view preset, std::string_view axis_key, double axis_value,
                    std::uint32_t trial, const SimSummary& summary);

void write_rows(std::ostream& out, std::string_view preset, std::string_view axis_key,
                const std::vector<SweepRow>& rows);

/// Per-slot trace dump, one row per slot.
std::string trace_csv_header();
void write_trace(std::ostream& out, const Trace& trace);

} // namespace ehlink
