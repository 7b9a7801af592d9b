/*
 * Copyright 2026 The qoswb Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef QOSWB_IO_HPP
#define QOSWB_IO_HPP

#include "qoswb/model.hpp"

#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qoswb::io {

inline constexpr int kFormatVersion = 1;

struct WorkloadFile
{
	int version = kFormatVersion;
	std::vector<WorkloadSpec> workloads;
	std::vector<NonScheduledRecord> records;
	std::map<std::string, ObservationSet> observations;
	std::vector<ServerState> servers;

	bool operator==(const WorkloadFile&) const = default;
};

/// A problem found in an input document. `location` is "line:column" for syntax
/// errors and a JSON pointer ("/workloads/0/type") for everything else.
struct Diagnostic
{
	std::string location;
	std::string message;
};

class ParseError : public std::runtime_error
{
public:
	ParseError(std::string source, std::vector<Diagnostic> diagnostics);

	const std::string& source() const { return source_; }
	const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
	std::string source_;
	std::vector<Diagnostic> diagnostics_;
};

/// Parses and validates a workload document. Unknown fields, unknown enum names,
/// dangling workload references and invariant violations are all reported, each with
/// its location, in one ParseError.
WorkloadFile parse_workload_file(std::string_view text, std::string_view source_name = "<input>");

/// Reads `path` and parses it; I/O failures are reported as ParseError too.
WorkloadFile load_workload_file(const std::filesystem::path& path);

/// Canonical text of a workload file. parse_workload_file(emit_workload_file(f)) == f.
std::string emit_workload_file(const WorkloadFile& file);

/// Knowledge base rows as stored in the taxonomy data file.
struct TaxonomyRecord
{
	WorkloadType type;
	WorkloadGroup group;
	std::vector<std::string> quality_attributes;

	bool operator==(const TaxonomyRecord&) const = default;
};

std::vector<TaxonomyRecord> parse_taxonomy(std::string_view text, std::string_view source_name = "<taxonomy>");
std::string emit_taxonomy(std::span<const TaxonomyEntry> entries);

enum class ReportFormat
{
	Table,
	Machine
};

inline constexpr std::string_view kMachineReportHeader = "# qoswb-report v1";

/// Renders a report. Both formats list metrics in lexical order of name. The machine
/// format is one "name=value unit=U verdict=V" line per metric after a header line.
std::string emit_report(const QoSReport& report, ReportFormat format, bool styled = false);

/// Left-aligned columns separated by two spaces. With `styled`, the header is bold.
std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                         bool styled = false);

} // namespace qoswb::io

#endif // QOSWB_IO_HPP
