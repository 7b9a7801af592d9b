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

#ifndef QOSWB_METRICS_HPP
#define QOSWB_METRICS_HPP

#include "qoswb/model.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

/// QoS metric catalog.
///
/// Every function is pure: it maps a fragment of raw observations to a value and
/// the unit it is reported in. Precondition failures throw MetricError with a
/// message naming the metric and the offending input.
namespace qoswb::metrics {

class MetricError : public std::domain_error
{
public:
	using std::domain_error::domain_error;
};

namespace unit {
inline constexpr std::string_view bps = "bps";
inline constexpr std::string_view percent = "%";
inline constexpr std::string_view ratio = "ratio";
inline constexpr std::string_view ms = "ms";
inline constexpr std::string_view gb = "GB";
} // namespace unit

struct MetricValue
{
	double value = 0.0;
	std::string_view unit;
	bool operator==(const MetricValue&) const = default;
};

MetricValue bandwidth(std::uint64_t bits, double seconds);

/// Sum over threat/security pairs of (1 - threat)(1 - security).
MetricValue integrity(std::span<const ThreatPair> pairs);

struct UsabilityResult
{
	MetricValue learnability;
	MetricValue success_ratio;
};

UsabilityResult usability(double learn_time, std::uint64_t successful_ops, std::uint64_t total_ops);

struct ReliabilityResult
{
	MetricValue mtbf;
	MetricValue availability;
};

ReliabilityResult reliability_availability(double mttf, double mttr);

/// Mean time to change over a non-empty list of change requests.
MetricValue changeability(std::span<const ChangeRequest> changes);

/// Elapsed time from input to output. Output before input is a causality violation.
MetricValue latency(Tick input_time, Tick output_time);

MetricValue confidence_lookup(FulfillmentLevel level);

MetricValue customizability(std::uint64_t dynamic_changes, std::uint64_t static_changes);

MetricValue testing_time(double prep, double exec);

struct LoadResult
{
	MetricValue delta_lb;
	bool efficient = false;
};

/// Actual over expected load; a server is efficient when the ratio does not exceed 1.
LoadResult variable_load(double actual, double expected);

/// 100 - 100 * inquiries / visits. Negative when inquiries exceed visits.
MetricValue self_service_rate(std::uint64_t inquiries, std::uint64_t visits);

MetricValue accuracy(double expected_cs, double observed_cs);
MetricValue completeness(std::uint64_t existing_cs, std::uint64_t requested_cs);
/// Defects divided by the number of services actually provided.
MetricValue defects_per_cs(std::uint64_t defects, std::uint64_t existing_cs);

struct CorrectnessResult
{
	MetricValue accuracy;
	MetricValue completeness;
	MetricValue defects_per_cs;
};

CorrectnessResult correctness(double expected_cs, double observed_cs, std::uint64_t existing_cs,
                              std::uint64_t requested_cs, std::uint64_t defects);

MetricValue serviceability(double uptime, double downtime);

/// Actual over expected usage time; values above 1 mean over-use and are reported raw.
MetricValue computing_capacity(double actual_usage, double expected_usage);

MetricValue internet_accessibility(std::uint64_t timeouts, std::uint64_t total);

MetricValue portability(std::uint64_t compatible, std::uint64_t total);

/// Smallest number of leading periods whose share of the total uncertainty reaches `proportion`.
std::size_t persistence(std::span<const double> uncertainty_series, double proportion);

struct SecurityCoverage
{
	std::vector<std::pair<std::string, std::size_t>> per_driver_counts;
	std::vector<std::pair<std::string, std::size_t>> per_measure_counts;
	double coverage_ratio = 0.0;
};

SecurityCoverage security_coverage(const SecurityMatrix& matrix);

/// Unit a server kind's throughput is reported in.
std::string_view throughput_unit(ServerKind kind);

/// quantity over duration, scaled to the kind's unit (per minute for mail, per second otherwise).
MetricValue performance_throughput(ServerKind kind, double quantity, double duration_ms);

struct FlexibilityResult
{
	std::vector<double> degrees;
	double capacity = 0.0;
	std::vector<bool> usable;
};

FlexibilityResult flexibility(std::span<const FlexiblePoint> points);

MetricValue database_backup(double gb);
MetricValue service_visibility(double score);
MetricValue reliable_storage(const StorageChecklist& checklist);

/// Report entries for the assessed (non-formula) metrics present in `obs`.
std::vector<ReportEntry> qualitative_assessments(const ObservationSet& obs);

/// Every metric computable from `obs`, one entry per metric.
QoSReport evaluate(const ObservationSet& obs);

/// Stable 64-bit FNV-1a digest rendered as 16 hex digits.
std::string inputs_digest(std::string_view canonical_inputs);

} // namespace qoswb::metrics

#endif // QOSWB_METRICS_HPP
