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

#ifndef QOSWB_MODEL_HPP
#define QOSWB_MODEL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qoswb {

/// Timestamps and durations, in integer milliseconds.
using Tick = std::int64_t;

// ---------------------------------------------------------------------------
// Taxonomy
// ---------------------------------------------------------------------------

enum class WorkloadType
{
	Websites,
	TechnologicalComputing,
	EndeavourSoftware,
	PerformanceTesting,
	OnlineTransactionProcessing,
	ECommerce,
	CentralFinancialServices,
	StorageBackup,
	ProductivityApplications,
	SoftwareDevTesting,
	GraphicsOriented,
	CriticalInternetApplications,
	MobileComputing
};

inline constexpr std::array<WorkloadType, 13> kAllWorkloadTypes{
	WorkloadType::Websites,
	WorkloadType::TechnologicalComputing,
	WorkloadType::EndeavourSoftware,
	WorkloadType::PerformanceTesting,
	WorkloadType::OnlineTransactionProcessing,
	WorkloadType::ECommerce,
	WorkloadType::CentralFinancialServices,
	WorkloadType::StorageBackup,
	WorkloadType::ProductivityApplications,
	WorkloadType::SoftwareDevTesting,
	WorkloadType::GraphicsOriented,
	WorkloadType::CriticalInternetApplications,
	WorkloadType::MobileComputing,
};

enum class WorkloadGroup
{
	ServerOriented,
	ClientOriented,
	MobileOriented
};

/// One row of the workload knowledge base.
struct TaxonomyEntry
{
	WorkloadType type;
	WorkloadGroup group;
	std::vector<std::string_view> quality_attributes;
};

/// The built-in knowledge base, one entry per WorkloadType in declaration order.
std::span<const TaxonomyEntry> taxonomy();
const TaxonomyEntry& taxonomy_entry(WorkloadType type);

std::string_view to_string(WorkloadType type);
std::string_view to_string(WorkloadGroup group);
std::optional<WorkloadType> parse_workload_type(std::string_view name);
std::optional<WorkloadGroup> parse_workload_group(std::string_view name);

// ---------------------------------------------------------------------------
// Workload declaration
// ---------------------------------------------------------------------------

struct FixedBegin
{
	Tick at = 0;
	bool operator==(const FixedBegin&) const = default;
};

/// Start may float anywhere in [earliest, latest]; no latest means unbounded.
struct ElasticBegin
{
	Tick earliest = 0;
	std::optional<Tick> latest;
	bool operator==(const ElasticBegin&) const = default;
};

using BeginConstraint = std::variant<ElasticBegin, FixedBegin>;

inline constexpr int kMaxUrgency = 3;

struct WorkloadConstraints
{
	std::optional<Tick> time_bound;
	BeginConstraint begin = ElasticBegin{};
	std::optional<Tick> hard_stop;
	bool interruptible = true;
	std::optional<double> min_resource;
	int urgency = 0;
	std::optional<double> budget;

	bool operator==(const WorkloadConstraints&) const = default;
};

struct LoadSample
{
	Tick at = 0;
	double load = 0.0;
	bool operator==(const LoadSample&) const = default;
};

struct DemandProfile
{
	double cpu_weight = 0.0;
	double memory_weight = 0.0;
	double network_weight = 0.0;
	double storage_weight = 0.0;
	std::vector<LoadSample> load_series;

	bool operator==(const DemandProfile&) const = default;
};

/// Descriptive only; nothing is optimized against it.
struct CostRecord
{
	double hardware = 0.0;
	double software = 0.0;
	double maintenance = 0.0;
	bool operator==(const CostRecord&) const = default;
};

struct Rate
{
	enum class Kind
	{
		OneShot,
		Periodic
	};
	Kind kind = Kind::OneShot;
	Tick period = 0;

	bool operator==(const Rate&) const = default;
};

struct Characteristics
{
	bool unstable_demand = false;
	bool standard = false;
	bool self_governing = false;
	bool not_critical = false;
	bool operator==(const Characteristics&) const = default;
};

struct WorkloadSpec
{
	std::string workload_id;
	std::string name;
	WorkloadType wtype = WorkloadType::Websites;
	WorkloadConstraints constraints;
	DemandProfile demand;
	std::optional<CostRecord> cost;
	Rate rate;
	Characteristics characteristics;

	bool operator==(const WorkloadSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Infrastructure and execution records
// ---------------------------------------------------------------------------

struct ServerState
{
	std::string resource_id;
	double expected_load_capacity = 1.0;
	std::set<std::string> hosted_services;
	double assigned_load = 0.0;

	double delta_lb() const { return assigned_load / expected_load_capacity; }
	bool operator==(const ServerState&) const = default;
};

/// A unit of work waiting for placement (WorkloadId, ProcessId, Execution time, Resource List).
struct NonScheduledRecord
{
	std::string workload_id;
	std::string process_id;
	Tick execution_time = 0;
	std::vector<std::string> resource_list;

	bool operator==(const NonScheduledRecord&) const = default;
};

/// A placed unit of work (WorkloadId, ProcessId, Begin Time, End Time, ResourceId).
struct ScheduledRecord
{
	std::string workload_id;
	std::string process_id;
	Tick begin_time = 0;
	Tick end_time = 0;
	std::string resource_id;

	bool operator==(const ScheduledRecord&) const = default;
};

// ---------------------------------------------------------------------------
// Raw observations
// ---------------------------------------------------------------------------

enum class FulfillmentLevel
{
	VerySatisfied,
	Satisfied,
	Neutral,
	Dissatisfied,
	CompletelyDissatisfied
};

inline constexpr std::array<FulfillmentLevel, 5> kAllFulfillmentLevels{
	FulfillmentLevel::VerySatisfied,
	FulfillmentLevel::Satisfied,
	FulfillmentLevel::Neutral,
	FulfillmentLevel::Dissatisfied,
	FulfillmentLevel::CompletelyDissatisfied,
};

std::string_view to_string(FulfillmentLevel level);
std::optional<FulfillmentLevel> parse_fulfillment_level(std::string_view name);

enum class ServerKind
{
	Mail,
	Java,
	Web,
	Database,
	File
};

inline constexpr std::array<ServerKind, 5> kAllServerKinds{
	ServerKind::Mail, ServerKind::Java, ServerKind::Web, ServerKind::Database, ServerKind::File,
};

std::string_view to_string(ServerKind kind);
std::optional<ServerKind> parse_server_kind(std::string_view name);

struct ThreatPair
{
	double threat = 0.0;
	double security = 0.0;
	bool operator==(const ThreatPair&) const = default;
};

struct ChangeRequest
{
	double analyze = 0.0;
	double modify = 0.0;
	double test = 0.0;
	double distribute = 0.0;
	bool operator==(const ChangeRequest&) const = default;
};

struct FlexiblePoint
{
	std::string point_id;
	double flexible_force = 0.0;
	double flexible_distance = 0.0;
	double applied_force = 0.0;
	bool operator==(const FlexiblePoint&) const = default;
};

inline constexpr std::array<std::string_view, 7> kSecurityDrivers{"CM", "RM", "RV", "LR", "PR", "LS", "II"};

struct SecurityMatrix
{
	std::vector<std::string> measures;
	std::vector<std::string> drivers;
	std::vector<std::vector<bool>> marks; // marks[measure][driver]

	bool operator==(const SecurityMatrix&) const = default;
};

/// The five-measure, seven-driver security matrix shipped with the toolkit.
SecurityMatrix default_security_matrix();

struct BandwidthObs
{
	std::uint64_t bits = 0;
	double seconds = 0.0;
	bool operator==(const BandwidthObs&) const = default;
};

struct UsabilityObs
{
	double learn_time = 0.0;
	std::uint64_t successful_ops = 0;
	std::uint64_t total_ops = 0;
	bool operator==(const UsabilityObs&) const = default;
};

struct FailureObs
{
	double mttf = 0.0;
	double mttr = 0.0;
	bool operator==(const FailureObs&) const = default;
};

struct LatencyObs
{
	Tick input_time = 0;
	Tick output_time = 0;
	bool operator==(const LatencyObs&) const = default;
};

struct ChangeCountObs
{
	std::uint64_t dynamic_changes = 0;
	std::uint64_t static_changes = 0;
	bool operator==(const ChangeCountObs&) const = default;
};

struct TestingObs
{
	double prep = 0.0;
	double exec = 0.0;
	bool operator==(const TestingObs&) const = default;
};

struct LoadObs
{
	double actual = 0.0;
	double expected = 0.0;
	bool operator==(const LoadObs&) const = default;
};

struct SupportObs
{
	std::uint64_t inquiries = 0;
	std::uint64_t visits = 0;
	bool operator==(const SupportObs&) const = default;
};

struct CorrectnessObs
{
	double expected_cs = 0.0;
	double observed_cs = 0.0;
	std::uint64_t existing_cs = 0;
	std::uint64_t requested_cs = 0;
	std::uint64_t defect_count = 0;
	bool operator==(const CorrectnessObs&) const = default;
};

struct UptimeObs
{
	double uptime = 0.0;
	double downtime = 0.0;
	bool operator==(const UptimeObs&) const = default;
};

struct UsageObs
{
	double actual_usage = 0.0;
	double expected_usage = 0.0;
	bool operator==(const UsageObs&) const = default;
};

struct TimeoutObs
{
	std::uint64_t timeout_count = 0;
	std::uint64_t request_count = 0;
	bool operator==(const TimeoutObs&) const = default;
};

struct PlatformObs
{
	std::uint64_t compatible_platforms = 0;
	std::uint64_t total_platforms = 0;
	bool operator==(const PlatformObs&) const = default;
};

struct UncertaintyObs
{
	std::vector<double> series;
	double proportion = 1.0;
	bool operator==(const UncertaintyObs&) const = default;
};

struct ServerEventObs
{
	ServerKind kind = ServerKind::Mail;
	double quantity = 0.0;
	double duration_ms = 0.0;
	bool operator==(const ServerEventObs&) const = default;
};

/// Answers to the four reliable-storage questions: where/how stored, retention, volume, no mining exposure.
using StorageChecklist = std::array<bool, 4>;

/// Every raw measurement group is optional; metrics are produced only for groups present.
struct ObservationSet
{
	std::optional<BandwidthObs> bandwidth;
	std::optional<std::vector<ThreatPair>> integrity;
	std::optional<UsabilityObs> usability;
	std::optional<FailureObs> reliability;
	std::optional<std::vector<ChangeRequest>> changes;
	std::optional<LatencyObs> latency;
	std::optional<FulfillmentLevel> fulfillment;
	std::optional<ChangeCountObs> customizability;
	std::optional<TestingObs> testing;
	std::optional<LoadObs> load;
	std::optional<SupportObs> self_service;
	std::optional<CorrectnessObs> correctness;
	std::optional<UptimeObs> serviceability;
	std::optional<UsageObs> capacity;
	std::optional<TimeoutObs> accessibility;
	std::optional<PlatformObs> portability;
	std::optional<UncertaintyObs> persistence;
	std::optional<SecurityMatrix> security;
	std::optional<std::vector<ServerEventObs>> performance;
	std::optional<std::vector<FlexiblePoint>> flexibility;
	std::optional<double> backup_gb;
	std::optional<double> visibility_score;
	std::optional<StorageChecklist> storage_checklist;

	bool operator==(const ObservationSet&) const = default;
};

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

enum class Verdict
{
	Pass,
	Fail,
	Anomalous,
	OverUtilized
};

std::string_view to_string(Verdict verdict);

/// The closed set of unit strings a report may carry.
inline constexpr std::array<std::string_view, 10> kUnitTable{
	"bps", "%", "ratio", "ms", "GB", "actions/min", "orders/s", "accesses/s", "commits/s", "MB/s",
};

bool is_known_unit(std::string_view unit);

struct ReportEntry
{
	std::string metric_name;
	double value = 0.0;
	std::string unit;
	std::optional<Verdict> verdict;
	std::string inputs_digest;

	bool operator==(const ReportEntry&) const = default;
};

class QoSReport
{
public:
	/// Throws std::invalid_argument on a duplicate metric name or a unit outside the unit table.
	void add(ReportEntry entry);
	void merge(const QoSReport& other);

	const std::vector<ReportEntry>& entries() const { return entries_; }
	const ReportEntry* find(std::string_view metric_name) const;
	bool empty() const { return entries_.empty(); }
	std::size_t size() const { return entries_.size(); }

private:
	std::vector<ReportEntry> entries_;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// Returns a description of every violated invariant, empty when the spec is well formed.
/// When execution_time is absent, the declared time bound stands in for it in the
/// begin/hard-stop consistency check.
std::vector<std::string> validate_spec(const WorkloadSpec& spec,
                                       std::optional<Tick> execution_time = std::nullopt);

std::vector<std::string> validate_record(const NonScheduledRecord& record);
std::vector<std::string> validate_record(const ScheduledRecord& record);
std::vector<std::string> validate_server(const ServerState& server);
std::vector<std::string> validate_observations(const ObservationSet& obs);
std::vector<std::string> validate_security_matrix(const SecurityMatrix& matrix);

} // namespace qoswb

#endif // QOSWB_MODEL_HPP
