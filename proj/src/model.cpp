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

#include "qoswb/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qoswb {

namespace {

using WT = WorkloadType;
using WG = WorkloadGroup;

const std::vector<TaxonomyEntry>& knowledge_base()
{
	static const std::vector<TaxonomyEntry> kb{
		{WT::Websites, WG::ServerOriented,
		 {"reliable storage", "high network bandwidth", "performance", "high availability"}},
		{WT::TechnologicalComputing, WG::ServerOriented, {"computing capacity"}},
		{WT::EndeavourSoftware, WG::ServerOriented,
		 {"security", "high availability", "customer confidence level", "correctness"}},
		{WT::PerformanceTesting, WG::ServerOriented, {"computing capacity", "performance"}},
		{WT::OnlineTransactionProcessing, WG::ServerOriented,
		 {"security", "high availability", "internet accessibility", "usability"}},
		{WT::ECommerce, WG::ServerOriented, {"variable computing load", "customizability"}},
		{WT::CentralFinancialServices, WG::ServerOriented,
		 {"security", "high availability", "changeability", "integrity"}},
		{WT::StorageBackup, WG::ServerOriented, {"reliability", "persistence"}},
		{WT::ProductivityApplications, WG::ClientOriented,
		 {"network bandwidth", "latency", "data backup", "security"}},
		{WT::SoftwareDevTesting, WG::ClientOriented,
		 {"user self-service rate", "flexibility", "testing time"}},
		{WT::GraphicsOriented, WG::ClientOriented,
		 {"network bandwidth and latency", "data backup", "visibility"}},
		{WT::CriticalInternetApplications, WG::ClientOriented,
		 {"high availability", "serviceability", "usability"}},
		{WT::MobileComputing, WG::MobileOriented, {"portability", "high availability", "reliability"}},
	};
	return kb;
}

constexpr std::array<std::string_view, 13> kTypeNames{
	"Websites",
	"TechnologicalComputing",
	"EndeavourSoftware",
	"PerformanceTesting",
	"OnlineTransactionProcessing",
	"ECommerce",
	"CentralFinancialServices",
	"StorageBackup",
	"ProductivityApplications",
	"SoftwareDevTesting",
	"GraphicsOriented",
	"CriticalInternetApplications",
	"MobileComputing",
};

constexpr std::array<std::string_view, 3> kGroupNames{"ServerOriented", "ClientOriented", "MobileOriented"};

constexpr std::array<std::string_view, 5> kFulfillmentNames{
	"VerySatisfied", "Satisfied", "Neutral", "Dissatisfied", "CompletelyDissatisfied",
};

constexpr std::array<std::string_view, 5> kServerKindNames{"Mail", "Java", "Web", "Database", "File"};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::string_view, N>& names, std::string_view name)
{
	for (std::size_t i = 0; i < N; ++i) {
		if (names[i] == name) {
			return static_cast<Enum>(i);
		}
	}
	return std::nullopt;
}

bool finite_non_negative(double v)
{
	return std::isfinite(v) && v >= 0.0;
}

bool probability(double v)
{
	return std::isfinite(v) && v >= 0.0 && v <= 1.0;
}

} // namespace

std::span<const TaxonomyEntry> taxonomy()
{
	return knowledge_base();
}

const TaxonomyEntry& taxonomy_entry(WorkloadType type)
{
	return knowledge_base().at(static_cast<std::size_t>(type));
}

std::string_view to_string(WorkloadType type)
{
	return kTypeNames.at(static_cast<std::size_t>(type));
}

std::string_view to_string(WorkloadGroup group)
{
	return kGroupNames.at(static_cast<std::size_t>(group));
}

std::optional<WorkloadType> parse_workload_type(std::string_view name)
{
	return lookup<WorkloadType>(kTypeNames, name);
}

std::optional<WorkloadGroup> parse_workload_group(std::string_view name)
{
	return lookup<WorkloadGroup>(kGroupNames, name);
}

std::string_view to_string(FulfillmentLevel level)
{
	return kFulfillmentNames.at(static_cast<std::size_t>(level));
}

std::optional<FulfillmentLevel> parse_fulfillment_level(std::string_view name)
{
	return lookup<FulfillmentLevel>(kFulfillmentNames, name);
}

std::string_view to_string(ServerKind kind)
{
	return kServerKindNames.at(static_cast<std::size_t>(kind));
}

std::optional<ServerKind> parse_server_kind(std::string_view name)
{
	return lookup<ServerKind>(kServerKindNames, name);
}

std::string_view to_string(Verdict verdict)
{
	switch (verdict) {
	case Verdict::Pass:
		return "pass";
	case Verdict::Fail:
		return "fail";
	case Verdict::Anomalous:
		return "anomalous";
	case Verdict::OverUtilized:
		return "over-utilized";
	}
	return "unknown";
}

bool is_known_unit(std::string_view unit)
{
	return std::find(kUnitTable.begin(), kUnitTable.end(), unit) != kUnitTable.end();
}

SecurityMatrix default_security_matrix()
{
	SecurityMatrix m;
	m.measures = {
		"The number of Fake alarms monitored by Corporate Security",
		"Security cost = % of total company revenue",
		"Number of safety hazards proactively identified",
		"% of dangerous data resources residing on systems",
		"The number of ineffectual service responses to the issues identified by the Security as control weaknesses",
	};
	m.drivers.assign(kSecurityDrivers.begin(), kSecurityDrivers.end());
	//          CM     RM     RV     LR     PR     LS     II
	m.marks = {
		{true, true, true, false, true, false, false},
		{true, true, false, false, false, false, true},
		{true, true, true, true, false, false, false},
		{true, true, true, false, true, false, false},
		{true, true, false, true, false, false, true},
	};
	return m;
}

void QoSReport::add(ReportEntry entry)
{
	if (find(entry.metric_name) != nullptr) {
		throw std::invalid_argument("duplicate metric '" + entry.metric_name + "' in report");
	}
	if (!is_known_unit(entry.unit)) {
		throw std::invalid_argument("metric '" + entry.metric_name + "' has unknown unit '" + entry.unit + "'");
	}
	entries_.push_back(std::move(entry));
}

void QoSReport::merge(const QoSReport& other)
{
	for (const auto& e : other.entries()) {
		add(e);
	}
}

const ReportEntry* QoSReport::find(std::string_view metric_name) const
{
	auto it = std::find_if(entries_.begin(), entries_.end(),
	                       [&](const ReportEntry& e) { return e.metric_name == metric_name; });
	return it == entries_.end() ? nullptr : &*it;
}

std::vector<std::string> validate_spec(const WorkloadSpec& spec, std::optional<Tick> execution_time)
{
	std::vector<std::string> out;
	const auto& c = spec.constraints;

	if (spec.workload_id.empty()) {
		out.emplace_back("workload_id is empty");
	}
	if (c.urgency < 0 || c.urgency > kMaxUrgency) {
		out.emplace_back("urgency out of range");
	}
	if (c.budget && !finite_non_negative(*c.budget)) {
		out.emplace_back("budget is negative");
	}
	if (c.time_bound && *c.time_bound <= 0) {
		out.emplace_back("time bound must be positive");
	}
	if (c.min_resource && !finite_non_negative(*c.min_resource)) {
		out.emplace_back("min_resource is negative");
	}
	if (const auto* elastic = std::get_if<ElasticBegin>(&c.begin)) {
		if (elastic->latest && *elastic->latest < elastic->earliest) {
			out.emplace_back("elastic begin window is inverted");
		}
	}

	const std::optional<Tick> exec = execution_time ? execution_time : c.time_bound;
	if (const auto* fixed = std::get_if<FixedBegin>(&c.begin); fixed && c.hard_stop && exec) {
		if (fixed->at + *exec > *c.hard_stop) {
			out.emplace_back("begin + execution exceeds hard stop");
		}
	}

	const auto& d = spec.demand;
	const std::array<double, 4> weights{d.cpu_weight, d.memory_weight, d.network_weight, d.storage_weight};
	if (!std::all_of(weights.begin(), weights.end(), finite_non_negative)) {
		out.emplace_back("demand weights must be finite and non-negative");
	} else if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) {
		out.emplace_back("demand weights are all zero");
	}
	for (const auto& s : d.load_series) {
		if (!finite_non_negative(s.load)) {
			out.emplace_back("load series contains a negative or non-finite sample");
			break;
		}
	}

	if (spec.cost) {
		const auto& k = *spec.cost;
		if (!finite_non_negative(k.hardware) || !finite_non_negative(k.software) ||
		    !finite_non_negative(k.maintenance)) {
			out.emplace_back("cost components must be non-negative");
		}
	}
	if (spec.rate.kind == Rate::Kind::Periodic && spec.rate.period <= 0) {
		out.emplace_back("periodic rate requires period > 0");
	}
	return out;
}

std::vector<std::string> validate_record(const NonScheduledRecord& record)
{
	std::vector<std::string> out;
	if (record.workload_id.empty()) {
		out.emplace_back("workload_id is empty");
	}
	if (record.execution_time <= 0) {
		out.emplace_back("execution time must be positive");
	}
	if (record.resource_list.empty()) {
		out.emplace_back("resource list is empty");
	}
	return out;
}

std::vector<std::string> validate_record(const ScheduledRecord& record)
{
	std::vector<std::string> out;
	if (record.end_time <= record.begin_time) {
		out.emplace_back("end time must be after begin time");
	}
	if (record.resource_id.empty()) {
		out.emplace_back("resource_id is empty");
	}
	return out;
}

std::vector<std::string> validate_server(const ServerState& server)
{
	std::vector<std::string> out;
	if (server.resource_id.empty()) {
		out.emplace_back("resource_id is empty");
	}
	if (!(std::isfinite(server.expected_load_capacity) && server.expected_load_capacity > 0.0)) {
		out.emplace_back("expected load capacity must be positive");
	}
	if (!finite_non_negative(server.assigned_load)) {
		out.emplace_back("assigned load must be non-negative");
	}
	return out;
}

std::vector<std::string> validate_security_matrix(const SecurityMatrix& matrix)
{
	std::vector<std::string> out;
	std::vector<std::string> sorted = matrix.drivers;
	std::sort(sorted.begin(), sorted.end());
	std::vector<std::string> expected(kSecurityDrivers.begin(), kSecurityDrivers.end());
	std::sort(expected.begin(), expected.end());
	if (sorted != expected) {
		out.emplace_back("security drivers must be exactly CM, RM, RV, LR, PR, LS, II");
	}
	if (matrix.marks.size() != matrix.measures.size()) {
		out.emplace_back("security matrix has " + std::to_string(matrix.marks.size()) + " rows for " +
		                 std::to_string(matrix.measures.size()) + " measures");
	}
	for (std::size_t i = 0; i < matrix.marks.size(); ++i) {
		if (matrix.marks[i].size() != matrix.drivers.size()) {
			out.emplace_back("security matrix row " + std::to_string(i) + " is ragged");
		}
	}
	return out;
}

std::vector<std::string> validate_observations(const ObservationSet& obs)
{
	std::vector<std::string> out;
	auto need = [&](bool ok, const char* what) {
		if (!ok) {
			out.emplace_back(what);
		}
	};

	if (obs.bandwidth) {
		need(finite_non_negative(obs.bandwidth->seconds), "bandwidth.seconds must be non-negative");
	}
	if (obs.integrity) {
		for (std::size_t i = 0; i < obs.integrity->size(); ++i) {
			const auto& p = (*obs.integrity)[i];
			if (!probability(p.threat) || !probability(p.security)) {
				out.emplace_back("integrity pair " + std::to_string(i) + " has a probability outside [0,1]");
			}
		}
	}
	if (obs.usability) {
		need(finite_non_negative(obs.usability->learn_time), "usability.learn_time must be non-negative");
	}
	if (obs.reliability) {
		need(finite_non_negative(obs.reliability->mttf) && finite_non_negative(obs.reliability->mttr),
		     "reliability times must be non-negative");
	}
	if (obs.changes) {
		for (const auto& c : *obs.changes) {
			if (!finite_non_negative(c.analyze) || !finite_non_negative(c.modify) ||
			    !finite_non_negative(c.test) || !finite_non_negative(c.distribute)) {
				out.emplace_back("change request durations must be non-negative");
				break;
			}
		}
	}
	if (obs.latency) {
		need(obs.latency->input_time >= 0 && obs.latency->output_time >= 0, "latency timestamps must be non-negative");
	}
	if (obs.testing) {
		need(finite_non_negative(obs.testing->prep) && finite_non_negative(obs.testing->exec),
		     "testing durations must be non-negative");
	}
	if (obs.load) {
		need(finite_non_negative(obs.load->actual) && finite_non_negative(obs.load->expected),
		     "load values must be non-negative");
	}
	if (obs.correctness) {
		need(finite_non_negative(obs.correctness->expected_cs) && finite_non_negative(obs.correctness->observed_cs),
		     "correctness service counts must be non-negative");
	}
	if (obs.serviceability) {
		need(finite_non_negative(obs.serviceability->uptime) && finite_non_negative(obs.serviceability->downtime),
		     "serviceability durations must be non-negative");
	}
	if (obs.capacity) {
		need(finite_non_negative(obs.capacity->actual_usage) && finite_non_negative(obs.capacity->expected_usage),
		     "usage durations must be non-negative");
	}
	if (obs.persistence) {
		need(std::all_of(obs.persistence->series.begin(), obs.persistence->series.end(), finite_non_negative),
		     "uncertainty series must be non-negative");
		need(std::isfinite(obs.persistence->proportion), "persistence proportion must be finite");
	}
	if (obs.security) {
		auto v = validate_security_matrix(*obs.security);
		out.insert(out.end(), v.begin(), v.end());
	}
	if (obs.performance) {
		for (const auto& e : *obs.performance) {
			if (!finite_non_negative(e.quantity) || !finite_non_negative(e.duration_ms)) {
				out.emplace_back("server event quantities must be non-negative");
				break;
			}
		}
	}
	if (obs.flexibility) {
		for (const auto& p : *obs.flexibility) {
			if (!finite_non_negative(p.flexible_force) || !finite_non_negative(p.flexible_distance) ||
			    !finite_non_negative(p.applied_force)) {
				out.emplace_back("flexible point '" + p.point_id + "' has a negative field");
			}
		}
	}
	if (obs.backup_gb) {
		need(finite_non_negative(*obs.backup_gb), "backup_gb must be non-negative");
	}
	if (obs.visibility_score) {
		need(probability(*obs.visibility_score), "visibility score must lie in [0,1]");
	}
	return out;
}

} // namespace qoswb
