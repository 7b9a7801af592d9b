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

#include "qoswb/classifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qoswb::classifier {

namespace {

bool interactive_type(WorkloadType t)
{
	switch (t) {
	case WorkloadType::Websites:
	case WorkloadType::OnlineTransactionProcessing:
	case WorkloadType::ECommerce:
	case WorkloadType::CriticalInternetApplications:
	case WorkloadType::MobileComputing:
		return true;
	default:
		return false;
	}
}

} // namespace

std::string_view to_string(Orientation o)
{
	switch (o) {
	case Orientation::CPU:
		return "CPU";
	case Orientation::Memory:
		return "Memory";
	case Orientation::Network:
		return "Network";
	case Orientation::Storage:
		return "Storage";
	}
	return "?";
}

std::string_view to_string(ExecutionMode m)
{
	return m == ExecutionMode::Batch ? "Batch" : "Online";
}

GroupInfo classify_group(WorkloadType wtype)
{
	const auto& e = taxonomy_entry(wtype);
	return {e.group, {e.quality_attributes.begin(), e.quality_attributes.end()}};
}

Orientation classify_orientation(const DemandProfile& demand)
{
	const std::array<double, 4> w{demand.cpu_weight, demand.memory_weight, demand.network_weight,
	                              demand.storage_weight};
	for (double v : w) {
		if (!(std::isfinite(v) && v >= 0.0)) {
			throw ClassifierError("demand weights must be finite and non-negative");
		}
	}
	// max_element keeps the first maximum, which realizes CPU > Memory > Network > Storage on ties.
	const auto it = std::max_element(w.begin(), w.end());
	if (*it <= 0.0) {
		throw ClassifierError("demand profile has no positive weight");
	}
	return static_cast<Orientation>(it - w.begin());
}

ModeRecommendation recommend_mode(const WorkloadSpec& spec)
{
	const std::string type{to_string(spec.wtype)};
	if (interactive_type(spec.wtype)) {
		return {ExecutionMode::Online, "workload type " + type + " serves interactive users"};
	}
	if (classify_orientation(spec.demand) == Orientation::Network) {
		return {ExecutionMode::Online, "network bandwidth dominates the demand profile"};
	}
	return {ExecutionMode::Batch,
	        "compute/storage capacity dominates the demand profile of non-interactive type " + type};
}

Classification classify(const WorkloadSpec& spec)
{
	auto g = classify_group(spec.wtype);
	auto m = recommend_mode(spec);
	return {g.group, std::move(g.quality_attributes), classify_orientation(spec.demand), m.mode,
	        std::move(m.rationale)};
}

std::vector<std::string> check_constraints(const NonScheduledRecord& record, const WorkloadSpec& spec,
                                           const ScheduledRecord& proposed, std::optional<double> resource_capacity)
{
	if (record.workload_id != proposed.workload_id || record.process_id != proposed.process_id) {
		throw ClassifierError("proposal " + proposed.workload_id + "/" + proposed.process_id +
		                      " does not match record " + record.workload_id + "/" + record.process_id);
	}
	if (record.workload_id != spec.workload_id) {
		throw ClassifierError("record " + record.workload_id + " checked against spec " + spec.workload_id);
	}

	const auto& c = spec.constraints;
	const Tick span = proposed.end_time - proposed.begin_time;
	std::vector<std::string> out;

	if (c.time_bound && span > *c.time_bound) {
		out.emplace_back(violation::time_bound);
	}
	if (const auto* fixed = std::get_if<FixedBegin>(&c.begin)) {
		if (proposed.begin_time != fixed->at) {
			out.emplace_back(violation::begin);
		}
	} else {
		const auto& el = std::get<ElasticBegin>(c.begin);
		if (proposed.begin_time < el.earliest || (el.latest && proposed.begin_time > *el.latest)) {
			out.emplace_back(violation::begin);
		}
	}
	if (c.hard_stop && proposed.end_time > *c.hard_stop) {
		out.emplace_back(violation::hard_stop);
	}
	if (span < record.execution_time) {
		out.emplace_back(violation::short_run);
	} else if (span > record.execution_time && !c.interruptible) {
		out.emplace_back(violation::interrupted);
	}
	if (c.min_resource && resource_capacity && *resource_capacity < *c.min_resource) {
		out.emplace_back(violation::min_resource);
	}
	if (std::find(record.resource_list.begin(), record.resource_list.end(), proposed.resource_id) ==
	    record.resource_list.end()) {
		out.emplace_back(violation::foreign_resource);
	}
	return out;
}

} // namespace qoswb::classifier
