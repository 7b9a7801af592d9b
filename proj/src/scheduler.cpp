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

#include "qoswb/simulator.hpp"

#include "qoswb/classifier.hpp"
#include "qoswb/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace qoswb::sim {

namespace {

struct Interval
{
	Tick begin;
	Tick end;
};

/// Busy intervals of one resource, kept sorted and disjoint.
class Timeline
{
public:
	explicit Timeline(const Resource& r) : resource_(&r) {}

	const Resource& resource() const { return *resource_; }

	/// Earliest start >= not_before at which [start, start + length) is free.
	Tick earliest_start(Tick not_before, Tick length) const
	{
		Tick start = std::max(not_before, resource_->available_from);
		for (const auto& iv : busy_) {
			if (start + length <= iv.begin) {
				break;
			}
			start = std::max(start, iv.end);
		}
		return start;
	}

	void reserve(Tick begin, Tick end)
	{
		auto it = std::lower_bound(busy_.begin(), busy_.end(), begin,
		                           [](const Interval& iv, Tick t) { return iv.begin < t; });
		busy_.insert(it, Interval{begin, end});
	}

private:
	const Resource* resource_;
	std::vector<Interval> busy_;
};

Tick not_before(const WorkloadConstraints& c)
{
	if (const auto* fixed = std::get_if<FixedBegin>(&c.begin)) {
		return fixed->at;
	}
	return std::get<ElasticBegin>(c.begin).earliest;
}

struct Placement
{
	ScheduledRecord proposal;
	std::vector<std::string> violations;
};

} // namespace

Tick submit_time(const WorkloadSpec& spec)
{
	return not_before(spec.constraints);
}

std::vector<Resource> resources_from_servers(std::span<const ServerState> servers)
{
	std::vector<Resource> out;
	out.reserve(servers.size());
	for (const auto& s : servers) {
		out.push_back({s.resource_id, s.expected_load_capacity, 0, std::nullopt});
	}
	return out;
}

Schedule schedule(std::span<const NonScheduledRecord> records, const std::map<std::string, WorkloadSpec>& specs,
                  std::span<const Resource> resources)
{
	std::map<std::string, Timeline> timelines;
	for (const auto& r : resources) {
		if (!timelines.emplace(r.resource_id, Timeline(r)).second) {
			throw SimulationError("schedule: duplicate resource '" + r.resource_id + "'");
		}
	}

	std::vector<const WorkloadSpec*> spec_of(records.size());
	for (std::size_t i = 0; i < records.size(); ++i) {
		const auto& rec = records[i];
		const std::string where = "schedule: record " + rec.workload_id + "/" + rec.process_id;
		if (auto v = validate_record(rec); !v.empty()) {
			throw SimulationError(where + ": " + v.front());
		}
		auto it = specs.find(rec.workload_id);
		if (it == specs.end()) {
			throw SimulationError(where + ": unknown workload");
		}
		spec_of[i] = &it->second;
		for (const auto& rid : rec.resource_list) {
			if (timelines.count(rid) == 0) {
				throw SimulationError(where + ": unknown resource '" + rid + "'");
			}
		}
	}

	std::vector<std::size_t> order(records.size());
	std::iota(order.begin(), order.end(), std::size_t{0});
	constexpr Tick kNoStop = std::numeric_limits<Tick>::max();
	std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
		const auto& ca = spec_of[a]->constraints;
		const auto& cb = spec_of[b]->constraints;
		if (ca.urgency != cb.urgency) {
			return ca.urgency > cb.urgency;
		}
		const Tick sa = ca.hard_stop.value_or(kNoStop);
		const Tick sb = cb.hard_stop.value_or(kNoStop);
		if (sa != sb) {
			return sa < sb;
		}
		if (records[a].workload_id != records[b].workload_id) {
			return records[a].workload_id < records[b].workload_id;
		}
		return records[a].process_id < records[b].process_id;
	});

	Schedule out;
	for (std::size_t idx : order) {
		const auto& rec = records[idx];
		const auto& spec = *spec_of[idx];

		std::optional<Placement> best;
		std::vector<std::string> reasons;
		for (const auto& rid : rec.resource_list) {
			const auto& tl = timelines.at(rid);
			// Every constraint is an upper bound on start or end, so the earliest free
			// slot is the only one worth testing on this resource.
			const Tick start = tl.earliest_start(not_before(spec.constraints), rec.execution_time);
			Placement p{{rec.workload_id, rec.process_id, start, start + rec.execution_time, rid}, {}};
			p.violations = classifier::check_constraints(rec, spec, p.proposal, tl.resource().capacity);
			if (const auto& until = tl.resource().available_until; until && p.proposal.end_time > *until) {
				p.violations.emplace_back("resource unavailable");
			}
			if (p.violations.empty()) {
				if (!best || p.proposal.end_time < best->proposal.end_time) {
					best = std::move(p);
				}
			} else {
				for (auto& v : p.violations) {
					if (std::find(reasons.begin(), reasons.end(), v) == reasons.end()) {
						reasons.push_back(std::move(v));
					}
				}
			}
		}

		if (best) {
			timelines.at(best->proposal.resource_id).reserve(best->proposal.begin_time, best->proposal.end_time);
			out.records.push_back(std::move(best->proposal));
			continue;
		}
		std::string reason;
		for (const auto& r : reasons) {
			reason += reason.empty() ? r : "; " + r;
		}
		out.rejected.push_back({rec, std::move(reason)});
	}
	return out;
}

ScheduleStats simulate_report(const Schedule& schedule, std::span<const Resource> resources,
                              const std::map<std::string, Tick>& submit_times)
{
	ScheduleStats stats;
	if (schedule.records.empty()) {
		return stats;
	}

	Tick first = std::numeric_limits<Tick>::max();
	Tick last = std::numeric_limits<Tick>::min();
	std::map<std::string, Tick> busy;
	std::map<std::string, Tick> finish;
	for (const auto& r : schedule.records) {
		first = std::min(first, r.begin_time);
		last = std::max(last, r.end_time);
		busy[r.resource_id] += r.end_time - r.begin_time;
		auto [it, fresh] = finish.emplace(r.workload_id, r.end_time);
		if (!fresh) {
			it->second = std::max(it->second, r.end_time);
		}
	}
	const Tick makespan = last - first;
	stats.makespan = makespan;

	for (const auto& res : resources) {
		const auto it = busy.find(res.resource_id);
		const Tick b = it == busy.end() ? 0 : it->second;
		stats.utilization[res.resource_id] = static_cast<double>(b) / static_cast<double>(makespan);
	}
	for (const auto& [wid, end] : finish) {
		if (auto s = submit_times.find(wid); s != submit_times.end()) {
			stats.latency[wid] = static_cast<Tick>(metrics::latency(s->second, end).value);
		}
	}
	return stats;
}

} // namespace qoswb::sim
