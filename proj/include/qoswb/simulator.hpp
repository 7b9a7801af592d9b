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

#ifndef QOSWB_SIMULATOR_HPP
#define QOSWB_SIMULATOR_HPP

#include "qoswb/model.hpp"

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qoswb::sim {

class SimulationError : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Load balancing driven by the actual/expected load ratio
// ---------------------------------------------------------------------------

/// Load of one service. With an empty server_id the load is split evenly over every
/// server hosting the service; otherwise it is placed on that server.
struct ServiceDemand
{
	std::string service_id;
	double load = 0.0;
	std::string server_id;
};

struct BalanceAction
{
	enum class Kind
	{
		ReplicateService,
		DivertLoad
	};

	Kind kind = Kind::DivertLoad;
	std::string service_id;
	std::string from_server;
	std::string to_server;
	double diverted_amount = 0.0;

	bool operator==(const BalanceAction&) const = default;
};

std::string_view to_string(BalanceAction::Kind kind);

/// Load moves in multiples of this quantum. Loads and capacities that are multiples of
/// it (and below 2^32) are balanced with exact arithmetic.
inline constexpr double kLoadQuantum = 0x1p-20;

struct BalanceResult
{
	/// Input servers with assigned_load recomputed from the demands.
	std::vector<ServerState> initial_servers;
	std::vector<ServerState> final_servers;
	std::vector<BalanceAction> actions;
	std::vector<double> per_server_delta_lb;
	/// True when every final server has load <= capacity.
	bool feasible = false;
};

/// Greedy replicate-and-divert balancing.
///
/// While some server is overloaded, the most loaded one (by ratio) hands its largest
/// service to the least loaded server that still has slack: the service is replicated
/// there if absent, then load is diverted so the pair's ratios equalize. When the pair
/// cannot both end at or below capacity the receiver is filled to capacity instead.
/// Stops when no server is overloaded or no receiver has slack.
///
/// The assigned_load of the input servers is ignored; each server's initial load is
/// the sum of the demands placed on it. Throws SimulationError on an empty server list,
/// invalid servers, or a demand for a service no server hosts.
BalanceResult balance(std::span<const ServerState> servers, std::span<const ServiceDemand> demands);

/// Applies an action log to a server list.
std::vector<ServerState> replay(std::span<const ServerState> initial, std::span<const BalanceAction> actions);

/// Placed demands that reproduce each server's assigned_load, split evenly over its
/// hosted services. A server with load but no services gets a "<resource_id>.load" service.
std::vector<ServiceDemand> demands_from_servers(std::span<const ServerState> servers);

// ---------------------------------------------------------------------------
// Scheduling of non-scheduled records
// ---------------------------------------------------------------------------

struct Resource
{
	std::string resource_id;
	double capacity = 1.0;
	Tick available_from = 0;
	std::optional<Tick> available_until;
};

/// One resource per server, capacity = expected load capacity, available from t=0.
std::vector<Resource> resources_from_servers(std::span<const ServerState> servers);

struct Rejection
{
	NonScheduledRecord record;
	std::string reason;

	bool operator==(const Rejection&) const = default;
};

struct Schedule
{
	std::vector<ScheduledRecord> records;
	std::vector<Rejection> rejected;

	bool operator==(const Schedule&) const = default;
};

/// Non-preemptive earliest-finish-time placement.
///
/// Records are taken by urgency (high first), then hard stop (earliest first, none last),
/// then workload id and process id. Each goes to the candidate resource that finishes it
/// soonest, ties going to the earlier entry of its resource list. A record that breaks a
/// constraint on every candidate is rejected with the violations found.
/// Throws SimulationError on unknown resources or workloads and on invalid records.
Schedule schedule(std::span<const NonScheduledRecord> records, const std::map<std::string, WorkloadSpec>& specs,
                  std::span<const Resource> resources);

struct ScheduleStats
{
	/// Absent for an empty schedule; so are the per-resource and per-workload maps.
	std::optional<Tick> makespan;
	std::map<std::string, double> utilization;
	std::map<std::string, Tick> latency;
};

/// Makespan, busy fraction per resource and completion latency per workload. Latency is
/// reported for workloads with a submit time: last end time of the workload minus submit.
ScheduleStats simulate_report(const Schedule& schedule, std::span<const Resource> resources,
                              const std::map<std::string, Tick>& submit_times);

/// Earliest time a workload may start: the fixed begin or the start of its elastic window.
Tick submit_time(const WorkloadSpec& spec);

} // namespace qoswb::sim

#endif // QOSWB_SIMULATOR_HPP
