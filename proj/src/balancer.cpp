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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qoswb::sim {

namespace {

double floor_q(double v)
{
	return std::floor(v / kLoadQuantum) * kLoadQuantum;
}

double ceil_q(double v)
{
	return std::ceil(v / kLoadQuantum) * kLoadQuantum;
}

double round_q(double v)
{
	return std::nearbyint(v / kLoadQuantum) * kLoadQuantum;
}

bool overloaded(const ServerState& s)
{
	return s.assigned_load > s.expected_load_capacity;
}

bool has_slack(const ServerState& s)
{
	return floor_q(s.expected_load_capacity - s.assigned_load) >= kLoadQuantum;
}

std::size_t index_of(std::span<const ServerState> servers, const std::string& id)
{
	for (std::size_t i = 0; i < servers.size(); ++i) {
		if (servers[i].resource_id == id) {
			return i;
		}
	}
	throw SimulationError("unknown server '" + id + "'");
}

void apply_action(std::vector<ServerState>& servers, const BalanceAction& a)
{
	const auto from = index_of(servers, a.from_server);
	const auto to = index_of(servers, a.to_server);
	switch (a.kind) {
	case BalanceAction::Kind::ReplicateService:
		servers[to].hosted_services.insert(a.service_id);
		break;
	case BalanceAction::Kind::DivertLoad:
		servers[from].assigned_load -= a.diverted_amount;
		servers[to].assigned_load += a.diverted_amount;
		break;
	}
}

} // namespace

std::string_view to_string(BalanceAction::Kind kind)
{
	return kind == BalanceAction::Kind::ReplicateService ? "ReplicateService" : "DivertLoad";
}

std::vector<ServerState> replay(std::span<const ServerState> initial, std::span<const BalanceAction> actions)
{
	std::vector<ServerState> servers(initial.begin(), initial.end());
	for (const auto& a : actions) {
		apply_action(servers, a);
	}
	return servers;
}

std::vector<ServiceDemand> demands_from_servers(std::span<const ServerState> servers)
{
	std::vector<ServiceDemand> out;
	for (const auto& s : servers) {
		if (s.hosted_services.empty()) {
			if (s.assigned_load > 0.0) {
				out.push_back({s.resource_id + ".load", s.assigned_load, s.resource_id});
			}
			continue;
		}
		const auto n = static_cast<double>(s.hosted_services.size());
		const double share = floor_q(s.assigned_load / n);
		double placed = 0.0;
		std::size_t i = 0;
		for (const auto& svc : s.hosted_services) {
			const bool last = ++i == s.hosted_services.size();
			const double load = last ? s.assigned_load - placed : share;
			placed += load;
			out.push_back({svc, load, s.resource_id});
		}
	}
	return out;
}

BalanceResult balance(std::span<const ServerState> servers, std::span<const ServiceDemand> demands)
{
	if (servers.empty()) {
		throw SimulationError("balance: empty server list");
	}
	for (const auto& s : servers) {
		if (auto v = validate_server(s); !v.empty()) {
			throw SimulationError("balance: server '" + s.resource_id + "': " + v.front());
		}
	}

	std::vector<ServerState> state(servers.begin(), servers.end());
	for (auto& s : state) {
		s.assigned_load = 0.0;
	}
	// service load currently carried by each server
	std::vector<std::map<std::string, double>> carried(state.size());

	auto place = [&](std::size_t i, const std::string& svc, double load) {
		carried[i][svc] += load;
		state[i].assigned_load += load;
	};

	for (const auto& d : demands) {
		if (!(std::isfinite(d.load) && d.load >= 0.0)) {
			throw SimulationError("balance: demand for '" + d.service_id + "' has a negative load");
		}
		if (!d.server_id.empty()) {
			const auto i = index_of(state, d.server_id);
			state[i].hosted_services.insert(d.service_id);
			place(i, d.service_id, d.load);
			continue;
		}
		std::vector<std::size_t> hosts;
		for (std::size_t i = 0; i < state.size(); ++i) {
			if (state[i].hosted_services.count(d.service_id) != 0) {
				hosts.push_back(i);
			}
		}
		if (hosts.empty()) {
			throw SimulationError("balance: service '" + d.service_id + "' is not hosted on any server");
		}
		const double share = floor_q(d.load / static_cast<double>(hosts.size()));
		for (std::size_t k = 0; k < hosts.size(); ++k) {
			const bool last = k + 1 == hosts.size();
			place(hosts[k], d.service_id, last ? d.load - share * static_cast<double>(hosts.size() - 1) : share);
		}
	}

	BalanceResult result;
	result.initial_servers = state;

	std::size_t services = 0;
	for (const auto& c : carried) {
		services += c.size();
	}
	const std::size_t max_steps = 16 * (state.size() + services + 1) * (state.size() + 1);

	for (std::size_t step = 0;; ++step) {
		if (step > max_steps) {
			throw std::logic_error("balance: no convergence");
		}

		std::optional<std::size_t> src;
		for (std::size_t i = 0; i < state.size(); ++i) {
			if (overloaded(state[i]) && (!src || state[i].delta_lb() > state[*src].delta_lb())) {
				src = i;
			}
		}
		if (!src) {
			break;
		}
		std::optional<std::size_t> dst;
		for (std::size_t i = 0; i < state.size(); ++i) {
			if (i != *src && has_slack(state[i]) && (!dst || state[i].delta_lb() < state[*dst].delta_lb())) {
				dst = i;
			}
		}
		if (!dst) {
			break;
		}

		auto& from = state[*src];
		auto& to = state[*dst];
		auto& from_carried = carried[*src];

		// largest service on the source; map order breaks ties lexically
		auto svc = from_carried.end();
		for (auto it = from_carried.begin(); it != from_carried.end(); ++it) {
			if (it->second > 0.0 && (svc == from_carried.end() || it->second > svc->second)) {
				svc = it;
			}
		}
		if (svc == from_carried.end()) {
			break; // only rounding residue left on the source
		}

		const double ls = from.assigned_load;
		const double lt = to.assigned_load;
		const double cs = from.expected_load_capacity;
		const double ct = to.expected_load_capacity;
		const double lo = ceil_q(ls - cs); // least amount that brings the source to capacity
		const double hi = floor_q(ct - lt); // most the receiver can take
		double amount = hi;
		if (lo <= hi) {
			const double equalize = (ls * ct - lt * cs) / (cs + ct);
			amount = std::clamp(round_q(equalize), lo, hi);
		}
		amount = std::min(amount, svc->second);

		const std::string service_id = svc->first;
		if (to.hosted_services.count(service_id) == 0) {
			BalanceAction rep{BalanceAction::Kind::ReplicateService, service_id, from.resource_id, to.resource_id, 0.0};
			apply_action(state, rep);
			result.actions.push_back(std::move(rep));
		}
		BalanceAction div{BalanceAction::Kind::DivertLoad, service_id, from.resource_id, to.resource_id, amount};
		apply_action(state, div);
		result.actions.push_back(std::move(div));

		svc->second -= amount;
		if (svc->second <= 0.0) {
			from_carried.erase(svc);
		}
		carried[*dst][service_id] += amount;
	}

	result.feasible = std::none_of(state.begin(), state.end(), overloaded);
	for (const auto& s : state) {
		result.per_server_delta_lb.push_back(s.delta_lb());
	}
	result.final_servers = std::move(state);
	return result;
}

} // namespace qoswb::sim
