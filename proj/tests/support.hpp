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

// Test-only helpers: seeded generators for valid inputs and straight-line reference
// implementations of the metric formulas. The reference versions are written from
// the formula definitions in long double and share no code with the library.

#ifndef QOSWB_TESTS_SUPPORT_HPP
#define QOSWB_TESTS_SUPPORT_HPP

#include "qoswb/classifier.hpp"
#include "qoswb/io.hpp"
#include "qoswb/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace qoswb::testing {

inline constexpr double kRelTol = 1e-12;

inline bool rel_close(long double expected, double actual, double tol = kRelTol)
{
	const long double a = actual;
	if (expected == a) {
		return true;
	}
	const long double scale = std::max(std::fabs(expected), std::fabs(a));
	return std::fabs(expected - a) <= tol * scale;
}

class Gen
{
public:
	explicit Gen(std::uint64_t seed) : rng_(seed) {}

	double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

	std::int64_t integer(std::int64_t lo, std::int64_t hi)
	{
		return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
	}

	std::uint64_t count(std::uint64_t lo, std::uint64_t hi)
	{
		return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
	}

	std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(n) - 1)); }

	bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

	/// Positive value spanning several orders of magnitude.
	double magnitude(double lo_exp = -3, double hi_exp = 6) { return std::pow(10.0, real(lo_exp, hi_exp)); }

	/// Multiple of 1/16, exact under the balancer's load quantum.
	double sixteenths(std::int64_t lo, std::int64_t hi) { return static_cast<double>(integer(lo, hi)) / 16.0; }

	std::mt19937_64& engine() { return rng_; }

private:
	std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Reference formulas
// ---------------------------------------------------------------------------

namespace oracle {

using ld = long double;

inline ld bandwidth(std::uint64_t bits, double seconds)
{
	return static_cast<ld>(bits) / seconds;
}

inline ld integrity(const std::vector<ThreatPair>& pairs)
{
	ld sum = 0;
	for (const auto& p : pairs) {
		sum += (1.0L - p.threat) * (1.0L - p.security);
	}
	return sum;
}

inline ld learnability(double t)
{
	return 1.0L / t;
}

inline ld success_ratio(std::uint64_t ok, std::uint64_t total)
{
	return static_cast<ld>(ok) / static_cast<ld>(total);
}

inline ld mtbf(double mttf, double mttr)
{
	return static_cast<ld>(mttf) + mttr;
}

inline ld availability(double mttf, double mttr)
{
	return mttf / (static_cast<ld>(mttf) + mttr);
}

inline ld mttc(const std::vector<ChangeRequest>& changes)
{
	ld sum = 0;
	for (const auto& c : changes) {
		sum += static_cast<ld>(c.analyze) + c.modify + c.test + c.distribute;
	}
	return sum / static_cast<ld>(changes.size());
}

inline ld latency(Tick in, Tick out)
{
	return static_cast<ld>(out) - static_cast<ld>(in);
}

inline ld customizability(std::uint64_t dyn, std::uint64_t stat)
{
	return static_cast<ld>(dyn) / (static_cast<ld>(dyn) + static_cast<ld>(stat));
}

inline ld testing_time(double prep, double exec)
{
	return static_cast<ld>(prep) + exec;
}

inline ld ratio(double num, double den)
{
	return static_cast<ld>(num) / den;
}

inline ld self_service(std::uint64_t inquiries, std::uint64_t visits)
{
	return 100.0L - 100.0L * static_cast<ld>(inquiries) / static_cast<ld>(visits);
}

inline ld accuracy(double expected, double observed)
{
	return (static_cast<ld>(expected) - std::fabs(static_cast<ld>(expected) - observed)) / expected;
}

inline ld count_ratio(std::uint64_t a, std::uint64_t b)
{
	return static_cast<ld>(a) / static_cast<ld>(b);
}

inline ld serviceability(double up, double down)
{
	return up / (static_cast<ld>(up) + down);
}

inline ld accessibility(std::uint64_t timeouts, std::uint64_t total)
{
	return 100.0L * static_cast<ld>(timeouts) / static_cast<ld>(total);
}

inline ld throughput(ServerKind kind, double quantity, double duration_ms)
{
	const ld window_ms = kind == ServerKind::Mail ? 60000.0L : 1000.0L;
	return quantity / (duration_ms / window_ms);
}

inline ld flexible_degree(double f, double s)
{
	return s / (1.0L + f);
}

inline ld flexible_capacity(const std::vector<FlexiblePoint>& points)
{
	ld c = 0;
	for (const auto& p : points) {
		c += flexible_degree(p.flexible_force, p.flexible_distance);
	}
	return c;
}

/// Brute force in exact integers: the first k periods whose sum reaches percent/100
/// of the total.
inline std::size_t persistence(const std::vector<std::int64_t>& series, std::int64_t percent)
{
	std::int64_t total = 0;
	for (auto v : series) {
		total += v;
	}
	for (std::size_t k = 1; k <= series.size(); ++k) {
		std::int64_t head = 0;
		for (std::size_t i = 0; i < k; ++i) {
			head += series[i];
		}
		if (head * 100 >= percent * total) {
			return k;
		}
	}
	return series.size();
}

} // namespace oracle

// ---------------------------------------------------------------------------
// Generators for valid domain values
// ---------------------------------------------------------------------------

inline std::string pick_id(Gen& g, const char* prefix, std::size_t n)
{
	return prefix + std::to_string(g.index(n));
}

inline WorkloadSpec random_spec(Gen& g, std::string id)
{
	WorkloadSpec w;
	w.workload_id = std::move(id);
	w.name = g.coin() ? "" : "workload " + w.workload_id;
	w.wtype = kAllWorkloadTypes[g.index(kAllWorkloadTypes.size())];
	auto& c = w.constraints;
	if (g.coin()) {
		c.time_bound = g.integer(1, 500);
	}
	if (g.coin(0.3)) {
		c.begin = FixedBegin{g.integer(0, 100)};
	} else {
		ElasticBegin e{g.integer(0, 100), std::nullopt};
		if (g.coin()) {
			e.latest = e.earliest + g.integer(0, 200);
		}
		c.begin = e;
	}
	if (g.coin()) {
		c.hard_stop = g.integer(0, 600);
		if (const auto* f = std::get_if<FixedBegin>(&c.begin); f && c.time_bound && f->at + *c.time_bound > *c.hard_stop) {
			c.hard_stop = f->at + *c.time_bound + g.integer(0, 50);
		}
	}
	c.interruptible = g.coin();
	if (g.coin(0.3)) {
		c.min_resource = static_cast<double>(g.integer(0, 4));
	}
	c.urgency = static_cast<int>(g.integer(0, kMaxUrgency));
	if (g.coin(0.3)) {
		c.budget = g.real(0, 1e4);
	}
	auto& d = w.demand;
	d.cpu_weight = g.coin(0.8) ? g.real(0, 1) : 0.0;
	d.memory_weight = g.coin(0.8) ? g.real(0, 1) : 0.0;
	d.network_weight = g.coin(0.8) ? g.real(0, 1) : 0.0;
	d.storage_weight = g.real(0.01, 1);
	const auto samples = g.integer(0, 3);
	for (std::int64_t i = 0; i < samples; ++i) {
		d.load_series.push_back({i * 100, g.real(0, 50)});
	}
	if (g.coin(0.3)) {
		w.cost = CostRecord{g.real(0, 100), g.real(0, 100), g.real(0, 100)};
	}
	if (g.coin(0.3)) {
		w.rate = Rate{Rate::Kind::Periodic, g.integer(1, 10000)};
	}
	w.characteristics = {g.coin(), g.coin(), g.coin(), g.coin()};
	return w;
}

inline ObservationSet random_observations(Gen& g)
{
	ObservationSet o;
	auto maybe = [&] { return g.coin(0.4); };
	if (maybe()) {
		o.bandwidth = BandwidthObs{g.count(0, 1u << 30), g.real(0.001, 100)};
	}
	if (maybe()) {
		o.integrity = std::vector<ThreatPair>{};
		for (auto n = g.integer(0, 3); n > 0; --n) {
			o.integrity->push_back({g.real(0, 1), g.real(0, 1)});
		}
	}
	if (maybe()) {
		const auto total = g.count(1, 1000);
		o.usability = UsabilityObs{g.real(0.1, 100), g.count(0, total), total};
	}
	if (maybe()) {
		o.reliability = FailureObs{g.real(1, 1000), g.real(0, 100)};
	}
	if (maybe()) {
		o.changes = std::vector<ChangeRequest>{};
		for (auto n = g.integer(1, 3); n > 0; --n) {
			o.changes->push_back({g.real(0, 10), g.real(0, 10), g.real(0, 10), g.real(0, 10)});
		}
	}
	if (maybe()) {
		const auto in = g.integer(0, 1000);
		o.latency = LatencyObs{in, in + g.integer(0, 1000)};
	}
	if (maybe()) {
		o.fulfillment = kAllFulfillmentLevels[g.index(kAllFulfillmentLevels.size())];
	}
	if (maybe()) {
		o.customizability = ChangeCountObs{g.count(0, 50), g.count(1, 50)};
	}
	if (maybe()) {
		o.testing = TestingObs{g.real(0, 100), g.real(0, 100)};
	}
	if (maybe()) {
		o.load = LoadObs{g.real(0, 200), g.real(1, 200)};
	}
	if (maybe()) {
		const auto visits = g.count(1, 1000);
		o.self_service = SupportObs{g.count(0, visits), visits};
	}
	if (maybe()) {
		const auto requested = g.count(1, 20);
		const auto existing = g.count(1, requested);
		const double expected = static_cast<double>(g.integer(1, 20));
		o.correctness = CorrectnessObs{expected, g.real(0, expected), existing, requested, g.count(0, 10)};
	}
	if (maybe()) {
		o.serviceability = UptimeObs{g.real(1, 100), g.real(0, 10)};
	}
	if (maybe()) {
		o.capacity = UsageObs{g.real(0, 100), g.real(1, 100)};
	}
	if (maybe()) {
		const auto total = g.count(1, 1000);
		o.accessibility = TimeoutObs{g.count(0, total), total};
	}
	if (maybe()) {
		const auto total = g.count(1, 8);
		o.portability = PlatformObs{g.count(0, total), total};
	}
	if (maybe()) {
		UncertaintyObs u;
		for (auto n = g.integer(1, 5); n > 0; --n) {
			u.series.push_back(g.real(0.1, 10));
		}
		u.proportion = g.real(0.05, 1);
		o.persistence = u;
	}
	if (maybe()) {
		auto m = default_security_matrix();
		for (auto& row : m.marks) {
			for (std::size_t k = 0; k < row.size(); ++k) {
				row[k] = g.coin();
			}
		}
		o.security = m;
	}
	if (maybe()) {
		o.performance = std::vector<ServerEventObs>{};
		for (auto n = g.integer(1, 3); n > 0; --n) {
			o.performance->push_back({kAllServerKinds[g.index(kAllServerKinds.size())], g.real(0, 1e4), g.real(1, 1e5)});
		}
	}
	if (maybe()) {
		o.flexibility = std::vector<FlexiblePoint>{};
		const auto n = g.integer(0, 3);
		for (std::int64_t i = 0; i < n; ++i) {
			o.flexibility->push_back({"fx" + std::to_string(i), g.real(0, 5), g.real(0, 10), g.real(0, 5)});
		}
	}
	if (maybe()) {
		o.backup_gb = g.real(0, 1000);
	}
	if (maybe()) {
		o.visibility_score = g.real(0, 1);
	}
	if (maybe()) {
		o.storage_checklist = StorageChecklist{g.coin(), g.coin(), g.coin(), g.coin()};
	}
	return o;
}

inline io::WorkloadFile random_file(Gen& g)
{
	io::WorkloadFile f;
	const auto n = g.integer(1, 4);
	for (std::int64_t i = 0; i < n; ++i) {
		f.workloads.push_back(random_spec(g, "W" + std::to_string(i) + (g.coin(0.1) ? "/x~y" : "")));
	}
	for (auto r = g.integer(0, 5); r > 0; --r) {
		NonScheduledRecord rec;
		rec.workload_id = f.workloads[g.index(f.workloads.size())].workload_id;
		rec.process_id = "P" + std::to_string(r);
		rec.execution_time = g.integer(1, 100);
		for (auto k = g.integer(1, 3); k > 0; --k) {
			rec.resource_list.push_back(pick_id(g, "R", 3));
		}
		f.records.push_back(std::move(rec));
	}
	for (const auto& w : f.workloads) {
		if (g.coin()) {
			f.observations[w.workload_id] = random_observations(g);
		}
	}
	const auto s = g.integer(0, 3);
	for (std::int64_t i = 0; i < s; ++i) {
		ServerState srv;
		srv.resource_id = "R" + std::to_string(i);
		srv.expected_load_capacity = g.real(0.5, 200);
		for (auto k = g.integer(0, 2); k > 0; --k) {
			srv.hosted_services.insert(pick_id(g, "svc", 4));
		}
		srv.assigned_load = g.real(0, 300);
		f.servers.push_back(std::move(srv));
	}
	return f;
}

// ---------------------------------------------------------------------------
// Simulation instances
// ---------------------------------------------------------------------------

struct BalanceInstance
{
	std::vector<ServerState> servers;
	std::vector<sim::ServiceDemand> demands;
};

/// Servers and demands on a 1/16 grid with total load <= total capacity.
inline BalanceInstance random_balance_instance(Gen& g)
{
	BalanceInstance inst;
	const auto n = g.integer(1, 6);
	double cap_total = 0;
	for (std::int64_t i = 0; i < n; ++i) {
		ServerState s;
		s.resource_id = "S" + std::to_string(i);
		s.expected_load_capacity = g.coin() ? static_cast<double>(g.integer(1, 200)) : g.sixteenths(1, 3200);
		cap_total += s.expected_load_capacity;
		inst.servers.push_back(std::move(s));
	}

	std::vector<double> loads;
	for (const auto& s : inst.servers) {
		loads.push_back(g.coin(0.2) ? 0.0 : g.sixteenths(0, static_cast<std::int64_t>(48 * s.expected_load_capacity)));
	}
	double excess = std::accumulate(loads.begin(), loads.end(), 0.0) - cap_total;
	for (std::size_t i = 0; excess > 0 && i < loads.size(); ++i) {
		const double cut = std::min(loads[i], excess);
		loads[i] -= cut;
		excess -= cut;
	}

	// placed demands, and for some servers one shared service split with a neighbour
	for (std::size_t i = 0; i < inst.servers.size(); ++i) {
		if (loads[i] == 0.0) {
			continue;
		}
		const auto parts = g.integer(1, 3);
		double left = loads[i];
		for (std::int64_t k = 0; k < parts; ++k) {
			const bool last = k + 1 == parts;
			const double piece = last ? left : std::floor(left * g.real(0, 1) * 16.0) / 16.0;
			left -= piece;
			inst.demands.push_back({"svc" + std::to_string(g.integer(0, 5)), piece, inst.servers[i].resource_id});
		}
	}
	if (inst.servers.size() > 1 && g.coin()) {
		const auto a = g.index(inst.servers.size());
		const auto b = (a + 1) % inst.servers.size();
		inst.servers[a].hosted_services.insert("shared");
		inst.servers[b].hosted_services.insert("shared");
		// taken from the load already budgeted on a and b so the totals stay within capacity
		double take = 0;
		for (auto& d : inst.demands) {
			if (d.server_id == inst.servers[a].resource_id || d.server_id == inst.servers[b].resource_id) {
				const double piece = std::floor(d.load / 2.0 * 16.0) / 16.0;
				d.load -= piece;
				take += piece;
			}
		}
		inst.demands.push_back({"shared", take, ""});
	}
	return inst;
}

/// Lists every way a balance result breaks its contract for an instance whose total
/// load fits within total capacity; empty means valid.
inline std::vector<std::string> balance_problems(const BalanceInstance& inst, const sim::BalanceResult& r)
{
	std::vector<std::string> problems;
	double demanded = 0;
	for (const auto& d : inst.demands) {
		demanded += d.load;
	}
	double before = 0;
	double after = 0;
	for (const auto& s : r.initial_servers) {
		before += s.assigned_load;
	}
	for (const auto& s : r.final_servers) {
		after += s.assigned_load;
	}
	if (before != demanded || after != before) {
		problems.push_back("load not conserved");
	}
	for (std::size_t i = 0; i < r.final_servers.size(); ++i) {
		if (r.per_server_delta_lb[i] > 1.0) {
			problems.push_back(r.final_servers[i].resource_id + " ends above capacity");
		}
		if (r.per_server_delta_lb[i] != r.final_servers[i].delta_lb()) {
			problems.push_back(r.final_servers[i].resource_id + " reports a stale delta_lb");
		}
	}
	if (!r.feasible) {
		problems.push_back("flagged infeasible");
	}
	if (sim::replay(r.initial_servers, r.actions) != r.final_servers) {
		problems.push_back("action log does not replay to the final state");
	}
	// each diversion is bounded by the source load at that moment
	auto state = r.initial_servers;
	for (const auto& a : r.actions) {
		if (a.kind == sim::BalanceAction::Kind::DivertLoad) {
			const auto it = std::find_if(state.begin(), state.end(),
			                             [&](const ServerState& s) { return s.resource_id == a.from_server; });
			if (a.diverted_amount < 0 || a.diverted_amount > it->assigned_load) {
				problems.push_back("diversion exceeds source load");
			}
		}
		const std::vector<sim::BalanceAction> one{a};
		state = sim::replay(state, one);
	}
	return problems;
}

struct ScheduleInstance
{
	std::map<std::string, WorkloadSpec> specs;
	std::vector<NonScheduledRecord> records;
	std::vector<sim::Resource> resources;
};

inline ScheduleInstance random_schedule_instance(Gen& g, std::size_t max_records = 8, std::size_t max_resources = 3)
{
	ScheduleInstance inst;
	const auto nr = g.integer(1, static_cast<std::int64_t>(max_resources));
	for (std::int64_t i = 0; i < nr; ++i) {
		sim::Resource r;
		r.resource_id = "R" + std::to_string(i);
		r.capacity = static_cast<double>(g.integer(1, 4));
		r.available_from = g.coin(0.3) ? g.integer(0, 30) : 0;
		if (g.coin(0.2)) {
			r.available_until = r.available_from + g.integer(20, 400);
		}
		inst.resources.push_back(std::move(r));
	}
	const auto nw = g.integer(1, 4);
	std::vector<std::string> ids;
	for (std::int64_t i = 0; i < nw; ++i) {
		WorkloadSpec w;
		w.workload_id = "W" + std::to_string(i);
		w.demand.cpu_weight = 1.0;
		auto& c = w.constraints;
		c.urgency = static_cast<int>(g.integer(0, kMaxUrgency));
		c.interruptible = g.coin();
		if (g.coin(0.3)) {
			c.begin = FixedBegin{g.integer(0, 40)};
		} else {
			ElasticBegin e{g.integer(0, 40), std::nullopt};
			if (g.coin(0.4)) {
				e.latest = e.earliest + g.integer(0, 150);
			}
			c.begin = e;
		}
		if (g.coin(0.5)) {
			c.hard_stop = g.integer(10, 300);
		}
		if (g.coin(0.4)) {
			c.time_bound = g.integer(5, 80);
		}
		if (g.coin(0.3)) {
			c.min_resource = static_cast<double>(g.integer(1, 4));
		}
		ids.push_back(w.workload_id);
		inst.specs.emplace(w.workload_id, std::move(w));
	}
	const auto n = g.integer(1, static_cast<std::int64_t>(max_records));
	for (std::int64_t i = 0; i < n; ++i) {
		NonScheduledRecord rec;
		rec.workload_id = ids[g.index(ids.size())];
		rec.process_id = "P" + std::to_string(i);
		rec.execution_time = g.integer(1, 60);
		for (const auto& r : inst.resources) {
			if (g.coin(0.6)) {
				rec.resource_list.push_back(r.resource_id);
			}
		}
		if (rec.resource_list.empty()) {
			rec.resource_list.push_back(inst.resources[g.index(inst.resources.size())].resource_id);
		}
		std::shuffle(rec.resource_list.begin(), rec.resource_list.end(), g.engine());
		inst.records.push_back(std::move(rec));
	}
	return inst;
}

inline const sim::Resource& resource_by_id(const std::vector<sim::Resource>& resources, const std::string& id)
{
	return *std::find_if(resources.begin(), resources.end(), [&](const sim::Resource& r) { return r.resource_id == id; });
}

/// Lists every way a schedule breaks its contract; empty means valid.
inline std::vector<std::string> schedule_problems(const ScheduleInstance& inst, const sim::Schedule& s)
{
	std::vector<std::string> problems;
	std::map<std::string, const NonScheduledRecord*> by_key;
	for (const auto& r : inst.records) {
		by_key[r.workload_id + "/" + r.process_id] = &r;
	}
	std::set<std::string> seen;
	std::map<std::string, std::vector<std::pair<Tick, Tick>>> busy;
	for (const auto& sr : s.records) {
		const auto key = sr.workload_id + "/" + sr.process_id;
		const auto* rec = by_key.at(key);
		if (!seen.insert(key).second) {
			problems.push_back(key + " placed twice");
		}
		if (sr.end_time - sr.begin_time != rec->execution_time) {
			problems.push_back(key + " duration differs from execution time");
		}
		const auto& res = resource_by_id(inst.resources, sr.resource_id);
		auto v = classifier::check_constraints(*rec, inst.specs.at(sr.workload_id), sr, res.capacity);
		for (auto& msg : v) {
			problems.push_back(key + ": " + msg);
		}
		if (sr.begin_time < res.available_from || (res.available_until && sr.end_time > *res.available_until)) {
			problems.push_back(key + " outside resource availability");
		}
		busy[sr.resource_id].emplace_back(sr.begin_time, sr.end_time);
	}
	for (auto& [rid, ivs] : busy) {
		std::sort(ivs.begin(), ivs.end());
		for (std::size_t i = 1; i < ivs.size(); ++i) {
			if (ivs[i].first < ivs[i - 1].second) {
				problems.push_back("overlap on " + rid);
			}
		}
	}
	for (const auto& rj : s.rejected) {
		const auto key = rj.record.workload_id + "/" + rj.record.process_id;
		if (!seen.insert(key).second) {
			problems.push_back(key + " both placed and rejected");
		}
		if (rj.reason.empty()) {
			problems.push_back(key + " rejected without a reason");
		}
	}
	if (seen.size() != inst.records.size()) {
		problems.push_back("records lost");
	}
	return problems;
}

inline std::optional<Tick> makespan_of(const std::vector<ScheduledRecord>& records)
{
	if (records.empty()) {
		return std::nullopt;
	}
	Tick lo = records.front().begin_time;
	Tick hi = records.front().end_time;
	for (const auto& r : records) {
		lo = std::min(lo, r.begin_time);
		hi = std::max(hi, r.end_time);
	}
	return hi - lo;
}

/// Smallest makespan over every order and resource choice that places exactly the
/// records the greedy schedule accepted, each at its earliest feasible start.
inline std::optional<Tick> exhaustive_makespan(const ScheduleInstance& inst, const sim::Schedule& greedy)
{
	std::vector<const NonScheduledRecord*> accepted;
	for (const auto& sr : greedy.records) {
		for (const auto& r : inst.records) {
			if (r.workload_id == sr.workload_id && r.process_id == sr.process_id) {
				accepted.push_back(&r);
			}
		}
	}
	if (accepted.empty()) {
		return std::nullopt;
	}
	std::vector<std::size_t> order(accepted.size());
	std::iota(order.begin(), order.end(), std::size_t{0});
	std::optional<Tick> best;

	do {
		std::vector<std::size_t> choice(order.size(), 0);
		while (true) {
			std::map<std::string, std::vector<std::pair<Tick, Tick>>> busy;
			std::vector<ScheduledRecord> placed;
			bool ok = true;
			for (std::size_t k = 0; k < order.size() && ok; ++k) {
				const auto& rec = *accepted[order[k]];
				const auto& spec = inst.specs.at(rec.workload_id);
				const auto& res = resource_by_id(inst.resources, rec.resource_list[choice[k]]);
				Tick start = res.available_from;
				if (const auto* f = std::get_if<FixedBegin>(&spec.constraints.begin)) {
					start = std::max(start, f->at);
				} else {
					start = std::max(start, std::get<ElasticBegin>(spec.constraints.begin).earliest);
				}
				auto& ivs = busy[res.resource_id];
				std::sort(ivs.begin(), ivs.end());
				for (const auto& iv : ivs) {
					if (start + rec.execution_time <= iv.first) {
						break;
					}
					start = std::max(start, iv.second);
				}
				ScheduledRecord sr{rec.workload_id, rec.process_id, start, start + rec.execution_time, res.resource_id};
				ok = classifier::check_constraints(rec, spec, sr, res.capacity).empty() &&
				     (!res.available_until || sr.end_time <= *res.available_until);
				ivs.emplace_back(sr.begin_time, sr.end_time);
				placed.push_back(sr);
			}
			if (ok) {
				const auto m = makespan_of(placed);
				if (!best || *m < *best) {
					best = m;
				}
			}
			// next resource assignment, odometer style
			std::size_t k = 0;
			for (; k < order.size(); ++k) {
				if (++choice[k] < accepted[order[k]]->resource_list.size()) {
					break;
				}
				choice[k] = 0;
			}
			if (k == order.size()) {
				break;
			}
		}
	} while (std::next_permutation(order.begin(), order.end()));
	return best;
}

} // namespace qoswb::testing

#endif // QOSWB_TESTS_SUPPORT_HPP
