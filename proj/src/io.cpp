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

#include "qoswb/io.hpp"

#include "qoswb/numfmt.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

namespace qoswb::io {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string escape_pointer_token(std::string_view token)
{
	std::string out;
	for (char c : token) {
		if (c == '~') {
			out += "~0";
		} else if (c == '/') {
			out += "~1";
		} else {
			out.push_back(c);
		}
	}
	return out;
}

std::string join(const std::string& path, std::string_view key)
{
	return path + "/" + escape_pointer_token(key);
}

std::string join(const std::string& path, std::size_t index)
{
	return path + "/" + std::to_string(index);
}

std::string describe(const json& j)
{
	switch (j.type()) {
	case json::value_t::null:
		return "null";
	case json::value_t::boolean:
		return "a boolean";
	case json::value_t::string:
		return "a string";
	case json::value_t::array:
		return "an array";
	case json::value_t::object:
		return "an object";
	default:
		return "a number";
	}
}

/// Typed field access over a parsed document. Every failure is recorded against the
/// field's JSON pointer and parsing continues, so one pass reports every problem.
class Reader
{
public:
	explicit Reader(std::vector<Diagnostic>& diags) : diags_(diags) {}

	void error(const std::string& path, std::string message)
	{
		diags_.push_back({path.empty() ? "/" : path, std::move(message)});
	}

	bool object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed)
	{
		if (!j.is_object()) {
			error(path, "expected an object, found " + describe(j));
			return false;
		}
		for (const auto& [key, value] : j.items()) {
			if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
				error(join(path, key), "unknown field '" + key + "'");
			}
		}
		return true;
	}

	bool array(const json& j, const std::string& path)
	{
		if (!j.is_array()) {
			error(path, "expected an array, found " + describe(j));
			return false;
		}
		return true;
	}

	const json* field(const json& obj, std::string_view key, const std::string& path, bool required)
	{
		auto it = obj.find(key);
		if (it == obj.end()) {
			if (required) {
				error(join(path, key), "missing required field");
			}
			return nullptr;
		}
		return &*it;
	}

	std::optional<double> number(const json& j, const std::string& path)
	{
		if (!j.is_number()) {
			error(path, "expected a number, found " + describe(j));
			return std::nullopt;
		}
		return j.get<double>();
	}

	std::optional<Tick> tick(const json& j, const std::string& path)
	{
		if (j.is_number_unsigned()) {
			const auto v = j.get<std::uint64_t>();
			if (v > static_cast<std::uint64_t>(std::numeric_limits<Tick>::max())) {
				error(path, "integer out of range");
				return std::nullopt;
			}
			return static_cast<Tick>(v);
		}
		if (j.is_number_integer()) {
			return j.get<Tick>();
		}
		error(path, "expected an integer millisecond value, found " + describe(j));
		return std::nullopt;
	}

	std::optional<std::uint64_t> count(const json& j, const std::string& path)
	{
		if (j.is_number_unsigned()) {
			return j.get<std::uint64_t>();
		}
		error(path, j.is_number_integer() ? "count must be non-negative" : "expected a count, found " + describe(j));
		return std::nullopt;
	}

	std::optional<std::string> string(const json& j, const std::string& path)
	{
		if (!j.is_string()) {
			error(path, "expected a string, found " + describe(j));
			return std::nullopt;
		}
		return j.get<std::string>();
	}

	std::optional<bool> boolean(const json& j, const std::string& path)
	{
		if (!j.is_boolean()) {
			error(path, "expected a boolean, found " + describe(j));
			return std::nullopt;
		}
		return j.get<bool>();
	}

	// Field helpers: read obj[key] into `out` when present (and valid).
	template <typename T, typename Fn>
	bool read(const json& obj, std::string_view key, const std::string& path, bool required, T& out, Fn conv)
	{
		const json* f = field(obj, key, path, required);
		if (f == nullptr) {
			return false;
		}
		if (auto v = (this->*conv)(*f, join(path, key))) {
			out = static_cast<T>(*v);
			return true;
		}
		return false;
	}

	bool read_number(const json& o, std::string_view k, const std::string& p, double& out, bool req = true)
	{
		return read(o, k, p, req, out, &Reader::number);
	}
	bool read_tick(const json& o, std::string_view k, const std::string& p, Tick& out, bool req = true)
	{
		return read(o, k, p, req, out, &Reader::tick);
	}
	bool read_count(const json& o, std::string_view k, const std::string& p, std::uint64_t& out, bool req = true)
	{
		return read(o, k, p, req, out, &Reader::count);
	}
	bool read_string(const json& o, std::string_view k, const std::string& p, std::string& out, bool req = true)
	{
		return read(o, k, p, req, out, &Reader::string);
	}
	bool read_bool(const json& o, std::string_view k, const std::string& p, bool& out, bool req = true)
	{
		return read(o, k, p, req, out, &Reader::boolean);
	}

	template <typename T>
	void read_optional(const json& o, std::string_view k, const std::string& p, std::optional<T>& out,
	                   std::optional<T> (Reader::*conv)(const json&, const std::string&))
	{
		if (const json* f = field(o, k, p, false)) {
			out = (this->*conv)(*f, join(p, k));
		}
	}

	std::vector<std::string> strings(const json& j, const std::string& path)
	{
		std::vector<std::string> out;
		if (!array(j, path)) {
			return out;
		}
		for (std::size_t i = 0; i < j.size(); ++i) {
			if (auto s = string(j[i], join(path, i))) {
				out.push_back(std::move(*s));
			}
		}
		return out;
	}

private:
	std::vector<Diagnostic>& diags_;
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

BeginConstraint parse_begin(Reader& rd, const json& j, const std::string& path)
{
	if (!rd.object(j, path, {"kind", "at", "earliest", "latest"})) {
		return ElasticBegin{};
	}
	std::string kind;
	rd.read_string(j, "kind", path, kind);
	if (kind == "fixed") {
		FixedBegin b;
		rd.read_tick(j, "at", path, b.at);
		for (const char* k : {"earliest", "latest"}) {
			if (j.contains(k)) {
				rd.error(join(path, k), "field not allowed for a fixed begin");
			}
		}
		return b;
	}
	if (kind == "elastic") {
		ElasticBegin b;
		rd.read_tick(j, "earliest", path, b.earliest, false);
		rd.read_optional(j, "latest", path, b.latest, &Reader::tick);
		if (j.contains("at")) {
			rd.error(join(path, "at"), "field not allowed for an elastic begin");
		}
		return b;
	}
	if (!kind.empty()) {
		rd.error(join(path, "kind"), "unknown begin kind '" + kind + "' (expected fixed or elastic)");
	}
	return ElasticBegin{};
}

WorkloadConstraints parse_constraints(Reader& rd, const json& j, const std::string& path)
{
	WorkloadConstraints c;
	if (!rd.object(j, path,
	               {"time_bound", "begin", "hard_stop", "interruptible", "min_resource", "urgency", "budget"})) {
		return c;
	}
	rd.read_optional(j, "time_bound", path, c.time_bound, &Reader::tick);
	if (const json* b = rd.field(j, "begin", path, false)) {
		c.begin = parse_begin(rd, *b, join(path, "begin"));
	}
	rd.read_optional(j, "hard_stop", path, c.hard_stop, &Reader::tick);
	rd.read_bool(j, "interruptible", path, c.interruptible, false);
	rd.read_optional(j, "min_resource", path, c.min_resource, &Reader::number);
	Tick urgency = 0;
	if (rd.read_tick(j, "urgency", path, urgency, false)) {
		if (urgency < 0 || urgency > kMaxUrgency) {
			rd.error(join(path, "urgency"), "urgency out of range (0..3)");
		} else {
			c.urgency = static_cast<int>(urgency);
		}
	}
	rd.read_optional(j, "budget", path, c.budget, &Reader::number);
	return c;
}

DemandProfile parse_demand(Reader& rd, const json& j, const std::string& path)
{
	DemandProfile d;
	if (!rd.object(j, path, {"cpu", "memory", "network", "storage", "load_series"})) {
		return d;
	}
	rd.read_number(j, "cpu", path, d.cpu_weight, false);
	rd.read_number(j, "memory", path, d.memory_weight, false);
	rd.read_number(j, "network", path, d.network_weight, false);
	rd.read_number(j, "storage", path, d.storage_weight, false);
	if (const json* s = rd.field(j, "load_series", path, false)) {
		const auto sp = join(path, "load_series");
		if (rd.array(*s, sp)) {
			for (std::size_t i = 0; i < s->size(); ++i) {
				const auto ip = join(sp, i);
				LoadSample ls;
				if (rd.object((*s)[i], ip, {"at", "load"})) {
					rd.read_tick((*s)[i], "at", ip, ls.at);
					rd.read_number((*s)[i], "load", ip, ls.load);
				}
				d.load_series.push_back(ls);
			}
		}
	}
	return d;
}

WorkloadSpec parse_workload(Reader& rd, const json& j, const std::string& path)
{
	WorkloadSpec w;
	if (!rd.object(j, path, {"workload_id", "name", "type", "constraints", "demand", "cost", "rate", "characteristics"})) {
		return w;
	}
	rd.read_string(j, "workload_id", path, w.workload_id);
	rd.read_string(j, "name", path, w.name, false);
	std::string type;
	if (rd.read_string(j, "type", path, type)) {
		if (auto t = parse_workload_type(type)) {
			w.wtype = *t;
		} else {
			rd.error(join(path, "type"), "unknown workload type '" + type + "'");
		}
	}
	if (const json* c = rd.field(j, "constraints", path, false)) {
		w.constraints = parse_constraints(rd, *c, join(path, "constraints"));
	}
	if (const json* d = rd.field(j, "demand", path, true)) {
		w.demand = parse_demand(rd, *d, join(path, "demand"));
	}
	if (const json* c = rd.field(j, "cost", path, false)) {
		const auto cp = join(path, "cost");
		CostRecord cost;
		if (rd.object(*c, cp, {"hardware", "software", "maintenance"})) {
			rd.read_number(*c, "hardware", cp, cost.hardware, false);
			rd.read_number(*c, "software", cp, cost.software, false);
			rd.read_number(*c, "maintenance", cp, cost.maintenance, false);
		}
		w.cost = cost;
	}
	if (const json* r = rd.field(j, "rate", path, false)) {
		const auto rp = join(path, "rate");
		if (rd.object(*r, rp, {"kind", "period"})) {
			std::string kind;
			rd.read_string(*r, "kind", rp, kind);
			if (kind == "periodic") {
				w.rate.kind = Rate::Kind::Periodic;
				rd.read_tick(*r, "period", rp, w.rate.period);
			} else if (kind == "one_shot") {
				if (r->contains("period")) {
					rd.error(join(rp, "period"), "field not allowed for a one_shot rate");
				}
			} else if (!kind.empty()) {
				rd.error(join(rp, "kind"), "unknown rate kind '" + kind + "' (expected one_shot or periodic)");
			}
		}
	}
	if (const json* c = rd.field(j, "characteristics", path, false)) {
		const auto cp = join(path, "characteristics");
		if (rd.object(*c, cp, {"unstable_demand", "standard", "self_governing", "not_critical"})) {
			auto& ch = w.characteristics;
			rd.read_bool(*c, "unstable_demand", cp, ch.unstable_demand, false);
			rd.read_bool(*c, "standard", cp, ch.standard, false);
			rd.read_bool(*c, "self_governing", cp, ch.self_governing, false);
			rd.read_bool(*c, "not_critical", cp, ch.not_critical, false);
		}
	}
	return w;
}

NonScheduledRecord parse_record(Reader& rd, const json& j, const std::string& path)
{
	NonScheduledRecord r;
	if (!rd.object(j, path, {"workload_id", "process_id", "execution_time", "resource_list"})) {
		return r;
	}
	rd.read_string(j, "workload_id", path, r.workload_id);
	rd.read_string(j, "process_id", path, r.process_id);
	rd.read_tick(j, "execution_time", path, r.execution_time);
	if (const json* l = rd.field(j, "resource_list", path, true)) {
		r.resource_list = rd.strings(*l, join(path, "resource_list"));
	}
	return r;
}

ServerState parse_server(Reader& rd, const json& j, const std::string& path)
{
	ServerState s;
	if (!rd.object(j, path, {"resource_id", "expected_load_capacity", "hosted_services", "assigned_load"})) {
		return s;
	}
	rd.read_string(j, "resource_id", path, s.resource_id);
	rd.read_number(j, "expected_load_capacity", path, s.expected_load_capacity);
	if (const json* h = rd.field(j, "hosted_services", path, false)) {
		const auto hp = join(path, "hosted_services");
		for (auto& svc : rd.strings(*h, hp)) {
			if (!s.hosted_services.insert(svc).second) {
				rd.error(hp, "duplicate service '" + svc + "'");
			}
		}
	}
	rd.read_number(j, "assigned_load", path, s.assigned_load, false);
	return s;
}

template <typename T, typename Fn>
std::optional<T> parse_group(Reader& rd, const json& obj, std::string_view key, const std::string& path,
                             std::initializer_list<std::string_view> fields, Fn fill)
{
	const json* g = rd.field(obj, key, path, false);
	if (g == nullptr) {
		return std::nullopt;
	}
	const auto gp = join(path, key);
	T value{};
	if (rd.object(*g, gp, fields)) {
		fill(*g, gp, value);
	}
	return value;
}

template <typename T, typename Fn>
std::optional<std::vector<T>> parse_list(Reader& rd, const json& obj, std::string_view key, const std::string& path,
                                         std::initializer_list<std::string_view> fields, Fn fill)
{
	const json* g = rd.field(obj, key, path, false);
	if (g == nullptr) {
		return std::nullopt;
	}
	const auto gp = join(path, key);
	std::vector<T> out;
	if (rd.array(*g, gp)) {
		for (std::size_t i = 0; i < g->size(); ++i) {
			const auto ip = join(gp, i);
			T value{};
			if (rd.object((*g)[i], ip, fields)) {
				fill((*g)[i], ip, value);
			}
			out.push_back(std::move(value));
		}
	}
	return out;
}

ObservationSet parse_observations(Reader& rd, const json& j, const std::string& path)
{
	ObservationSet o;
	if (!rd.object(j, path,
	               {"bandwidth", "integrity", "usability", "reliability", "changes", "latency", "fulfillment",
	                "customizability", "testing", "load", "self_service", "correctness", "serviceability",
	                "capacity", "accessibility", "portability", "persistence", "security", "performance",
	                "flexibility", "backup_gb", "visibility", "storage_checklist"})) {
		return o;
	}

	o.bandwidth = parse_group<BandwidthObs>(rd, j, "bandwidth", path, {"bits", "seconds"},
	                                        [&](const json& g, const std::string& p, BandwidthObs& v) {
		                                        rd.read_count(g, "bits", p, v.bits);
		                                        rd.read_number(g, "seconds", p, v.seconds);
	                                        });
	o.integrity = parse_list<ThreatPair>(rd, j, "integrity", path, {"threat", "security"},
	                                     [&](const json& g, const std::string& p, ThreatPair& v) {
		                                     rd.read_number(g, "threat", p, v.threat);
		                                     rd.read_number(g, "security", p, v.security);
	                                     });
	o.usability = parse_group<UsabilityObs>(rd, j, "usability", path, {"learn_time", "successful_ops", "total_ops"},
	                                        [&](const json& g, const std::string& p, UsabilityObs& v) {
		                                        rd.read_number(g, "learn_time", p, v.learn_time);
		                                        rd.read_count(g, "successful_ops", p, v.successful_ops);
		                                        rd.read_count(g, "total_ops", p, v.total_ops);
	                                        });
	o.reliability = parse_group<FailureObs>(rd, j, "reliability", path, {"mttf", "mttr"},
	                                        [&](const json& g, const std::string& p, FailureObs& v) {
		                                        rd.read_number(g, "mttf", p, v.mttf);
		                                        rd.read_number(g, "mttr", p, v.mttr);
	                                        });
	o.changes = parse_list<ChangeRequest>(rd, j, "changes", path, {"analyze", "modify", "test", "distribute"},
	                                      [&](const json& g, const std::string& p, ChangeRequest& v) {
		                                      rd.read_number(g, "analyze", p, v.analyze);
		                                      rd.read_number(g, "modify", p, v.modify);
		                                      rd.read_number(g, "test", p, v.test);
		                                      rd.read_number(g, "distribute", p, v.distribute);
	                                      });
	o.latency = parse_group<LatencyObs>(rd, j, "latency", path, {"input_time", "output_time"},
	                                    [&](const json& g, const std::string& p, LatencyObs& v) {
		                                    rd.read_tick(g, "input_time", p, v.input_time);
		                                    rd.read_tick(g, "output_time", p, v.output_time);
	                                    });
	if (const json* f = rd.field(j, "fulfillment", path, false)) {
		const auto fp = join(path, "fulfillment");
		if (auto s = rd.string(*f, fp)) {
			if (auto lvl = parse_fulfillment_level(*s)) {
				o.fulfillment = *lvl;
			} else {
				rd.error(fp, "unknown fulfillment level '" + *s + "'");
			}
		}
	}
	o.customizability = parse_group<ChangeCountObs>(rd, j, "customizability", path,
	                                                {"dynamic_changes", "static_changes"},
	                                                [&](const json& g, const std::string& p, ChangeCountObs& v) {
		                                                rd.read_count(g, "dynamic_changes", p, v.dynamic_changes);
		                                                rd.read_count(g, "static_changes", p, v.static_changes);
	                                                });
	o.testing = parse_group<TestingObs>(rd, j, "testing", path, {"prep", "exec"},
	                                    [&](const json& g, const std::string& p, TestingObs& v) {
		                                    rd.read_number(g, "prep", p, v.prep);
		                                    rd.read_number(g, "exec", p, v.exec);
	                                    });
	o.load = parse_group<LoadObs>(rd, j, "load", path, {"actual", "expected"},
	                              [&](const json& g, const std::string& p, LoadObs& v) {
		                              rd.read_number(g, "actual", p, v.actual);
		                              rd.read_number(g, "expected", p, v.expected);
	                              });
	o.self_service = parse_group<SupportObs>(rd, j, "self_service", path, {"inquiries", "visits"},
	                                         [&](const json& g, const std::string& p, SupportObs& v) {
		                                         rd.read_count(g, "inquiries", p, v.inquiries);
		                                         rd.read_count(g, "visits", p, v.visits);
	                                         });
	o.correctness = parse_group<CorrectnessObs>(
	    rd, j, "correctness", path, {"expected_cs", "observed_cs", "existing_cs", "requested_cs", "defect_count"},
	    [&](const json& g, const std::string& p, CorrectnessObs& v) {
		    rd.read_number(g, "expected_cs", p, v.expected_cs);
		    rd.read_number(g, "observed_cs", p, v.observed_cs);
		    rd.read_count(g, "existing_cs", p, v.existing_cs);
		    rd.read_count(g, "requested_cs", p, v.requested_cs);
		    rd.read_count(g, "defect_count", p, v.defect_count);
	    });
	o.serviceability = parse_group<UptimeObs>(rd, j, "serviceability", path, {"uptime", "downtime"},
	                                          [&](const json& g, const std::string& p, UptimeObs& v) {
		                                          rd.read_number(g, "uptime", p, v.uptime);
		                                          rd.read_number(g, "downtime", p, v.downtime);
	                                          });
	o.capacity = parse_group<UsageObs>(rd, j, "capacity", path, {"actual_usage", "expected_usage"},
	                                   [&](const json& g, const std::string& p, UsageObs& v) {
		                                   rd.read_number(g, "actual_usage", p, v.actual_usage);
		                                   rd.read_number(g, "expected_usage", p, v.expected_usage);
	                                   });
	o.accessibility = parse_group<TimeoutObs>(rd, j, "accessibility", path, {"timeout_count", "request_count"},
	                                          [&](const json& g, const std::string& p, TimeoutObs& v) {
		                                          rd.read_count(g, "timeout_count", p, v.timeout_count);
		                                          rd.read_count(g, "request_count", p, v.request_count);
	                                          });
	o.portability = parse_group<PlatformObs>(rd, j, "portability", path, {"compatible_platforms", "total_platforms"},
	                                         [&](const json& g, const std::string& p, PlatformObs& v) {
		                                         rd.read_count(g, "compatible_platforms", p, v.compatible_platforms);
		                                         rd.read_count(g, "total_platforms", p, v.total_platforms);
	                                         });
	o.persistence = parse_group<UncertaintyObs>(rd, j, "persistence", path, {"series", "proportion"},
	                                            [&](const json& g, const std::string& p, UncertaintyObs& v) {
		                                            if (const json* s = rd.field(g, "series", p, true)) {
			                                            const auto sp = join(p, "series");
			                                            if (rd.array(*s, sp)) {
				                                            for (std::size_t i = 0; i < s->size(); ++i) {
					                                            if (auto x = rd.number((*s)[i], join(sp, i))) {
						                                            v.series.push_back(*x);
					                                            }
				                                            }
			                                            }
		                                            }
		                                            rd.read_number(g, "proportion", p, v.proportion);
	                                            });
	o.security = parse_group<SecurityMatrix>(rd, j, "security", path, {"measures", "drivers", "marks"},
	                                         [&](const json& g, const std::string& p, SecurityMatrix& v) {
		                                         if (const json* m = rd.field(g, "measures", p, true)) {
			                                         v.measures = rd.strings(*m, join(p, "measures"));
		                                         }
		                                         if (const json* d = rd.field(g, "drivers", p, true)) {
			                                         v.drivers = rd.strings(*d, join(p, "drivers"));
		                                         }
		                                         const json* m = rd.field(g, "marks", p, true);
		                                         const auto mp = join(p, "marks");
		                                         if (m == nullptr || !rd.array(*m, mp)) {
			                                         return;
		                                         }
		                                         for (std::size_t i = 0; i < m->size(); ++i) {
			                                         const auto rp = join(mp, i);
			                                         std::vector<bool> row;
			                                         if (rd.array((*m)[i], rp)) {
				                                         for (std::size_t k = 0; k < (*m)[i].size(); ++k) {
					                                         row.push_back(rd.boolean((*m)[i][k], join(rp, k)).value_or(false));
				                                         }
			                                         }
			                                         v.marks.push_back(std::move(row));
		                                         }
	                                         });
	o.performance = parse_list<ServerEventObs>(rd, j, "performance", path, {"server", "quantity", "duration_ms"},
	                                           [&](const json& g, const std::string& p, ServerEventObs& v) {
		                                           std::string kind;
		                                           if (rd.read_string(g, "server", p, kind)) {
			                                           if (auto k = parse_server_kind(kind)) {
				                                           v.kind = *k;
			                                           } else {
				                                           rd.error(join(p, "server"), "unknown server kind '" + kind + "'");
			                                           }
		                                           }
		                                           rd.read_number(g, "quantity", p, v.quantity);
		                                           rd.read_number(g, "duration_ms", p, v.duration_ms);
	                                           });
	o.flexibility = parse_list<FlexiblePoint>(
	    rd, j, "flexibility", path, {"point_id", "flexible_force", "flexible_distance", "applied_force"},
	    [&](const json& g, const std::string& p, FlexiblePoint& v) {
		    rd.read_string(g, "point_id", p, v.point_id);
		    rd.read_number(g, "flexible_force", p, v.flexible_force);
		    rd.read_number(g, "flexible_distance", p, v.flexible_distance);
		    rd.read_number(g, "applied_force", p, v.applied_force);
	    });
	rd.read_optional(j, "backup_gb", path, o.backup_gb, &Reader::number);
	rd.read_optional(j, "visibility", path, o.visibility_score, &Reader::number);
	if (const json* c = rd.field(j, "storage_checklist", path, false)) {
		const auto cp = join(path, "storage_checklist");
		if (rd.array(*c, cp)) {
			if (c->size() != 4) {
				rd.error(cp, "storage checklist needs exactly 4 answers");
			} else {
				StorageChecklist list{};
				for (std::size_t i = 0; i < 4; ++i) {
					list[i] = rd.boolean((*c)[i], join(cp, i)).value_or(false);
				}
				o.storage_checklist = list;
			}
		}
	}
	return o;
}

void report_violations(Reader& rd, const std::string& path, const std::vector<std::string>& violations)
{
	for (const auto& v : violations) {
		rd.error(path, v);
	}
}

std::string line_column(std::string_view text, std::size_t byte)
{
	std::size_t line = 1;
	std::size_t col = 1;
	for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
		if (text[i] == '\n') {
			++line;
			col = 1;
		} else {
			++col;
		}
	}
	return std::to_string(line) + ":" + std::to_string(col);
}

json parse_json(std::string_view text, std::string_view source_name)
{
	try {
		return json::parse(text.begin(), text.end());
	} catch (const json::parse_error& e) {
		// nlohmann's message embeds the byte offset; keep only the explanation part.
		std::string what = e.what();
		if (auto pos = what.find(": "); pos != std::string::npos) {
			what = what.substr(pos + 2);
		}
		// e.byte is one past the offending character
		throw ParseError(std::string(source_name), {{line_column(text, e.byte == 0 ? 0 : e.byte - 1), what}});
	}
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

ojson emit_begin(const BeginConstraint& b)
{
	ojson j;
	if (const auto* f = std::get_if<FixedBegin>(&b)) {
		j["kind"] = "fixed";
		j["at"] = f->at;
	} else {
		const auto& e = std::get<ElasticBegin>(b);
		j["kind"] = "elastic";
		j["earliest"] = e.earliest;
		if (e.latest) {
			j["latest"] = *e.latest;
		}
	}
	return j;
}

ojson emit_workload(const WorkloadSpec& w)
{
	ojson j;
	j["workload_id"] = w.workload_id;
	j["name"] = w.name;
	j["type"] = std::string(to_string(w.wtype));

	const auto& c = w.constraints;
	ojson cj;
	if (c.time_bound) {
		cj["time_bound"] = *c.time_bound;
	}
	cj["begin"] = emit_begin(c.begin);
	if (c.hard_stop) {
		cj["hard_stop"] = *c.hard_stop;
	}
	cj["interruptible"] = c.interruptible;
	if (c.min_resource) {
		cj["min_resource"] = *c.min_resource;
	}
	cj["urgency"] = c.urgency;
	if (c.budget) {
		cj["budget"] = *c.budget;
	}
	j["constraints"] = cj;

	ojson dj;
	dj["cpu"] = w.demand.cpu_weight;
	dj["memory"] = w.demand.memory_weight;
	dj["network"] = w.demand.network_weight;
	dj["storage"] = w.demand.storage_weight;
	if (!w.demand.load_series.empty()) {
		ojson series = ojson::array();
		for (const auto& s : w.demand.load_series) {
			series.push_back({{"at", s.at}, {"load", s.load}});
		}
		dj["load_series"] = series;
	}
	j["demand"] = dj;

	if (w.cost) {
		j["cost"] = {{"hardware", w.cost->hardware}, {"software", w.cost->software}, {"maintenance", w.cost->maintenance}};
	}
	if (w.rate.kind == Rate::Kind::Periodic) {
		j["rate"] = {{"kind", "periodic"}, {"period", w.rate.period}};
	} else {
		j["rate"] = {{"kind", "one_shot"}};
	}
	const auto& ch = w.characteristics;
	j["characteristics"] = {{"unstable_demand", ch.unstable_demand},
	                        {"standard", ch.standard},
	                        {"self_governing", ch.self_governing},
	                        {"not_critical", ch.not_critical}};
	return j;
}

ojson emit_observations(const ObservationSet& o)
{
	ojson j = ojson::object();
	if (o.bandwidth) {
		j["bandwidth"] = {{"bits", o.bandwidth->bits}, {"seconds", o.bandwidth->seconds}};
	}
	if (o.integrity) {
		ojson a = ojson::array();
		for (const auto& p : *o.integrity) {
			a.push_back({{"threat", p.threat}, {"security", p.security}});
		}
		j["integrity"] = a;
	}
	if (o.usability) {
		j["usability"] = {{"learn_time", o.usability->learn_time},
		                  {"successful_ops", o.usability->successful_ops},
		                  {"total_ops", o.usability->total_ops}};
	}
	if (o.reliability) {
		j["reliability"] = {{"mttf", o.reliability->mttf}, {"mttr", o.reliability->mttr}};
	}
	if (o.changes) {
		ojson a = ojson::array();
		for (const auto& c : *o.changes) {
			a.push_back({{"analyze", c.analyze}, {"modify", c.modify}, {"test", c.test}, {"distribute", c.distribute}});
		}
		j["changes"] = a;
	}
	if (o.latency) {
		j["latency"] = {{"input_time", o.latency->input_time}, {"output_time", o.latency->output_time}};
	}
	if (o.fulfillment) {
		j["fulfillment"] = std::string(to_string(*o.fulfillment));
	}
	if (o.customizability) {
		j["customizability"] = {{"dynamic_changes", o.customizability->dynamic_changes},
		                        {"static_changes", o.customizability->static_changes}};
	}
	if (o.testing) {
		j["testing"] = {{"prep", o.testing->prep}, {"exec", o.testing->exec}};
	}
	if (o.load) {
		j["load"] = {{"actual", o.load->actual}, {"expected", o.load->expected}};
	}
	if (o.self_service) {
		j["self_service"] = {{"inquiries", o.self_service->inquiries}, {"visits", o.self_service->visits}};
	}
	if (o.correctness) {
		const auto& c = *o.correctness;
		j["correctness"] = {{"expected_cs", c.expected_cs},
		                    {"observed_cs", c.observed_cs},
		                    {"existing_cs", c.existing_cs},
		                    {"requested_cs", c.requested_cs},
		                    {"defect_count", c.defect_count}};
	}
	if (o.serviceability) {
		j["serviceability"] = {{"uptime", o.serviceability->uptime}, {"downtime", o.serviceability->downtime}};
	}
	if (o.capacity) {
		j["capacity"] = {{"actual_usage", o.capacity->actual_usage}, {"expected_usage", o.capacity->expected_usage}};
	}
	if (o.accessibility) {
		j["accessibility"] = {{"timeout_count", o.accessibility->timeout_count},
		                      {"request_count", o.accessibility->request_count}};
	}
	if (o.portability) {
		j["portability"] = {{"compatible_platforms", o.portability->compatible_platforms},
		                    {"total_platforms", o.portability->total_platforms}};
	}
	if (o.persistence) {
		j["persistence"] = {{"series", o.persistence->series}, {"proportion", o.persistence->proportion}};
	}
	if (o.security) {
		ojson marks = ojson::array();
		for (const auto& row : o.security->marks) {
			ojson r = ojson::array();
			for (bool b : row) {
				r.push_back(b);
			}
			marks.push_back(r);
		}
		j["security"] = {{"measures", o.security->measures}, {"drivers", o.security->drivers}, {"marks", marks}};
	}
	if (o.performance) {
		ojson a = ojson::array();
		for (const auto& e : *o.performance) {
			a.push_back({{"server", std::string(to_string(e.kind))}, {"quantity", e.quantity}, {"duration_ms", e.duration_ms}});
		}
		j["performance"] = a;
	}
	if (o.flexibility) {
		ojson a = ojson::array();
		for (const auto& p : *o.flexibility) {
			a.push_back({{"point_id", p.point_id},
			             {"flexible_force", p.flexible_force},
			             {"flexible_distance", p.flexible_distance},
			             {"applied_force", p.applied_force}});
		}
		j["flexibility"] = a;
	}
	if (o.backup_gb) {
		j["backup_gb"] = *o.backup_gb;
	}
	if (o.visibility_score) {
		j["visibility"] = *o.visibility_score;
	}
	if (o.storage_checklist) {
		ojson a = ojson::array();
		for (bool b : *o.storage_checklist) {
			a.push_back(b);
		}
		j["storage_checklist"] = a;
	}
	return j;
}

std::string pad(std::string s, std::size_t width)
{
	if (s.size() < width) {
		s.append(width - s.size(), ' ');
	}
	return s;
}

} // namespace

ParseError::ParseError(std::string source, std::vector<Diagnostic> diagnostics)
    : std::runtime_error([&] {
	      std::string msg;
	      for (const auto& d : diagnostics) {
		      if (!msg.empty()) {
			      msg += '\n';
		      }
		      msg += source + ":" + d.location + ": " + d.message;
	      }
	      return msg;
      }()),
      source_(std::move(source)),
      diagnostics_(std::move(diagnostics))
{
}

WorkloadFile parse_workload_file(std::string_view text, std::string_view source_name)
{
	const json doc = parse_json(text, source_name);

	std::vector<Diagnostic> diags;
	Reader rd(diags);
	WorkloadFile file;

	if (rd.object(doc, "", {"version", "workloads", "records", "observations", "servers"})) {
		Tick version = 0;
		if (rd.read_tick(doc, "version", "", version) && version != kFormatVersion) {
			rd.error("/version", "unsupported version " + std::to_string(version) + " (expected 1)");
		}

		if (const json* ws = rd.field(doc, "workloads", "", true); ws && rd.array(*ws, "/workloads")) {
			for (std::size_t i = 0; i < ws->size(); ++i) {
				file.workloads.push_back(parse_workload(rd, (*ws)[i], join("/workloads", i)));
			}
		}
		if (const json* rs = rd.field(doc, "records", "", false); rs && rd.array(*rs, "/records")) {
			for (std::size_t i = 0; i < rs->size(); ++i) {
				file.records.push_back(parse_record(rd, (*rs)[i], join("/records", i)));
			}
		}
		if (const json* os = rd.field(doc, "observations", "", false); os && rd.object(*os, "/observations", {})) {
			// the empty allow-list above flags every key; undo that for observation maps
			diags.erase(std::remove_if(diags.begin(), diags.end(),
			                           [](const Diagnostic& d) {
				                           return d.location.rfind("/observations/", 0) == 0 &&
				                                  d.message.rfind("unknown field", 0) == 0;
			                           }),
			            diags.end());
			for (const auto& [wid, obs] : os->items()) {
				file.observations[wid] = parse_observations(rd, obs, join("/observations", wid));
			}
		}
		if (const json* ss = rd.field(doc, "servers", "", false); ss && rd.array(*ss, "/servers")) {
			for (std::size_t i = 0; i < ss->size(); ++i) {
				file.servers.push_back(parse_server(rd, (*ss)[i], join("/servers", i)));
			}
		}
	}

	// Semantic checks run only on a structurally sound document.
	if (diags.empty()) {
		std::set<std::string> ids;
		for (std::size_t i = 0; i < file.workloads.size(); ++i) {
			const auto p = join("/workloads", i);
			const auto& w = file.workloads[i];
			if (!ids.insert(w.workload_id).second) {
				rd.error(join(p, "workload_id"), "duplicate workload_id '" + w.workload_id + "'");
			}
			report_violations(rd, p, validate_spec(w));
		}
		for (std::size_t i = 0; i < file.records.size(); ++i) {
			const auto p = join("/records", i);
			const auto& r = file.records[i];
			if (ids.count(r.workload_id) == 0) {
				rd.error(join(p, "workload_id"), "dangling reference to unknown workload '" + r.workload_id + "'");
			}
			report_violations(rd, p, validate_record(r));
		}
		for (const auto& [wid, obs] : file.observations) {
			const auto p = join("/observations", wid);
			if (ids.count(wid) == 0) {
				rd.error(p, "dangling reference to unknown workload '" + wid + "'");
			}
			report_violations(rd, p, validate_observations(obs));
		}
		std::set<std::string> servers;
		for (std::size_t i = 0; i < file.servers.size(); ++i) {
			const auto p = join("/servers", i);
			const auto& s = file.servers[i];
			if (!servers.insert(s.resource_id).second) {
				rd.error(join(p, "resource_id"), "duplicate resource_id '" + s.resource_id + "'");
			}
			report_violations(rd, p, validate_server(s));
		}
	}

	if (!diags.empty()) {
		throw ParseError(std::string(source_name), std::move(diags));
	}
	return file;
}

WorkloadFile load_workload_file(const std::filesystem::path& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw ParseError(path.string(), {{"0:0", "cannot open file"}});
	}
	std::ostringstream buf;
	buf << in.rdbuf();
	return parse_workload_file(buf.str(), path.string());
}

std::string emit_workload_file(const WorkloadFile& file)
{
	ojson doc;
	doc["version"] = file.version;

	ojson ws = ojson::array();
	for (const auto& w : file.workloads) {
		ws.push_back(emit_workload(w));
	}
	doc["workloads"] = ws;

	ojson rs = ojson::array();
	for (const auto& r : file.records) {
		rs.push_back({{"workload_id", r.workload_id},
		              {"process_id", r.process_id},
		              {"execution_time", r.execution_time},
		              {"resource_list", r.resource_list}});
	}
	doc["records"] = rs;

	ojson os = ojson::object();
	for (const auto& [wid, obs] : file.observations) {
		os[wid] = emit_observations(obs);
	}
	doc["observations"] = os;

	ojson ss = ojson::array();
	for (const auto& s : file.servers) {
		ss.push_back({{"resource_id", s.resource_id},
		              {"expected_load_capacity", s.expected_load_capacity},
		              {"hosted_services", s.hosted_services},
		              {"assigned_load", s.assigned_load}});
	}
	doc["servers"] = ss;

	return doc.dump(2) + "\n";
}

std::vector<TaxonomyRecord> parse_taxonomy(std::string_view text, std::string_view source_name)
{
	const json doc = parse_json(text, source_name);
	std::vector<Diagnostic> diags;
	Reader rd(diags);
	std::vector<TaxonomyRecord> out;

	if (rd.object(doc, "", {"version", "taxonomy"})) {
		Tick version = 0;
		if (rd.read_tick(doc, "version", "", version) && version != kFormatVersion) {
			rd.error("/version", "unsupported version " + std::to_string(version) + " (expected 1)");
		}
		if (const json* t = rd.field(doc, "taxonomy", "", true); t && rd.array(*t, "/taxonomy")) {
			for (std::size_t i = 0; i < t->size(); ++i) {
				const auto p = join("/taxonomy", i);
				const json& row = (*t)[i];
				if (!rd.object(row, p, {"type", "group", "quality_attributes"})) {
					continue;
				}
				TaxonomyRecord rec{WorkloadType::Websites, WorkloadGroup::ServerOriented, {}};
				std::string name;
				if (rd.read_string(row, "type", p, name)) {
					if (auto v = parse_workload_type(name)) {
						rec.type = *v;
					} else {
						rd.error(join(p, "type"), "unknown workload type '" + name + "'");
					}
				}
				if (rd.read_string(row, "group", p, name)) {
					if (auto v = parse_workload_group(name)) {
						rec.group = *v;
					} else {
						rd.error(join(p, "group"), "unknown group '" + name + "'");
					}
				}
				if (const json* qa = rd.field(row, "quality_attributes", p, true)) {
					rec.quality_attributes = rd.strings(*qa, join(p, "quality_attributes"));
					if (rec.quality_attributes.empty()) {
						rd.error(join(p, "quality_attributes"), "at least one quality attribute is required");
					}
				}
				out.push_back(std::move(rec));
			}
		}
	}
	if (!diags.empty()) {
		throw ParseError(std::string(source_name), std::move(diags));
	}
	return out;
}

std::string emit_taxonomy(std::span<const TaxonomyEntry> entries)
{
	ojson rows = ojson::array();
	for (const auto& e : entries) {
		ojson attrs = ojson::array();
		for (auto a : e.quality_attributes) {
			attrs.push_back(std::string(a));
		}
		rows.push_back({{"type", std::string(to_string(e.type))},
		                {"group", std::string(to_string(e.group))},
		                {"quality_attributes", attrs}});
	}
	ojson doc;
	doc["version"] = kFormatVersion;
	doc["taxonomy"] = rows;
	return doc.dump(2) + "\n";
}

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                         bool styled)
{
	std::vector<std::size_t> width(header.size(), 0);
	for (std::size_t c = 0; c < header.size(); ++c) {
		width[c] = header[c].size();
	}
	for (const auto& row : rows) {
		for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
			width[c] = std::max(width[c], row[c].size());
		}
	}

	auto line = [&](const std::vector<std::string>& cells) {
		std::string out;
		for (std::size_t c = 0; c < cells.size(); ++c) {
			const bool last = c + 1 == cells.size();
			out += last ? cells[c] : pad(cells[c], width[c]) + "  ";
		}
		return out;
	};

	std::string out;
	const std::string head = line(header);
	out += styled ? "\x1b[1m" + head + "\x1b[0m" : head;
	out += '\n';
	std::size_t rule = 0;
	for (std::size_t c = 0; c < width.size(); ++c) {
		rule += width[c] + (c + 1 == width.size() ? 0 : 2);
	}
	out += std::string(rule, '-') + '\n';
	for (const auto& row : rows) {
		out += line(row) + '\n';
	}
	return out;
}

std::string emit_report(const QoSReport& report, ReportFormat format, bool styled)
{
	std::vector<const ReportEntry*> sorted;
	sorted.reserve(report.size());
	for (const auto& e : report.entries()) {
		sorted.push_back(&e);
	}
	std::sort(sorted.begin(), sorted.end(),
	          [](const ReportEntry* a, const ReportEntry* b) { return a->metric_name < b->metric_name; });

	auto verdict = [](const ReportEntry& e) { return e.verdict ? std::string(to_string(*e.verdict)) : "none"; };

	if (format == ReportFormat::Machine) {
		std::string out(kMachineReportHeader);
		out += '\n';
		for (const auto* e : sorted) {
			out += e->metric_name + "=" + format_number(e->value) + " unit=" + e->unit + " verdict=" + verdict(*e) + "\n";
		}
		return out;
	}

	std::vector<std::vector<std::string>> rows;
	for (const auto* e : sorted) {
		rows.push_back({e->metric_name, format_number(e->value), e->unit, e->verdict ? verdict(*e) : "-"});
	}
	return render_table({"metric", "value", "unit", "verdict"}, rows, styled);
}

} // namespace qoswb::io
