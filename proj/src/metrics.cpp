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

#include "qoswb/metrics.hpp"

#include "qoswb/numfmt.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qoswb::metrics {

namespace {

[[noreturn]] void fail(const std::string& what)
{
	throw MetricError(what);
}

void require_non_negative(double v, const char* metric, const char* field)
{
	if (!(std::isfinite(v) && v >= 0.0)) {
		fail(std::string(metric) + ": " + field + " must be finite and non-negative");
	}
}

void require_positive(double v, const char* metric, const char* field)
{
	if (!(std::isfinite(v) && v > 0.0)) {
		fail(std::string(metric) + ": " + field + " must be positive");
	}
}

double ratio_of(std::uint64_t num, std::uint64_t den)
{
	return static_cast<double>(num) / static_cast<double>(den);
}

// Builds the canonical "k=v;k=v" text a digest is taken over.
class DigestInput
{
public:
	DigestInput& add(std::string_view key, double v)
	{
		sep();
		text_.append(key).append("=").append(format_number(v));
		return *this;
	}
	DigestInput& add(std::string_view key, std::string_view v)
	{
		sep();
		text_.append(key).append("=").append(v);
		return *this;
	}
	std::string digest() const { return inputs_digest(text_); }

private:
	void sep()
	{
		if (!text_.empty()) {
			text_.push_back(';');
		}
	}
	std::string text_;
};

ReportEntry entry(std::string name, const MetricValue& mv, std::optional<Verdict> verdict, const DigestInput& in)
{
	return ReportEntry{std::move(name), mv.value, std::string(mv.unit), verdict, in.digest()};
}

} // namespace

MetricValue bandwidth(std::uint64_t bits, double seconds)
{
	if (!(std::isfinite(seconds) && seconds > 0.0)) {
		fail("bandwidth: undefined bandwidth for a zero or negative duration");
	}
	return {static_cast<double>(bits) / seconds, unit::bps};
}

MetricValue integrity(std::span<const ThreatPair> pairs)
{
	double sum = 0.0;
	for (std::size_t i = 0; i < pairs.size(); ++i) {
		const auto& p = pairs[i];
		if (!(p.threat >= 0.0 && p.threat <= 1.0) || !(p.security >= 0.0 && p.security <= 1.0)) {
			fail("integrity: pair " + std::to_string(i) + " has a probability outside [0,1]");
		}
		sum += (1.0 - p.threat) * (1.0 - p.security);
	}
	return {sum, unit::ratio};
}

UsabilityResult usability(double learn_time, std::uint64_t successful_ops, std::uint64_t total_ops)
{
	require_positive(learn_time, "usability", "learn_time");
	if (total_ops == 0) {
		fail("usability: total_ops must be positive");
	}
	if (successful_ops > total_ops) {
		fail("usability: successful_ops exceeds total_ops");
	}
	return {{1.0 / learn_time, unit::ratio}, {ratio_of(successful_ops, total_ops), unit::ratio}};
}

ReliabilityResult reliability_availability(double mttf, double mttr)
{
	require_non_negative(mttf, "reliability", "mttf");
	require_non_negative(mttr, "reliability", "mttr");
	const double mtbf = mttf + mttr;
	if (mtbf == 0.0) {
		fail("reliability: no failure data (mttf and mttr are both zero)");
	}
	return {{mtbf, unit::ms}, {mttf / mtbf, unit::ratio}};
}

MetricValue changeability(std::span<const ChangeRequest> changes)
{
	if (changes.empty()) {
		fail("changeability: no change requests");
	}
	double total = 0.0;
	for (const auto& c : changes) {
		require_non_negative(c.analyze, "changeability", "analyze");
		require_non_negative(c.modify, "changeability", "modify");
		require_non_negative(c.test, "changeability", "test");
		require_non_negative(c.distribute, "changeability", "distribute");
		total += c.analyze + c.modify + c.test + c.distribute;
	}
	return {total / static_cast<double>(changes.size()), unit::ms};
}

MetricValue latency(Tick input_time, Tick output_time)
{
	if (output_time < input_time) {
		fail("latency: causality violation (output precedes input)");
	}
	return {static_cast<double>(output_time - input_time), unit::ms};
}

MetricValue confidence_lookup(FulfillmentLevel level)
{
	double pct = 0.0;
	switch (level) {
	case FulfillmentLevel::VerySatisfied:
		pct = 100.0;
		break;
	case FulfillmentLevel::Satisfied:
		pct = 75.0;
		break;
	case FulfillmentLevel::Neutral:
		pct = 50.0;
		break;
	case FulfillmentLevel::Dissatisfied:
		pct = 25.0;
		break;
	case FulfillmentLevel::CompletelyDissatisfied:
		pct = 0.0;
		break;
	}
	return {pct, unit::percent};
}

MetricValue customizability(std::uint64_t dynamic_changes, std::uint64_t static_changes)
{
	if (dynamic_changes == 0 && static_changes == 0) {
		fail("customizability: no changes recorded");
	}
	return {ratio_of(dynamic_changes, dynamic_changes + static_changes), unit::ratio};
}

MetricValue testing_time(double prep, double exec)
{
	require_non_negative(prep, "testing_time", "prep");
	require_non_negative(exec, "testing_time", "exec");
	return {prep + exec, unit::ms};
}

LoadResult variable_load(double actual, double expected)
{
	require_non_negative(actual, "variable_load", "actual");
	if (!(std::isfinite(expected) && expected > 0.0)) {
		fail("variable_load: no expected load");
	}
	const double delta = actual / expected;
	return {{delta, unit::ratio}, delta <= 1.0};
}

MetricValue self_service_rate(std::uint64_t inquiries, std::uint64_t visits)
{
	if (visits == 0) {
		fail("self_service_rate: visits must be positive");
	}
	// Exact integer difference first keeps the result accurate when inquiries ~ visits.
	const auto diff = static_cast<double>(static_cast<std::int64_t>(visits) - static_cast<std::int64_t>(inquiries));
	return {100.0 * diff / static_cast<double>(visits), unit::percent};
}

MetricValue accuracy(double expected_cs, double observed_cs)
{
	require_positive(expected_cs, "correctness", "expected_cs");
	require_non_negative(observed_cs, "correctness", "observed_cs");
	// (e - |e - o|) / e, arranged to avoid cancellation.
	const double hit = observed_cs <= expected_cs ? observed_cs : 2.0 * expected_cs - observed_cs;
	return {hit / expected_cs, unit::ratio};
}

MetricValue completeness(std::uint64_t existing_cs, std::uint64_t requested_cs)
{
	if (requested_cs == 0) {
		fail("correctness: requested_cs must be positive");
	}
	return {ratio_of(existing_cs, requested_cs), unit::ratio};
}

MetricValue defects_per_cs(std::uint64_t defects, std::uint64_t existing_cs)
{
	if (existing_cs == 0) {
		fail("correctness: existing_cs must be positive for defects per service");
	}
	return {ratio_of(defects, existing_cs), unit::ratio};
}

CorrectnessResult correctness(double expected_cs, double observed_cs, std::uint64_t existing_cs,
                              std::uint64_t requested_cs, std::uint64_t defects)
{
	return {accuracy(expected_cs, observed_cs), completeness(existing_cs, requested_cs),
	        defects_per_cs(defects, existing_cs)};
}

MetricValue serviceability(double uptime, double downtime)
{
	require_non_negative(uptime, "serviceability", "uptime");
	require_non_negative(downtime, "serviceability", "downtime");
	const double total = uptime + downtime;
	if (total == 0.0) {
		fail("serviceability: uptime and downtime are both zero");
	}
	return {uptime / total, unit::ratio};
}

MetricValue computing_capacity(double actual_usage, double expected_usage)
{
	require_non_negative(actual_usage, "computing_capacity", "actual_usage");
	require_positive(expected_usage, "computing_capacity", "expected_usage");
	return {actual_usage / expected_usage, unit::ratio};
}

MetricValue internet_accessibility(std::uint64_t timeouts, std::uint64_t total)
{
	if (total == 0) {
		fail("internet_accessibility: total requests must be positive");
	}
	if (timeouts > total) {
		fail("internet_accessibility: timeouts exceed total requests");
	}
	return {100.0 * ratio_of(timeouts, total), unit::percent};
}

MetricValue portability(std::uint64_t compatible, std::uint64_t total)
{
	if (total == 0) {
		fail("portability: total platforms must be positive");
	}
	if (compatible > total) {
		fail("portability: compatible platforms exceed total");
	}
	return {ratio_of(compatible, total), unit::ratio};
}

std::size_t persistence(std::span<const double> uncertainty_series, double proportion)
{
	if (!(proportion > 0.0 && proportion <= 1.0)) {
		fail("persistence: proportion must lie in (0,1]");
	}
	double total = 0.0;
	for (double v : uncertainty_series) {
		require_non_negative(v, "persistence", "uncertainty amount");
		total += v;
	}
	if (total <= 0.0) {
		fail("persistence: total uncertainty is zero");
	}
	double prefix = 0.0;
	for (std::size_t k = 0; k < uncertainty_series.size(); ++k) {
		prefix += uncertainty_series[k];
		if (prefix / total >= proportion) {
			return k + 1;
		}
	}
	// prefix == total on the last step, so the loop always returns.
	return uncertainty_series.size();
}

SecurityCoverage security_coverage(const SecurityMatrix& matrix)
{
	if (auto problems = validate_security_matrix(matrix); !problems.empty()) {
		fail("security_coverage: " + problems.front());
	}
	SecurityCoverage out;
	std::size_t marked = 0;
	for (std::size_t d = 0; d < matrix.drivers.size(); ++d) {
		std::size_t n = 0;
		for (const auto& row : matrix.marks) {
			n += row[d] ? 1 : 0;
		}
		out.per_driver_counts.emplace_back(matrix.drivers[d], n);
	}
	for (std::size_t m = 0; m < matrix.measures.size(); ++m) {
		const auto n = static_cast<std::size_t>(std::count(matrix.marks[m].begin(), matrix.marks[m].end(), true));
		out.per_measure_counts.emplace_back(matrix.measures[m], n);
		marked += n;
	}
	const std::size_t cells = matrix.measures.size() * matrix.drivers.size();
	out.coverage_ratio = cells == 0 ? 0.0 : ratio_of(marked, cells);
	return out;
}

std::string_view throughput_unit(ServerKind kind)
{
	switch (kind) {
	case ServerKind::Mail:
		return "actions/min";
	case ServerKind::Java:
		return "orders/s";
	case ServerKind::Web:
		return "accesses/s";
	case ServerKind::Database:
		return "commits/s";
	case ServerKind::File:
		return "MB/s";
	}
	return "";
}

MetricValue performance_throughput(ServerKind kind, double quantity, double duration_ms)
{
	require_non_negative(quantity, "performance", "quantity");
	if (!(std::isfinite(duration_ms) && duration_ms > 0.0)) {
		fail("performance: zero duration");
	}
	const double per_unit_ms = kind == ServerKind::Mail ? 60000.0 : 1000.0;
	return {quantity / (duration_ms / per_unit_ms), throughput_unit(kind)};
}

FlexibilityResult flexibility(std::span<const FlexiblePoint> points)
{
	FlexibilityResult out;
	out.degrees.reserve(points.size());
	out.usable.reserve(points.size());
	for (const auto& p : points) {
		if (!(p.flexible_force >= 0.0 && p.flexible_distance >= 0.0 && p.applied_force >= 0.0) ||
		    !std::isfinite(p.flexible_force) || !std::isfinite(p.flexible_distance) ||
		    !std::isfinite(p.applied_force)) {
			fail("flexibility: point '" + p.point_id + "' has a negative or non-finite field");
		}
		const double k = p.flexible_distance / (1.0 + p.flexible_force);
		out.degrees.push_back(k);
		out.capacity += k;
		out.usable.push_back(p.applied_force >= p.flexible_force);
	}
	return out;
}

MetricValue database_backup(double gb)
{
	require_non_negative(gb, "database_backup", "backup_gb");
	return {gb, unit::gb};
}

MetricValue service_visibility(double score)
{
	if (!(score >= 0.0 && score <= 1.0)) {
		fail("service_visibility: score must lie in [0,1]");
	}
	return {score, unit::ratio};
}

MetricValue reliable_storage(const StorageChecklist& checklist)
{
	const auto yes = std::count(checklist.begin(), checklist.end(), true);
	return {static_cast<double>(yes) / static_cast<double>(checklist.size()), unit::ratio};
}

std::vector<ReportEntry> qualitative_assessments(const ObservationSet& obs)
{
	std::vector<ReportEntry> out;
	if (obs.backup_gb) {
		out.push_back(entry("database_backup", database_backup(*obs.backup_gb), std::nullopt,
		                    DigestInput{}.add("backup_gb", *obs.backup_gb)));
	}
	if (obs.visibility_score) {
		out.push_back(entry("service_visibility", service_visibility(*obs.visibility_score), Verdict::Pass,
		                    DigestInput{}.add("visibility_score", *obs.visibility_score)));
	}
	if (obs.storage_checklist) {
		DigestInput in;
		for (std::size_t i = 0; i < obs.storage_checklist->size(); ++i) {
			in.add("q" + std::to_string(i), (*obs.storage_checklist)[i] ? "1" : "0");
		}
		out.push_back(entry("reliable_storage", reliable_storage(*obs.storage_checklist), Verdict::Pass, in));
	}
	return out;
}

QoSReport evaluate(const ObservationSet& obs)
{
	QoSReport r;

	if (const auto& o = obs.bandwidth) {
		DigestInput in;
		in.add("bits", static_cast<double>(o->bits)).add("seconds", o->seconds);
		r.add(entry("bandwidth", bandwidth(o->bits, o->seconds), std::nullopt, in));
	}
	if (const auto& o = obs.integrity) {
		DigestInput in;
		for (const auto& p : *o) {
			in.add("threat", p.threat).add("security", p.security);
		}
		r.add(entry("integrity", integrity(*o), std::nullopt, in));
	}
	if (const auto& o = obs.usability) {
		DigestInput in;
		in.add("learn_time", o->learn_time)
		    .add("successful_ops", static_cast<double>(o->successful_ops))
		    .add("total_ops", static_cast<double>(o->total_ops));
		const auto u = usability(o->learn_time, o->successful_ops, o->total_ops);
		r.add(entry("learnability", u.learnability, std::nullopt, in));
		r.add(entry("success_ratio", u.success_ratio, Verdict::Pass, in));
	}
	if (const auto& o = obs.reliability) {
		DigestInput in;
		in.add("mttf", o->mttf).add("mttr", o->mttr);
		const auto ra = reliability_availability(o->mttf, o->mttr);
		r.add(entry("mtbf", ra.mtbf, std::nullopt, in));
		r.add(entry("availability", ra.availability, Verdict::Pass, in));
	}
	if (const auto& o = obs.changes) {
		DigestInput in;
		for (const auto& c : *o) {
			in.add("analyze", c.analyze).add("modify", c.modify).add("test", c.test).add("distribute", c.distribute);
		}
		r.add(entry("mttc", changeability(*o), std::nullopt, in));
	}
	if (const auto& o = obs.latency) {
		DigestInput in;
		in.add("input_time", static_cast<double>(o->input_time)).add("output_time", static_cast<double>(o->output_time));
		r.add(entry("latency", latency(o->input_time, o->output_time), std::nullopt, in));
	}
	if (const auto& o = obs.fulfillment) {
		r.add(entry("confidence", confidence_lookup(*o), std::nullopt, DigestInput{}.add("level", to_string(*o))));
	}
	if (const auto& o = obs.customizability) {
		DigestInput in;
		in.add("dynamic", static_cast<double>(o->dynamic_changes)).add("static", static_cast<double>(o->static_changes));
		r.add(entry("customizability", customizability(o->dynamic_changes, o->static_changes), Verdict::Pass, in));
	}
	if (const auto& o = obs.testing) {
		DigestInput in;
		in.add("prep", o->prep).add("exec", o->exec);
		r.add(entry("testing_time", testing_time(o->prep, o->exec), std::nullopt, in));
	}
	if (const auto& o = obs.load) {
		DigestInput in;
		in.add("actual", o->actual).add("expected", o->expected);
		const auto lr = variable_load(o->actual, o->expected);
		r.add(entry("delta_lb", lr.delta_lb, lr.efficient ? Verdict::Pass : Verdict::Fail, in));
	}
	if (const auto& o = obs.self_service) {
		DigestInput in;
		in.add("inquiries", static_cast<double>(o->inquiries)).add("visits", static_cast<double>(o->visits));
		const auto v = self_service_rate(o->inquiries, o->visits);
		r.add(entry("self_service_rate", v, v.value < 0.0 ? Verdict::Anomalous : Verdict::Pass, in));
	}
	if (const auto& o = obs.correctness) {
		DigestInput in;
		in.add("expected_cs", o->expected_cs)
		    .add("observed_cs", o->observed_cs)
		    .add("existing_cs", static_cast<double>(o->existing_cs))
		    .add("requested_cs", static_cast<double>(o->requested_cs))
		    .add("defects", static_cast<double>(o->defect_count));
		const auto c = correctness(o->expected_cs, o->observed_cs, o->existing_cs, o->requested_cs, o->defect_count);
		r.add(entry("accuracy", c.accuracy, Verdict::Pass, in));
		r.add(entry("completeness", c.completeness, c.completeness.value <= 1.0 ? Verdict::Pass : Verdict::Anomalous, in));
		r.add(entry("defects_per_cs", c.defects_per_cs, std::nullopt, in));
	}
	if (const auto& o = obs.serviceability) {
		DigestInput in;
		in.add("uptime", o->uptime).add("downtime", o->downtime);
		r.add(entry("serviceability", serviceability(o->uptime, o->downtime), Verdict::Pass, in));
	}
	if (const auto& o = obs.capacity) {
		DigestInput in;
		in.add("actual_usage", o->actual_usage).add("expected_usage", o->expected_usage);
		const auto v = computing_capacity(o->actual_usage, o->expected_usage);
		r.add(entry("computing_capacity", v, v.value > 1.0 ? Verdict::OverUtilized : Verdict::Pass, in));
	}
	if (const auto& o = obs.accessibility) {
		DigestInput in;
		in.add("timeouts", static_cast<double>(o->timeout_count)).add("requests", static_cast<double>(o->request_count));
		r.add(entry("internet_accessibility", internet_accessibility(o->timeout_count, o->request_count),
		            Verdict::Pass, in));
	}
	if (const auto& o = obs.portability) {
		DigestInput in;
		in.add("compatible", static_cast<double>(o->compatible_platforms))
		    .add("total", static_cast<double>(o->total_platforms));
		r.add(entry("portability", portability(o->compatible_platforms, o->total_platforms), Verdict::Pass, in));
	}
	if (const auto& o = obs.persistence) {
		DigestInput in;
		for (double v : o->series) {
			in.add("u", v);
		}
		in.add("proportion", o->proportion);
		const auto k = persistence(o->series, o->proportion);
		r.add(entry("persistence", {static_cast<double>(k), unit::ratio}, std::nullopt, in));
	}
	if (const auto& o = obs.security) {
		DigestInput in;
		for (std::size_t m = 0; m < o->marks.size(); ++m) {
			std::string row;
			for (bool b : o->marks[m]) {
				row.push_back(b ? '1' : '0');
			}
			in.add(m < o->measures.size() ? o->measures[m] : std::string("?"), row);
		}
		const auto cov = security_coverage(*o);
		r.add(entry("security_coverage", {cov.coverage_ratio, unit::ratio}, Verdict::Pass, in));
	}
	if (const auto& o = obs.performance) {
		std::map<ServerKind, int> seen;
		for (const auto& e : *o) {
			std::string name = "performance." + std::string(to_string(e.kind));
			if (int n = seen[e.kind]++; n > 0) {
				name += "#" + std::to_string(n + 1);
			}
			DigestInput in;
			in.add("kind", to_string(e.kind)).add("quantity", e.quantity).add("duration_ms", e.duration_ms);
			r.add(entry(std::move(name), performance_throughput(e.kind, e.quantity, e.duration_ms), std::nullopt, in));
		}
	}
	if (const auto& o = obs.flexibility) {
		const auto fx = flexibility(*o);
		DigestInput all;
		for (std::size_t i = 0; i < o->size(); ++i) {
			const auto& p = (*o)[i];
			DigestInput in;
			in.add("f", p.flexible_force).add("S", p.flexible_distance).add("Fe", p.applied_force);
			all.add(p.point_id, in.digest());
			r.add(entry("flexible_degree." + p.point_id, {fx.degrees[i], unit::ratio},
			            fx.usable[i] ? Verdict::Pass : Verdict::Fail, in));
		}
		r.add(entry("flexible_capacity", {fx.capacity, unit::ratio}, std::nullopt, all));
	}
	for (auto& e : qualitative_assessments(obs)) {
		r.add(std::move(e));
	}
	return r;
}

std::string inputs_digest(std::string_view canonical_inputs)
{
	std::uint64_t h = 0xcbf29ce484222325ULL;
	for (unsigned char c : canonical_inputs) {
		h ^= c;
		h *= 0x100000001b3ULL;
	}
	static constexpr char kHex[] = "0123456789abcdef";
	std::string out(16, '0');
	for (int i = 15; i >= 0; --i) {
		out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
		h >>= 4;
	}
	return out;
}

} // namespace qoswb::metrics
