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

#include "qoswb/cli.hpp"

#include "qoswb/classifier.hpp"
#include "qoswb/io.hpp"
#include "qoswb/metrics.hpp"
#include "qoswb/numfmt.hpp"
#include "qoswb/simulator.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>

namespace qoswb::cli {

namespace {

/// Input failure that already carries its location.
struct InputError
{
	std::string message;
};

using Rows = std::vector<std::vector<std::string>>;

std::string join_strings(const std::vector<std::string>& parts, std::string_view sep)
{
	std::string out;
	for (const auto& p : parts) {
		if (!out.empty()) {
			out += sep;
		}
		out += p;
	}
	return out;
}

std::map<std::string, WorkloadSpec> spec_index(const io::WorkloadFile& file)
{
	std::map<std::string, WorkloadSpec> specs;
	for (const auto& w : file.workloads) {
		specs.emplace(w.workload_id, w);
	}
	return specs;
}

std::size_t workload_index(const io::WorkloadFile& file, const std::string& id)
{
	for (std::size_t i = 0; i < file.workloads.size(); ++i) {
		if (file.workloads[i].workload_id == id) {
			return i;
		}
	}
	return file.workloads.size();
}

QoSReport evaluate_workload(const std::string& path, const std::string& wid, const ObservationSet& obs)
{
	try {
		return metrics::evaluate(obs);
	} catch (const std::exception& e) {
		throw InputError{path + ":/observations/" + wid + ": " + e.what()};
	}
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_classify(const io::WorkloadFile& file, const std::string& path, std::ostream& out, bool styled)
{
	Rows rows;
	for (std::size_t i = 0; i < file.workloads.size(); ++i) {
		const auto& w = file.workloads[i];
		classifier::Classification c;
		try {
			c = classifier::classify(w);
		} catch (const classifier::ClassifierError& e) {
			throw InputError{path + ":/workloads/" + std::to_string(i) + "/demand: " + e.what()};
		}
		rows.push_back({w.workload_id, std::string(to_string(w.wtype)), std::string(to_string(c.group)),
		                std::string(classifier::to_string(c.orientation)),
		                std::string(classifier::to_string(c.mode)), join_strings(c.quality_attributes, ", ")});
	}
	out << io::render_table({"WorkloadId", "Type", "Group", "Orientation", "Mode", "Quality Attributes"}, rows,
	                        styled);
	for (std::size_t i = 0; i < file.workloads.size(); ++i) {
		if (i == 0) {
			out << '\n';
		}
		out << file.workloads[i].workload_id << ": " << classifier::classify(file.workloads[i]).rationale << '\n';
	}
	return kSuccess;
}

int cmd_metrics(const io::WorkloadFile& file, const std::string& path, const std::string& only, bool machine,
                std::ostream& out, bool styled)
{
	if (!only.empty() && workload_index(file, only) == file.workloads.size()) {
		throw InputError{path + ": --workload: unknown workload '" + only + "'"};
	}
	bool first = true;
	for (const auto& w : file.workloads) {
		if (!only.empty() && w.workload_id != only) {
			continue;
		}
		const auto it = file.observations.find(w.workload_id);
		const QoSReport report =
		    it == file.observations.end() ? QoSReport{} : evaluate_workload(path, w.workload_id, it->second);
		if (!first) {
			out << '\n';
		}
		first = false;
		out << "Workload " << w.workload_id << '\n';
		if (report.empty() && !machine) {
			out << "(no observations)\n";
			continue;
		}
		out << io::emit_report(report, machine ? io::ReportFormat::Machine : io::ReportFormat::Table, styled);
	}
	return kSuccess;
}

sim::BalanceResult run_balance(const io::WorkloadFile& file, const std::string& path)
{
	if (file.servers.empty()) {
		throw InputError{path + ":/servers: no servers to balance"};
	}
	try {
		return sim::balance(file.servers, sim::demands_from_servers(file.servers));
	} catch (const sim::SimulationError& e) {
		throw InputError{path + ":/servers: " + e.what()};
	}
}

int cmd_balance(const io::WorkloadFile& file, const std::string& path, std::ostream& out, bool styled)
{
	const auto result = run_balance(file, path);

	Rows actions;
	for (std::size_t i = 0; i < result.actions.size(); ++i) {
		const auto& a = result.actions[i];
		actions.push_back({std::to_string(i + 1), std::string(sim::to_string(a.kind)), a.service_id, a.from_server,
		                   a.to_server,
		                   a.kind == sim::BalanceAction::Kind::DivertLoad ? format_number(a.diverted_amount) : "-"});
	}
	out << "Actions\n";
	if (actions.empty()) {
		out << "(none)\n";
	} else {
		out << io::render_table({"Step", "Action", "Service", "From", "To", "Amount"}, actions, styled);
	}

	Rows servers;
	for (std::size_t i = 0; i < result.final_servers.size(); ++i) {
		const auto& s = result.final_servers[i];
		const double d = result.per_server_delta_lb[i];
		servers.push_back({s.resource_id, format_number(s.expected_load_capacity),
		                   format_number(result.initial_servers[i].assigned_load), format_number(s.assigned_load),
		                   format_number(d), d <= 1.0 ? "efficient" : "overloaded"});
	}
	out << "\nLoad\n";
	out << io::render_table({"Server", "Capacity", "Initial Load", "Final Load", "Delta LB", "Status"}, servers,
	                        styled);
	out << "\nfeasible: " << (result.feasible ? "yes" : "no") << '\n';
	return result.feasible ? kSuccess : kInfeasible;
}

struct ScheduleRun
{
	std::vector<sim::Resource> resources;
	sim::Schedule schedule;
	sim::ScheduleStats stats;
};

ScheduleRun run_schedule(const io::WorkloadFile& file, const std::string& path)
{
	ScheduleRun run;
	run.resources = sim::resources_from_servers(file.servers);
	const auto specs = spec_index(file);
	try {
		run.schedule = sim::schedule(file.records, specs, run.resources);
	} catch (const sim::SimulationError& e) {
		throw InputError{path + ":/records: " + e.what()};
	}
	std::map<std::string, Tick> submit;
	for (const auto& [id, spec] : specs) {
		submit[id] = sim::submit_time(spec);
	}
	run.stats = sim::simulate_report(run.schedule, run.resources, submit);
	return run;
}

int cmd_schedule(const io::WorkloadFile& file, const std::string& path, std::ostream& out, bool styled)
{
	const auto run = run_schedule(file, path);

	Rows rows;
	for (const auto& r : run.schedule.records) {
		rows.push_back({r.workload_id, r.process_id, std::to_string(r.begin_time), std::to_string(r.end_time),
		                r.resource_id});
	}
	out << io::render_table({"WorkloadId", "ProcessId", "Begin Time", "End Time", "ResourceId"}, rows, styled);

	if (!run.schedule.rejected.empty()) {
		Rows rejected;
		for (const auto& r : run.schedule.rejected) {
			rejected.push_back({r.record.workload_id, r.record.process_id, r.reason});
		}
		out << "\nRejected\n";
		out << io::render_table({"WorkloadId", "ProcessId", "Reason"}, rejected, styled);
	}

	out << "\nmakespan: " << (run.stats.makespan ? std::to_string(*run.stats.makespan) + " ms" : "-") << '\n';
	for (const auto& [rid, u] : run.stats.utilization) {
		out << "utilization " << rid << ": " << format_number(u) << '\n';
	}
	for (const auto& [wid, l] : run.stats.latency) {
		out << "latency " << wid << ": " << l << " ms\n";
	}
	return run.schedule.rejected.empty() ? kSuccess : kInfeasible;
}

int cmd_report(const io::WorkloadFile& file, const std::string& path, const std::string& out_path, std::ostream& out)
{
	QoSReport full;
	for (const auto& [wid, obs] : file.observations) {
		const QoSReport part = evaluate_workload(path, wid, obs);
		for (auto e : part.entries()) {
			e.metric_name = wid + "." + e.metric_name;
			full.add(std::move(e));
		}
	}

	int code = kSuccess;
	if (!file.servers.empty()) {
		const auto result = run_balance(file, path);
		for (std::size_t i = 0; i < result.final_servers.size(); ++i) {
			const double d = result.per_server_delta_lb[i];
			full.add({"balance." + result.final_servers[i].resource_id + ".delta_lb", d, "ratio",
			          d <= 1.0 ? Verdict::Pass : Verdict::Fail, ""});
		}
		if (!result.feasible) {
			code = kInfeasible;
		}
	}
	if (!file.records.empty()) {
		const auto run = run_schedule(file, path);
		const auto total = run.schedule.records.size() + run.schedule.rejected.size();
		full.add({"schedule.accepted", static_cast<double>(run.schedule.records.size()) / static_cast<double>(total),
		          "ratio", run.schedule.rejected.empty() ? Verdict::Pass : Verdict::Fail, ""});
		if (run.stats.makespan) {
			full.add({"schedule.makespan", static_cast<double>(*run.stats.makespan), "ms", std::nullopt, ""});
		}
		for (const auto& [rid, u] : run.stats.utilization) {
			full.add({"schedule.utilization." + rid, u, "ratio", std::nullopt, ""});
		}
		for (const auto& [wid, l] : run.stats.latency) {
			full.add({"schedule.latency." + wid, static_cast<double>(l), "ms", std::nullopt, ""});
		}
		if (!run.schedule.rejected.empty()) {
			code = kInfeasible;
		}
	}

	std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
	if (!f || !(f << io::emit_report(full, io::ReportFormat::Machine)) || !f.flush()) {
		throw InputError{out_path + ": cannot write report"};
	}
	out << "wrote " << full.size() << " metrics to " << out_path << '\n';
	return code;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool styled)
{
	CLI::App app{"Workload classification, QoS metrics and placement simulation", "qoswb"};
	app.require_subcommand(1);

	std::string path;
	std::string workload;
	std::string format = "table";
	std::string out_path;

	auto* classify = app.add_subcommand("classify", "Print the classification of every workload");
	classify->add_option("file", path, "Workload file")->required();

	auto* metrics = app.add_subcommand("metrics", "Evaluate QoS metrics from the recorded observations");
	metrics->add_option("file", path, "Workload file")->required();
	metrics->add_option("--workload", workload, "Only this workload id");
	metrics->add_option("--format", format, "table or machine")->check(CLI::IsMember({"table", "machine"}));

	auto* balance = app.add_subcommand("balance", "Balance server load by replicating and diverting services");
	balance->add_option("file", path, "Workload file")->required();

	auto* schedule = app.add_subcommand("schedule", "Place non-scheduled records on resources");
	schedule->add_option("file", path, "Workload file")->required();

	auto* report = app.add_subcommand("report", "Run every stage and write a machine-readable report");
	report->add_option("file", path, "Workload file")->required();
	report->add_option("--out", out_path, "Report destination")->required();

	if (!args.empty() && !args.front().empty() && args.front().front() != '-' &&
	    app.get_subcommands([&](CLI::App* sub) { return sub->get_name() == args.front(); }).empty()) {
		err << "qoswb: unknown subcommand '" << args.front() << "'\n\n" << app.help();
		return kUsage;
	}

	try {
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e, out, err);
	} catch (const CLI::CallForAllHelp& e) {
		return app.exit(e, out, err);
	} catch (const CLI::ParseError& e) {
		err << "qoswb: " << e.what() << "\n\n" << app.help();
		return kUsage;
	}

	try {
		const io::WorkloadFile file = io::load_workload_file(path);
		if (*classify) {
			return cmd_classify(file, path, out, styled);
		}
		if (*metrics) {
			return cmd_metrics(file, path, workload, format == "machine", out, styled);
		}
		if (*balance) {
			return cmd_balance(file, path, out, styled);
		}
		if (*schedule) {
			return cmd_schedule(file, path, out, styled);
		}
		return cmd_report(file, path, out_path, out);
	} catch (const io::ParseError& e) {
		err << e.what() << '\n';
	} catch (const InputError& e) {
		err << e.message << '\n';
	}
	return kInputError;
}

} // namespace qoswb::cli
