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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using qoswb::cli::run;

namespace {

struct Outcome
{
	int code;
	std::string out;
	std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
	std::ostringstream out;
	std::ostringstream err;
	const int code = run(args, out, err);
	return {code, out.str(), err.str()};
}

std::string sample(const char* name)
{
	return (std::filesystem::path(QOSWB_SAMPLES_DIR) / name).string();
}

} // namespace

TEST_CASE("schedule prints the placement table")
{
	const auto r = invoke({"schedule", sample("sample.wl")});
	CHECK(r.code == 0);
	CHECK(r.out.rfind("WorkloadId  ProcessId  Begin Time  End Time  ResourceId\n", 0) == 0);
	CHECK(r.out.find("W1          P1         0           30        R1") != std::string::npos);
	CHECK(r.out.find("W2          P1         5           25        R2") != std::string::npos);
	CHECK(r.out.find("makespan: 30 ms") != std::string::npos);
	CHECK(r.err.empty());
}

TEST_CASE("metrics for one workload")
{
	const auto r = invoke({"metrics", sample("sample.wl"), "--workload", "W1"});
	CHECK(r.code == 0);
	CHECK(r.out.find("availability      0.9") != std::string::npos);
	CHECK(r.out.find("W2") == std::string::npos);

	const auto m = invoke({"metrics", sample("sample.wl"), "--workload", "W1", "--format", "machine"});
	CHECK(m.out.find("availability=0.9 unit=ratio verdict=pass\n") != std::string::npos);
	CHECK(r.out.find("bandwidth         500000  bps") != std::string::npos);

	CHECK(invoke({"metrics", sample("sample.wl"), "--workload", "W5"}).code == 1);
}

TEST_CASE("classify reports the mobile group")
{
	const auto r = invoke({"classify", sample("sample.wl")});
	CHECK(r.code == 0);
	CHECK(r.out.find("W2          MobileComputing  MobileOriented") != std::string::npos);
}

TEST_CASE("balance of the two-server overload")
{
	const auto r = invoke({"balance", sample("fig1.wl")});
	CHECK(r.code == 0);
	CHECK(r.out.find("ReplicateService") != std::string::npos);
	CHECK(r.out.find("C1      100       150           75          0.75") != std::string::npos);
	CHECK(r.out.find("C2      100       0             75          0.75") != std::string::npos);
	CHECK(r.out.find("feasible: yes") != std::string::npos);
}

TEST_CASE("infeasible simulations exit 2")
{
	// GPU1 absorbs the GPU2 overload; B1 cannot finish before its hard stop
	CHECK(invoke({"balance", sample("graphics.wl")}).code == 0);
	const auto s = invoke({"schedule", sample("graphics.wl")});
	CHECK(s.code == 2);
	CHECK(s.out.find("Rejected") != std::string::npos);
}

TEST_CASE("report writes the machine file")
{
	const auto path = std::filesystem::temp_directory_path() / "qoswb_cli_test_report.txt";
	const auto r = invoke({"report", sample("sample.wl"), "--out", path.string()});
	CHECK(r.code == 0);
	std::ifstream in(path);
	std::stringstream body;
	body << in.rdbuf();
	const auto text = body.str();
	CHECK(text.rfind("# qoswb-report v1\n", 0) == 0);
	CHECK(text.find("W1.availability=0.9 unit=ratio verdict=pass\n") != std::string::npos);
	CHECK(text.find("schedule.makespan=30 unit=ms verdict=none\n") != std::string::npos);
	CHECK(text.find("balance.R1.delta_lb=0.6 unit=ratio verdict=pass\n") != std::string::npos);
	std::filesystem::remove(path);
}

TEST_CASE("usage errors exit 64")
{
	auto r = invoke({"frobnicate", "x"});
	CHECK(r.code == 64);
	CHECK(r.err.find("unknown subcommand 'frobnicate'") != std::string::npos);
	CHECK(r.err.find("Usage") != std::string::npos);
	CHECK(invoke({}).code == 64);
	CHECK(invoke({"report", sample("sample.wl")}).code == 64);
	CHECK(invoke({"metrics", sample("sample.wl"), "--format", "xml"}).code == 64);
	CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("input errors exit 1 with a location")
{
	const auto missing = invoke({"classify", "/nonexistent/file.wl"});
	CHECK(missing.code == 1);
	CHECK(missing.err.find("/nonexistent/file.wl") != std::string::npos);

	const auto path = std::filesystem::temp_directory_path() / "qoswb_cli_test_bad.wl";
	{
		std::ofstream f(path);
		f << R"({"version": 1, "workloads": [ { "workload_id": "W1", "type": "Nope", "demand": {"cpu": 1} } ]})";
	}
	const auto bad = invoke({"classify", path.string()});
	CHECK(bad.code == 1);
	CHECK(bad.err.find(":/workloads/0/type: unknown workload type 'Nope'") != std::string::npos);
	std::filesystem::remove(path);
}

TEST_CASE("output is identical across runs")
{
	for (const char* cmd : {"classify", "metrics", "balance", "schedule"}) {
		const auto a = invoke({cmd, sample("graphics.wl")});
		const auto b = invoke({cmd, sample("graphics.wl")});
		CHECK(a.out == b.out);
		CHECK(a.code == b.code);
	}
}
