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

#ifndef QOSWB_CLASSIFIER_HPP
#define QOSWB_CLASSIFIER_HPP

#include "qoswb/model.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qoswb::classifier {

class ClassifierError : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

/// Declaration order doubles as the tie-break order.
enum class Orientation
{
	CPU,
	Memory,
	Network,
	Storage
};

enum class ExecutionMode
{
	Batch,
	Online
};

std::string_view to_string(Orientation o);
std::string_view to_string(ExecutionMode m);

struct GroupInfo
{
	WorkloadGroup group;
	std::vector<std::string> quality_attributes;
};

struct ModeRecommendation
{
	ExecutionMode mode;
	std::string rationale;
};

struct Classification
{
	WorkloadGroup group;
	std::vector<std::string> quality_attributes;
	Orientation orientation;
	ExecutionMode mode;
	std::string rationale;
};

GroupInfo classify_group(WorkloadType wtype);

/// Orientation of the heaviest demand weight. Throws ClassifierError on an all-zero profile.
Orientation classify_orientation(const DemandProfile& demand);

ModeRecommendation recommend_mode(const WorkloadSpec& spec);

Classification classify(const WorkloadSpec& spec);

/// Lists each constraint of `spec` that the proposed placement of `record` breaks.
/// `resource_capacity` is the capacity of the proposed resource, when known; without
/// it the minimum-resource constraint is not checked.
/// Throws ClassifierError when the three inputs do not describe the same process.
std::vector<std::string> check_constraints(const NonScheduledRecord& record, const WorkloadSpec& spec,
                                           const ScheduledRecord& proposed,
                                           std::optional<double> resource_capacity = std::nullopt);

namespace violation {
inline constexpr std::string_view time_bound = "time bound exceeded";
inline constexpr std::string_view begin = "begin time violated";
inline constexpr std::string_view hard_stop = "hard stop violated";
inline constexpr std::string_view interrupted = "interruption not permitted";
inline constexpr std::string_view short_run = "execution time not covered";
inline constexpr std::string_view min_resource = "resource below minimum";
inline constexpr std::string_view foreign_resource = "resource not in resource list";
} // namespace violation

} // namespace qoswb::classifier

#endif // QOSWB_CLASSIFIER_HPP
