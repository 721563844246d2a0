// Copyright 2026 The ctxstr Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ctxstr/gate.hpp"
#include "ctxstr/harness.hpp"
#include "ctxstr/localizer.hpp"

// Serialized forms. Every function returns one compact JSON document without
// a trailing newline; key order is fixed so output is byte-stable.
namespace ctxstr::report {

std::string localization_json(const std::string& image_id, const std::vector<TextBlock>& blocks);
std::string breakdown_json(const RoutingDecision& decision, const GateConfig& gate);
std::string trace_json(const EvalRecord& record);
std::string metrics_json(const MetricsReport& metrics, const std::optional<GateConfig>& gate = {});

void write_jsonl(const std::filesystem::path& path, const std::vector<std::string>& lines);
void write_trace(const std::filesystem::path& path, const std::vector<EvalRecord>& records);

// Fixed-width summary, one line per row.
void print_table(std::ostream& os, const std::vector<MetricsRow>& rows);
void print_table(std::ostream& os, const std::vector<MetricsReport>& rows);

}  // namespace ctxstr::report
