// Copyright 2026 The vsnsim Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VSN_LP_FORMAT_HPP
#define VSN_LP_FORMAT_HPP

#include <map>
#include <string>

#include "vsn/milp.hpp"
#include "vsn/solver.hpp"

namespace vsn {

// Text LP rendering of a model, grammar documented in docs/lp-format.md.
// Emission order follows declaration order, so files are byte-stable and
// diffable; write(parse(write(m))) == write(m).
std::string write_lp(const IlpModel& model);
IlpModel parse_lp(const std::string& text);  // throws ParseError

void export_lp(const IlpModel& model, const std::string& path);
IlpModel load_lp(const std::string& path);

// Solution file: status line, objective line (when a solution exists), then
// one "name value" line per variable.
std::string write_solution(const IlpModel& model, const SolveResult& result);

// Reads a solution file back against `model`. Unknown variable names are an
// error; missing variables default to 0.
SolveResult parse_solution(const IlpModel& model, const std::string& text);
SolveResult import_solution(const IlpModel& model, const std::string& path);

// Runs `solver_cmd <lp-file> <solution-file>` in `work_dir` (created if
// missing) and returns the parsed result. Used by `--solver external:...`.
SolveResult solve_via_external(const IlpModel& model,
                               const std::string& solver_cmd,
                               const std::string& work_dir);

}  // namespace vsn

#endif  // VSN_LP_FORMAT_HPP
