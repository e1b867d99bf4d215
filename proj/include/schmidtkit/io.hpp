// Copyright 2026 The schmidtkit Authors
//
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

#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "schmidtkit/certify.hpp"

namespace schmidtkit::io {

using Json = nlohmann::json;

/// {"d_a": int, "d_b": int, "re": [[...]], "im": [[...]]}, row-major.
struct MatrixFile {
  ComplexMatrix matrix;
  BipartiteIndex idx;
};

Json matrix_to_json(const ComplexMatrix& m, BipartiteIndex idx);
/// Checks the schema and shape only; DensityMatrix invariants are the
/// caller's decision (Choi matrices are not states).
MatrixFile matrix_from_json(const Json& j);

MatrixFile read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m, BipartiteIndex idx);

Json state_to_json(const PureBipartiteState& psi);
PureBipartiteState state_from_json(const Json& j);

Json ensemble_to_json(const PureEnsemble& ens);
PureEnsemble ensemble_from_json(const Json& j);

Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

/// {"lower_bound", "upper_bound" (int or null), "certificates": [...]}.
Json report_to_json(const SnReport& report);
SnReport report_from_json(const Json& j);

/// Canonical text form: two-space indent, trailing newline. Doubles are
/// printed in shortest round-trip form.
std::string dump(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace schmidtkit::io
