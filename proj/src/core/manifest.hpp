// Copyright 2026 The Snakeforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SNAKEFORGE_CORE_MANIFEST_HPP_
#define SNAKEFORGE_CORE_MANIFEST_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "core/error.hpp"
#include "core/model.hpp"

namespace snakeforge::manifest
{

// One problem found in a manifest. line is 1-based, 0 when unknown.
struct Issue
{
  std::string field;
  int line = 0;
  std::string message;
  bool parse = false;  // malformed text rather than a violated invariant

  std::string describe() const;
};

// Thrown with every issue found, not just the first.
class ManifestError : public Error
{
public:
  explicit ManifestError(std::vector<Issue> issues);

  const std::vector<Issue> & issues() const {return issues_;}

private:
  std::vector<Issue> issues_;
};

// Parses and validates a YAML manifest. Quantities carry unit suffixes
// ("5.386 kg", "6 psi"); omitted sections take the stock defaults.
AssemblyPtr load_assembly(std::string_view document);
AssemblyPtr load_assembly_file(const std::string & path);

// Manifest search order for tools: explicit path, $SNAKEFORGE_ASSEMBLY, then
// the manifest installed with the build.
std::string default_assembly_path();

}  // namespace snakeforge::manifest

#endif  // SNAKEFORGE_CORE_MANIFEST_HPP_
