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

#ifndef SNAKEFORGE_TESTS_SUPPORT_HPP_
#define SNAKEFORGE_TESTS_SUPPORT_HPP_

#include <string>

#include "core/manifest.hpp"
#include "core/model.hpp"

namespace snakeforge::test
{

inline std::string data_path(const std::string & relative)
{
  return std::string(SNAKEFORGE_TEST_DATA_DIR) + "/" + relative;
}

// The stock manifest, loaded once.
inline const AssemblyPtr & stock()
{
  static const AssemblyPtr assembly = manifest::load_assembly_file(data_path("arcsnake_v2.yaml"));
  return assembly;
}

// Relative difference, safe at zero.
inline double rel(double a, double b)
{
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace snakeforge::test

#endif  // SNAKEFORGE_TESTS_SUPPORT_HPP_
